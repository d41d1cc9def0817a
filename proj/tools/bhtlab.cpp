#include "bhtlab/cli.hpp"

int main(int argc, char** argv) { return bhtlab::cli::run_main(argc, argv); }
