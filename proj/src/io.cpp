#include "bhtlab/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "bhtlab/errors.hpp"

namespace bhtlab::io {

json to_json(Complex z) { return json::array({z.real(), z.imag()}); }

json to_json(const CMatrix& x) {
  json rows = json::array();
  for (Index i = 0; i < x.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < x.cols(); ++j) row.push_back(to_json(x(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json to_json(const BivariatePoly& p) {
  json terms = json::array();
  for (const auto& [key, c] : p.terms()) {
    terms.push_back({{"zeta", key.first}, {"lambda", key.second}, {"c", to_json(c)}});
  }
  return {{"deg_zeta", p.deg_zeta()}, {"deg_lambda", p.deg_lambda()}, {"terms", terms}};
}

namespace {

json roots_json(const std::vector<Complex>& roots) {
  json out = json::array();
  for (const auto& r : roots) out.push_back(to_json(r));
  return out;
}

template <class T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

}  // namespace

json to_json(const SpectralReport& r) {
  json doc;
  doc["Phat"] = to_json(r.Phat);
  doc["P"] = r.P ? to_json(*r.P) : json(nullptr);
  doc["tau_residual"] = r.tau_residual;
  doc["lambda_power"] = r.lambda_power;
  doc["square_residual"] = optional_json(r.square_residual);
  doc["xy_yx_residual"] = optional_json(r.xy_yx_residual);
  doc["genus_S"] = optional_json(r.genus_S);
  doc["genus_Shat"] = optional_json(r.genus_Shat);
  doc["ramification_A"] = roots_json(r.ramification_A);
  doc["ramification_B"] = roots_json(r.ramification_B);
  doc["disjoint"] = optional_json(r.disjoint);
  return doc;
}

Complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ValidationError("expected a complex number as [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

CMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) {
    throw ValidationError("expected a matrix as a nested array");
  }
  const Index rows = static_cast<Index>(j.size());
  const Index cols = static_cast<Index>(j[0].size());
  CMatrix x(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != cols) {
      throw ValidationError("matrix rows have unequal length");
    }
    for (Index k = 0; k < cols; ++k) x(i, k) = complex_from_json(row[static_cast<std::size_t>(k)]);
  }
  require_finite(x, "matrix");
  return x;
}

json state_to_json(const BHTState& s) { return {{"A", to_json(s.A)}, {"B", to_json(s.B)}}; }

json state_to_json(const HoloState& h) {
  return {{"A0", to_json(h.A0)}, {"A1", to_json(h.A1)}, {"B0", to_json(h.B0)},
          {"B1", to_json(h.B1)}};
}

json state_to_json(const NahmTriple& t) {
  return {{"T1", to_json(t.T1)}, {"T2", to_json(t.T2)}, {"T3", to_json(t.T3)}};
}

json state_to_json(const SuperMatrix& c) { return {{"A", to_json(c.A())}, {"B", to_json(c.B())}}; }

PencilTrajectory pencil_trajectory_from_json(const json& doc) {
  if (!doc.is_object() || doc.value("format", "") != kTrajectoryFormat) {
    throw ValidationError("not a bhtlab trajectory document");
  }
  if (!doc.contains("states") || !doc["states"].is_array() || doc["states"].empty()) {
    throw ValidationError("trajectory has no states");
  }
  PencilTrajectory out;
  out.system = doc.value("system", "");
  for (const json& entry : doc["states"]) {
    if (!entry.is_object() || !entry.contains("t") || !entry["t"].is_number()) {
      throw ValidationError("trajectory state lacks a time");
    }
    HoloState h;
    if (entry.contains("A0")) {
      h = {matrix_from_json(entry.at("A0")), matrix_from_json(entry.at("A1")),
           matrix_from_json(entry.at("B0")), matrix_from_json(entry.at("B1"))};
    } else if (entry.contains("A") && entry.contains("B")) {
      BHTState s{matrix_from_json(entry["A"]), matrix_from_json(entry["B"])};
      try {
        s.validate();
      } catch (const DimensionError& e) {
        throw ValidationError(e.what());
      }
      h = reality_embed(s);
    } else {
      throw ValidationError("trajectory state has no pencil data (A, B or A0..B1)");
    }
    try {
      h.validate();
    } catch (const DimensionError& e) {
      throw ValidationError(e.what());
    }
    if (!out.states.empty() && (h.n() != out.n || h.m() != out.m)) {
      throw ValidationError("trajectory states change shape");
    }
    out.n = h.n();
    out.m = h.m();
    out.times.push_back(entry["t"].get<double>());
    out.states.push_back(std::move(h));
  }
  return out;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return {buf.data(), res.ptr};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path);
  out << contents;
  if (!out) throw Error("write failed for " + path);
}

}  // namespace bhtlab::io
