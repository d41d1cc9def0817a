#include "bhtlab/integrate.hpp"

#include "bhtlab/alts.hpp"

namespace bhtlab {

std::size_t step_count(double t_end, double dt) {
  const double ratio = t_end / dt;
  const double nearest = std::round(ratio);
  if (std::abs(ratio - nearest) <= 1e-9 * std::max(1.0, ratio)) {
    return static_cast<std::size_t>(nearest);
  }
  return static_cast<std::size_t>(std::ceil(ratio));
}

void validate(const IntegrationOptions& opts) {
  if (!std::isfinite(opts.dt) || opts.dt <= 0.0) throw ValidationError("dt must be positive");
  if (!std::isfinite(opts.t_end) || opts.t_end < 0.0) {
    throw ValidationError("t_end must be nonnegative");
  }
  if (opts.stride == 0) throw ValidationError("stride must be at least 1");
}

Trajectory<BHTState> integrate_bht(const BHTState& initial, const IntegrationOptions& opts) {
  initial.validate();
  return integrate([](const BHTState& s) { return bht_rhs(s); }, initial, opts);
}

Trajectory<NahmTriple> integrate_nahm(const NahmTriple& initial, const IntegrationOptions& opts) {
  return integrate([](const NahmTriple& t) { return nahm_rhs(t); }, initial, opts);
}

Trajectory<HoloState> integrate_holo(const HoloState& initial, const IntegrationOptions& opts) {
  initial.validate();
  return integrate([](const HoloState& h) { return holo_rhs(h); }, initial, opts);
}

Trajectory<SuperMatrix> integrate_jccc(const SuperMatrix& initial,
                                       const IntegrationOptions& opts) {
  if (!initial.is_odd()) throw ValidationError("integrate_jccc: initial state must be odd");
  return integrate([](const SuperMatrix& c) { return jccc_rhs(c); }, initial, opts);
}

Trajectory<BHTState> integrate_gauge_bht(const BHTState& initial, const CMatrix& u,
                                         const CMatrix& v, const IntegrationOptions& opts) {
  initial.validate();
  gauge_bht_rhs(initial, u, v);  // validates u, v up front
  return integrate([&](const BHTState& s) { return gauge_bht_rhs(s, u, v); }, initial, opts);
}

}  // namespace bhtlab
