#pragma once

// Fixed-step explicit integration (forward Euler, classical RK4) for any
// state type with `State + State`, `double * State` and a finiteness test.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "bhtlab/errors.hpp"
#include "bhtlab/flows.hpp"
#include "bhtlab/superalg.hpp"

namespace bhtlab {

enum class Method { euler, rk4 };

template <class State>
struct TrajectoryPoint {
  double t;
  State state;
};

template <class State>
using Trajectory = std::vector<TrajectoryPoint<State>>;

struct IntegrationOptions {
  double t_end = 1.0;
  double dt = 1e-3;
  Method method = Method::rk4;
  std::size_t stride = 1;  // store every stride-th step; t = 0 and t_end always stored
};

inline bool state_finite(const BHTState& s) { return all_finite(s.A) && all_finite(s.B); }
inline bool state_finite(const HoloState& h) {
  return all_finite(h.A0) && all_finite(h.A1) && all_finite(h.B0) && all_finite(h.B1);
}
inline bool state_finite(const NahmTriple& t) {
  return all_finite(t.T1) && all_finite(t.T2) && all_finite(t.T3);
}
inline bool state_finite(const SuperMatrix& x) { return all_finite(x.to_matrix()); }

/// Number of steps needed to reach t_end with steps of at most dt.
std::size_t step_count(double t_end, double dt);

/// Throws ValidationError for dt <= 0, t_end < 0, stride == 0 or non-finite values.
void validate(const IntegrationOptions& opts);

template <class State, class Rhs>
State advance(const Rhs& rhs, const State& x, double h, Method method) {
  if (method == Method::euler) return x + h * rhs(x);
  const State k1 = rhs(x);
  const State k2 = rhs(x + (0.5 * h) * k1);
  const State k3 = rhs(x + (0.5 * h) * k2);
  const State k4 = rhs(x + h * k3);
  return x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

/// Integrates x' = rhs(x) from t = 0 to t_end. Throws BlowUpError carrying
/// the last time with a finite state.
template <class State, class Rhs>
Trajectory<State> integrate(const Rhs& rhs, State initial, const IntegrationOptions& opts) {
  validate(opts);
  if (!state_finite(initial)) throw BlowUpError(0.0);
  const std::size_t steps = step_count(opts.t_end, opts.dt);
  Trajectory<State> traj;
  traj.reserve(steps / opts.stride + 2);
  traj.push_back({0.0, initial});
  State x = std::move(initial);
  double t = 0.0;
  for (std::size_t i = 1; i <= steps; ++i) {
    const double t_next = i == steps ? opts.t_end : std::min(static_cast<double>(i) * opts.dt, opts.t_end);
    State next = advance(rhs, x, t_next - t, opts.method);
    if (!state_finite(next)) throw BlowUpError(t);
    x = std::move(next);
    t = t_next;
    if (i % opts.stride == 0 || i == steps) traj.push_back({t, x});
  }
  return traj;
}

Trajectory<BHTState> integrate_bht(const BHTState& initial, const IntegrationOptions& opts);
Trajectory<NahmTriple> integrate_nahm(const NahmTriple& initial, const IntegrationOptions& opts);
Trajectory<HoloState> integrate_holo(const HoloState& initial, const IntegrationOptions& opts);
Trajectory<SuperMatrix> integrate_jccc(const SuperMatrix& initial, const IntegrationOptions& opts);
/// Gauge-dependent BHT flow with constant gauge fields u, v.
Trajectory<BHTState> integrate_gauge_bht(const BHTState& initial, const CMatrix& u,
                                         const CMatrix& v, const IntegrationOptions& opts);

}  // namespace bhtlab
