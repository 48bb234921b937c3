// Copyright 2026 The todapin Project Developers
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "todapin/poincare.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_set>

#include "todapin/stats.hpp"

namespace todapin {

void SectionConfig::validate() const {
  chain.validate();
  if (chain.boundary != Boundary::Open || chain.n_dynamic != 3) {
    throw ValidationError("section experiment requires an open 3-site lattice");
  }
  if (!(dt > 0.0)) throw ValidationError("dt must be positive");
  if (!(t_final > 0.0)) throw ValidationError("t_final must be positive");
  if (!(delta > 0.0)) throw ValidationError("section tolerance must be positive");
  validate_state(initial, chain);
  for (double v : initial.q) {
    if (!std::isfinite(v)) throw ValidationError("initial state must be finite");
  }
  for (double v : initial.p) {
    if (!std::isfinite(v)) throw ValidationError("initial state must be finite");
  }
}

namespace {

SectionEvent make_event(const State& s, const ChainSpec& spec, double q0_ref,
                        int direction) {
  SectionEvent ev;
  ev.t = s.t;
  for (int i = 0; i < 3; ++i) {
    ev.q[i] = s.q[i];
    ev.p[i] = s.p[i];
  }
  ev.energy = total_energy(s, spec);
  ev.h_c = center_of_mass_invariant(s, spec);
  ev.direction = direction;
  ev.residual = std::abs(s.q[0] - q0_ref);
  return ev;
}

}  // namespace

SectionRun run_sections(const SectionConfig& cfg) {
  cfg.validate();
  const ChainSpec& spec = cfg.chain;
  State s = cfg.initial;
  s.t = 0.0;
  const double q0_ref = s.q[0];

  Stepper<TodaBond> stepper(spec, toda_bond(spec), cfg.dt, nullptr);
  const long long n_steps = std::llround(cfg.t_final / cfg.dt);

  SectionRun out;
  const double e0 = total_energy(s, spec);
  const double hc0 = center_of_mass_invariant(s, spec);
  const double e_scale = std::max(1.0, std::abs(e0));

  State prev = s;
  State lerp = s;
  double g_prev = 0.0;
  int last_sign = 0;
  const long long check_stride = 100000;

  for (long long step = 1; step <= n_steps; ++step) {
    prev = s;
    stepper.step(s, nullptr);
    const double g = s.q[0] - q0_ref;

    if (cfg.mode == DetectionMode::SignCrossing) {
      // Strict product test: the start point g(0) = 0 never produces a
      // spurious event.
      if (g_prev * g < 0.0) {
        const double theta = g_prev / (g_prev - g);
        const double bound =
            cfg.dt * std::max(std::abs(prev.p[0]), std::abs(s.p[0]));
        if (bound > cfg.delta) {
          throw ValidationError(
              "crossing interpolation bound exceeds the section tolerance; "
              "reduce dt or raise delta");
        }
        for (int i = 0; i < 3; ++i) {
          lerp.q[i] = prev.q[i] + theta * (s.q[i] - prev.q[i]);
          lerp.p[i] = prev.p[i] + theta * (s.p[i] - prev.p[i]);
        }
        lerp.t = prev.t + theta * cfg.dt;
        out.events.push_back(
            make_event(lerp, spec, q0_ref, g > g_prev ? 1 : -1));
      }
    } else {
      const int sign = g > 0.0 ? 1 : (g < 0.0 ? -1 : 0);
      if (sign != 0) {
        if (last_sign == 0) {
          last_sign = sign;
        } else if (sign != last_sign) {
          last_sign = sign;
          // Crossed since the previous recording; take the bracket
          // endpoint closest to the section if it lies in the window.
          const bool take_prev = std::abs(g_prev) <= std::abs(g);
          const State& cand = take_prev ? prev : s;
          if (std::abs(cand.q[0] - q0_ref) < cfg.delta) {
            out.events.push_back(make_event(cand, spec, q0_ref, sign));
          }
        }
      }
    }
    g_prev = g;

    if (step % check_stride == 0 || step == n_steps) {
      detail::check_finite(s, step);
      out.energy_drift = std::max(out.energy_drift,
                                  std::abs(total_energy(s, spec) - e0) / e_scale);
      out.hc_drift =
          std::max(out.hc_drift,
                   std::abs(center_of_mass_invariant(s, spec) - hc0) / e_scale);
    }
  }
  return out;
}

SlicedSection slice(const std::vector<SectionEvent>& events, int fixed_index,
                    double p_star, double tol) {
  if (fixed_index < 0 || fixed_index > 2) {
    throw ValidationError("fixed momentum index must be 0, 1 or 2");
  }
  if (!(tol > 0.0)) throw ValidationError("slice tolerance must be positive");
  SlicedSection out;
  out.fixed_index = fixed_index;
  out.p_star = p_star;
  out.tol = tol;
  const int a = fixed_index == 0 ? 1 : 0;
  const int b = fixed_index == 2 ? 1 : 2;
  for (const SectionEvent& ev : events) {
    if (std::abs(ev.p[fixed_index] - p_star) <= tol) {
      out.points.push_back({ev.p[a], ev.p[b]});
    }
  }
  return out;
}

SlicedSection auto_slice(const std::vector<SectionEvent>& events, int fixed_index,
                         double p_star, double tol0, std::size_t min_points,
                         double tol_cap) {
  if (!(tol0 > 0.0) || !(tol_cap >= tol0)) {
    throw ValidationError("slice tolerance range must satisfy 0 < tol0 <= cap");
  }
  double tol = tol0;
  SlicedSection best = slice(events, fixed_index, p_star, tol);
  while (best.points.size() < min_points && tol * 2.0 <= tol_cap) {
    tol *= 2.0;
    best = slice(events, fixed_index, p_star, tol);
  }
  return best;
}

double median_momentum(const std::vector<SectionEvent>& events, int index) {
  if (index < 0 || index > 2) {
    throw ValidationError("momentum index must be 0, 1 or 2");
  }
  std::vector<double> v;
  v.reserve(events.size());
  for (const SectionEvent& ev : events) v.push_back(ev.p[index]);
  return median(std::move(v));
}

namespace {

/// Median nearest-neighbour distance via a plane sweep along the axis of
/// larger extent.
double median_nearest_neighbor(const std::vector<std::array<double, 2>>& pts) {
  double min_x = pts[0][0], max_x = pts[0][0];
  double min_y = pts[0][1], max_y = pts[0][1];
  for (const auto& p : pts) {
    min_x = std::min(min_x, p[0]);
    max_x = std::max(max_x, p[0]);
    min_y = std::min(min_y, p[1]);
    max_y = std::max(max_y, p[1]);
  }
  const int axis = (max_x - min_x) >= (max_y - min_y) ? 0 : 1;
  std::vector<std::size_t> order(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return pts[a][axis] < pts[b][axis];
  });
  auto dist2 = [&](std::size_t a, std::size_t b) {
    const double dx = pts[a][0] - pts[b][0];
    const double dy = pts[a][1] - pts[b][1];
    return dx * dx + dy * dy;
  };
  std::vector<double> nn(pts.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = i + 1; j < order.size(); ++j) {
      const double d = pts[order[j]][axis] - pts[order[i]][axis];
      if (d * d >= best) break;
      best = std::min(best, dist2(order[i], order[j]));
    }
    for (std::size_t j = i; j-- > 0;) {
      const double d = pts[order[i]][axis] - pts[order[j]][axis];
      if (d * d >= best) break;
      best = std::min(best, dist2(order[i], order[j]));
    }
    nn[i] = std::sqrt(best);
  }
  return median(std::move(nn));
}

}  // namespace

double box_count_dimension(const std::vector<std::array<double, 2>>& points) {
  if (points.size() < 500) {
    throw ValidationError("box counting needs at least 500 points");
  }
  double min_x = points[0][0], max_x = points[0][0];
  double min_y = points[0][1], max_y = points[0][1];
  for (const auto& p : points) {
    min_x = std::min(min_x, p[0]);
    max_x = std::max(max_x, p[0]);
    min_y = std::min(min_y, p[1]);
    max_y = std::max(max_y, p[1]);
  }
  const double extent = std::max(max_x - min_x, max_y - min_y);
  if (!(extent > 0.0)) throw ValidationError("point set is degenerate");
  const double spacing = median_nearest_neighbor(points);
  if (!(spacing > 0.0)) throw ValidationError("point set has coincident points");

  // Dyadic scales: edge = extent / 2^k, from one halving down to the
  // median spacing.  Fewer than 3 octaves cannot support a slope.
  const int k_max = std::min(30, static_cast<int>(
                                     std::floor(std::log2(extent / spacing))));
  const int k_min = 1;
  if (k_max - k_min < 3) {
    throw ValidationError("scale range spans fewer than 3 octaves");
  }
  std::vector<double> log_inv_edge, log_count;
  for (int k = k_min; k <= k_max; ++k) {
    const double edge = extent / static_cast<double>(1LL << k);
    const auto cells = static_cast<std::uint64_t>(1LL << k);
    std::unordered_set<std::uint64_t> occupied;
    for (const auto& p : points) {
      auto ix = static_cast<std::uint64_t>((p[0] - min_x) / edge);
      auto iy = static_cast<std::uint64_t>((p[1] - min_y) / edge);
      ix = std::min(ix, cells - 1);
      iy = std::min(iy, cells - 1);
      occupied.insert((ix << 32) | iy);
    }
    log_inv_edge.push_back(-std::log(edge));
    log_count.push_back(std::log(static_cast<double>(occupied.size())));
  }
  return least_squares_slope(log_inv_edge, log_count);
}

State random_initial_state(const ChainSpec& spec, double scale, RngStream& rng) {
  if (!(scale > 0.0)) throw ValidationError("state scale must be positive");
  State s = zero_state(spec);
  for (int i = spec.dyn_begin(); i < spec.dyn_end(); ++i) {
    s.q[i] = scale * (2.0 * rng.uniform() - 1.0);
  }
  for (int i = spec.dyn_begin(); i < spec.dyn_end(); ++i) {
    s.p[i] = scale * (2.0 * rng.uniform() - 1.0);
  }
  return s;
}

}  // namespace todapin
