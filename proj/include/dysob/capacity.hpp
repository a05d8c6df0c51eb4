#ifndef DYSOB_CAPACITY_HPP
#define DYSOB_CAPACITY_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dysob/dyadic_index.hpp"
#include "dysob/haar.hpp"
#include "dysob/norms.hpp"
#include "dysob/operators.hpp"
#include "dysob/step_function.hpp"

namespace dysob {

/// Finite union of dyadic leaves at a fixed depth. Refining the grid keeps
/// the underlying subset of [0,1) unchanged.
class DyadicSet {
 public:
  DyadicSet() : depth_(0) {}

  DyadicSet(int depth, std::vector<std::int64_t> leaves) : depth_(depth), leaves_(std::move(leaves)) {
    if (depth < 0) throw std::invalid_argument("depth must be nonnegative");
    std::sort(leaves_.begin(), leaves_.end());
    leaves_.erase(std::unique(leaves_.begin(), leaves_.end()), leaves_.end());
    if (!leaves_.empty() && (leaves_.front() < 0 || leaves_.back() >= (std::int64_t{1} << depth))) {
      throw std::invalid_argument("leaf positions must lie in [0, 2^depth)");
    }
  }

  static DyadicSet empty_set(int depth = 0) { return DyadicSet(depth, {}); }

  static DyadicSet whole(int depth = 0) {
    std::vector<std::int64_t> l(std::size_t{1} << depth);
    for (std::size_t k = 0; k < l.size(); ++k) l[k] = static_cast<std::int64_t>(k);
    return DyadicSet(depth, std::move(l));
  }

  static DyadicSet from_interval(const DyadicIndex& I, int depth) {
    if (depth < I.level) throw std::invalid_argument("depth must be at least the interval level");
    const int extra = depth - I.level;
    std::vector<std::int64_t> l(std::size_t{1} << extra);
    for (std::size_t k = 0; k < l.size(); ++k) l[k] = (I.pos << extra) + static_cast<std::int64_t>(k);
    return DyadicSet(depth, std::move(l));
  }

  static DyadicSet from_intervals(const std::vector<DyadicIndex>& intervals, int depth) {
    std::vector<std::int64_t> l;
    for (const auto& I : intervals) {
      const DyadicSet one = from_interval(I, depth);
      l.insert(l.end(), one.leaves_.begin(), one.leaves_.end());
    }
    return DyadicSet(depth, std::move(l));
  }

  [[nodiscard]] int depth() const { return depth_; }
  [[nodiscard]] const std::vector<std::int64_t>& leaves() const { return leaves_; }
  [[nodiscard]] bool is_empty() const { return leaves_.empty(); }
  [[nodiscard]] double measure() const {
    return std::ldexp(static_cast<double>(leaves_.size()), -depth_);
  }

  [[nodiscard]] DyadicSet refined(int new_depth) const {
    if (new_depth < depth_) throw std::invalid_argument("refinement cannot decrease depth");
    const int extra = new_depth - depth_;
    std::vector<std::int64_t> l;
    l.reserve(leaves_.size() << extra);
    for (std::int64_t k : leaves_) {
      for (std::int64_t t = 0; t < (std::int64_t{1} << extra); ++t) l.push_back((k << extra) + t);
    }
    return DyadicSet(new_depth, std::move(l));
  }

  /// Leaf membership mask at a grid at least as deep as the set's own.
  [[nodiscard]] std::vector<char> mask(int at_depth) const {
    const DyadicSet r = refined(at_depth);
    std::vector<char> m(std::size_t{1} << at_depth, 0);
    for (std::int64_t k : r.leaves_) m[static_cast<std::size_t>(k)] = 1;
    return m;
  }

  friend DyadicSet set_union(const DyadicSet& a, const DyadicSet& b) {
    const int d = std::max(a.depth_, b.depth_);
    DyadicSet ar = a.refined(d);
    const DyadicSet br = b.refined(d);
    ar.leaves_.insert(ar.leaves_.end(), br.leaves_.begin(), br.leaves_.end());
    return DyadicSet(d, std::move(ar.leaves_));
  }

  [[nodiscard]] bool contains(const DyadicSet& other) const {
    const int d = std::max(depth_, other.depth_);
    const std::vector<char> m = mask(d);
    for (std::int64_t k : other.refined(d).leaves_) {
      if (!m[static_cast<std::size_t>(k)]) return false;
    }
    return true;
  }

  friend bool operator==(const DyadicSet& a, const DyadicSet& b) {
    const int d = std::max(a.depth_, b.depth_);
    return a.refined(d).leaves_ == b.refined(d).leaves_;
  }

 private:
  int depth_;
  std::vector<std::int64_t> leaves_;
};

/// Result of one restricted capacity minimization. The value is an upper
/// bound for the unrestricted infimum; the certificate is the minimizing
/// step function at the solve depth.
struct CapacityEstimate {
  double value = 0.0;
  StepFunction certificate;
  int solve_depth = 0;
  double kkt_residual = 0.0;
  long iterations = 0;
  bool converged = true;
};

namespace detail {

/// Per-level weights of the Sobolev quadratic form in Haar coordinates:
/// q(f) = mean^2 + sum_j w_j * (level-j coefficient energy), w_j = 1 + 2^{2sj}.
inline std::vector<double> sobolev_weights(int depth, FracParameter s) {
  std::vector<double> w(static_cast<std::size_t>(depth));
  for (int j = 0; j < depth; ++j) w[static_cast<std::size_t>(j)] = 1.0 + std::pow(2.0, 2.0 * s.s * j);
  return w;
}

inline double sobolev_objective(const std::vector<double>& leaf_values, int depth,
                                const std::vector<double>& w) {
  const HaarCoeffs c = haar_analyze(StepFunction(depth, leaf_values));
  double q = c.mean() * c.mean();
  for (int j = 0; j < depth; ++j) {
    double lvl = 0.0;
    for (double x : c.levels()[static_cast<std::size_t>(j)]) lvl += x * x;
    q += w[static_cast<std::size_t>(j)] * lvl;
  }
  return q;
}

/// Leaf values of the weighted spectral image W f (coefficients scaled by
/// w_j, mean kept). The gradient of the objective is 2^{1-depth} times this.
inline std::vector<double> weighted_image(const std::vector<double>& leaf_values, int depth,
                                          const std::vector<double>& w) {
  HaarCoeffs c = haar_analyze(StepFunction(depth, leaf_values));
  for (int j = 0; j < depth; ++j) {
    for (double& x : c.levels()[static_cast<std::size_t>(j)]) x *= w[static_cast<std::size_t>(j)];
  }
  return haar_synthesize(c).values();
}

/// Exact solver for the equality-pinned problem: minimize the Sobolev form
/// over depth-M step functions with v_k = 1 on the pinned leaves. Works by
/// one upward sweep of per-subtree value functions (quadratic in the subtree
/// average, or a pinned point when the whole subtree is constrained) and one
/// downward sweep recovering the optimal averages. O(2^M).
class PinnedTreeSolver {
 public:
  PinnedTreeSolver(int depth, const std::vector<double>& w) : depth_(depth), w_(w) {}

  std::vector<double> solve(const std::vector<char>& pinned) const {
    const std::size_t n = std::size_t{1} << depth_;
    if (pinned.size() != n) throw std::invalid_argument("pinned mask size mismatch");

    struct Value {
      bool pin;
      double a, b, c;  // pin: a = forced average, b = cost. free: a x^2 + b x + c.
    };
    struct Branch {
      std::uint8_t kind;  // 0 both pinned, 1 left pinned, 2 right pinned, 3 both free
      double u, v;
    };

    std::vector<std::vector<Value>> val(static_cast<std::size_t>(depth_) + 1);
    std::vector<std::vector<Branch>> br(static_cast<std::size_t>(depth_));

    auto& leafs = val[static_cast<std::size_t>(depth_)];
    leafs.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
      leafs[k] = pinned[k] ? Value{true, 1.0, 0.0, 0.0} : Value{false, 0.0, 0.0, 0.0};
    }

    for (int j = depth_ - 1; j >= 0; --j) {
      const double wt = w_[static_cast<std::size_t>(j)] * std::ldexp(1.0, -j) / 4.0;
      auto& cur = val[static_cast<std::size_t>(j)];
      auto& rec = br[static_cast<std::size_t>(j)];
      const auto& child = val[static_cast<std::size_t>(j) + 1];
      cur.resize(std::size_t{1} << j);
      rec.resize(std::size_t{1} << j);
      for (std::size_t k = 0; k < cur.size(); ++k) {
        const Value& L = child[2 * k];
        const Value& R = child[2 * k + 1];
        if (L.pin && R.pin) {
          const double diff = L.a - R.a;
          cur[k] = Value{true, 0.5 * (L.a + R.a), wt * diff * diff + L.b + R.b, 0.0};
          rec[k] = Branch{0, L.a, R.a};
        } else if (L.pin) {
          // alphaR = 2*alpha - aL
          const double aL = L.a;
          cur[k] = Value{false, 4.0 * wt + 4.0 * R.a,
                         -8.0 * wt * aL - 4.0 * R.a * aL + 2.0 * R.b,
                         4.0 * wt * aL * aL + R.a * aL * aL - R.b * aL + R.c + L.b};
          rec[k] = Branch{1, aL, 0.0};
        } else if (R.pin) {
          const double aR = R.a;
          cur[k] = Value{false, 4.0 * wt + 4.0 * L.a,
                         -8.0 * wt * aR - 4.0 * L.a * aR + 2.0 * L.b,
                         4.0 * wt * aR * aR + L.a * aR * aR - L.b * aR + L.c + R.b};
          rec[k] = Branch{2, aR, 0.0};
        } else {
          // alphaL = alpha + d, alphaR = alpha - d with the cross term
          // wt*(alphaL - alphaR)^2 = 4*wt*d^2 minimized in closed form.
          const double S = 8.0 * wt + 2.0 * (L.a + R.a);
          const double dP = -2.0 * (L.a - R.a) / S;
          const double dQ = -(L.b - R.b) / S;
          const double gl = 1.0 + dP;  // d(alphaL)/d(alpha)
          const double gr = 1.0 - dP;
          cur[k] = Value{false, 4.0 * wt * dP * dP + L.a * gl * gl + R.a * gr * gr,
                         8.0 * wt * dP * dQ + 2.0 * L.a * gl * dQ + L.b * gl -
                             2.0 * R.a * gr * dQ + R.b * gr,
                         4.0 * wt * dQ * dQ + (L.a + R.a) * dQ * dQ + (L.b - R.b) * dQ + L.c + R.c};
          rec[k] = Branch{3, dP, dQ};
        }
      }
    }

    // Root: add the mean term (weight 1) and minimize over the average.
    const Value& root = val[0][0];
    double alpha0 = 0.0;
    if (root.pin) {
      alpha0 = root.a;
    } else {
      alpha0 = -root.b / (2.0 * (root.a + 1.0));
    }

    std::vector<double> alpha{alpha0};
    for (int j = 0; j < depth_; ++j) {
      const auto& rec = br[static_cast<std::size_t>(j)];
      std::vector<double> next(std::size_t{1} << (j + 1));
      for (std::size_t k = 0; k < rec.size(); ++k) {
        const double a = alpha[k];
        double aL = 0.0, aR = 0.0;
        switch (rec[k].kind) {
          case 0:
            aL = rec[k].u;
            aR = rec[k].v;
            break;
          case 1:
            aL = rec[k].u;
            aR = 2.0 * a - aL;
            break;
          case 2:
            aR = rec[k].u;
            aL = 2.0 * a - aR;
            break;
          default: {
            const double d = rec[k].u * a + rec[k].v;
            aL = a + d;
            aR = a - d;
            break;
          }
        }
        next[2 * k] = aL;
        next[2 * k + 1] = aR;
      }
      alpha = std::move(next);
    }
    return alpha;
  }

 private:
  int depth_;
  const std::vector<double>& w_;
};

/// Projected-gradient fixed-point residual with unit step: zero exactly at
/// a KKT point of the bound-constrained problem.
inline double kkt_residual(const std::vector<double>& v, const std::vector<double>& grad,
                           const std::vector<char>& constrained) {
  double r = 0.0;
  for (std::size_t k = 0; k < v.size(); ++k) {
    double step = v[k] - grad[k];
    if (constrained[k]) step = std::max(step, 1.0);
    r = std::max(r, std::abs(v[k] - step));
  }
  return r;
}

}  // namespace detail

/// Restricted dyadic Sobolev capacity: minimize the squared Sobolev norm over
/// depth-M step functions that are >= 1 on E. Accelerated projected gradient
/// locates the active constraints; an exact tree-structured KKT solve on the
/// stabilized active set removes first-order bias from the reported value.
inline CapacityEstimate capacity(const DyadicSet& E, FracParameter s, int solve_depth,
                                 double tol = 1e-9, long max_iters = 0) {
  if (solve_depth < E.depth()) throw std::invalid_argument("solve_depth must be >= depth of E");
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  const int M = solve_depth;
  const std::size_t n = std::size_t{1} << M;
  if (max_iters <= 0) max_iters = 50l * static_cast<long>(n);

  CapacityEstimate out;
  out.solve_depth = M;
  if (E.is_empty()) {
    out.value = 0.0;
    out.certificate = StepFunction::constant(0.0, M);
    return out;
  }

  const std::vector<double> w = detail::sobolev_weights(M, s);
  const std::vector<char> constrained = E.mask(M);
  const double grad_scale = std::ldexp(1.0, 1 - M);
  const double lip = grad_scale * (M > 0 ? 1.0 + std::pow(2.0, 2.0 * s.s * (M - 1)) : 1.0);

  auto grad = [&](const std::vector<double>& v) {
    std::vector<double> g = detail::weighted_image(v, M, w);
    for (double& x : g) x *= grad_scale;
    return g;
  };
  auto project = [&](std::vector<double>& v) {
    for (std::size_t k = 0; k < n; ++k) {
      if (constrained[k]) v[k] = std::max(v[k], 1.0);
    }
  };
  auto active_of = [&](const std::vector<double>& v) {
    std::vector<char> a(n, 0);
    for (std::size_t k = 0; k < n; ++k) a[k] = constrained[k] && v[k] <= 1.0 + 1e-9;
    return a;
  };

  // Phase 1: accelerated projected gradient from the indicator warm start,
  // run until the candidate active set stops changing.
  std::vector<double> v(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) v[k] = constrained[k] ? 1.0 : 0.0;
  std::vector<double> y = v;
  std::vector<double> v_prev = v;
  double t = 1.0;
  long iters = 0;
  std::vector<char> active = active_of(v);
  int stable_checks = 0;
  double last_obj = detail::sobolev_objective(v, M, w);
  const long fista_cap = std::min<long>(max_iters, 400);
  while (iters < fista_cap && stable_checks < 3) {
    const std::vector<double> g = grad(y);
    v_prev = v;
    for (std::size_t k = 0; k < n; ++k) v[k] = y[k] - g[k] / lip;
    project(v);
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    const double mom = (t - 1.0) / t_next;
    for (std::size_t k = 0; k < n; ++k) y[k] = v[k] + mom * (v[k] - v_prev[k]);
    t = t_next;
    ++iters;
    if (iters % 10 == 0) {
      const double obj = detail::sobolev_objective(v, M, w);
      if (obj > last_obj) {  // momentum restart
        y = v;
        t = 1.0;
      }
      last_obj = obj;
      std::vector<char> a = active_of(v);
      if (a == active) {
        ++stable_checks;
      } else {
        stable_checks = 0;
        active = std::move(a);
      }
    }
  }

  // Phase 2: primal-dual active-set polish with exact pinned solves.
  bool any_active = false;
  for (char a : active) any_active |= (a != 0);
  if (!any_active) {
    // Overshooting iterate: pin the most binding constraint to seed the loop.
    std::size_t best = 0;
    double best_v = 0.0;
    bool first = true;
    for (std::size_t k = 0; k < n; ++k) {
      if (constrained[k] && (first || v[k] < best_v)) {
        best = k;
        best_v = v[k];
        first = false;
      }
    }
    active.assign(n, 0);
    active[best] = 1;
  }

  const detail::PinnedTreeSolver solver(M, w);
  const int max_rounds = 60;
  std::vector<double> g;
  for (int round = 0; round < max_rounds && iters < max_iters; ++round) {
    v = solver.solve(active);
    g = grad(v);
    ++iters;
    double gscale = 0.0;
    for (double x : g) gscale = std::max(gscale, std::abs(x));
    const double dual_tol = 1e-12 * (1.0 + gscale);
    bool changed = false;
    for (std::size_t k = 0; k < n; ++k) {
      if (!constrained[k]) continue;
      if (active[k]) {
        if (g[k] < -dual_tol) {  // negative multiplier: release
          active[k] = 0;
          changed = true;
        }
      } else if (v[k] < 1.0 - 1e-12) {  // violated constraint: pin
        active[k] = 1;
        changed = true;
      }
    }
    if (!changed) break;
  }

  g = grad(v);
  out.value = detail::sobolev_objective(v, M, w);
  out.certificate = StepFunction(M, v);
  out.kkt_residual = detail::kkt_residual(v, g, constrained);
  out.iterations = iters;
  out.converged = out.kkt_residual <= tol;
  return out;
}

/// Exact squared Sobolev norm of the indicator of a dyadic interval: the
/// measure plus the explicit finite sum over strict ancestors. An admissible
/// upper bound for the capacity of the interval.
inline double capacity_upper_indicator(const DyadicIndex& I, FracParameter s) {
  const int j = I.level;
  double anc = 0.0;
  for (int m = 0; m < j; ++m) anc += std::pow(2.0, (1.0 + 2.0 * s.s) * m);
  return std::ldexp(1.0, -j) + std::ldexp(1.0, -2 * j) * anc;
}

/// Capacitary level-set integral: integral over t of t * Cap({f >= t}),
/// decomposed exactly over the finitely many distinct positive leaf values.
/// Built on restricted capacities, so the result dominates the integral with
/// the unrestricted capacity.
inline double mazya_integral(const StepFunction& f, FracParameter s, int solve_depth) {
  for (double x : f.values()) {
    if (x < 0.0) throw std::invalid_argument("mazya_integral requires a nonnegative function");
  }
  std::vector<double> thresholds(f.values());
  std::sort(thresholds.begin(), thresholds.end());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());
  double total = 0.0;
  double t_prev = 0.0;
  for (double t : thresholds) {
    if (t <= 0.0) continue;
    std::vector<std::int64_t> leaves;
    for (std::size_t k = 0; k < f.size(); ++k) {
      if (f.values()[k] >= t) leaves.push_back(static_cast<std::int64_t>(k));
    }
    const DyadicSet level_set(f.depth(), std::move(leaves));
    const double cap = capacity(level_set, s, solve_depth).value;
    total += 0.5 * (t * t - t_prev * t_prev) * cap;
    t_prev = t;
  }
  return total;
}

}  // namespace dysob

#endif  // DYSOB_CAPACITY_HPP
