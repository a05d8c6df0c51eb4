#ifndef DYSOB_NORMS_HPP
#define DYSOB_NORMS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "dysob/haar.hpp"
#include "dysob/operators.hpp"
#include "dysob/step_function.hpp"

namespace dysob {

inline double l2_norm(const StepFunction& f) { return std::sqrt(inner(f, f)); }

inline double sup_norm(const StepFunction& f) {
  double m = 0.0;
  for (double v : f.values()) m = std::max(m, std::abs(v));
  return m;
}

/// Squared homogeneous seminorm: sum over I of |I|^{-2s} (f,h_I)^2.
inline double hs_dot_sq(const HaarCoeffs& c, FracParameter s) {
  double total = 0.0;
  for (int j = 0; j < c.depth(); ++j) {
    const double w = std::pow(2.0, 2.0 * s.s * j);
    double lvl = 0.0;
    for (double x : c.levels()[static_cast<std::size_t>(j)]) lvl += x * x;
    total += w * lvl;
  }
  return total;
}

inline double hs_dot(const StepFunction& f, FracParameter s) {
  return std::sqrt(hs_dot_sq(haar_analyze(f), s));
}

/// Squared Sobolev norm: homogeneous part plus the squared L^2 norm, both
/// read off the Haar spectrum.
inline double hs_norm_sq(const HaarCoeffs& c, FracParameter s) {
  return hs_dot_sq(c, s) + c.energy();
}

inline double hs_norm(const StepFunction& f, FracParameter s) {
  return std::sqrt(hs_norm_sq(haar_analyze(f), s));
}

/// First and second moments of f over every dyadic interval of levels
/// 0..depth, by pairwise accumulation (exact under refinement).
struct MomentTable {
  std::vector<std::vector<double>> m1;  // integral of f
  std::vector<std::vector<double>> m2;  // integral of f^2
};

inline MomentTable moments(const StepFunction& f) {
  const int n = f.depth();
  MomentTable t;
  t.m1.resize(static_cast<std::size_t>(n) + 1);
  t.m2.resize(static_cast<std::size_t>(n) + 1);
  const double leaf = std::ldexp(1.0, -n);
  auto& m1n = t.m1[static_cast<std::size_t>(n)];
  auto& m2n = t.m2[static_cast<std::size_t>(n)];
  m1n.resize(f.size());
  m2n.resize(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) {
    m1n[k] = leaf * f.values()[k];
    m2n[k] = leaf * f.values()[k] * f.values()[k];
  }
  for (int j = n - 1; j >= 0; --j) {
    auto& a1 = t.m1[static_cast<std::size_t>(j)];
    auto& a2 = t.m2[static_cast<std::size_t>(j)];
    const auto& b1 = t.m1[static_cast<std::size_t>(j) + 1];
    const auto& b2 = t.m2[static_cast<std::size_t>(j) + 1];
    a1.resize(std::size_t{1} << j);
    a2.resize(std::size_t{1} << j);
    for (std::size_t k = 0; k < a1.size(); ++k) {
      a1[k] = b1[2 * k] + b1[2 * k + 1];
      a2[k] = b2[2 * k] + b2[2 * k + 1];
    }
  }
  return t;
}

/// Double integral over left-child x right-child of |f(x)-f(y)|^2, in closed
/// form from cached moments.
inline double leftright_square(const MomentTable& t, int j, std::size_t k) {
  const double half = std::ldexp(1.0, -(j + 1));
  const double i1l = t.m1[static_cast<std::size_t>(j) + 1][2 * k];
  const double i1r = t.m1[static_cast<std::size_t>(j) + 1][2 * k + 1];
  const double i2l = t.m2[static_cast<std::size_t>(j) + 1][2 * k];
  const double i2r = t.m2[static_cast<std::size_t>(j) + 1][2 * k + 1];
  return half * i2l + half * i2r - 2.0 * i1l * i1r;
}

/// Homogeneous seminorm in the left-right double-integral form:
/// sqrt of sum over I of |I|^{-1-2s} * leftright_square(I). Terms below the
/// leaf level vanish for step functions. Always >= the Haar-form seminorm.
inline double hs_dot_leftright(const StepFunction& f, FracParameter s) {
  const MomentTable t = moments(f);
  double total = 0.0;
  for (int j = 0; j < f.depth(); ++j) {
    const double w = std::pow(2.0, (1.0 + 2.0 * s.s) * j);
    double lvl = 0.0;
    for (std::size_t k = 0; k < (std::size_t{1} << j); ++k) lvl += leftright_square(t, j, k);
    total += w * lvl;
  }
  return std::sqrt(total);
}

/// Classical dyadic BMO norm in Carleson form: sup over I of
/// (|I|^{-1} sum of (b,h_J)^2 over J below I)^{1/2}.
inline double bmo_dyadic(const StepFunction& b) {
  const HaarCoeffs c = haar_analyze(b);
  const int n = c.depth();
  if (n == 0) return 0.0;
  // Subtree sums of squared coefficients, bottom-up.
  std::vector<double> sub(std::size_t{1} << (n - 1));
  for (std::size_t k = 0; k < sub.size(); ++k) {
    const double x = c.levels()[static_cast<std::size_t>(n - 1)][k];
    sub[k] = x * x;
  }
  double best = 0.0;
  for (std::size_t k = 0; k < sub.size(); ++k) best = std::max(best, std::ldexp(sub[k], n - 1));
  for (int j = n - 2; j >= 0; --j) {
    std::vector<double> up(std::size_t{1} << j);
    for (std::size_t k = 0; k < up.size(); ++k) {
      const double x = c.levels()[static_cast<std::size_t>(j)][k];
      up[k] = x * x + sub[2 * k] + sub[2 * k + 1];
      best = std::max(best, std::ldexp(up[k], j));
    }
    sub = std::move(up);
  }
  return std::sqrt(best);
}

/// Exact O(4^N) cross-check of the Sobolev norm through the metric
/// delta(x,y) = measure of the smallest dyadic interval containing both
/// points. Returns the squared quantity (double integral plus squared L^2
/// norm). Guarded to depth <= 7.
inline double delta_form(const StepFunction& f, FracParameter s) {
  const int n = f.depth();
  if (n > 7) throw std::invalid_argument("delta_form is limited to depth <= 7");
  const double leaf = std::ldexp(1.0, -n);
  const auto& v = f.values();
  double total = 0.0;
  for (std::size_t a = 0; a < v.size(); ++a) {
    for (std::size_t b = 0; b < v.size(); ++b) {
      if (a == b) continue;  // same leaf: numerator vanishes
      // Level of the deepest common ancestor from the leading common bits.
      int split = n;
      std::size_t x = a ^ b;
      while (x) {
        x >>= 1;
        --split;
      }
      const double delta = std::ldexp(1.0, -split);
      const double diff = v[a] - v[b];
      total += diff * diff / std::pow(delta, 1.0 + 2.0 * s.s) * leaf * leaf;
    }
  }
  return total + inner(f, f);
}

/// All norm functionals of one function at one regularity, in one package.
struct NormReport {
  double s = 0.0;
  double l2 = 0.0;
  double sup = 0.0;
  double hs = 0.0;
  double hs_dot = 0.0;
  double hs_leftright = 0.0;
};

inline NormReport norm_report(const StepFunction& f, FracParameter s) {
  const HaarCoeffs c = haar_analyze(f);
  NormReport r;
  r.s = s.s;
  r.l2 = std::sqrt(c.energy());
  r.sup = sup_norm(f);
  r.hs_dot = std::sqrt(hs_dot_sq(c, s));
  r.hs = std::sqrt(hs_norm_sq(c, s));
  r.hs_leftright = hs_dot_leftright(f, s);
  return r;
}

}  // namespace dysob

#endif  // DYSOB_NORMS_HPP
