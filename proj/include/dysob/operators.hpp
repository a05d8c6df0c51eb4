#ifndef DYSOB_OPERATORS_HPP
#define DYSOB_OPERATORS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dysob/dyadic_index.hpp"
#include "dysob/haar.hpp"
#include "dysob/step_function.hpp"

namespace dysob {

/// Regularity parameter s, restricted to the open interval (0,1).
struct FracParameter {
  double s;
  explicit FracParameter(double s_) : s(s_) {
    if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("s must lie in (0,1)");
  }
  [[nodiscard]] double two_pow_s() const { return std::pow(2.0, s); }
};

/// D^s: multiply the level-j coefficient by |I|^{-s} = 2^{js}; kill the mean.
inline HaarCoeffs frac_derivative(const HaarCoeffs& c, FracParameter s) {
  HaarCoeffs out = c;
  out.mean() = 0.0;
  for (int j = 0; j < out.depth(); ++j) {
    const double w = std::pow(2.0, s.s * j);
    for (double& x : out.levels()[static_cast<std::size_t>(j)]) x *= w;
  }
  return out;
}

/// J^s: as D^s but the mean is scaled by 2^{-s} instead of dropped.
inline HaarCoeffs mod_derivative(const HaarCoeffs& c, FracParameter s) {
  HaarCoeffs out = frac_derivative(c, s);
  out.mean() = std::pow(2.0, -s.s) * c.mean();
  return out;
}

/// T^s in spectral form: coefficients scaled by |I|^s/(2^s-1), mean by
/// 2^s/(2^s-1).
inline HaarCoeffs frac_integral_haar(const HaarCoeffs& c, FracParameter s) {
  const double den = s.two_pow_s() - 1.0;
  HaarCoeffs out = c;
  out.mean() = c.mean() * s.two_pow_s() / den;
  for (int j = 0; j < out.depth(); ++j) {
    const double w = std::pow(2.0, -s.s * j) / den;
    for (double& x : out.levels()[static_cast<std::size_t>(j)]) x *= w;
  }
  return out;
}

/// T^s f = sum over all dyadic I of |I|^s <f>_I 1_I, evaluated exactly on a
/// depth-N input: levels 0..N are accumulated top-down and the infinite tail,
/// where <f>_I equals the leaf value, is the closed-form geometric factor
/// 2^{-(N+1)s}/(1-2^{-s}). No truncation error.
inline StepFunction frac_integral_avg(const StepFunction& f, FracParameter s) {
  const int n = f.depth();
  const auto avgs = all_averages(f);
  std::vector<double> acc{avgs[0][0]};  // level-0 term: |I0|^s <f>_{I0} = <f>_{I0}
  for (int j = 1; j <= n; ++j) {
    const double w = std::pow(2.0, -s.s * j);
    std::vector<double> next(std::size_t{1} << j);
    const auto& a = avgs[static_cast<std::size_t>(j)];
    for (std::size_t k = 0; k < next.size(); ++k) next[k] = acc[k / 2] + w * a[k];
    acc = std::move(next);
  }
  const double tail = std::pow(2.0, -s.s * (n + 1)) / (1.0 - std::pow(2.0, -s.s));
  std::vector<double> v(std::size_t{1} << n);
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = acc[k] + tail * f.values()[k];
  return {n, std::move(v)};
}

/// Dyadic maximal function: per leaf, the largest average of |f| over the
/// chain of ancestors (deeper intervals repeat the leaf value, so the leaf
/// level already covers them).
inline StepFunction maximal(const StepFunction& f) {
  const StepFunction g = f.abs();
  const auto avgs = all_averages(g);
  std::vector<double> run{avgs[0][0]};
  for (int j = 1; j <= f.depth(); ++j) {
    const auto& a = avgs[static_cast<std::size_t>(j)];
    std::vector<double> next(std::size_t{1} << j);
    for (std::size_t k = 0; k < next.size(); ++k) next[k] = std::max(run[k / 2], a[k]);
    run = std::move(next);
  }
  return {f.depth(), std::move(run)};
}

/// Haar shift: (f,h_I) goes to +(f,h_I) on the left child and -(f,h_I) on
/// the right child. The result lives one level deeper than the input.
inline HaarCoeffs haar_shift(const HaarCoeffs& c) {
  HaarCoeffs out = HaarCoeffs::zero(c.depth() + 1);
  for (int j = 0; j < c.depth(); ++j) {
    for (std::int64_t k = 0; k < (std::int64_t{1} << j); ++k) {
      const double x = c.at({j, k});
      out.at({j + 1, 2 * k}) = x;
      out.at({j + 1, 2 * k + 1}) = -x;
    }
  }
  return out;
}

inline StepFunction haar_shift(const StepFunction& f) {
  return haar_synthesize(haar_shift(haar_analyze(f)));
}

/// Paraproduct: (b,h_I) <f>_I summed against h_I, at the common depth.
inline StepFunction paraproduct(const StepFunction& b, const StepFunction& f) {
  const int n = std::max(b.depth(), f.depth());
  const HaarCoeffs cb = haar_analyze(b.refined(n));
  const auto favg = all_averages(f.refined(n));
  HaarCoeffs out = HaarCoeffs::zero(n);
  for (int j = 0; j < n; ++j) {
    for (std::int64_t k = 0; k < (std::int64_t{1} << j); ++k) {
      out.at({j, k}) = cb.at({j, k}) * favg[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
    }
  }
  return haar_synthesize(out);
}

/// Lambda_b f = Pi_f b; kept as an argument swap rather than a second kernel.
inline StepFunction swapped_paraproduct(const StepFunction& b, const StepFunction& f) {
  return paraproduct(f, b);
}

/// Adjoint-type paraproduct: sum of (f,h_I)(b,h_I) 1_I/|I| plus the product
/// of the means, accumulated top-down in O(2^N).
inline StepFunction adjoint_paraproduct(const StepFunction& b, const StepFunction& f) {
  const int n = std::max(b.depth(), f.depth());
  const HaarCoeffs cb = haar_analyze(b.refined(n));
  const HaarCoeffs cf = haar_analyze(f.refined(n));
  std::vector<double> acc{cb.mean() * cf.mean()};
  for (int j = 0; j < n; ++j) {
    const double w = std::ldexp(1.0, j);  // 1/|I|
    std::vector<double> next(std::size_t{1} << (j + 1));
    for (std::int64_t k = 0; k < (std::int64_t{1} << j); ++k) {
      const double add = w * cb.at({j, k}) * cf.at({j, k});
      const double v = acc[static_cast<std::size_t>(k)] + add;
      next[static_cast<std::size_t>(2 * k)] = v;
      next[static_cast<std::size_t>(2 * k + 1)] = v;
    }
    acc = std::move(next);
  }
  return {n, std::move(acc)};
}

/// Leafwise product at the common depth.
inline StepFunction pointwise_product(const StepFunction& f, const StepFunction& g) {
  return f * g;
}

/// Commutator with the Haar shift, computed literally at the common depth.
inline StepFunction commutator_shift(const StepFunction& b, const StepFunction& f) {
  const int n = std::max(b.depth(), f.depth());
  const StepFunction br = b.refined(n);
  const StepFunction fr = f.refined(n);
  return br * haar_shift(fr) - haar_shift(br * fr);
}

/// Continuous piecewise-linear map on the real line. Outside the node range
/// the two tail slopes extend the graph; the Lipschitz constant is the
/// largest absolute slope.
class PiecewiseLinearMap {
 public:
  PiecewiseLinearMap(std::vector<double> xs, std::vector<double> ys, double left_slope,
                     double right_slope)
      : xs_(std::move(xs)), ys_(std::move(ys)), left_slope_(left_slope), right_slope_(right_slope) {
    if (xs_.empty() || xs_.size() != ys_.size()) {
      throw std::invalid_argument("node lists must be nonempty and of equal size");
    }
    for (std::size_t i = 1; i < xs_.size(); ++i) {
      if (!(xs_[i] > xs_[i - 1])) throw std::invalid_argument("breakpoints must be strictly increasing");
    }
  }

  static PiecewiseLinearMap identity() { return {{0.0}, {0.0}, 1.0, 1.0}; }
  static PiecewiseLinearMap absolute_value() { return {{0.0}, {0.0}, -1.0, 1.0}; }

  /// 0 below `lo`, 1 above `hi`, linear in between (slope 1/(hi-lo)).
  static PiecewiseLinearMap ramp(double lo, double hi) {
    return {{lo, hi}, {0.0, 1.0}, 0.0, 0.0};
  }

  [[nodiscard]] double operator()(double x) const {
    if (x <= xs_.front()) return ys_.front() + left_slope_ * (x - xs_.front());
    if (x >= xs_.back()) return ys_.back() + right_slope_ * (x - xs_.back());
    const auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - xs_.begin());
    const double t = (x - xs_[i - 1]) / (xs_[i] - xs_[i - 1]);
    return ys_[i - 1] + t * (ys_[i] - ys_[i - 1]);
  }

  [[nodiscard]] double lipschitz_constant() const {
    double lip = std::max(std::abs(left_slope_), std::abs(right_slope_));
    for (std::size_t i = 1; i < xs_.size(); ++i) {
      lip = std::max(lip, std::abs((ys_[i] - ys_[i - 1]) / (xs_[i] - xs_[i - 1])));
    }
    return lip;
  }

 private:
  std::vector<double> xs_;
  std::vector<double> ys_;
  double left_slope_;
  double right_slope_;
};

/// Composition psi(f), exact for step functions.
inline StepFunction lipschitz_compose(const PiecewiseLinearMap& psi, const StepFunction& f) {
  return f.map([&psi](double x) { return psi(x); });
}

}  // namespace dysob

#endif  // DYSOB_OPERATORS_HPP
