#ifndef DYSOB_STEP_FUNCTION_HPP
#define DYSOB_STEP_FUNCTION_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dysob/dyadic_index.hpp"

namespace dysob {

/// Function on [0,1) constant on the 2^depth dyadic leaves of that depth.
/// Values are stored in leaf order; all operations are pure.
class StepFunction {
 public:
  StepFunction() : depth_(0), values_(1, 0.0) {}

  StepFunction(int depth, std::vector<double> values) : depth_(depth), values_(std::move(values)) {
    if (depth < 0) throw std::invalid_argument("depth must be nonnegative");
    if (values_.size() != (std::size_t{1} << depth)) {
      throw std::invalid_argument("value count must be 2^depth");
    }
  }

  static StepFunction constant(double c, int depth = 0) {
    return StepFunction(depth, std::vector<double>(std::size_t{1} << depth, c));
  }

  /// Indicator of a dyadic interval, represented at the interval's own level.
  static StepFunction indicator(const DyadicIndex& I) {
    std::vector<double> v(std::size_t{1} << I.level, 0.0);
    v[static_cast<std::size_t>(I.pos)] = 1.0;
    return StepFunction(I.level, std::move(v));
  }

  [[nodiscard]] int depth() const { return depth_; }
  [[nodiscard]] std::size_t size() const { return values_.size(); }
  [[nodiscard]] const std::vector<double>& values() const { return values_; }
  [[nodiscard]] double value_at_leaf(std::size_t k) const { return values_[k]; }

  /// Re-express at a deeper grid by duplicating leaf values. Exact.
  [[nodiscard]] StepFunction refined(int new_depth) const {
    if (new_depth < depth_) throw std::invalid_argument("refinement cannot decrease depth");
    if (new_depth == depth_) return *this;
    const std::size_t dup = std::size_t{1} << (new_depth - depth_);
    std::vector<double> v(values_.size() * dup);
    for (std::size_t k = 0; k < values_.size(); ++k) {
      std::fill(v.begin() + static_cast<std::ptrdiff_t>(k * dup),
                v.begin() + static_cast<std::ptrdiff_t>((k + 1) * dup), values_[k]);
    }
    return StepFunction(new_depth, std::move(v));
  }

  [[nodiscard]] StepFunction map(const std::function<double(double)>& fn) const {
    std::vector<double> v(values_.size());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = fn(values_[k]);
    return StepFunction(depth_, std::move(v));
  }

  [[nodiscard]] StepFunction abs() const {
    return map([](double x) { return std::abs(x); });
  }

  friend StepFunction operator+(const StepFunction& f, const StepFunction& g) {
    return zip(f, g, std::plus<double>{});
  }
  friend StepFunction operator-(const StepFunction& f, const StepFunction& g) {
    return zip(f, g, std::minus<double>{});
  }
  friend StepFunction operator*(double a, const StepFunction& f) {
    return f.map([a](double x) { return a * x; });
  }
  friend StepFunction operator*(const StepFunction& f, double a) { return a * f; }

  /// Leafwise product at the common depth. Step functions are closed under
  /// products, so this is exact.
  friend StepFunction operator*(const StepFunction& f, const StepFunction& g) {
    return zip(f, g, std::multiplies<double>{});
  }

 private:
  template <typename Op>
  static StepFunction zip(const StepFunction& f, const StepFunction& g, Op op) {
    const int n = std::max(f.depth_, g.depth_);
    const StepFunction fr = f.refined(n);
    const StepFunction gr = g.refined(n);
    std::vector<double> v(fr.values_.size());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = op(fr.values_[k], gr.values_[k]);
    return StepFunction(n, std::move(v));
  }

  int depth_;
  std::vector<double> values_;
};

/// Averages of f over every dyadic interval of levels 0..depth(f), computed
/// by the halving cascade. avgs[j][k] is the mean over interval (j,k).
/// Pairwise halving keeps averages exactly invariant under refinement.
inline std::vector<std::vector<double>> all_averages(const StepFunction& f) {
  const int n = f.depth();
  std::vector<std::vector<double>> avgs(static_cast<std::size_t>(n) + 1);
  avgs[static_cast<std::size_t>(n)] = f.values();
  for (int j = n - 1; j >= 0; --j) {
    const auto& fine = avgs[static_cast<std::size_t>(j) + 1];
    auto& coarse = avgs[static_cast<std::size_t>(j)];
    coarse.resize(std::size_t{1} << j);
    for (std::size_t k = 0; k < coarse.size(); ++k) {
      coarse[k] = 0.5 * (fine[2 * k] + fine[2 * k + 1]);
    }
  }
  return avgs;
}

/// Mean of f over a dyadic interval. For intervals finer than the grid the
/// average equals the value of the containing leaf.
inline double average(const StepFunction& f, const DyadicIndex& I) {
  if (I.level >= f.depth()) {
    const std::int64_t leaf = I.pos >> (I.level - f.depth());
    return f.values()[static_cast<std::size_t>(leaf)];
  }
  // Halving cascade restricted to the subtree under I.
  const int levels = f.depth() - I.level;
  const std::size_t count = std::size_t{1} << levels;
  const std::size_t first = static_cast<std::size_t>(I.pos) << levels;
  std::vector<double> block(f.values().begin() + static_cast<std::ptrdiff_t>(first),
                            f.values().begin() + static_cast<std::ptrdiff_t>(first + count));
  for (std::size_t m = count; m > 1; m /= 2) {
    for (std::size_t k = 0; k < m / 2; ++k) block[k] = 0.5 * (block[2 * k] + block[2 * k + 1]);
  }
  return block[0];
}

/// Integral of f over [0,1).
inline double integral(const StepFunction& f) { return average(f, kUnitInterval); }

/// L^2 pairing (f,g) = integral of fg over [0,1) at the common depth.
inline double inner(const StepFunction& f, const StepFunction& g) { return integral(f * g); }

}  // namespace dysob

#endif  // DYSOB_STEP_FUNCTION_HPP
