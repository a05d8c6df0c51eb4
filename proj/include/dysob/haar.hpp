#ifndef DYSOB_HAAR_HPP
#define DYSOB_HAAR_HPP

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dysob/dyadic_index.hpp"
#include "dysob/step_function.hpp"

namespace dysob {

/// Haar spectrum of a depth-N step function: the global mean plus one
/// coefficient (f,h_I) per dyadic interval at levels 0..N-1, stored densely
/// per level.
class HaarCoeffs {
 public:
  HaarCoeffs() : depth_(0), mean_(0.0) {}

  HaarCoeffs(int depth, double mean, std::vector<std::vector<double>> levels)
      : depth_(depth), mean_(mean), levels_(std::move(levels)) {
    if (depth < 0) throw std::invalid_argument("depth must be nonnegative");
    if (levels_.size() != static_cast<std::size_t>(depth)) {
      throw std::invalid_argument("level count must equal depth");
    }
    for (int j = 0; j < depth; ++j) {
      if (levels_[static_cast<std::size_t>(j)].size() != (std::size_t{1} << j)) {
        throw std::invalid_argument("level " + std::to_string(j) + " must hold 2^j coefficients");
      }
    }
  }

  static HaarCoeffs zero(int depth) {
    std::vector<std::vector<double>> levels(static_cast<std::size_t>(depth));
    for (int j = 0; j < depth; ++j) levels[static_cast<std::size_t>(j)].assign(std::size_t{1} << j, 0.0);
    return {depth, 0.0, std::move(levels)};
  }

  [[nodiscard]] int depth() const { return depth_; }
  [[nodiscard]] double mean() const { return mean_; }
  double& mean() { return mean_; }
  [[nodiscard]] const std::vector<std::vector<double>>& levels() const { return levels_; }
  std::vector<std::vector<double>>& levels() { return levels_; }

  [[nodiscard]] double at(const DyadicIndex& I) const {
    if (I.level >= depth_) return 0.0;
    return levels_[static_cast<std::size_t>(I.level)][static_cast<std::size_t>(I.pos)];
  }
  double& at(const DyadicIndex& I) {
    return levels_[static_cast<std::size_t>(I.level)][static_cast<std::size_t>(I.pos)];
  }

  /// Same spectrum viewed at a deeper grid; new levels are zero.
  [[nodiscard]] HaarCoeffs padded(int new_depth) const {
    if (new_depth < depth_) throw std::invalid_argument("padding cannot decrease depth");
    HaarCoeffs out = *this;
    out.depth_ = new_depth;
    out.levels_.resize(static_cast<std::size_t>(new_depth));
    for (int j = depth_; j < new_depth; ++j) {
      out.levels_[static_cast<std::size_t>(j)].assign(std::size_t{1} << j, 0.0);
    }
    return out;
  }

  /// mean^2 + sum of squared coefficients; equals the squared L^2 norm.
  [[nodiscard]] double energy() const {
    double e = mean_ * mean_;
    for (const auto& lvl : levels_)
      for (double c : lvl) e += c * c;
    return e;
  }

 private:
  int depth_;
  double mean_;
  std::vector<std::vector<double>> levels_;
};

/// Bottom-up O(2^N) cascade producing all (f,h_I) and the global mean.
/// (f,h_I) = 2^{-j/2-1} (mean over left child - mean over right child).
inline HaarCoeffs haar_analyze(const StepFunction& f) {
  const int n = f.depth();
  std::vector<std::vector<double>> levels(static_cast<std::size_t>(n));
  std::vector<double> avg = f.values();
  for (int j = n - 1; j >= 0; --j) {
    const double scale = std::ldexp(1.0, -1) * std::sqrt(std::ldexp(1.0, -j));
    auto& lvl = levels[static_cast<std::size_t>(j)];
    lvl.resize(std::size_t{1} << j);
    for (std::size_t k = 0; k < lvl.size(); ++k) {
      lvl[k] = scale * (avg[2 * k] - avg[2 * k + 1]);
      avg[k] = 0.5 * (avg[2 * k] + avg[2 * k + 1]);
    }
    avg.resize(std::size_t{1} << j);
  }
  return {n, avg[0], std::move(levels)};
}

/// Top-down inverse cascade.
inline StepFunction haar_synthesize(const HaarCoeffs& c) {
  const int n = c.depth();
  std::vector<double> v(std::size_t{1} << n);
  v[0] = c.mean();
  for (int j = 0; j < n; ++j) {
    const double scale = std::sqrt(std::ldexp(1.0, j));
    const auto& lvl = c.levels()[static_cast<std::size_t>(j)];
    const std::size_t m = std::size_t{1} << j;
    for (std::size_t k = m; k-- > 0;) {
      const double a = v[k];
      const double d = scale * lvl[k];
      v[2 * k] = a + d;
      v[2 * k + 1] = a - d;
    }
  }
  return {n, std::move(v)};
}

/// The Haar function h_I as a step function of depth level(I)+1.
inline StepFunction haar_function(const DyadicIndex& I) {
  HaarCoeffs c = HaarCoeffs::zero(I.level + 1);
  c.at(I) = 1.0;
  return haar_synthesize(c);
}

}  // namespace dysob

#endif  // DYSOB_HAAR_HPP
