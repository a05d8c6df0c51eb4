#ifndef DYSOB_SPECTRAL_HPP
#define DYSOB_SPECTRAL_HPP

#include <Eigen/Dense>
#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dysob/carleson.hpp"
#include "dysob/haar.hpp"
#include "dysob/operators.hpp"
#include "dysob/step_function.hpp"

namespace dysob {

/// Largest Rayleigh quotient found by power iteration, with the attaining
/// spectral vector and convergence diagnostics. The value is always a valid
/// lower bound at its own vector.
struct SpectralEstimate {
  double value = 0.0;
  HaarCoeffs vector;
  long iterations = 0;
  double residual = 0.0;
  bool converged = true;
};

namespace detail {

/// Heap layout of spectral coordinates at a given depth: index 0 is the
/// mean, index 2^j + k is the coefficient at (j,k). Dimension 2^depth.
inline std::size_t coord_count(int depth) { return std::size_t{1} << depth; }

inline HaarCoeffs coords_to_haar(const Eigen::VectorXd& x, int depth) {
  HaarCoeffs c = HaarCoeffs::zero(depth);
  c.mean() = x[0];
  for (int j = 0; j < depth; ++j) {
    for (std::int64_t k = 0; k < (std::int64_t{1} << j); ++k) {
      c.at({j, k}) = x[(std::int64_t{1} << j) + k];
    }
  }
  return c;
}

inline Eigen::VectorXd haar_to_coords(const HaarCoeffs& c, int depth) {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(coord_count(depth)));
  x[0] = c.mean();
  for (int j = 0; j < std::min(depth, c.depth()); ++j) {
    for (std::int64_t k = 0; k < (std::int64_t{1} << j); ++k) {
      x[(std::int64_t{1} << j) + k] = c.at({j, k});
    }
  }
  return x;
}

/// Diagonal of the Sobolev inner product in spectral coordinates: 1 for the
/// mean, 1 + |I|^{-2s} per coefficient.
inline Eigen::VectorXd sobolev_diagonal(int depth, FracParameter s) {
  Eigen::VectorXd d(static_cast<Eigen::Index>(coord_count(depth)));
  d[0] = 1.0;
  for (int j = 0; j < depth; ++j) {
    const double w = 1.0 + std::pow(2.0, 2.0 * s.s * j);
    for (std::int64_t k = 0; k < (std::int64_t{1} << j); ++k) d[(std::int64_t{1} << j) + k] = w;
  }
  return d;
}

struct PowerResult {
  double value = 0.0;
  Eigen::VectorXd y;
  long iterations = 0;
  double residual = 0.0;
  bool converged = true;
};

/// Power iteration on a symmetric positive semidefinite operator. The
/// returned value is always the Rayleigh quotient of the returned vector.
template <typename Apply>
PowerResult power_iteration(Apply&& apply, Eigen::VectorXd y, double rel_residual, long max_iters) {
  PowerResult r;
  for (long it = 1; it <= max_iters + 1; ++it) {
    const Eigen::VectorXd by = apply(y);
    const double yy = y.squaredNorm();
    const double lambda = y.dot(by) / yy;
    r.iterations = it;
    r.value = lambda;
    if (lambda <= 0.0 || by.norm() == 0.0) {
      r.value = std::max(lambda, 0.0);
      r.residual = 0.0;
      r.converged = true;
      break;
    }
    r.residual = (by - lambda * y).norm() / (lambda * std::sqrt(yy));
    if (r.residual <= rel_residual || it > max_iters) {
      r.converged = r.residual <= rel_residual;
      break;
    }
    y = by / by.norm();
  }
  r.y = std::move(y);
  return r;
}

}  // namespace detail

/// Best constant in the averaging embedding: the largest value of
/// sum_I mu(I) <f>_I^2 over f with unit squared Sobolev norm, at the given
/// function depth. Both quadratic forms are applied matrix-free in spectral
/// coordinates; the Sobolev form is diagonal there.
inline SpectralEstimate embedding_constant(const CarlesonSequence& mu, FracParameter s, int depth) {
  if (depth < mu.depth()) throw std::invalid_argument("depth must cover the support of mu");
  const std::size_t n = detail::coord_count(depth);
  const int L = mu.depth();
  const Eigen::VectorXd diag = detail::sobolev_diagonal(depth, s);
  const Eigen::VectorXd sqrt_diag = diag.cwiseSqrt();

  // A x: half-gradient of sum_j mu_j[k] a_j[k]^2 where a are the partial
  // synthesis averages of the spectral vector x.
  auto apply_A = [&](const Eigen::VectorXd& x) {
    std::vector<std::vector<double>> a(static_cast<std::size_t>(L) + 1);
    a[0] = {x[0]};
    for (int j = 0; j < L; ++j) {
      const double scale = std::sqrt(std::ldexp(1.0, j));
      auto& next = a[static_cast<std::size_t>(j) + 1];
      next.resize(std::size_t{1} << (j + 1));
      for (std::int64_t k = 0; k < (std::int64_t{1} << j); ++k) {
        const double base = a[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
        const double d = scale * x[(std::int64_t{1} << j) + k];
        next[static_cast<std::size_t>(2 * k)] = base + d;
        next[static_cast<std::size_t>(2 * k + 1)] = base - d;
      }
    }
    // Backward accumulation of g_j[k] = mu_j[k] a_j[k] + children.
    std::vector<double> g = a[static_cast<std::size_t>(L)];
    for (std::size_t k = 0; k < g.size(); ++k) g[k] *= mu.levels()[static_cast<std::size_t>(L)][k];
    Eigen::VectorXd out = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
    for (int j = L - 1; j >= 0; --j) {
      const double scale = std::sqrt(std::ldexp(1.0, j));
      std::vector<double> up(std::size_t{1} << j);
      for (std::int64_t k = 0; k < (std::int64_t{1} << j); ++k) {
        out[(std::int64_t{1} << j) + k] =
            scale * (g[static_cast<std::size_t>(2 * k)] - g[static_cast<std::size_t>(2 * k + 1)]);
        up[static_cast<std::size_t>(k)] =
            mu.levels()[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] *
                a[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] +
            g[static_cast<std::size_t>(2 * k)] + g[static_cast<std::size_t>(2 * k + 1)];
      }
      g = std::move(up);
    }
    out[0] = g[0];
    return out;
  };

  auto apply_B = [&](const Eigen::VectorXd& y) {
    const Eigen::VectorXd x = y.cwiseQuotient(sqrt_diag);
    return apply_A(x).cwiseQuotient(sqrt_diag).eval();
  };

  const detail::PowerResult r = detail::power_iteration(
      apply_B, Eigen::VectorXd::Ones(static_cast<Eigen::Index>(n)), 1e-10, 10000);
  SpectralEstimate est;
  est.value = r.value;
  est.iterations = r.iterations;
  est.residual = r.residual;
  est.converged = r.converged;
  est.vector = detail::coords_to_haar(r.y.cwiseQuotient(sqrt_diag), depth);
  return est;
}

/// Operator norm on the Sobolev space at a fixed input depth. The operator
/// may deepen the grid by one level; its matrix in spectral coordinates is
/// assembled column by column, and the norm is the square root of the top
/// generalized Rayleigh quotient of the normal form.
inline SpectralEstimate operator_norm_hs(
    const std::function<StepFunction(const StepFunction&)>& op, FracParameter s, int depth) {
  const std::size_t nin = detail::coord_count(depth);
  const std::size_t nout = detail::coord_count(depth + 1);
  Eigen::MatrixXd M(static_cast<Eigen::Index>(nout), static_cast<Eigen::Index>(nin));
  for (std::size_t i = 0; i < nin; ++i) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(nin));
    e[static_cast<Eigen::Index>(i)] = 1.0;
    const StepFunction basis = haar_synthesize(detail::coords_to_haar(e, depth));
    StepFunction image = op(basis);
    if (image.depth() > depth + 1) {
      throw std::invalid_argument("operator must not deepen the grid by more than one level");
    }
    image = image.refined(depth + 1);
    M.col(static_cast<Eigen::Index>(i)) = detail::haar_to_coords(haar_analyze(image), depth + 1);
  }
  const Eigen::VectorXd din = detail::sobolev_diagonal(depth, s);
  const Eigen::VectorXd dout = detail::sobolev_diagonal(depth + 1, s);
  const Eigen::VectorXd sqrt_din = din.cwiseSqrt();

  auto apply_B = [&](const Eigen::VectorXd& y) {
    const Eigen::VectorXd t = y.cwiseQuotient(sqrt_din);
    const Eigen::VectorXd u = dout.cwiseProduct(M * t);
    return (M.transpose() * u).cwiseQuotient(sqrt_din).eval();
  };

  const detail::PowerResult r = detail::power_iteration(
      apply_B, Eigen::VectorXd::Ones(static_cast<Eigen::Index>(nin)), 1e-9, 10000);
  SpectralEstimate est;
  est.value = std::sqrt(std::max(r.value, 0.0));
  est.iterations = r.iterations;
  est.residual = r.residual;
  est.converged = r.converged;
  est.vector = detail::coords_to_haar(r.y.cwiseQuotient(sqrt_din), depth);
  return est;
}

}  // namespace dysob

#endif  // DYSOB_SPECTRAL_HPP
