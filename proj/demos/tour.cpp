// A short tour of the library: build a step function, look at its spectrum
// and norms, compute a capacity with its certificate, and estimate the best
// embedding constant of the induced weight sequence.

#include <cstdio>

#include <dysob/dysob.hpp>

using namespace dysob;

int main() {
  const FracParameter s(0.4);

  // A depth-3 step function: a tall block, a dip, and a tail.
  const StepFunction f(3, {2.0, 2.0, -1.0, 0.5, 0.5, 0.5, 1.0, 0.0});

  const HaarCoeffs c = haar_analyze(f);
  std::printf("mean %.4f, coefficient energy %.4f\n", c.mean(), c.energy() - c.mean() * c.mean());

  const NormReport r = norm_report(f, s);
  std::printf("norms at s=%.2f: l2 %.4f  sup %.4f  hs %.4f  hs_dot %.4f  leftright %.4f\n", r.s,
              r.l2, r.sup, r.hs, r.hs_dot, r.hs_leftright);

  // Capacity of the set where f is at least 1, with the minimizer.
  std::vector<std::int64_t> leaves;
  for (std::size_t k = 0; k < f.size(); ++k) {
    if (f.values()[k] >= 1.0) leaves.push_back(static_cast<std::int64_t>(k));
  }
  const DyadicSet E(3, leaves);
  const CapacityEstimate cap = capacity(E, s, /*solve_depth=*/8);
  std::printf("capacity of {f >= 1} (measure %.3f): %.6f  (kkt residual %.1e, %ld iterations)\n",
              E.measure(), cap.value, cap.kkt_residual, cap.iterations);

  // Level-set integral against the squared Sobolev norm.
  const StepFunction g = f.abs();
  std::printf("capacitary integral of |f|: %.6f vs squared norm %.6f\n",
              mazya_integral(g, s, 8), hs_norm_sq(haar_analyze(g), s));

  // Carleson machinery on the weights induced by the symbol.
  const CollectionValue bmos = bmo_s_norm(f, s, CarlesonMode::exact, 7);
  std::printf("squared symbol functional: %.6f attained by %zu interval(s), mass %.6f\n",
              bmos.ratio, bmos.collection.size(), bmos.mass);

  const SpectralEstimate embed = embedding_constant(bmo_weights(f, s), s, 3);
  std::printf("best embedding constant: %.6f (%ld power iterations)\n", embed.value,
              embed.iterations);

  const SpectralEstimate op = operator_norm_hs(
      [&f](const StepFunction& x) { return paraproduct(f, x); }, s, 3);
  std::printf("paraproduct operator norm: %.6f\n", op.value);
  return 0;
}
