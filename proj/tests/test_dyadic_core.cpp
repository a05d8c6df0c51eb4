#include <catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "dysob/dyadic_index.hpp"
#include "dysob/haar.hpp"
#include "dysob/random.hpp"
#include "dysob/step_function.hpp"

using namespace dysob;

namespace {

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  REQUIRE(a.size() == b.size());
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

std::vector<DyadicIndex> all_indices_up_to(int max_level) {
  std::vector<DyadicIndex> out;
  for (int j = 0; j <= max_level; ++j) {
    for (std::int64_t k = 0; k < (std::int64_t{1} << j); ++k) out.push_back({j, k});
  }
  return out;
}

}  // namespace

TEST_CASE("dyadic index arithmetic") {
  const DyadicIndex I{3, 5};
  CHECK(I.measure() == 0.125);
  CHECK(I.left_child() == DyadicIndex{4, 10});
  CHECK(I.right_child() == DyadicIndex{4, 11});
  CHECK(I.left_child().parent() == I);
  CHECK(I.right_child().parent() == I);
  CHECK(I.is_right_child());
  CHECK(kUnitInterval.contains(I));
  CHECK_THROWS_AS(kUnitInterval.parent(), std::invalid_argument);
}

TEST_CASE("two indices are disjoint, nested, or equal") {
  const auto idx = all_indices_up_to(4);
  for (const auto& a : idx) {
    for (const auto& b : idx) {
      const bool nested = a.contains(b) || b.contains(a);
      const bool equal = a == b;
      CHECK((nested || a.disjoint_from(b)));
      if (equal) CHECK(nested);
      // Nesting agrees with endpoints.
      const bool geom = a.left_endpoint() <= b.left_endpoint() &&
                        b.left_endpoint() + b.measure() <= a.left_endpoint() + a.measure();
      CHECK(a.contains(b) == (geom && a.level <= b.level));
    }
  }
}

TEST_CASE("step function integral and refinement are exact") {
  const StepFunction f(2, {1.0, -3.0, 0.5, 2.0});
  CHECK(integral(f) == 0.25 * (1.0 - 3.0 + 0.5 + 2.0));
  for (int m = 3; m <= 8; ++m) {
    const StepFunction g = f.refined(m);
    CHECK(integral(g) == integral(f));
    CHECK(average(g, {1, 1}) == average(f, {1, 1}));
    CHECK(inner(g, g) == inner(f, f));
  }
}

TEST_CASE("haar analysis of simple functions") {
  SECTION("constant function has only a mean") {
    const HaarCoeffs c = haar_analyze(StepFunction::constant(1.0));
    CHECK(c.depth() == 0);
    CHECK(c.mean() == 1.0);
  }
  SECTION("indicator of the left half") {
    const HaarCoeffs c = haar_analyze(StepFunction(1, {1.0, 0.0}));
    CHECK(c.mean() == 0.5);
    CHECK(c.at({0, 0}) == 0.5);
  }
}

TEST_CASE("haar synthesis of simple spectra") {
  SECTION("pure mean") {
    const StepFunction f = haar_synthesize(HaarCoeffs(0, 1.0, {}));
    CHECK(f.values() == std::vector<double>{1.0});
  }
  SECTION("single root coefficient gives the root Haar function") {
    HaarCoeffs c = HaarCoeffs::zero(1);
    c.at({0, 0}) = 1.0;
    const StepFunction f = haar_synthesize(c);
    CHECK(f.values() == std::vector<double>{1.0, -1.0});
  }
}

TEST_CASE("round trip and Parseval on seeded random functions") {
  for (int trial = 0; trial < 1000; ++trial) {
    const int depth = 1 + static_cast<int>(SplitMix(7u, trial).next_u64() % 10);
    const StepFunction f = random_step_function(sample_seed(2024, 1, trial), depth);
    const HaarCoeffs c = haar_analyze(f);
    const StepFunction back = haar_synthesize(c);
    REQUIRE(back.depth() == f.depth());
    REQUIRE(max_abs_diff(back.values(), f.values()) < 1e-12);

    const double direct = inner(f, f);
    REQUIRE(std::abs(direct - c.energy()) <= 1e-12 * std::max(1.0, direct));
  }
}

TEST_CASE("analysis of synthesis is the identity on spectra") {
  for (int trial = 0; trial < 200; ++trial) {
    const HaarCoeffs c = random_haar_coeffs(sample_seed(99, 2, trial), 8);
    const HaarCoeffs back = haar_analyze(haar_synthesize(c));
    REQUIRE(std::abs(back.mean() - c.mean()) < 1e-12);
    for (int j = 0; j < 8; ++j) {
      REQUIRE(max_abs_diff(back.levels()[j], c.levels()[j]) < 1e-12);
    }
  }
}

TEST_CASE("averages") {
  SECTION("constants average to themselves") {
    const StepFunction f = StepFunction::constant(3.5, 4);
    for (const auto& I : all_indices_up_to(6)) CHECK(average(f, I) == 3.5);
  }
  SECTION("left-half indicator averages to 1/2 over the root") {
    CHECK(average(StepFunction(1, {1.0, 0.0}), kUnitInterval) == 0.5);
  }
  SECTION("midpoint identity on random functions") {
    const StepFunction f = random_step_function(31337, 7);
    for (const auto& I : all_indices_up_to(6)) {
      const double lhs = average(f, I);
      const double rhs = 0.5 * (average(f, I.left_child()) + average(f, I.right_child()));
      CHECK(std::abs(lhs - rhs) < 1e-14);
    }
  }
  SECTION("finer-than-grid averages return the leaf value") {
    const StepFunction f(1, {2.0, -1.0});
    CHECK(average(f, {5, 0}) == 2.0);
    CHECK(average(f, {5, 31}) == -1.0);
  }
}

TEST_CASE("inner products") {
  SECTION("haar functions are orthonormal") {
    const auto idx = all_indices_up_to(5);
    for (const auto& a : idx) {
      for (const auto& b : idx) {
        const double ip = inner(haar_function(a), haar_function(b));
        CHECK(std::abs(ip - (a == b ? 1.0 : 0.0)) < 1e-12);
      }
    }
  }
  SECTION("pairing of the left-half indicator with the root Haar function") {
    CHECK(inner(StepFunction(1, {1.0, 0.0}), haar_function(kUnitInterval)) == 0.5);
  }
}

TEST_CASE("haar coefficients are refinement invariant bit for bit") {
  const StepFunction f = random_step_function(555, 6);
  const HaarCoeffs c = haar_analyze(f);
  const HaarCoeffs cr = haar_analyze(f.refined(9));
  CHECK(cr.mean() == c.mean());
  for (int j = 0; j < 6; ++j) CHECK(cr.levels()[j] == c.levels()[j]);
  for (int j = 6; j < 9; ++j) {
    for (double x : cr.levels()[j]) CHECK(x == 0.0);
  }
}

TEST_CASE("average of a Haar function over a strictly contained interval") {
  // Equals +/- |J|^{-1/2} according to the child of J containing I.
  for (const auto& J : all_indices_up_to(4)) {
    const StepFunction hJ = haar_function(J);
    for (const auto& I : all_indices_up_to(5)) {
      if (!J.strictly_contains(I)) continue;
      const double got = average(hJ, I);
      CHECK(got == haar_value_on(J, I));
      CHECK(std::abs(std::abs(got) - std::sqrt(std::ldexp(1.0, J.level))) < 1e-12);
    }
  }
}
