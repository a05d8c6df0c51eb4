#ifndef DYSOB_CARLESON_HPP
#define DYSOB_CARLESON_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dysob/capacity.hpp"
#include "dysob/dyadic_index.hpp"
#include "dysob/haar.hpp"
#include "dysob/operators.hpp"
#include "dysob/step_function.hpp"

namespace dysob {

/// Nonnegative weights mu(I) on the dyadic intervals of levels 0..depth.
class CarlesonSequence {
 public:
  explicit CarlesonSequence(int depth = 0) : depth_(depth) {
    if (depth < 0) throw std::invalid_argument("depth must be nonnegative");
    mu_.resize(static_cast<std::size_t>(depth) + 1);
    for (int j = 0; j <= depth; ++j) mu_[static_cast<std::size_t>(j)].assign(std::size_t{1} << j, 0.0);
  }

  [[nodiscard]] int depth() const { return depth_; }

  [[nodiscard]] double at(const DyadicIndex& I) const {
    if (I.level > depth_) return 0.0;
    return mu_[static_cast<std::size_t>(I.level)][static_cast<std::size_t>(I.pos)];
  }

  void set(const DyadicIndex& I, double value) {
    if (value < 0.0) throw std::invalid_argument("carleson weights must be nonnegative");
    if (I.level > depth_) throw std::invalid_argument("level exceeds sequence depth");
    mu_[static_cast<std::size_t>(I.level)][static_cast<std::size_t>(I.pos)] = value;
  }

  [[nodiscard]] const std::vector<std::vector<double>>& levels() const { return mu_; }

  [[nodiscard]] double total_mass() const {
    double t = 0.0;
    for (const auto& lvl : mu_)
      for (double x : lvl) t += x;
    return t;
  }

  /// Subtree sums: out[j][k] = sum of mu over all intervals inside (j,k).
  [[nodiscard]] std::vector<std::vector<double>> subtree_sums() const {
    std::vector<std::vector<double>> t = mu_;
    for (int j = depth_ - 1; j >= 0; --j) {
      auto& cur = t[static_cast<std::size_t>(j)];
      const auto& fine = t[static_cast<std::size_t>(j) + 1];
      for (std::size_t k = 0; k < cur.size(); ++k) cur[k] += fine[2 * k] + fine[2 * k + 1];
    }
    return t;
  }

  /// Copy with every weight at levels <= cutoff set to zero (the tail part).
  [[nodiscard]] CarlesonSequence tail_from(int cutoff) const {
    CarlesonSequence out = *this;
    for (int j = 0; j <= std::min(cutoff, depth_); ++j) {
      out.mu_[static_cast<std::size_t>(j)].assign(std::size_t{1} << j, 0.0);
    }
    return out;
  }

  /// Same weights viewed at a deeper support; new levels are zero.
  [[nodiscard]] CarlesonSequence padded(int new_depth) const {
    if (new_depth < depth_) throw std::invalid_argument("padding cannot decrease depth");
    CarlesonSequence out = *this;
    out.depth_ = new_depth;
    out.mu_.resize(static_cast<std::size_t>(new_depth) + 1);
    for (int j = depth_ + 1; j <= new_depth; ++j) {
      out.mu_[static_cast<std::size_t>(j)].assign(std::size_t{1} << j, 0.0);
    }
    return out;
  }

 private:
  int depth_;
  std::vector<std::vector<double>> mu_;
};

/// The induced weights mu(I) = |I|^{-2s} (b,h_I)^2 whose Carleson functional
/// is the squared fractional BMO norm of the symbol b.
inline CarlesonSequence bmo_weights(const StepFunction& b, FracParameter s) {
  const HaarCoeffs c = haar_analyze(b);
  const int d = c.depth() > 0 ? c.depth() - 1 : 0;
  CarlesonSequence mu(d);
  for (int j = 0; j < c.depth(); ++j) {
    const double w = std::pow(2.0, 2.0 * s.s * j);
    for (std::int64_t k = 0; k < (std::int64_t{1} << j); ++k) {
      const double x = c.at({j, k});
      mu.set({j, k}, w * x * x);
    }
  }
  return mu;
}

/// Visit every nonempty antichain (collection of pairwise disjoint
/// intervals) of the dyadic tree restricted to levels 0..max_level. The
/// visited vector is reused between calls.
inline void for_each_antichain(int max_level,
                               const std::function<void(const std::vector<DyadicIndex>&)>& visit) {
  std::vector<DyadicIndex> current;
  // Emits all antichains of the subtree at I (including the empty one),
  // invoking `done` once per antichain with members pushed onto `current`.
  std::function<void(DyadicIndex, const std::function<void()>&)> emit =
      [&](DyadicIndex I, const std::function<void()>& done) {
        if (I.level == max_level) {
          done();
          current.push_back(I);
          done();
          current.pop_back();
          return;
        }
        current.push_back(I);
        done();
        current.pop_back();
        emit(I.left_child(), [&] { emit(I.right_child(), done); });
      };
  emit(kUnitInterval, [&] {
    if (!current.empty()) visit(current);
  });
}

/// Number of antichains (including the empty one) at the given tree height:
/// a(0) = 2, a(h) = a(h-1)^2 + 1.
inline std::uint64_t antichain_count(int max_level) {
  std::uint64_t a = 2;
  for (int h = 1; h <= max_level; ++h) a = a * a + 1;
  return a;
}

enum class CarlesonMode { exact, heuristic };

/// A finite disjoint collection with its mass, the capacity of its union,
/// and their quotient; the exact/heuristic supremum of `ratio` over
/// collections is the squared Carleson functional.
struct CollectionValue {
  std::vector<DyadicIndex> collection;
  double mass = 0.0;
  CapacityEstimate cap;
  double ratio = 0.0;
  bool heuristic = false;
};

namespace detail {

inline std::uint32_t leaf_mask_at(const std::vector<DyadicIndex>& collection, int depth) {
  std::uint32_t mask = 0;
  for (const auto& I : collection) {
    const int extra = depth - I.level;
    for (std::int64_t t = 0; t < (std::int64_t{1} << extra); ++t) {
      mask |= std::uint32_t{1} << ((I.pos << extra) + t);
    }
  }
  return mask;
}

inline DyadicSet set_from_mask(std::uint32_t mask, int depth) {
  std::vector<std::int64_t> leaves;
  for (std::int64_t k = 0; k < (std::int64_t{1} << depth); ++k) {
    if (mask & (std::uint32_t{1} << k)) leaves.push_back(k);
  }
  return {depth, std::move(leaves)};
}

}  // namespace detail

/// Shareable cache of capacity values keyed by the canonical leaf set of the
/// union. One cache is only valid for a fixed (s, solve_depth) context.
/// Concurrent duplicate solves are harmless: the solver is deterministic, so
/// every insert for a key stores the same value.
class CapacityCache {
 public:
  template <typename Solve>
  double get_or_solve(int depth, std::uint32_t mask, Solve&& solve) {
    const std::uint64_t key = (static_cast<std::uint64_t>(depth) << 32) | mask;
    {
      std::lock_guard<std::mutex> lock(m_);
      const auto it = map_.find(key);
      if (it != map_.end()) return it->second;
    }
    const double value = solve();
    std::lock_guard<std::mutex> lock(m_);
    return map_.emplace(key, value).first->second;
  }

 private:
  std::mutex m_;
  std::unordered_map<std::uint64_t, double> map_;
};

/// Exact squared Carleson functional by full antichain enumeration.
/// Capacities are memoized by the union's canonical leaf set, since the
/// capacity depends only on the union. Guarded to support depth 3 (4 behind
/// the explicit flag): the antichain count squares with each level.
inline CollectionValue carleson_norm_exact(const CarlesonSequence& mu, FracParameter s,
                                           int solve_depth, bool allow_depth_4 = false,
                                           CapacityCache* cache = nullptr) {
  const int d = mu.depth();
  if (d > 4 || (d > 3 && !allow_depth_4)) {
    throw std::invalid_argument("exact mode is limited to depth 3 (4 with the override flag)");
  }
  if (solve_depth < d) throw std::invalid_argument("solve_depth must be >= sequence depth");
  const auto sums = mu.subtree_sums();

  std::unordered_map<std::uint32_t, double> local_memo;
  auto cap_of = [&](const std::vector<DyadicIndex>& collection) {
    const std::uint32_t mask = detail::leaf_mask_at(collection, d);
    auto solve = [&] { return capacity(detail::set_from_mask(mask, d), s, solve_depth).value; };
    if (cache) return cache->get_or_solve(d, mask, solve);
    const auto it = local_memo.find(mask);
    if (it != local_memo.end()) return it->second;
    return local_memo.emplace(mask, solve()).first->second;
  };

  std::vector<DyadicIndex> best_collection{kUnitInterval};
  double best_ratio = -1.0, best_mass = 0.0;
  for_each_antichain(d, [&](const std::vector<DyadicIndex>& collection) {
    double mass = 0.0;
    for (const auto& I : collection) {
      mass += sums[static_cast<std::size_t>(I.level)][static_cast<std::size_t>(I.pos)];
    }
    const double ratio = mass > 0.0 ? mass / cap_of(collection) : 0.0;
    if (ratio > best_ratio) {
      best_ratio = ratio;
      best_mass = mass;
      best_collection = collection;
    }
  });

  CollectionValue out;
  out.collection = best_collection;
  out.mass = best_mass;
  out.cap = capacity(DyadicSet::from_intervals(best_collection, d), s, solve_depth);
  out.ratio = best_mass > 0.0 ? best_mass / out.cap.value : 0.0;
  out.heuristic = false;
  return out;
}

/// Best single-interval collection; every evaluated ratio uses a genuine
/// capacity solve, so the result is a certified lower bound for the
/// squared Carleson functional.
inline CollectionValue carleson_single_interval(const CarlesonSequence& mu, FracParameter s,
                                                int solve_depth) {
  const int d = mu.depth();
  const auto sums = mu.subtree_sums();
  // By the tree symmetry of the quadratic form, the capacity of a single
  // dyadic interval depends only on its level.
  std::vector<double> cap_level(static_cast<std::size_t>(d) + 1);
  for (int j = 0; j <= d; ++j) {
    cap_level[static_cast<std::size_t>(j)] =
        capacity(DyadicSet::from_interval({j, 0}, j), s, std::max(solve_depth, j)).value;
  }
  CollectionValue best;
  best.collection = {kUnitInterval};
  best.ratio = -1.0;
  for (int j = 0; j <= d; ++j) {
    for (std::int64_t k = 0; k < (std::int64_t{1} << j); ++k) {
      const double mass = sums[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
      const double ratio = mass > 0.0 ? mass / cap_level[static_cast<std::size_t>(j)] : 0.0;
      if (ratio > best.ratio) {
        best.collection = {DyadicIndex{j, k}};
        best.mass = mass;
        best.ratio = ratio;
      }
    }
  }
  if (best.ratio < 0.0) best.ratio = 0.0;
  best.cap = capacity(DyadicSet::from_intervals(best.collection, std::max(best.collection[0].level, 0)),
                      s, std::max(solve_depth, best.collection[0].level));
  best.heuristic = true;
  return best;
}

/// Heuristic squared Carleson functional: best single interval, best full
/// level, and a greedy union grown by surrogate marginal ratio, with one
/// genuine capacity solve on the final greedy collection. Always a lower
/// bound for the exact supremum.
inline CollectionValue carleson_norm_heuristic(const CarlesonSequence& mu, FracParameter s,
                                               int solve_depth) {
  const int d = mu.depth();
  if (solve_depth < d) throw std::invalid_argument("solve_depth must be >= sequence depth");
  const auto sums = mu.subtree_sums();
  std::vector<double> cap_level(static_cast<std::size_t>(d) + 1);
  for (int j = 0; j <= d; ++j) {
    cap_level[static_cast<std::size_t>(j)] =
        capacity(DyadicSet::from_interval({j, 0}, j), s, std::max(solve_depth, j)).value;
  }

  CollectionValue best = carleson_single_interval(mu, s, solve_depth);

  // Full levels: the union is all of [0,1], whose capacity is exactly 1.
  for (int j = 0; j <= d; ++j) {
    double mass = 0.0;
    for (double x : sums[static_cast<std::size_t>(j)]) mass += x;
    if (mass > best.ratio) {
      best.collection.clear();
      for (std::int64_t k = 0; k < (std::int64_t{1} << j); ++k) best.collection.push_back({j, k});
      best.mass = mass;
      best.ratio = mass;
      best.cap = capacity(DyadicSet::whole(0), s, solve_depth);
    }
  }

  // Greedy growth from the best single interval, guided by the subadditive
  // surrogate capacity (sum of per-level interval capacities).
  CollectionValue greedy = carleson_single_interval(mu, s, solve_depth);
  if (greedy.mass > 0.0) {
    std::vector<DyadicIndex> chosen = greedy.collection;
    double mass = greedy.mass;
    double cap_surrogate = cap_level[static_cast<std::size_t>(chosen[0].level)];
    std::vector<char> taken(std::size_t{1} << d, 0);
    for (const auto& I : chosen) {
      for (std::int64_t t = 0; t < (std::int64_t{1} << (d - I.level)); ++t) {
        taken[static_cast<std::size_t>((I.pos << (d - I.level)) + t)] = 1;
      }
    }
    for (int step = 0; step < 64; ++step) {
      double best_gain = mass / cap_surrogate;
      DyadicIndex pick{0, -1};
      for (int j = 0; j <= d; ++j) {
        for (std::int64_t k = 0; k < (std::int64_t{1} << j); ++k) {
          bool disjoint = true;
          for (std::int64_t t = 0; disjoint && t < (std::int64_t{1} << (d - j)); ++t) {
            disjoint = !taken[static_cast<std::size_t>((k << (d - j)) + t)];
          }
          if (!disjoint) continue;
          const double m = sums[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
          if (m <= 0.0) continue;
          const double gain = (mass + m) / (cap_surrogate + cap_level[static_cast<std::size_t>(j)]);
          if (gain > best_gain) {
            best_gain = gain;
            pick = {j, k};
          }
        }
      }
      if (pick.pos < 0) break;
      chosen.push_back(pick);
      mass += sums[static_cast<std::size_t>(pick.level)][static_cast<std::size_t>(pick.pos)];
      cap_surrogate += cap_level[static_cast<std::size_t>(pick.level)];
      for (std::int64_t t = 0; t < (std::int64_t{1} << (d - pick.level)); ++t) {
        taken[static_cast<std::size_t>((pick.pos << (d - pick.level)) + t)] = 1;
      }
    }
    if (chosen.size() > greedy.collection.size()) {
      const CapacityEstimate cap = capacity(DyadicSet::from_intervals(chosen, d), s, solve_depth);
      const double ratio = mass / cap.value;
      if (ratio > best.ratio) {
        best.collection = std::move(chosen);
        best.mass = mass;
        best.cap = cap;
        best.ratio = ratio;
      }
    }
  }

  best.heuristic = true;
  return best;
}

inline CollectionValue carleson_norm(const CarlesonSequence& mu, FracParameter s, CarlesonMode mode,
                                     int solve_depth, bool allow_depth_4 = false,
                                     CapacityCache* cache = nullptr) {
  return mode == CarlesonMode::exact
             ? carleson_norm_exact(mu, s, solve_depth, allow_depth_4, cache)
             : carleson_norm_heuristic(mu, s, solve_depth);
}

/// Squared fractional BMO functional of a symbol: the Carleson functional of
/// its induced weights. The norm itself is sqrt(ratio).
inline CollectionValue bmo_s_norm(const StepFunction& b, FracParameter s, CarlesonMode mode,
                                  int solve_depth, bool allow_depth_4 = false,
                                  CapacityCache* cache = nullptr) {
  return carleson_norm(bmo_weights(b, s), s, mode, solve_depth, allow_depth_4, cache);
}

/// Tail functional at a cutoff: the same supremum with weights restricted to
/// intervals of measure < 2^{-cutoff}. Zero exactly once the cutoff reaches
/// the symbol's coefficient depth.
inline double cmo_tail(const StepFunction& b, FracParameter s, int cutoff, CarlesonMode mode,
                       int solve_depth, bool allow_depth_4 = false, CapacityCache* cache = nullptr) {
  const CarlesonSequence tail = bmo_weights(b, s).tail_from(cutoff);
  if (tail.total_mass() == 0.0) return 0.0;
  return carleson_norm(tail, s, mode, solve_depth, allow_depth_4, cache).ratio;
}

}  // namespace dysob

#endif  // DYSOB_CARLESON_HPP
