#ifndef DYSOB_IO_HPP
#define DYSOB_IO_HPP

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dysob/capacity.hpp"
#include "dysob/carleson.hpp"
#include "dysob/dyadic_index.hpp"
#include "dysob/haar.hpp"
#include "dysob/norms.hpp"
#include "dysob/spectral.hpp"
#include "dysob/step_function.hpp"

namespace dysob {

using json = nlohmann::json;

// StepFunction <-> {"depth": N, "values": [...]}
inline json to_json(const StepFunction& f) {
  return json{{"depth", f.depth()}, {"values", f.values()}};
}

inline StepFunction step_function_from_json(const json& j) {
  return {j.at("depth").get<int>(), j.at("values").get<std::vector<double>>()};
}

// HaarCoeffs <-> {"depth": N, "mean": x, "coeffs": [{"level","pos","value"}...]}
// Entries are emitted in (level, pos) order; absent entries read as zero.
inline json to_json(const HaarCoeffs& c) {
  json coeffs = json::array();
  for (int j = 0; j < c.depth(); ++j) {
    for (std::int64_t k = 0; k < (std::int64_t{1} << j); ++k) {
      coeffs.push_back(json{{"level", j}, {"pos", k}, {"value", c.at({j, k})}});
    }
  }
  return json{{"depth", c.depth()}, {"mean", c.mean()}, {"coeffs", std::move(coeffs)}};
}

inline HaarCoeffs haar_coeffs_from_json(const json& j) {
  HaarCoeffs c = HaarCoeffs::zero(j.at("depth").get<int>());
  c.mean() = j.at("mean").get<double>();
  for (const auto& e : j.at("coeffs")) {
    const DyadicIndex I{e.at("level").get<int>(), e.at("pos").get<std::int64_t>()};
    if (I.level >= c.depth()) throw std::invalid_argument("coefficient level exceeds depth");
    c.at(I) = e.at("value").get<double>();
  }
  return c;
}

// DyadicSet <-> {"depth": M, "leaves": [...]}
inline json to_json(const DyadicSet& E) {
  return json{{"depth", E.depth()}, {"leaves", E.leaves()}};
}

inline DyadicSet dyadic_set_from_json(const json& j) {
  return {j.at("depth").get<int>(), j.at("leaves").get<std::vector<std::int64_t>>()};
}

inline json to_json(const CapacityEstimate& est) {
  return json{{"value", est.value},
              {"certificate", to_json(est.certificate)},
              {"solve_depth", est.solve_depth},
              {"kkt_residual", est.kkt_residual},
              {"iterations", est.iterations},
              {"converged", est.converged}};
}

// CarlesonSequence <-> {"depth": N, "entries": [{"level","pos","mu"}...]}
inline json to_json(const CarlesonSequence& mu) {
  json entries = json::array();
  for (int j = 0; j <= mu.depth(); ++j) {
    for (std::int64_t k = 0; k < (std::int64_t{1} << j); ++k) {
      entries.push_back(json{{"level", j}, {"pos", k}, {"mu", mu.at({j, k})}});
    }
  }
  return json{{"depth", mu.depth()}, {"entries", std::move(entries)}};
}

inline CarlesonSequence carleson_sequence_from_json(const json& j) {
  CarlesonSequence mu(j.at("depth").get<int>());
  for (const auto& e : j.at("entries")) {
    mu.set({e.at("level").get<int>(), e.at("pos").get<std::int64_t>()}, e.at("mu").get<double>());
  }
  return mu;
}

inline json to_json(const NormReport& r) {
  return json{{"s", r.s},         {"l2", r.l2},           {"sup", r.sup},
              {"hs", r.hs},       {"hs_dot", r.hs_dot},   {"hs_leftright", r.hs_leftright}};
}

inline json to_json(const CollectionValue& v) {
  json coll = json::array();
  for (const auto& I : v.collection) coll.push_back(json{{"level", I.level}, {"pos", I.pos}});
  return json{{"collection", std::move(coll)}, {"mass", v.mass},
              {"capacity", to_json(v.cap)},    {"ratio", v.ratio},
              {"mode", v.heuristic ? "heuristic" : "exact"}};
}

inline json to_json(const SpectralEstimate& est) {
  return json{{"value", est.value},
              {"vector", to_json(est.vector)},
              {"iterations", est.iterations},
              {"residual", est.residual},
              {"converged", est.converged}};
}

/// Fixed-format double for CSV output: shortest representation that round
/// trips, independent of locale.
inline std::string csv_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

/// One CSV row; fields are written verbatim, separated by commas.
inline void csv_row(std::ostream& os, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) os << ',';
    os << fields[i];
  }
  os << '\n';
}

}  // namespace dysob

#endif  // DYSOB_IO_HPP
