// Copyright 2026 The rainbow-dout Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Seeded Monte Carlo experiments.
//
//   lemma3    sample D_{n,p1} with kappa colours, extract a rainbow d-out.
//   lemma4    sample D_{d-out}, truncate at Bin(n-1, p1) counts.
//   pipeline  extraction -> per-vertex shuffle -> truncation -> forget
//             orientation -> exact rainbow search for H.
//
// Every trial draws from substreams of trial_seed(seed, trial), so records
// do not depend on thread count or scheduling.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "rainbow/coloured_graph.hpp"
#include "rainbow/coupling.hpp"
#include "rainbow/rainbow_flow.hpp"
#include "rainbow/rainbow_search.hpp"
#include "rainbow/rng.hpp"
#include "rainbow/stats.hpp"
#include "rainbow/target_graphs.hpp"

namespace rainbow {

enum class Mode { lemma3, lemma4, pipeline };
enum class SweepAxis { p, kappa, d, n };

inline std::string to_string(Mode m) {
  switch (m) {
    case Mode::lemma3: return "lemma3";
    case Mode::lemma4: return "lemma4";
    case Mode::pipeline: return "pipeline";
  }
  return "lemma3";
}

inline Mode parse_mode(const std::string& s) {
  if (s == "lemma3") return Mode::lemma3;
  if (s == "lemma4") return Mode::lemma4;
  if (s == "pipeline") return Mode::pipeline;
  throw std::invalid_argument("unknown mode: " + s);
}

inline std::string to_string(SweepAxis a) {
  switch (a) {
    case SweepAxis::p: return "p";
    case SweepAxis::kappa: return "kappa";
    case SweepAxis::d: return "d";
    case SweepAxis::n: return "n";
  }
  return "p";
}

inline SweepAxis parse_axis(const std::string& s) {
  if (s == "p") return SweepAxis::p;
  if (s == "kappa") return SweepAxis::kappa;
  if (s == "d") return SweepAxis::d;
  if (s == "n") return SweepAxis::n;
  throw std::invalid_argument("unknown sweep axis: " + s);
}

struct ExperimentConfig {
  Mode mode = Mode::lemma3;
  std::uint32_t n = 10;
  /// Edge probability of G_{n,p}. lemma4 uses it as the coupling target
  /// when set, otherwise (2 - eps) d / n.
  std::optional<double> p;
  std::uint32_t kappa = 1;
  double eps = 0.5;
  std::uint32_t d = 1;
  /// Set d = ceil(20 eps^-2 ln n) instead of using `d`.
  bool lemma4_regime = false;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  /// lemma3 / pipeline: extract through a random permutation family.
  bool permute = true;
  /// pipeline: coupling target; default (2 - eps) d / n.
  std::optional<double> p_coupling;
  Family target = Family::cycle;
  std::uint32_t target_size = 0;
  unsigned threads = 1;
  /// Adds wall-clock extraction time to records. Breaks byte-reproducibility.
  bool record_timing = false;
};

struct TrialRecord {
  std::uint64_t trial = 0;
  std::uint64_t seed = 0;  // trial_seed(master, trial)
  Mode mode = Mode::lemma3;
  bool success = false;
  std::optional<std::int64_t> flow_value;
  std::optional<std::uint32_t> k_max;
  std::optional<std::uint64_t> inner_arc_count;
  std::optional<bool> extracted;
  std::optional<bool> coupled;
  std::optional<bool> embedded;
  std::optional<double> extraction_ms;
  std::optional<std::size_t> point;  // sweep grid index
  std::string notes;
};

inline void validate(const ExperimentConfig& c) {
  if (c.n < 1) throw std::invalid_argument("n must be at least 1");
  if (c.kappa < 1) throw std::invalid_argument("kappa must be at least 1");
  if (!(c.eps > 0.0)) throw std::invalid_argument("eps must be positive");
  for (auto q : {c.p, c.p_coupling})
    if (q && !(*q >= 0.0 && *q <= 1.0)) throw std::invalid_argument("probabilities must lie in [0, 1]");
  if ((c.mode == Mode::lemma3 || c.mode == Mode::pipeline) && !c.p)
    throw std::invalid_argument(to_string(c.mode) + " mode needs p");
  if (c.mode == Mode::pipeline && c.n > kExactSearchMaxVertices)
    throw std::length_error("pipeline mode is capped at n = 16 by the exact search");
}

inline std::uint32_t effective_d(const ExperimentConfig& c) {
  return c.lemma4_regime ? lemma4_regime_d(c.n, c.eps) : c.d;
}

/// Arc probability p1 with (1 - p1)^2 = 1 - p; p = 1 maps to 1.
inline double arc_probability(double p) { return p >= 1.0 ? 1.0 : split_probability(p).p1; }

namespace detail {

inline ColouredDigraph shuffle_out_lists(const ColouredDigraph& d, Rng& rng) {
  auto lists = d.out_lists();
  std::vector<Arc> arcs;
  for (auto& row : lists) {
    std::shuffle(row.begin(), row.end(), rng);
    arcs.insert(arcs.end(), row.begin(), row.end());
  }
  return ColouredDigraph{d.n(), d.kappa(), std::move(arcs)};
}

inline std::optional<RainbowDOut> extract(const ColouredDigraph& digraph, std::uint32_t d, bool permute,
                                          std::uint64_t base, Capacity& flow_value) {
  if (!permute) {
    auto got = try_extract(digraph, d);
    flow_value = got.flow_value;
    if (!got.result) return std::nullopt;
    return std::move(got.result->rainbow);
  }
  auto rng = make_rng(base, Stream::permutation);
  const auto family = PermutationFamily::sample(digraph.n(), rng);
  auto got = try_extract(apply_permutations(digraph, family, false), d);
  flow_value = got.flow_value;
  if (!got.result) return std::nullopt;
  return RainbowDOut{apply_permutations(got.result->rainbow.digraph, family, true), d};
}

}  // namespace detail

/// One trial from its base seed. Deterministic in (config, base).
inline TrialRecord run_trial(const ExperimentConfig& c, std::uint64_t trial, std::uint64_t base,
                             const TargetGraph* target = nullptr) {
  TrialRecord r;
  r.trial = trial;
  r.seed = base;
  r.mode = c.mode;
  const std::uint32_t d = effective_d(c);
  switch (c.mode) {
    case Mode::lemma3: {
      auto rng = make_rng(base, Stream::digraph);
      const auto digraph = sample_coloured_digraph(c.n, arc_probability(*c.p), c.kappa, rng);
      Capacity value = 0;
      const auto t0 = std::chrono::steady_clock::now();
      const auto got = detail::extract(digraph, d, c.permute, base, value);
      const auto t1 = std::chrono::steady_clock::now();
      r.flow_value = value;
      r.success = got.has_value();
      if (got && !is_rainbow_d_out(*got, digraph)) r.notes = "rainbow invariant violated";
      if (c.record_timing) r.extraction_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
      break;
    }
    case Mode::lemma4: {
      auto rng = make_rng(base, Stream::d_out);
      const double target_p = c.p ? *c.p : coupling_target_probability(c.n, d, c.eps);
      auto out = couple_ordered(sample_d_out(c.n, d, rng), arc_probability(target_p), rng);
      r.success = out.success;
      r.k_max = out.k_max;
      r.inner_arc_count = out.inner ? out.inner->arcs().size() : 0;
      if (out.inner && !is_subdigraph(*out.inner, out.d_out)) r.notes = "containment violated";
      break;
    }
    case Mode::pipeline: {
      if (!target) throw std::invalid_argument("pipeline trial needs a target graph");
      auto rng = make_rng(base, Stream::digraph);
      const auto digraph = sample_coloured_digraph(c.n, arc_probability(*c.p), c.kappa, rng);
      Capacity value = 0;
      const auto got = detail::extract(digraph, d, c.permute, base, value);
      r.flow_value = value;
      r.extracted = got.has_value();
      if (!got) {
        r.notes = "extraction failed";
        break;
      }
      auto shuffle_rng = make_rng(base, Stream::shuffle);
      auto ordered = detail::shuffle_out_lists(got->digraph, shuffle_rng);
      auto bin_rng = make_rng(base, Stream::binomial);
      const double target_p = c.p_coupling ? *c.p_coupling : coupling_target_probability(c.n, d, c.eps);
      auto coupled = couple_ordered(std::move(ordered), arc_probability(std::min(target_p, 1.0)), bin_rng);
      r.k_max = coupled.k_max;
      r.coupled = coupled.success;
      if (!coupled.success) {
        r.notes = "coupling failed";
        break;
      }
      r.inner_arc_count = coupled.inner->arcs().size();
      auto coalesce_rng = make_rng(base, Stream::coalesce);
      const auto g = coalesce_orientation(*coupled.inner, coalesce_rng);
      const auto emb = find_rainbow_copy_exact(g, *target);
      r.embedded = emb.has_value();
      r.success = emb.has_value();
      if (emb && !verify_embedding(g, *target, *emb)) r.notes = "embedding audit failed";
      break;
    }
  }
  return r;
}

inline TargetGraph pipeline_target(const ExperimentConfig& c) {
  auto rng = make_rng(c.seed, 0, Stream::tree);
  const std::uint32_t size = c.target_size ? c.target_size : c.n;
  auto h = make_family(c.target, size, rng);
  if (h.n != c.n) throw std::invalid_argument("target " + h.name + " is not spanning for n = " + std::to_string(c.n));
  return h;
}

/// Runs all trials; output is ordered by trial index for any thread count.
inline std::vector<TrialRecord> run_experiment(const ExperimentConfig& c) {
  validate(c);
  std::optional<TargetGraph> target;
  if (c.mode == Mode::pipeline) target = pipeline_target(c);
  std::vector<TrialRecord> out(c.trials);
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (std::uint64_t t = next++; t < c.trials; t = next++)
      out[t] = run_trial(c, t, trial_seed(c.seed, t), target ? &*target : nullptr);
  };
  const unsigned threads = std::max(1U, std::min<unsigned>(c.threads, static_cast<unsigned>(std::max<std::uint64_t>(c.trials, 1))));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  return out;
}

inline std::vector<TrialRecord> run_lemma3(ExperimentConfig c) {
  c.mode = Mode::lemma3;
  return run_experiment(c);
}
inline std::vector<TrialRecord> run_lemma4(ExperimentConfig c) {
  c.mode = Mode::lemma4;
  return run_experiment(c);
}
inline std::vector<TrialRecord> run_pipeline(ExperimentConfig c) {
  c.mode = Mode::pipeline;
  return run_experiment(c);
}

inline Proportion summarize(const std::vector<TrialRecord>& records) {
  std::uint64_t hits = 0;
  for (const auto& r : records) hits += r.success ? 1 : 0;
  return wilson(hits, records.size());
}

struct SweepPoint {
  double value = 0.0;
  Proportion summary;
};

struct SweepResult {
  SweepAxis axis = SweepAxis::p;
  std::vector<TrialRecord> records;
  std::vector<SweepPoint> points;
};

inline ExperimentConfig at_point(ExperimentConfig c, SweepAxis axis, double value) {
  switch (axis) {
    case SweepAxis::p: c.p = value; break;
    case SweepAxis::kappa: c.kappa = static_cast<std::uint32_t>(std::llround(value)); break;
    case SweepAxis::d: c.d = static_cast<std::uint32_t>(std::llround(value)); break;
    case SweepAxis::n: c.n = static_cast<std::uint32_t>(std::llround(value)); break;
  }
  return c;
}

/// Every grid point reuses the same trial seeds (common random numbers), so
/// a single-point sweep reproduces the plain run.
inline SweepResult run_sweep(const ExperimentConfig& c, SweepAxis axis, const std::vector<double>& grid) {
  SweepResult res;
  res.axis = axis;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    auto recs = run_experiment(at_point(c, axis, grid[i]));
    res.points.push_back({grid[i], summarize(recs)});
    for (auto& r : recs) {
      r.point = i;
      res.records.push_back(std::move(r));
    }
  }
  return res;
}

// ---------------------------------------------------------------------------
// Serialisation. Field order is fixed.

inline nlohmann::ordered_json to_json(const TrialRecord& r) {
  nlohmann::ordered_json j;
  if (r.point) j["point"] = *r.point;
  j["trial"] = r.trial;
  j["seed"] = r.seed;
  j["mode"] = to_string(r.mode);
  j["success"] = r.success;
  if (r.flow_value) j["flow_value"] = *r.flow_value;
  if (r.k_max) j["k_max"] = *r.k_max;
  if (r.inner_arc_count) j["inner_arc_count"] = *r.inner_arc_count;
  if (r.extracted) j["extracted"] = *r.extracted;
  if (r.coupled) j["coupled"] = *r.coupled;
  if (r.embedded) j["embedded"] = *r.embedded;
  if (r.extraction_ms) j["extraction_ms"] = *r.extraction_ms;
  j["notes"] = r.notes;
  return j;
}

inline void write_jsonl(std::ostream& out, const std::vector<TrialRecord>& records) {
  for (const auto& r : records) out << to_json(r).dump() << '\n';
}

inline std::string to_jsonl(const std::vector<TrialRecord>& records) {
  std::ostringstream ss;
  write_jsonl(ss, records);
  return ss.str();
}

inline void write_summary_csv(std::ostream& out, const SweepResult& res) {
  out << "point,trials,successes,rate,ci_lo,ci_hi\n";
  for (const auto& pt : res.points) {
    out << nlohmann::json(pt.value).dump() << ',' << pt.summary.trials << ',' << pt.summary.successes << ','
        << nlohmann::json(pt.summary.rate).dump() << ',' << nlohmann::json(pt.summary.ci_lo).dump() << ','
        << nlohmann::json(pt.summary.ci_hi).dump() << '\n';
  }
}

inline void write_records_csv(std::ostream& out, const std::vector<TrialRecord>& records) {
  out << "point,trial,seed,mode,success,flow_value,k_max,inner_arc_count,extracted,coupled,embedded,notes\n";
  auto opt = [](const auto& o) { return o ? nlohmann::json(*o).dump() : std::string{}; };
  for (const auto& r : records) {
    out << opt(r.point) << ',' << r.trial << ',' << r.seed << ',' << to_string(r.mode) << ','
        << (r.success ? "true" : "false") << ',' << opt(r.flow_value) << ',' << opt(r.k_max) << ','
        << opt(r.inner_arc_count) << ',' << opt(r.extracted) << ',' << opt(r.coupled) << ',' << opt(r.embedded)
        << ',' << r.notes << '\n';
  }
}

}  // namespace rainbow
