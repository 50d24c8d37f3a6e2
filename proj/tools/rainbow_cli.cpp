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

// rainbow: command-line front end for sampling, extraction, coupling,
// bounds, density profiles, rainbow search and Monte Carlo experiments.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "rainbow/analytic_bounds.hpp"
#include "rainbow/coloured_graph.hpp"
#include "rainbow/coupling.hpp"
#include "rainbow/edge_list.hpp"
#include "rainbow/harness.hpp"
#include "rainbow/rainbow_flow.hpp"
#include "rainbow/rainbow_search.hpp"
#include "rainbow/target_graphs.hpp"

namespace {

using namespace rainbow;

// Writes to --out when given, stdout otherwise.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw std::runtime_error("cannot open " + path);
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

EdgeListRecord load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_edge_list(in);
}

void print_witness(std::ostream& out, const HallWitness& w) {
  out << "deficiency " << w.deficiency << "\nS";
  for (auto c : w.colours) out << ' ' << c;
  out << "\nN(S)";
  for (auto v : w.neighbourhood) out << ' ' << v;
  out << '\n';
}

std::vector<double> parse_grid(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
  if (out.empty()) throw std::invalid_argument("empty sweep grid");
  return out;
}

struct CommonFlags {
  std::uint32_t n = 10;
  std::optional<double> p;
  std::uint32_t kappa = 1;
  double eps = 0.5;
  std::uint32_t d = 1;
  std::uint64_t seed = 0;
  std::uint64_t trials = 1;
  std::string out;
  std::string format = "jsonl";
  unsigned threads = 1;
};

void add_common(CLI::App* app, CommonFlags& f) {
  app->add_option("--n", f.n, "vertex count");
  app->add_option("--p", f.p, "edge probability");
  app->add_option("--kappa", f.kappa, "number of colours");
  app->add_option("--eps", f.eps, "slack parameter epsilon");
  app->add_option("--d", f.d, "out-degree");
  app->add_option("--seed", f.seed, "64-bit master seed");
  app->add_option("--trials", f.trials, "number of trials");
  app->add_option("--out", f.out, "output path (default stdout)");
  app->add_option("--format", f.format, "jsonl or csv")->check(CLI::IsMember({"jsonl", "csv"}));
  app->add_option("--threads", f.threads, "worker threads");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rainbow d-out extraction and random-graph experiments"};
  app.require_subcommand(1);

  // gen ---------------------------------------------------------------------
  CommonFlags gen;
  bool gen_directed = false, gen_dout = false;
  auto* gen_cmd = app.add_subcommand("gen", "sample a coloured random graph or digraph");
  add_common(gen_cmd, gen);
  gen_cmd->add_flag("--directed", gen_directed, "sample D_{n,p} instead of G_{n,p}");
  gen_cmd->add_flag("--dout", gen_dout, "sample an uncoloured d-out digraph");

  // extract -----------------------------------------------------------------
  std::string ex_in;
  std::uint32_t ex_d = 1;
  bool ex_permute = false;
  std::uint64_t ex_seed = 0;
  auto* ex_cmd = app.add_subcommand("extract", "extract a rainbow d-out subdigraph by max-flow");
  ex_cmd->add_option("--in", ex_in, "edge-list digraph")->required();
  ex_cmd->add_option("--d", ex_d, "out-degree")->required();
  ex_cmd->add_flag("--permute", ex_permute, "extract through a random permutation family");
  ex_cmd->add_option("--seed", ex_seed, "seed for --permute");

  // couple ------------------------------------------------------------------
  CommonFlags cp;
  auto* cp_cmd = app.add_subcommand("couple", "binomial truncation coupling trials (JSONL)");
  add_common(cp_cmd, cp);

  // bounds ------------------------------------------------------------------
  std::int64_t b_n = 0, b_delta = 0, b_d = 0, b_kappa = 0;
  double b_eps = 0.5;
  std::optional<double> b_p, b_gamma, b_edges;
  bool b_json = false, b_both = false;
  auto* b_cmd = app.add_subcommand("bounds", "evaluate thresholds and tail bounds");
  b_cmd->add_option("--n", b_n, "vertex count")->required();
  b_cmd->add_option("--delta", b_delta, "maximum degree of H");
  b_cmd->add_option("--eps", b_eps, "epsilon");
  b_cmd->add_option("--d", b_d, "out-degree for the union bound");
  b_cmd->add_option("--kappa", b_kappa, "number of colours");
  b_cmd->add_option("--p", b_p, "edge probability");
  b_cmd->add_option("--gamma", b_gamma, "density exponent gamma");
  b_cmd->add_option("--edges", b_edges, "e(H)");
  b_cmd->add_flag("--json", b_json, "print JSON instead of key=value");
  b_cmd->add_flag("--both-parses", b_both, "also use floor(n/delta^2)+1 blocks");

  // gamma -------------------------------------------------------------------
  std::string g_family;
  std::uint32_t g_size = 0;
  bool g_exact = false;
  std::uint64_t g_seed = 0;
  auto* g_cmd = app.add_subcommand("gamma", "densest-subgraph profile e_H(x) and gamma");
  g_cmd->add_option("--family", g_family, "grid|hypercube|cycle|path|tree|matching")->required();
  g_cmd->add_option("--size", g_size, "side, dimension or vertex count")->required();
  g_cmd->add_flag("--exact", g_exact, "force subset enumeration");
  g_cmd->add_option("--seed", g_seed, "seed for random trees");

  // search ------------------------------------------------------------------
  std::string s_graph, s_target;
  std::uint32_t s_size = 0;
  std::uint64_t s_seed = 0;
  auto* s_cmd = app.add_subcommand("search", "exact rainbow spanning copy search");
  s_cmd->add_option("--graph", s_graph, "edge-list graph")->required();
  s_cmd->add_option("--target", s_target, "grid|hypercube|cycle|path|tree|matching|spanning-tree")->required();
  s_cmd->add_option("--size", s_size, "target size parameter");
  s_cmd->add_option("--seed", s_seed, "seed for random trees");

  // trial / sweep -----------------------------------------------------------
  CommonFlags tr;
  std::string tr_mode = "lemma3", tr_target = "cycle";
  std::uint32_t tr_size = 0;
  std::optional<double> tr_pc;
  bool tr_no_permute = false, tr_regime = false, tr_timing = false;
  auto* tr_cmd = app.add_subcommand("trial", "run a Monte Carlo experiment (JSONL or CSV records)");
  CommonFlags sw;
  std::string sw_mode = "lemma3", sw_target = "cycle", sw_axis = "p", sw_grid, sw_summary;
  std::uint32_t sw_size = 0;
  std::optional<double> sw_pc;
  bool sw_no_permute = false, sw_regime = false;
  auto* sw_cmd = app.add_subcommand("sweep", "run an experiment across a parameter grid");
  for (auto [cmd, f, mode, target, size, pc, nop, reg] :
       {std::tuple{tr_cmd, &tr, &tr_mode, &tr_target, &tr_size, &tr_pc, &tr_no_permute, &tr_regime},
        std::tuple{sw_cmd, &sw, &sw_mode, &sw_target, &sw_size, &sw_pc, &sw_no_permute, &sw_regime}}) {
    add_common(cmd, *f);
    cmd->add_option("--mode", *mode, "lemma3|lemma4|pipeline")->check(CLI::IsMember({"lemma3", "lemma4", "pipeline"}));
    cmd->add_option("--target", *target, "pipeline target family");
    cmd->add_option("--size", *size, "pipeline target size (default n)");
    cmd->add_option("--p-coupling", *pc, "pipeline coupling target (default (2-eps)d/n)");
    cmd->add_flag("--no-permute", *nop, "extract without the permutation family");
    cmd->add_flag("--lemma4-regime", *reg, "use d = ceil(20 eps^-2 ln n)");
  }
  tr_cmd->add_flag("--timing", tr_timing, "record extraction wall time (not reproducible)");
  sw_cmd->add_option("--axis", sw_axis, "p|kappa|d|n")->check(CLI::IsMember({"p", "kappa", "d", "n"}));
  sw_cmd->add_option("--grid", sw_grid, "comma-separated grid values")->required();
  sw_cmd->add_option("--summary", sw_summary, "summary CSV path (default stderr)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen_cmd->parsed()) {
      Output out(gen.out);
      auto rng = make_rng(gen.seed, 0, gen_dout ? Stream::d_out : gen_directed ? Stream::digraph : Stream::graph);
      if (gen_dout) {
        write_edge_list(out.stream(), sample_d_out(gen.n, gen.d, rng));
      } else if (!gen.p) {
        throw std::invalid_argument("gen needs --p");
      } else if (gen_directed) {
        write_edge_list(out.stream(), sample_coloured_digraph(gen.n, *gen.p, gen.kappa, rng));
      } else {
        write_edge_list(out.stream(), sample_coloured_graph(gen.n, *gen.p, gen.kappa, rng));
      }
      return 0;
    }

    if (ex_cmd->parsed()) {
      const auto digraph = to_digraph(load(ex_in));
      std::optional<RainbowDOut> got;
      if (ex_permute) {
        auto rng = make_rng(ex_seed, 0, Stream::permutation);
        got = extract_via_permutation(digraph, ex_d, rng);
      } else if (auto e = extract_rainbow_dout(digraph, ex_d)) {
        got = e->rainbow;
      }
      if (got) {
        write_edge_list(std::cout, got->digraph);
        return 0;
      }
      std::cout << "INFEASIBLE\n";
      if (digraph.kappa() <= kHallBruteForceMaxColours) {
        const auto check = check_hall_bruteforce(digraph, ex_d);
        if (check.witness) print_witness(std::cout, *check.witness);
      } else {
        const auto net = build_network(digraph, ex_d);
        const auto flow = max_flow(net);
        if (auto w = min_cut_witness(digraph, net, flow)) print_witness(std::cout, *w);
      }
      return 2;
    }

    if (cp_cmd->parsed()) {
      Output out(cp.out);
      ExperimentConfig c;
      c.mode = Mode::lemma4;
      c.n = cp.n;
      c.p = cp.p;
      c.eps = cp.eps;
      c.d = cp.d;
      c.trials = cp.trials;
      c.seed = cp.seed;
      c.threads = cp.threads;
      for (const auto& r : run_experiment(c)) {
        nlohmann::ordered_json j;
        j["seed"] = r.seed;
        j["k_max"] = r.k_max.value_or(0);
        j["success"] = r.success;
        j["inner_arc_count"] = r.inner_arc_count.value_or(0);
        out.stream() << j.dump() << '\n';
      }
      return 0;
    }

    if (b_cmd->parsed()) {
      nlohmann::ordered_json j;
      if (b_delta > 0) {
        auto t1 = bounds::theorem1_threshold(b_n, b_delta, b_eps, {.strict = false, .both_parses = b_both});
        j["theorem1.hypothesis_holds"] = t1.hypothesis_holds;
        j["theorem1.blocks"] = t1.blocks;
        j["theorem1.structural"] = t1.structural;
        j["theorem1.colour"] = t1.colour;
        j["theorem1.p_min"] = t1.p_min;
        if (t1.structural_alt) {
          j["theorem1.structural_alt"] = *t1.structural_alt;
          j["theorem1.p_min_alt"] = *t1.p_min_alt;
        }
        j["alon_furedi"] = bounds::alon_furedi_threshold(b_n, b_delta);
        if (b_p && b_gamma) {
          auto r = bounds::riordan_condition(static_cast<double>(b_n), *b_p, *b_gamma, static_cast<double>(b_delta),
                                             b_edges.value_or(0.0));
          j["riordan.value"] = r.value;
          j["riordan.edges_p"] = r.edges_p;
          j["riordan.sqrt_slack"] = r.sqrt_slack;
        }
      }
      if (b_p) {
        const double p1 = arc_probability(*b_p);
        j["p1"] = p1;
        if (b_eps <= 1.0) j["chernoff"] = bounds::chernoff_bound(static_cast<double>(b_n), p1, b_eps);
        if (b_d > 0 && b_kappa > 0 && b_eps <= 1.0) {
          auto rep = bounds::theta({b_n, b_d, b_kappa, b_eps, p1});
          j["theta.s_lo"] = rep.s_lo;
          j["theta.s_hi"] = rep.s_hi;
          j["theta.log_sum_L"] = rep.log_sum_L;
          j["theta.log_theta"] = rep.log_theta;
          j["theta.raw"] = rep.theta_raw;
          j["theta.clamped"] = rep.theta_clamped;
        }
      }
      if (b_json) {
        std::cout << j.dump(2) << '\n';
      } else {
        for (auto& [k, v] : j.items()) std::cout << k << '=' << v.dump() << '\n';
      }
      return 0;
    }

    if (g_cmd->parsed()) {
      auto rng = make_rng(g_seed, 0, Stream::tree);
      const auto h = make_family(parse_family(g_family), g_size, rng);
      const auto prof = density_profile(h, g_exact ? ProfileMode::exact : ProfileMode::automatic);
      std::cout << "# " << h.name << " n=" << h.n << " e=" << h.e_total << " delta=" << h.delta << '\n';
      std::cout << "x e_H(x)\n";
      for (std::size_t x = 3; x < prof.table.size(); ++x) std::cout << x << ' ' << prof.table[x] << '\n';
      std::cout << "gamma=" << nlohmann::json(prof.gamma).dump() << " argmax=" << prof.argmax << '\n';
      return 0;
    }

    if (s_cmd->parsed()) {
      const auto g = to_graph(load(s_graph));
      if (s_target == "spanning-tree") {
        auto t = find_rainbow_spanning_tree(g);
        if (!t) {
          std::cout << "NONE\n";
          return 1;
        }
        for (const auto& e : t->embedding.edge_images) std::cout << e.u << ' ' << e.v << ' ' << e.colour << '\n';
        return 0;
      }
      auto rng = make_rng(s_seed, 0, Stream::tree);
      const auto h = make_family(parse_family(s_target), s_size ? s_size : g.n(), rng);
      auto emb = find_rainbow_copy_exact(g, h);
      if (!emb) {
        std::cout << "NONE\n";
        return 1;
      }
      std::cout << "map";
      for (auto w : emb->vertex_map) std::cout << ' ' << w;
      std::cout << '\n';
      for (const auto& e : emb->edge_images) std::cout << e.u << ' ' << e.v << ' ' << e.colour << '\n';
      return 0;
    }

    auto make_config = [](const CommonFlags& f, const std::string& mode, const std::string& target,
                          std::uint32_t size, std::optional<double> pc, bool no_permute, bool regime) {
      ExperimentConfig c;
      c.mode = parse_mode(mode);
      c.n = f.n;
      c.p = f.p;
      c.kappa = f.kappa;
      c.eps = f.eps;
      c.d = f.d;
      c.trials = f.trials;
      c.seed = f.seed;
      c.threads = f.threads;
      c.target = parse_family(target);
      c.target_size = size;
      c.p_coupling = pc;
      c.permute = !no_permute;
      c.lemma4_regime = regime;
      return c;
    };

    if (tr_cmd->parsed()) {
      auto c = make_config(tr, tr_mode, tr_target, tr_size, tr_pc, tr_no_permute, tr_regime);
      c.record_timing = tr_timing;
      Output out(tr.out);
      const auto recs = run_experiment(c);
      if (tr.format == "csv") {
        write_records_csv(out.stream(), recs);
      } else {
        write_jsonl(out.stream(), recs);
      }
      const auto s = summarize(recs);
      std::cerr << "trials=" << s.trials << " successes=" << s.successes << " rate=" << s.rate << " ci=[" << s.ci_lo
                << ", " << s.ci_hi << "]\n";
      return 0;
    }

    if (sw_cmd->parsed()) {
      const auto c = make_config(sw, sw_mode, sw_target, sw_size, sw_pc, sw_no_permute, sw_regime);
      const auto res = run_sweep(c, parse_axis(sw_axis), parse_grid(sw_grid));
      Output out(sw.out);
      if (sw.format == "csv") {
        write_summary_csv(out.stream(), res);
      } else {
        write_jsonl(out.stream(), res.records);
        if (sw_summary.empty()) {
          write_summary_csv(std::cerr, res);
        } else {
          Output summary(sw_summary);
          write_summary_csv(summary.stream(), res);
        }
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
