//
// Project fragretro
// SPDX-License-Identifier: Apache-2.0
//

#include "cli.h"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "fragretro/errors.h"
#include "fragretro/synth.h"

namespace fragretro::cli {
namespace {

using Json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::vector<std::string> read_lines(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw IoError("cannot open '" + path + "'");
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    if (line.empty() || line.front() == '#')
      continue;
    out.push_back(line.substr(0, line.find('\t')));
  }
  return out;
}

RuleSet rules_for(FragmentMode mode, const std::string &rules_path) {
  return rules_path.empty() ? default_rule_set(mode)
                            : load_rule_table(rules_path);
}

Json fragments_json(const FragmentDecomposition &d) {
  Json frags = Json::array();
  for (const Molecule &f: d.fragments)
    frags.push_back(write_smiles(f));
  Json adjacency = Json::array();
  for (const FragmentEdge &e: d.adjacency)
    adjacency.push_back({ e.a, e.b, e.bond_id });
  Json rules = Json::object();
  for (const auto &[bond, rule]: d.rule_per_bond)
    rules[std::to_string(bond)] = rule;
  Json j;
  j["fragments"] = std::move(frags);
  j["adjacency"] = std::move(adjacency);
  j["rules"] = std::move(rules);
  return j;
}

struct Common {
  std::string mode = "brics_like";
  std::string rules;
  int nbits = 2048;
  int path_max = 7;
};

FragmentMode parse_mode(const std::string &text) {
  const auto mode = fragment_mode_from_string(text);
  if (!mode)
    throw Error("unknown mode '" + text + "'");
  return *mode;
}

std::vector<int> parse_int_list(const std::string &text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty())
      out.push_back(std::stoi(item));
  }
  if (out.empty())
    throw Error("empty list '" + text + "'");
  return out;
}

}  // namespace

std::string retro_json(const RetroResult &r, const JsonOptions &options) {
  std::map<FragmentSet, const FragmentCombination *> by_members;
  for (const FragmentCombination &c: r.valid_combinations)
    by_members.emplace(c.members, &c);

  Json j;
  j["solved"] = r.solved;
  j["termination_reason"] = std::string(to_string(r.termination));
  j["target"] = write_smiles(r.decomposition.target);
  Json frags = Json::array();
  for (const Molecule &f: r.decomposition.fragments)
    frags.push_back(write_smiles(f));
  j["fragments"] = std::move(frags);
  j["truncated"] = r.truncated;
  j["combinations_evaluated"] = r.combinations_evaluated;

  Json sols = Json::array();
  for (const Solution &s: r.solutions) {
    Json blocks = Json::array();
    for (const FragmentSet &b: s.blocks) {
      Json block;
      block["members"] = b.members();
      const auto it = by_members.find(b);
      if (it != by_members.end()) {
        const FragmentCombination &c = *it->second;
        block["pattern_smiles"] = write_smiles(c.pattern);
        const std::size_t n = std::min(options.sample, c.matched_bbs.size());
        block["matched_bb_ids_sample"] =
          std::vector<int>(c.matched_bbs.begin(), c.matched_bbs.begin() + n);
        block["matched_bb_count"] = c.matched_bbs.size();
        if (options.full_matches)
          block["matched_bb_ids"] = c.matched_bbs;
      }
      blocks.push_back(std::move(block));
    }
    Json sol;
    sol["size"] = s.size();
    sol["blocks"] = std::move(blocks);
    sols.push_back(std::move(sol));
  }
  j["solutions"] = std::move(sols);

  Json stats = Json::array();
  for (const StageStats &s: r.stats) {
    Json st;
    st["stage"] = s.stage;
    st["generated"] = s.generated;
    st["pruned"] = s.pruned;
    st["effective_count"] = s.effective_count;
    st["valid_count"] = s.valid_count;
    st["candidates"] = s.candidates;
    st["screen_rejects"] = s.screen_rejects;
    st["match_calls"] = s.match_calls;
    if (options.timings)
      st["elapsed_s"] = s.elapsed_seconds;
    stats.push_back(std::move(st));
  }
  j["stats"] = std::move(stats);
  if (options.timings)
    j["elapsed_s"] = r.elapsed_seconds;
  return j.dump(2);
}

int run(const std::vector<std::string> &args, std::ostream &out,
        std::ostream &err) {
  CLI::App app { "Fragment-combination retrosynthesis over a building-block stock",
                 "fragretro" };
  app.require_subcommand(1);

  // stock build
  CLI::App *stock = app.add_subcommand("stock", "Building-block stocks");
  stock->require_subcommand(1);
  CLI::App *build = stock->add_subcommand("build", "Build a stock cache");
  std::string in_path, out_path;
  Common common;
  int workers = 1;
  build->add_option("--in", in_path, "SMILES file")->required();
  build->add_option("--out", out_path, "Cache file")->required();
  build->add_option("--nbits", common.nbits, "Fingerprint width");
  build->add_option("--path-max", common.path_max, "Longest hashed path (bonds)");
  build->add_option("--workers", workers, "Worker threads (0: all cores)");

  // fragment
  CLI::App *frag = app.add_subcommand("fragment", "Show the initial fragments");
  std::string smiles;
  frag->add_option("--smiles", smiles, "Target SMILES")->required();
  frag->add_option("--mode", common.mode, "brics_like or rbrics_like");
  frag->add_option("--rules", common.rules, "Rule table file");

  // retro
  CLI::App *retro = app.add_subcommand("retro", "Search a target");
  std::string stock_path;
  std::size_t max_solutions = 10000;
  bool no_screening = false, first_hit = false, full_matches = false,
       no_timings = false, no_pruning = false;
  retro->add_option("--smiles", smiles, "Target SMILES")->required();
  retro->add_option("--stock", stock_path, "Stock cache")->required();
  retro->add_option("--mode", common.mode, "brics_like or rbrics_like");
  retro->add_option("--rules", common.rules, "Rule table file");
  retro->add_option("--nbits", common.nbits, "Expected fingerprint width");
  retro->add_option("--path-max", common.path_max, "Expected path length");
  retro->add_option("--workers", workers, "Worker threads (0: all cores)");
  retro->add_option("--max-solutions", max_solutions, "Solution cap (0: none)");
  retro->add_flag("--no-screening", no_screening, "Match every prior candidate");
  retro->add_flag("--no-pruning", no_pruning, "Disable pruning and priors");
  retro->add_flag("--first-hit", first_hit, "Stop at the first match per combination");
  retro->add_flag("--full-matches", full_matches, "List every matched building block");
  retro->add_flag("--no-timings", no_timings, "Omit elapsed times");

  // bench
  CLI::App *bench = app.add_subcommand("bench", "Benchmarks (CSV on stdout)");
  bench->require_subcommand(1);
  std::string targets_path, workers_list = "1,2,4,8";
  int repeats = 1, oligomer_min = 4, oligomer_max = 0;
  CLI::App *scaling = bench->add_subcommand("scaling", "Work against target size");
  CLI::App *parallel = bench->add_subcommand("parallel", "Speedup against workers");
  CLI::App *screening = bench->add_subcommand("screening", "Screening on and off");
  CLI::App *generate = bench->add_subcommand("generate", "Write the desk benchmark inputs");
  for (CLI::App *b: { scaling, parallel, screening }) {
    b->add_option("--stock", stock_path, "Stock cache");
    b->add_option("--targets", targets_path, "Target SMILES file");
    b->add_option("--mode", common.mode, "brics_like or rbrics_like");
    b->add_option("--repeats", repeats, "Runs per measurement (best is kept)");
  }
  scaling->add_option("--oligomer-min", oligomer_min, "Smallest oligomer");
  scaling->add_option("--oligomer-max", oligomer_max,
                      "Largest oligomer; without --stock it is the whole stock");
  scaling->add_option("--workers", workers, "Worker threads");
  screening->add_option("--workers", workers, "Worker threads");
  parallel->add_option("--workers-list", workers_list, "Comma-separated worker counts");
  std::uint64_t seed = 1;
  int stock_size = 100000, num_targets = 20;
  std::string stock_out, targets_out;
  generate->add_option("--seed", seed, "Generator seed");
  generate->add_option("--stock-size", stock_size, "Building blocks");
  generate->add_option("--num-targets", num_targets, "Targets");
  generate->add_option("--stock-out", stock_out, "Stock SMILES file")->required();
  generate->add_option("--targets-out", targets_out, "Target SMILES file")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    const FingerprintParams params { common.nbits, common.path_max };
    if (*build) {
      const auto start = Clock::now();
      const Stock s = build_stock(in_path, params, workers);
      save_cache(s, out_path);
      out << s.size() << " entries, " << s.parse_failures()
          << " parse failures, " << seconds_since(start) << " s\n";
      return 0;
    }
    if (*frag) {
      const FragmentMode mode = parse_mode(common.mode);
      const Molecule m = parse_smiles(smiles);
      out << fragments_json(fragment(m, rules_for(mode, common.rules))).dump(2)
          << "\n";
      return 0;
    }
    if (*retro) {
      EngineConfig cfg;
      cfg.mode = parse_mode(common.mode);
      if (!common.rules.empty())
        cfg.rules = load_rule_table(common.rules);
      cfg.workers = workers;
      cfg.max_solutions = max_solutions;
      cfg.screening = !no_screening;
      cfg.pruning = !no_pruning;
      cfg.match_all = !first_hit;
      const Stock s = load_cache(stock_path, params, std::nullopt, workers);
      const Molecule target = parse_smiles(smiles);
      const RetroResult r = fragretro::run(target, s, cfg);
      JsonOptions jo;
      jo.timings = !no_timings;
      jo.full_matches = full_matches;
      out << retro_json(r, jo) << "\n";
      return r.solved ? 0 : 2;
    }
    if (*generate) {
      const synth::Benchmark b =
        synth::desk_benchmark(seed, stock_size, num_targets);
      std::ofstream so(stock_out), to(targets_out);
      if (!so || !to)
        throw IoError("cannot write benchmark files");
      for (const std::string &line: b.stock)
        so << line << "\n";
      for (const std::string &line: b.targets)
        to << line << "\n";
      out << b.stock.size() << " building blocks, " << b.targets.size()
          << " targets\n";
      return 0;
    }

    const FragmentMode mode = parse_mode(common.mode);
    EngineConfig cfg;
    cfg.mode = mode;
    cfg.workers = workers;
    std::optional<Stock> shared;
    if (!stock_path.empty())
      shared = load_cache(stock_path, std::nullopt, std::nullopt, 0);
    std::vector<Molecule> targets;
    if (!targets_path.empty()) {
      for (const std::string &s: read_lines(targets_path))
        targets.push_back(parse_smiles(s));
    }
    auto best_of = [&](auto &&fn) {
      double best = 1e300;
      for (int i = 0; i < std::max(1, repeats); ++i) {
        const auto start = Clock::now();
        fn();
        best = std::min(best, seconds_since(start));
      }
      return best;
    };

    if (*scaling) {
      // The largest oligomer contains every piece of the smaller ones, so
      // one stock serves the whole family. Other targets without --stock
      // are each their own stock.
      std::optional<Stock> family;
      if (oligomer_max > 0) {
        for (int n = oligomer_min; n <= oligomer_max; ++n)
          targets.push_back(synth::oligomer(n));
        if (!shared)
          family = build_stock_from_text(write_smiles(synth::oligomer(oligomer_max)));
      }
      out << "heavy_atoms,fragments,combinations_evaluated,elapsed_s\n";
      for (const Molecule &t: targets) {
        const Stock own = shared || family ? Stock() : build_stock_from_text(write_smiles(t));
        const Stock &s = shared ? *shared : family ? *family : own;
        RetroResult r;
        const double elapsed = best_of([&] { r = fragretro::run(t, s, cfg); });
        out << t.heavy_atom_count() << "," << r.decomposition.size() << ","
            << r.combinations_evaluated << "," << elapsed << "\n";
      }
      return 0;
    }
    if (!shared)
      throw Error("--stock is required");
    if (*parallel) {
      out << "workers,elapsed_s,speedup\n";
      double base = 0;
      std::string reference;
      for (int w: parse_int_list(workers_list)) {
        cfg.workers = w;
        std::string combined;
        const double elapsed = best_of([&] {
          combined.clear();
          for (const Molecule &t: targets)
            combined += retro_json(fragretro::run(t, *shared, cfg), { false, false, 20 });
        });
        if (base == 0)
          base = elapsed;
        if (reference.empty())
          reference = combined;
        else if (combined != reference)
          err << "warning: output for " << w << " workers differs\n";
        out << w << "," << elapsed << "," << base / elapsed << "\n";
      }
      return 0;
    }
    if (*screening) {
      out << "target,elapsed_on,elapsed_off,match_calls_on,match_calls_off\n";
      for (std::size_t i = 0; i < targets.size(); ++i) {
        RetroResult on, off;
        cfg.screening = true;
        const double t_on = best_of([&] { on = fragretro::run(targets[i], *shared, cfg); });
        cfg.screening = false;
        const double t_off = best_of([&] { off = fragretro::run(targets[i], *shared, cfg); });
        out << i << "," << t_on << "," << t_off << "," << on.total_match_calls()
            << "," << off.total_match_calls() << "\n";
      }
      return 0;
    }
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace fragretro::cli
