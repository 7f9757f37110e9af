#pragma once

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"
#include "zmod/zmod.hpp"

namespace zmod::cli {

enum ExitCode : int { ok = 0, usage_error = 1, input_error = 2, tolerance_failure = 3 };

// Thrown for bad parameter combinations that the argument parser cannot see.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline std::string fixed(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

inline Objective parse_objective(const std::string& name) {
  if (name == "modularity") return Objective::modularity;
  if (name == "zmodularity") return Objective::z_modularity;
  throw UsageError("unknown objective '" + name + "'");
}

// A bare name like "karate" also resolves against $ZMOD_DATA_DIR, with or
// without the .edges suffix.
inline std::filesystem::path resolve_input(const std::string& path, const char* suffix = ".edges") {
  namespace fs = std::filesystem;
  if (fs::exists(path)) return path;
  if (const char* dir = std::getenv("ZMOD_DATA_DIR"); dir && *dir) {
    for (const fs::path& candidate : {fs::path(dir) / path, fs::path(dir) / (path + suffix)})
      if (fs::exists(candidate)) return candidate;
  }
  throw InputError("cannot open '" + path + "'");
}

inline Graph read_graph_file(const std::string& path) {
  const auto resolved = resolve_input(path);
  std::ifstream in(resolved);
  if (!in) throw InputError("cannot open '" + resolved.string() + "'");
  try {
    return read_edge_list(in);
  } catch (const InputError& e) {
    throw InputError(resolved.string() + ": " + e.what());
  }
}

inline Partition read_partition_file(const std::string& path, const Graph& g) {
  const auto resolved = resolve_input(path, ".truth");
  std::ifstream in(resolved);
  if (!in) throw InputError("cannot open '" + resolved.string() + "'");
  try {
    return read_partition(in, g);
  } catch (const InputError& e) {
    throw InputError(resolved.string() + ": " + e.what());
  }
}

inline std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  return out;
}

struct Schedule {
  std::optional<double> initial_temperature, min_temperature, cooling_factor, individual_moves, collective_moves;
  std::optional<std::size_t> stagnation_limit;

  AnnealConfig apply(AnnealConfig cfg) const {
    if (initial_temperature) cfg.initial_temperature = initial_temperature;
    if (min_temperature) cfg.min_temperature = min_temperature;
    if (cooling_factor) cfg.cooling_factor = *cooling_factor;
    if (individual_moves) cfg.individual_moves = *individual_moves;
    if (collective_moves) cfg.collective_moves = *collective_moves;
    if (stagnation_limit) cfg.stagnation_limit = *stagnation_limit;
    return cfg;
  }
};

inline nlohmann::json schedule_json(const AnnealConfig& cfg, std::size_t n) {
  return {{"initial_temperature", cfg.start_temperature(n)},
          {"min_temperature", cfg.stop_temperature(n)},
          {"cooling_factor", cfg.cooling_factor},
          {"individual_moves", cfg.individual_moves},
          {"collective_moves", cfg.collective_moves},
          {"stagnation_limit", cfg.stagnation_limit},
          {"split_temperatures", cfg.split_temperatures},
          {"split_cooling", cfg.split_cooling}};
}

// Runs `task(i)` for i in [0, count) on up to `jobs` threads.
inline void parallel_for(std::size_t count, std::size_t jobs, const std::function<void(std::size_t)>& task) {
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        task(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  jobs = std::max<std::size_t>(1, std::min(jobs, count));
  std::vector<std::thread> pool;
  for (std::size_t j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

// detect

struct DetectOptions {
  std::string graph;
  std::string objective = "zmodularity";
  std::uint64_t seed = 0;
  std::size_t restarts = 1;
  std::size_t jobs = 1;
  std::string out;     // partition file; stdout when empty
  std::string record;  // RunRecord JSON, optional
  Schedule schedule;
};

inline int detect(const DetectOptions& opt, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  if (opt.restarts == 0) throw UsageError("--restarts must be positive");
  const Graph g = read_graph_file(opt.graph);
  AnnealConfig cfg = opt.schedule.apply({});
  cfg.objective = parse_objective(opt.objective);
  cfg.seed = opt.seed;
  cfg.validate(g.vertex_count());

  const auto results = anneal_restarts(g, cfg, opt.restarts, opt.jobs);
  const AnnealResult& best = best_of(results);
  const QualityState state(g, best.best_partition);
  const std::size_t k = best.best_partition.count();
  const std::string summary = std::to_string(k) + " communities, Q=" + fixed(state.modularity()) +
                              ", Z=" + fixed(state.z_modularity());

  if (opt.out.empty()) {
    out << "# " << summary << '\n';
    write_partition(out, g, best.best_partition);
  } else {
    auto file = open_output(opt.out);
    write_partition(file, g, best.best_partition);
    out << summary << '\n';
  }

  if (!opt.record.empty()) {
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    nlohmann::json params = {{"graph", opt.graph},
                             {"objective", opt.objective},
                             {"restarts", opt.restarts},
                             {"schedule", schedule_json(cfg, g.vertex_count())}};
    nlohmann::json record = {{"command", "detect"},
                             {"parameters", params},
                             {"seed", opt.seed},
                             {"best_restart_seed", best.seed_used},
                             {"Q", state.modularity()},
                             {"Z", state.z_modularity()},
                             {"communities", k},
                             {"wall_time_seconds", seconds}};
    open_output(opt.record) << record.dump(2) << '\n';
  }
  return ok;
}

// generate

struct GenerateOptions {
  std::string family;
  std::optional<std::size_t> p, q, n, l, d;
  std::optional<double> p_in, p_out;
  std::uint64_t seed = 0;
  std::string out_prefix;
};

inline std::string division_file_name(const std::string& name) {
  std::string s;
  for (char c : name) s += c == '*' ? std::string("star") : std::string(1, c);
  return s;
}

inline int generate(const GenerateOptions& opt, std::ostream& out) {
  auto need = [&](const auto& value, const char* flag) {
    if (!value) throw UsageError(opt.family + " needs --" + flag);
    return *value;
  };
  LabeledGraph lg;
  if (opt.family == "ring") {
    lg = ring_of_cliques(need(opt.p, "p"), need(opt.q, "q"));
  } else if (opt.family == "twocliques") {
    lg = two_pairwise_cliques(need(opt.p, "p"), need(opt.q, "q"));
  } else if (opt.family == "planted") {
    lg = planted_partition(need(opt.n, "n"), need(opt.l, "l"), need(opt.p_in, "p-in"), need(opt.p_out, "p-out"),
                           opt.seed);
  } else if (opt.family == "hanoi") {
    lg = hanoi_graph(need(opt.d, "d"));
  } else {
    throw UsageError("unknown family '" + opt.family + "'");
  }
  if (opt.out_prefix.empty()) throw UsageError("--out-prefix is required");

  const std::string edges = opt.out_prefix + ".edges";
  {
    auto file = open_output(edges);
    write_edge_list(file, lg.graph);
  }
  out << edges << ": n=" << lg.graph.vertex_count() << " m=" << lg.graph.edge_count() << '\n';
  if (lg.ground_truth) {
    const std::string truth = opt.out_prefix + ".truth";
    auto file = open_output(truth);
    write_partition(file, lg.graph, *lg.ground_truth);
    out << truth << ": k=" << lg.ground_truth->count() << '\n';
  }
  for (const auto& [name, division] : lg.named_divisions) {
    const std::string path = opt.out_prefix + "." + division_file_name(name) + ".part";
    auto file = open_output(path);
    write_partition(file, lg.graph, division);
    out << path << ": k=" << division.count() << '\n';
  }
  return ok;
}

// evaluate

struct EvaluateOptions {
  std::string graph;
  std::string partition;
  std::string truth;
};

inline int evaluate(const EvaluateOptions& opt, std::ostream& out) {
  const Graph g = read_graph_file(opt.graph);
  const Partition p = read_partition_file(opt.partition, g);
  const QualityState state(g, p);
  out << "k=" << p.count() << " Q=" << fixed(state.modularity()) << " Z=" << fixed(state.z_modularity());
  if (!opt.truth.empty()) out << " NMI=" << fixed(nmi(p, read_partition_file(opt.truth, g)));
  out << '\n';
  return ok;
}

// sweep

struct SweepOptions {
  std::string family = "planted";
  std::size_t n = 0, l = 0;
  double p_in = 0.0;
  std::string p_out_range;  // a:b:step, inclusive
  std::size_t seeds_per_point = 1;
  std::vector<std::string> objectives{"modularity", "zmodularity"};
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
  std::string out;  // CSV; stdout when empty
  Schedule schedule;
};

inline std::vector<double> parse_range(const std::string& text) {
  double a = 0, b = 0, step = 0;
  char c1 = 0, c2 = 0;
  std::istringstream in(text);
  if (!(in >> a >> c1 >> b >> c2 >> step) || c1 != ':' || c2 != ':' || !(in >> std::ws).eof())
    throw UsageError("range must look like a:b:step, got '" + text + "'");
  if (!(step > 0) || b < a) throw UsageError("range needs a <= b and step > 0");
  const auto count = static_cast<std::size_t>(std::floor((b - a) / step + 1e-9)) + 1;
  std::vector<double> values(count);
  for (std::size_t i = 0; i < count; ++i) values[i] = a + static_cast<double>(i) * step;
  return values;
}

// Each (point, repeat) task draws its graph from derive_seed(seed, 2i) and
// anneals with derive_seed(seed, 2i + 1), so rows do not depend on --jobs.
inline int sweep(const SweepOptions& opt, std::ostream& out) {
  if (opt.family != "planted") throw UsageError("sweep supports only --family planted");
  if (opt.seeds_per_point == 0) throw UsageError("--seeds-per-point must be positive");
  if (opt.objectives.empty()) throw UsageError("no objective given");
  const auto points = parse_range(opt.p_out_range);
  std::vector<Objective> objectives;
  for (const auto& name : opt.objectives) objectives.push_back(parse_objective(name));
  // Validate every point before spending time on any of them.
  for (double p_out : points)
    if (opt.n == 0 || opt.l == 0 || opt.n % opt.l || !(opt.p_in >= 0 && opt.p_in <= 1) || !(p_out >= 0) ||
        p_out >= opt.p_in)
      throw UsageError("invalid planted parameters at p_out=" + fixed(p_out));
  const AnnealConfig base = opt.schedule.apply({});
  base.validate(opt.n);

  const std::size_t k = opt.seeds_per_point;
  std::vector<std::vector<double>> scores(points.size() * k, std::vector<double>(objectives.size()));
  parallel_for(scores.size(), opt.jobs, [&](std::size_t task) {
    const double p_out = points[task / k];
    const auto lg = planted_partition(opt.n, opt.l, opt.p_in, p_out, derive_seed(opt.seed, 2 * task));
    for (std::size_t o = 0; o < objectives.size(); ++o) {
      AnnealConfig cfg = base;
      cfg.objective = objectives[o];
      cfg.seed = derive_seed(opt.seed, 2 * task + 1);
      scores[task][o] = nmi(anneal(lg.graph, cfg).best_partition, *lg.ground_truth);
    }
  });

  std::ofstream file;
  if (!opt.out.empty()) file = open_output(opt.out);
  std::ostream& csv = opt.out.empty() ? out : file;
  csv << "p_out,objective,mean_nmi,std_nmi,runs\n";
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t o = 0; o < objectives.size(); ++o) {
      double sum = 0, sq = 0;
      for (std::size_t r = 0; r < k; ++r) sum += scores[i * k + r][o];
      const double mean = sum / static_cast<double>(k);
      for (std::size_t r = 0; r < k; ++r) sq += (scores[i * k + r][o] - mean) * (scores[i * k + r][o] - mean);
      const double sd = k > 1 ? std::sqrt(sq / static_cast<double>(k - 1)) : 0.0;
      csv << fixed(points[i]) << ',' << to_string(objectives[o]) << ',' << fixed(mean) << ',' << fixed(sd) << ','
          << k << '\n';
    }
  return ok;
}

// tables

struct TablesOptions {
  std::string out;
};

inline int tables(const TablesOptions& opt, std::ostream& out, std::ostream& err) {
  const analytic::Tables t = analytic::reproduce_tables();
  if (opt.out.empty()) {
    analytic::write_tables_csv(out, t);
  } else {
    auto file = open_output(opt.out);
    analytic::write_tables_csv(file, t);
  }
  if (t.within_tolerance()) return ok;
  err << "tables: some rows fall outside the reference tolerance\n";
  return tolerance_failure;
}

// Maps exceptions from a command onto exit codes.
inline int guarded(const std::function<int()>& command, std::ostream& err) {
  try {
    return command();
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return input_error;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return usage_error;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return usage_error;
  }
}

}  // namespace zmod::cli
