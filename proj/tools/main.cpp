#include <iostream>

#include "CLI11.hpp"
#include "cli.hpp"

namespace {

void add_schedule(CLI::App* cmd, zmod::cli::Schedule& s) {
  cmd->add_option("--t0", s.initial_temperature, "initial temperature (default 1/n)");
  cmd->add_option("--tmin", s.min_temperature, "stop below this temperature (default 1e-6/n)");
  cmd->add_option("--cooling", s.cooling_factor, "cooling factor per temperature step (default 0.995)");
  cmd->add_option("--fi", s.individual_moves, "individual moves per temperature, in units of n^2 (default 1)");
  cmd->add_option("--fc", s.collective_moves, "merge and split attempts per temperature, in units of n (default 1)");
  cmd->add_option("--stagnation", s.stagnation_limit, "stop after this many temperatures without change (default 25)");
}

}  // namespace

int main(int argc, char** argv) {
  using namespace zmod::cli;
  CLI::App app{"Community detection by Z-modularity and modularity maximization"};
  app.require_subcommand(1);
  std::function<int()> command;

  DetectOptions det;
  auto* detect_cmd = app.add_subcommand("detect", "anneal a partition of an edge-list graph");
  detect_cmd->add_option("graph", det.graph, "edge-list file, or a dataset name under $ZMOD_DATA_DIR")->required();
  detect_cmd->add_option("--objective", det.objective)->check(CLI::IsMember({"modularity", "zmodularity"}));
  detect_cmd->add_option("--seed", det.seed);
  detect_cmd->add_option("--restarts", det.restarts, "independent runs; the best is kept")->check(CLI::PositiveNumber);
  detect_cmd->add_option("--jobs", det.jobs, "worker threads")->check(CLI::PositiveNumber);
  detect_cmd->add_option("--out", det.out, "partition file (default: stdout)");
  detect_cmd->add_option("--record", det.record, "write a JSON run record");
  add_schedule(detect_cmd, det.schedule);
  detect_cmd->callback([&] { command = [&] { return detect(det, std::cout); }; });

  GenerateOptions gen;
  auto* generate_cmd = app.add_subcommand("generate", "write a benchmark graph and its reference divisions");
  generate_cmd->add_option("family", gen.family)
      ->required()
      ->check(CLI::IsMember({"ring", "twocliques", "planted", "hanoi"}));
  generate_cmd->add_option("--p", gen.p, "clique size (ring), small clique size (twocliques)");
  generate_cmd->add_option("--q", gen.q, "clique count (ring), large clique size (twocliques)");
  generate_cmd->add_option("--n", gen.n, "vertices (planted)");
  generate_cmd->add_option("--l", gen.l, "groups (planted)");
  generate_cmd->add_option("--p-in", gen.p_in);
  generate_cmd->add_option("--p-out", gen.p_out);
  generate_cmd->add_option("--d", gen.d, "disks (hanoi)");
  generate_cmd->add_option("--seed", gen.seed);
  generate_cmd->add_option("--out-prefix", gen.out_prefix)->required();
  generate_cmd->callback([&] { command = [&] { return generate(gen, std::cout); }; });

  EvaluateOptions ev;
  auto* evaluate_cmd = app.add_subcommand("evaluate", "report Q, Z and NMI of a partition");
  evaluate_cmd->add_option("graph", ev.graph)->required();
  evaluate_cmd->add_option("partition", ev.partition)->required();
  evaluate_cmd->add_option("--truth", ev.truth, "reference partition for NMI");
  evaluate_cmd->callback([&] { command = [&] { return evaluate(ev, std::cout); }; });

  SweepOptions sw;
  auto* sweep_cmd = app.add_subcommand("sweep", "NMI against planted groups over a range of p_out");
  sweep_cmd->add_option("--family", sw.family)->check(CLI::IsMember({"planted"}));
  sweep_cmd->add_option("--n", sw.n)->required();
  sweep_cmd->add_option("--l", sw.l)->required();
  sweep_cmd->add_option("--p-in", sw.p_in)->required();
  sweep_cmd->add_option("--p-out-range", sw.p_out_range, "a:b:step, inclusive")->required();
  sweep_cmd->add_option("--seeds-per-point", sw.seeds_per_point)->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--objective", sw.objectives, "repeatable (default: both)")
      ->check(CLI::IsMember({"modularity", "zmodularity"}));
  sweep_cmd->add_option("--seed", sw.seed);
  sweep_cmd->add_option("--jobs", sw.jobs)->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--out", sw.out, "CSV file (default: stdout)");
  add_schedule(sweep_cmd, sw.schedule);
  sweep_cmd->callback([&] { command = [&] { return sweep(sw, std::cout); }; });

  TablesOptions tab;
  auto* tables_cmd = app.add_subcommand("tables", "closed-form ring and two-clique tables as CSV");
  tables_cmd->add_option("--out", tab.out, "CSV file (default: stdout)");
  tables_cmd->callback([&] { command = [&] { return tables(tab, std::cout, std::cerr); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : usage_error;
  }
  return guarded(command, std::cerr);
}
