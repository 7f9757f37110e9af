#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <optional>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

#include "zmod/graph.hpp"
#include "zmod/partition.hpp"
#include "zmod/quality.hpp"
#include "zmod/random.hpp"

namespace zmod {

// Simulated-annealing schedule and move mix. Temperatures left unset resolve
// to 1/n (initial) and 1e-6/n (minimum) for a graph with n vertices.
struct AnnealConfig {
  std::optional<double> initial_temperature;
  double cooling_factor = 0.995;
  double individual_moves = 1.0;  // f_i: f_i * n^2 single-vertex moves per temperature
  double collective_moves = 1.0;  // f_c: f_c * n merges and f_c * n splits per temperature
  std::optional<double> min_temperature;
  std::size_t stagnation_limit = 25;
  std::uint64_t seed = 0;
  Objective objective = Objective::z_modularity;
  std::size_t split_temperatures = 10;
  double split_cooling = 0.5;
  // Recompute the state from scratch at every temperature and throw on drift.
  bool check_invariants = false;

  double start_temperature(std::size_t n) const {
    return initial_temperature.value_or(1.0 / static_cast<double>(n));
  }
  double stop_temperature(std::size_t n) const {
    return min_temperature.value_or(1e-6 / static_cast<double>(n));
  }

  void validate(std::size_t n) const {
    if (!(start_temperature(n) > 0.0) || !(stop_temperature(n) > 0.0))
      throw std::invalid_argument("temperatures must be positive");
    if (!(cooling_factor > 0.0 && cooling_factor < 1.0))
      throw std::invalid_argument("cooling factor must lie in (0, 1)");
    if (!(individual_moves >= 0.0) || !(collective_moves >= 0.0))
      throw std::invalid_argument("move multipliers must be non-negative");
    if (stagnation_limit == 0) throw std::invalid_argument("stagnation limit must be positive");
    if (split_temperatures == 0 || !(split_cooling > 0.0 && split_cooling <= 1.0))
      throw std::invalid_argument("invalid split schedule");
  }
};

struct AnnealResult {
  Partition best_partition;
  double best_value = 0.0;
  std::vector<double> objective_trace;  // best value after each temperature
  std::size_t temperatures_run = 0;
  std::uint64_t seed_used = 0;
};

// Metropolis rule for maximization: always accept delta >= 0, otherwise with
// probability exp(delta / T).
inline bool metropolis_accept(double delta, double temperature, Rng& rng) {
  if (delta >= 0.0) return true;
  return uniform_unit(rng) < std::exp(delta / temperature);
}

struct IndividualMove {
  Vertex vertex;
  Community target;  // == partition.count() for a new community
};

// Uniform vertex; target uniform over the other communities plus a fresh one.
// A singleton never proposes a fresh community (it would be a no-op).
inline IndividualMove propose_individual_move(const QualityState& state, Rng& rng) {
  const Partition& part = state.partition();
  const Vertex v = uniform_index(rng, part.vertex_count());
  const Community own = part.community_of(v);
  const std::size_t k = part.count();
  if (part.size_of(own) == 1) {
    if (k == 1) return {v, own};
    Community c = uniform_index(rng, k - 1);
    return {v, c >= own ? c + 1 : c};
  }
  Community c = uniform_index(rng, k);
  return {v, c == own ? k : c};
}

inline std::optional<std::pair<Community, Community>> propose_merge(const QualityState& state, Rng& rng) {
  const std::size_t k = state.partition().count();
  if (k < 2) return std::nullopt;
  Community a = uniform_index(rng, k);
  Community b = uniform_index(rng, k - 1);
  if (b >= a) ++b;
  return std::pair{a, b};
}

struct SplitProposal {
  Community community;
  std::vector<Vertex> moved;  // members that leave for a new community
  Aggregates after;           // global aggregates once the split is applied
};

// Bisects a random community of size >= 2. The bisection comes from a short
// annealing over the community's members, flipping one vertex between the two
// halves at a time and scoring each candidate by the global objective.
inline std::optional<SplitProposal> propose_split(const QualityState& state, Rng& rng, double temperature,
                                                  Objective objective, std::size_t nested_temperatures = 10,
                                                  double nested_cooling = 0.5) {
  const Partition& part = state.partition();
  const Graph& g = state.graph();
  const Community c = uniform_index(rng, part.count());
  const std::size_t size = part.size_of(c);
  if (size < 2) return std::nullopt;

  std::vector<Vertex> members(part.members(c).begin(), part.members(c).end());
  std::sort(members.begin(), members.end());
  auto local = [&](Vertex u) {
    return static_cast<std::size_t>(std::lower_bound(members.begin(), members.end(), u) - members.begin());
  };

  const std::uint64_t m = state.edge_count();
  const std::uint64_t total_degree = state.degree_sum(c);
  const Aggregates base = state.aggregates();

  // side[i]: half of members[i]; cut = edges across halves; degree_b = D of half 1.
  std::vector<std::uint8_t> side(size);
  std::size_t count_b = 0;
  for (auto& s : side) count_b += (s = static_cast<std::uint8_t>(uniform_index(rng, 2)));
  if (count_b == 0 || count_b == size) {
    const std::size_t i = uniform_index(rng, size);
    side[i] ^= 1;
    count_b = side[i] ? count_b + 1 : count_b - 1;
  }
  std::uint64_t cut = 0, degree_b = 0;
  for (std::size_t i = 0; i < size; ++i) {
    if (side[i]) degree_b += g.degree(members[i]);
    for (Vertex w : g.neighbors(members[i]))
      if (w > members[i] && part.community_of(w) == c && side[local(w)] != side[i]) ++cut;
  }

  auto aggregates_for = [&](std::uint64_t cut_edges, std::uint64_t db) {
    const std::uint64_t da = total_degree - db;
    Aggregates a = base;
    a.intra_edges -= cut_edges;
    a.sq_degree_sum = a.sq_degree_sum - total_degree * total_degree + da * da + db * db;
    return a;
  };

  double current = evaluate(objective, aggregates_for(cut, degree_b), m);
  std::vector<std::uint8_t> best_side = side;
  double best = current;
  std::uint64_t best_cut = cut, best_degree_b = degree_b;

  double t = temperature;
  for (std::size_t step = 0; step < nested_temperatures; ++step, t *= nested_cooling) {
    for (std::size_t attempt = 0; attempt < size; ++attempt) {
      const std::size_t i = uniform_index(rng, size);
      const bool leaving_b = side[i] != 0;
      if ((leaving_b && count_b == 1) || (!leaving_b && count_b + 1 == size)) continue;
      const Vertex u = members[i];
      std::uint64_t same = 0, other = 0;
      for (Vertex w : g.neighbors(u)) {
        if (part.community_of(w) != c) continue;
        (side[local(w)] == side[i] ? same : other)++;
      }
      const std::uint64_t next_cut = cut + same - other;
      const std::uint64_t d = g.degree(u);
      const std::uint64_t next_db = leaving_b ? degree_b - d : degree_b + d;
      const double next = evaluate(objective, aggregates_for(next_cut, next_db), m);
      if (!metropolis_accept(next - current, t, rng)) continue;
      side[i] ^= 1;
      count_b = leaving_b ? count_b - 1 : count_b + 1;
      cut = next_cut;
      degree_b = next_db;
      current = next;
      if (current > best) {
        best = current;
        best_side = side;
        best_cut = cut;
        best_degree_b = degree_b;
      }
    }
  }

  SplitProposal proposal{c, {}, aggregates_for(best_cut, best_degree_b)};
  for (std::size_t i = 0; i < size; ++i)
    if (best_side[i]) proposal.moved.push_back(members[i]);
  return proposal;
}

// Simulated annealing over partitions with single-vertex moves plus merge and
// split moves, starting from singletons. Deterministic for a given
// (graph, config).
inline AnnealResult anneal(const Graph& g, const AnnealConfig& cfg) {
  const std::size_t n = g.vertex_count();
  cfg.validate(n);
  const std::uint64_t m = g.edge_count();
  Rng rng(cfg.seed);

  QualityState state(g, singleton_partition(g));
  AnnealResult result;
  result.seed_used = cfg.seed;
  result.best_partition = state.partition();
  result.best_value = state.value(cfg.objective);
  double current = result.best_value;

  auto note_best = [&] {
    if (current > result.best_value) {
      result.best_value = current;
      result.best_partition = state.partition();
      return true;
    }
    return false;
  };

  const double nd = static_cast<double>(n);
  const auto individual = static_cast<std::size_t>(std::llround(cfg.individual_moves * nd * nd));
  const auto collective = static_cast<std::size_t>(std::llround(cfg.collective_moves * nd));
  const double stop = cfg.stop_temperature(n);
  std::size_t stagnant = 0;

  for (double t = cfg.start_temperature(n); t >= stop && stagnant < cfg.stagnation_limit;
       t *= cfg.cooling_factor) {
    bool improved = false;
    const double entering = current;

    for (std::size_t i = 0; i < individual; ++i) {
      const auto [v, target] = propose_individual_move(state, rng);
      if (target == state.partition().community_of(v)) continue;
      const double next = evaluate(cfg.objective, state.preview_move(v, target), m);
      if (!metropolis_accept(next - current, t, rng)) continue;
      state.apply_move(v, target);
      current = next;
      improved |= note_best();
    }

    for (std::size_t i = 0; i < collective; ++i) {
      if (auto pair = propose_merge(state, rng)) {
        const double next = evaluate(cfg.objective, state.preview_merge(pair->first, pair->second), m);
        if (metropolis_accept(next - current, t, rng)) {
          state.merge(pair->first, pair->second);
          current = next;
          improved |= note_best();
        }
      }
      if (auto split = propose_split(state, rng, t, cfg.objective, cfg.split_temperatures, cfg.split_cooling)) {
        const double next = evaluate(cfg.objective, split->after, m);
        if (metropolis_accept(next - current, t, rng)) {
          const Community fresh = state.partition().count();
          for (Vertex v : split->moved) state.apply_move(v, fresh);
          current = next;
          improved |= note_best();
        }
      }
    }

    if (cfg.check_invariants && !state.consistent())
      throw std::logic_error("annealing state drifted from a from-scratch recomputation");

    result.objective_trace.push_back(result.best_value);
    ++result.temperatures_run;
    // Stagnant: no new best and the walk ended where it started (frozen).
    stagnant = (improved || current != entering) ? 0 : stagnant + 1;
  }
  return result;
}

// Independent restarts with seeds derive_seed(cfg.seed, i), run on up to
// `jobs` threads. The best value wins; ties go to the lowest restart index.
inline std::vector<AnnealResult> anneal_restarts(const Graph& g, const AnnealConfig& cfg, std::size_t restarts,
                                                 std::size_t jobs = 1) {
  std::vector<AnnealResult> results(restarts);
  std::vector<std::exception_ptr> errors(restarts);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < restarts; i = next++) {
      AnnealConfig local = cfg;
      local.seed = derive_seed(cfg.seed, i);
      try {
        results[i] = anneal(g, local);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  jobs = std::max<std::size_t>(1, std::min(jobs, restarts));
  std::vector<std::thread> pool;
  for (std::size_t j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return results;
}

inline const AnnealResult& best_of(const std::vector<AnnealResult>& results) {
  if (results.empty()) throw std::invalid_argument("no annealing results");
  const AnnealResult* best = &results.front();
  for (const auto& r : results)
    if (r.best_value > best->best_value) best = &r;
  return *best;
}

}  // namespace zmod
