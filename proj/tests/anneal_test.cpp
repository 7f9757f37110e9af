#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "test_support.hpp"
#include "zmod/anneal.hpp"
#include "zmod/generators.hpp"
#include "zmod/metrics.hpp"

namespace zmod {
namespace {

AnnealConfig quick(Objective objective, std::uint64_t seed) {
  AnnealConfig cfg;
  cfg.objective = objective;
  cfg.seed = seed;
  cfg.cooling_factor = 0.95;
  cfg.check_invariants = true;
  return cfg;
}

TEST(Anneal, TriangleEndsInSingleCommunity) {
  const Graph g = load_edge_list("a b\nb c\nc a\n");
  for (Objective o : {Objective::modularity, Objective::z_modularity}) {
    const AnnealResult r = anneal(g, quick(o, 1));
    EXPECT_EQ(r.best_value, 0.0);
    EXPECT_EQ(r.best_partition.count(), 1u);
    EXPECT_EQ(QualityState(g, r.best_partition).modularity(), 0.0);
    for (std::size_t i = 1; i < r.objective_trace.size(); ++i)
      EXPECT_GE(r.objective_trace[i], r.objective_trace[i - 1]);
  }
}

TEST(Anneal, RingOfCliquesZRecoversCliques) {
  const auto lg = ring_of_cliques(5, 20);
  AnnealConfig cfg;
  cfg.objective = Objective::z_modularity;
  cfg.seed = 3;
  const auto results = anneal_restarts(lg.graph, cfg, 5);
  const AnnealResult& best = best_of(results);
  EXPECT_EQ(nmi(best.best_partition, *lg.ground_truth), 1.0);
  EXPECT_NEAR(best.best_value, analytic::ring_z_star(5, 20), 1e-9);
}

TEST(Anneal, ResultInvariants) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const Graph g = testing::random_graph(40, 0.12, seed);
    for (Objective o : {Objective::modularity, Objective::z_modularity}) {
      const AnnealResult r = anneal(g, quick(o, seed));
      EXPECT_TRUE(r.best_partition.valid());
      const QualityState fresh(g, r.best_partition);
      EXPECT_NEAR(r.best_value, fresh.value(o), 1e-9);
      EXPECT_GE(r.best_value, QualityState(g, singleton_partition(g)).value(o));
      EXPECT_EQ(r.temperatures_run, r.objective_trace.size());
      for (std::size_t i = 1; i < r.objective_trace.size(); ++i)
        ASSERT_GE(r.objective_trace[i], r.objective_trace[i - 1]);
      EXPECT_EQ(r.objective_trace.back(), r.best_value);
      EXPECT_EQ(r.seed_used, seed);
    }
  }
}

TEST(Anneal, Deterministic) {
  const Graph g = testing::random_graph(50, 0.1, 8);
  const AnnealResult a = anneal(g, quick(Objective::z_modularity, 99));
  const AnnealResult b = anneal(g, quick(Objective::z_modularity, 99));
  EXPECT_EQ(a.best_partition, b.best_partition);
  EXPECT_EQ(a.best_value, b.best_value);
  EXPECT_EQ(a.objective_trace, b.objective_trace);
}

TEST(Anneal, RestartsIndependentOfThreadCount) {
  const Graph g = testing::random_graph(40, 0.12, 2);
  const auto serial = anneal_restarts(g, quick(Objective::modularity, 5), 4, 1);
  const auto threaded = anneal_restarts(g, quick(Objective::modularity, 5), 4, 3);
  ASSERT_EQ(serial.size(), threaded.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    EXPECT_EQ(serial[i].best_partition, threaded[i].best_partition);
    EXPECT_EQ(serial[i].seed_used, derive_seed(5, i));
  }
}

TEST(Anneal, TerminatesAtMinimumTemperature) {
  const Graph g = testing::random_graph(20, 0.2, 1);
  AnnealConfig cfg = quick(Objective::modularity, 1);
  cfg.initial_temperature = 1.0;
  cfg.min_temperature = 0.5;
  cfg.cooling_factor = 0.9;
  cfg.stagnation_limit = 1000;
  // 1, 0.9, ..., 0.9^6 = 0.531 are all >= 0.5; 0.9^7 is not.
  EXPECT_EQ(anneal(g, cfg).temperatures_run, 7u);
}

TEST(Anneal, RejectsInvalidConfig) {
  const Graph g = load_edge_list("a b\n");
  AnnealConfig cfg;
  cfg.cooling_factor = 1.0;
  EXPECT_THROW(anneal(g, cfg), std::invalid_argument);
  cfg = {};
  cfg.initial_temperature = 0.0;
  EXPECT_THROW(anneal(g, cfg), std::invalid_argument);
  cfg = {};
  cfg.stagnation_limit = 0;
  EXPECT_THROW(anneal(g, cfg), std::invalid_argument);
}

TEST(IndividualMove, SingleCommunityProposesNewCommunity) {
  const Graph g = testing::random_graph(10, 0.5, 3);
  const QualityState s(g, Partition::single_community(10));
  Rng rng(1);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(propose_individual_move(s, rng).target, 1u);
}

TEST(IndividualMove, CoversEveryPair) {
  const Graph g = testing::random_graph(6, 0.6, 4);
  const QualityState s(g, Partition::from_labels(std::vector<std::size_t>{0, 0, 1, 1, 2, 3}));
  Rng rng(2);
  std::set<std::pair<Vertex, Community>> seen;
  for (int i = 0; i < 20000; ++i) {
    const auto [v, target] = propose_individual_move(s, rng);
    ASSERT_NE(target, s.partition().community_of(v));
    seen.emplace(v, target);
  }
  // Members of pairs: 3 other communities + new; singletons: 3 others.
  EXPECT_EQ(seen.size(), 4u * 4 + 2u * 3);
}

TEST(IndividualMove, SeededSequenceRepeats) {
  const Graph g = testing::random_graph(30, 0.2, 5);
  Rng rng_seed(6);
  const QualityState s(g, testing::random_partition(30, 5, rng_seed));
  Rng a(77), b(77);
  for (int i = 0; i < 1000; ++i) {
    const auto x = propose_individual_move(s, a);
    const auto y = propose_individual_move(s, b);
    ASSERT_EQ(x.vertex, y.vertex);
    ASSERT_EQ(x.target, y.target);
  }
}

TEST(Merge, NeedsTwoCommunities) {
  const Graph g = testing::random_graph(10, 0.5, 3);
  Rng rng(1);
  EXPECT_FALSE(propose_merge(QualityState(g, Partition::single_community(10)), rng).has_value());
  const auto pair = propose_merge(QualityState(g, singleton_partition(g)), rng);
  ASSERT_TRUE(pair.has_value());
  EXPECT_NE(pair->first, pair->second);
}

// Merging C3 and C4 lowers Z; Metropolis accepts it at rate exp(dZ / T).
TEST(Merge, WorseningMergeAcceptedAtMetropolisRate) {
  const auto lg = two_pairwise_cliques(5, 8);
  const QualityState s(lg.graph, lg.named_divisions.at("C_A"));
  const double before = s.z_modularity();
  const double after = z_modularity(s.preview_merge(2, 3), s.edge_count());
  EXPECT_NEAR(after, QualityState(lg.graph, lg.named_divisions.at("C_B")).z_modularity(), 1e-12);
  const double delta = after - before;
  ASSERT_LT(delta, 0.0);

  const double t = 0.05;
  const double rate = std::exp(delta / t);
  Rng rng(10);
  const int trials = 20000;
  int accepted = 0;
  for (int i = 0; i < trials; ++i) accepted += metropolis_accept(delta, t, rng);
  const double sd = std::sqrt(rate * (1 - rate) / trials);
  EXPECT_NEAR(static_cast<double>(accepted) / trials, rate, 4 * sd);
  EXPECT_TRUE(metropolis_accept(0.0, t, rng));
}

TEST(Split, SingletonsAreSkipped) {
  const Graph g = testing::random_graph(10, 0.5, 3);
  const QualityState s(g, singleton_partition(g));
  Rng rng(1);
  for (int i = 0; i < 50; ++i) EXPECT_FALSE(propose_split(s, rng, 0.01, Objective::z_modularity).has_value());
}

TEST(Split, ProposalIsAProperBisection) {
  const auto lg = ring_of_cliques(5, 6);
  QualityState s(lg.graph, Partition::single_community(30));
  Rng rng(4);
  for (int i = 0; i < 50; ++i) {
    const auto split = propose_split(s, rng, 1e-4, Objective::modularity);
    ASSERT_TRUE(split.has_value());
    ASSERT_FALSE(split->moved.empty());
    ASSERT_LT(split->moved.size(), 30u);
    QualityState applied = s;
    const Community fresh = applied.partition().count();
    for (Vertex v : split->moved) applied.apply_move(v, fresh);
    ASSERT_EQ(applied.aggregates(), split->after);
    ASSERT_TRUE(applied.consistent());
  }
}

// At low temperature the nested search should find a split at least as good
// as cutting a single bridge out of a two-clique community.
TEST(Split, FindsCliqueBoundary) {
  const auto lg = ring_of_cliques(5, 4);
  std::vector<std::size_t> pairs{2, 2};
  const QualityState s(lg.graph, ring_grouped_division(lg, pairs));
  Rng rng(8);
  double best = -1e9;
  for (int i = 0; i < 20; ++i) {
    const auto split = propose_split(s, rng, 1e-4, Objective::z_modularity);
    best = std::max(best, z_modularity(split->after, s.edge_count()));
  }
  std::vector<std::size_t> three{1, 1, 2};
  EXPECT_GE(best + 1e-12, QualityState(lg.graph, ring_grouped_division(lg, three)).z_modularity());
}

}  // namespace
}  // namespace zmod
