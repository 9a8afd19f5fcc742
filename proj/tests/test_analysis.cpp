#include <gtest/gtest.h>

#include "beliefnet/beliefnet.hpp"
#include "support/oracles.hpp"

using namespace beliefnet;

namespace {

BeliefProfile bits(const char* s) { return BeliefProfile::parse(s); }

FunctionFamily majority(const Network& net) { return FunctionFamily::uniform(net, "majority"); }

std::vector<BeliefProfile> profiles(std::initializer_list<const char*> list) {
  std::vector<BeliefProfile> out;
  for (const char* s : list) out.push_back(bits(s));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(EquilibriaTest, PathOfThree) {
  auto path = families::path(3);
  EXPECT_EQ(enumerate_equilibria(path, majority(path)),
            profiles({"000", "111", "100", "001", "110", "011"}));
}

TEST(EquilibriaTest, TwoAgentMutualNetEverythingIsFixed) {
  auto k2 = families::complete(2);
  EXPECT_EQ(enumerate_equilibria(k2, majority(k2)).size(), 4u);
}

TEST(EquilibriaTest, FlipperHasNone) {
  for (const auto& net : oracle::all_networks(3)) {
    EXPECT_TRUE(enumerate_equilibria(net, FunctionFamily::uniform(net, "flipper")).empty());
  }
}

TEST(EquilibriaTest, MatchesBruteForceOnAllThreeAgentNetworks) {
  for (const auto& net : oracle::all_networks(3)) {
    auto fam = majority(net);
    std::vector<BeliefProfile> expected;
    for (const auto& p : oracle::all_profiles(3)) {
      bool fixed = true;
      for (AgentIndex a = 0; a < 3; ++a) fixed = fixed && oracle::majority(net, p, a) == p[a];
      if (fixed) expected.push_back(p);
    }
    EXPECT_EQ(enumerate_equilibria(net, fam), expected);
  }
  EXPECT_THROW(enumerate_equilibria(families::path(6), majority(families::path(6)), 5),
               InfeasibleError);
}

TEST(TransitionGraphTest, SingleAgent) {
  auto net = families::isolated(1);
  auto g = build_transition_graph(net, majority(net));
  EXPECT_EQ(g.node_count(), 2u);
  EXPECT_EQ(g.edge_count(), 2u);
  EXPECT_EQ(g.successors[0], (std::vector<Transition>{{0, 0}}));
}

TEST(TransitionGraphTest, K22OscillatingNode) {
  auto k22 = families::complete_bipartite(2, 2);
  auto g = build_transition_graph(k22, majority(k22));
  const auto node = bits("1100").index();
  EXPECT_EQ(g.disagreement[node], 0b1111u);
  ASSERT_EQ(g.successors[node].size(), 16u);
  auto has = [&](const char* target, std::uint64_t flipped) {
    for (const auto& t : g.successors[node]) {
      if (t.target == bits(target).index()) return t.flipped == flipped;
    }
    return false;
  };
  EXPECT_TRUE(has("0011", 0b1111));
  EXPECT_TRUE(has("1111", 0b0011));
  EXPECT_TRUE(has("1100", 0));
}

TEST(TransitionGraphTest, MatchesDefinitionalConstructionOnAllThreeAgentNetworks) {
  for (const auto& net : oracle::all_networks(3)) {
    for (const char* sel : {"majority", "flipper", "threshold:1"}) {
      auto fam = FunctionFamily::uniform(net, sel);
      auto g = build_transition_graph(net, fam);
      auto def = oracle::definitional_graph(net, fam);
      ASSERT_EQ(g.node_count(), 8u);
      for (std::uint64_t v = 0; v < 8; ++v) {
        std::set<std::uint64_t> targets;
        for (const auto& t : g.successors[v]) {
          targets.insert(t.target);
          ASSERT_EQ(t.target, v ^ t.flipped);
          ASSERT_EQ(t.flipped & ~g.disagreement[v], 0u);
        }
        ASSERT_EQ(targets, def[v]);
        ASSERT_EQ(g.successors[v].size(), std::size_t{1} << std::popcount(g.disagreement[v]));
      }
    }
  }
}

TEST(TransitionGraphTest, Gate) {
  auto net = families::path(13);
  EXPECT_THROW(build_transition_graph(net, majority(net)), InfeasibleError);
}

TEST(CondensationTest, MatchesClosureOracle) {
  for (const auto& net : oracle::all_networks(3)) {
    for (const char* sel : {"majority", "flipper", "threshold:1", "stubborn"}) {
      auto fam = FunctionFamily::uniform(net, sel);
      auto g = build_transition_graph(net, fam);
      auto c = condense(g);
      auto ref = oracle::closure_components(oracle::definitional_graph(net, fam));
      for (std::uint64_t u = 0; u < 8; ++u) {
        for (std::uint64_t v = 0; v < 8; ++v) {
          ASSERT_EQ(c.component_of[u] == c.component_of[v], ref.label[u] == ref.label[v]);
        }
        ASSERT_EQ(c.is_leaf(c.component_of[u]), ref.leaf[u]);
      }
      // Topological numbering: every DAG edge goes forward.
      for (const auto& [from, to] : c.dag_edges) ASSERT_LT(from, to);
    }
  }
}

TEST(CondensationTest, TwoAgentMutualNet) {
  auto k2 = families::complete(2);
  auto c = condense(build_transition_graph(k2, majority(k2)));
  EXPECT_EQ(c.component_count(), 4u);
  EXPECT_EQ(c.leaves.size(), 4u);
  EXPECT_TRUE(c.dag_edges.empty());
}

TEST(CondensationTest, K22LeavesAreTheEquilibria) {
  auto k22 = families::complete_bipartite(2, 2);
  auto fam = majority(k22);
  auto s = summarize_leaves(k22, fam);
  EXPECT_TRUE(s.leaves_are_equilibria);
  EXPECT_EQ(s.equilibria, enumerate_equilibria(k22, fam));
  EXPECT_EQ(s.leaf_count, s.equilibria.size());
}

TEST(CondensationTest, FlipperHasNoEquilibriumLeaf) {
  for (const auto& net : oracle::all_networks(3)) {
    auto fam = FunctionFamily::uniform(net, "flipper");
    auto s = summarize_leaves(net, fam);
    EXPECT_EQ(s.equilibrium_leaf_count, 0u);
    EXPECT_TRUE(s.equilibria.empty());
    EXPECT_GE(s.leaf_count, 1u);  // a finite DAG always has a sink
    EXPECT_FALSE(s.leaves_are_equilibria);
  }
}

TEST(CondensationTest, StubbornLeavesAreTrivially) {
  auto net = families::cycle(4);
  EXPECT_TRUE(leaves_are_equilibria(net, FunctionFamily::uniform(net, "stubborn")));
}

TEST(ConvergingSequenceTest, K22) {
  auto k22 = families::complete_bipartite(2, 2);
  auto seq = construct_converging_sequence(k22, majority(k22), bits("1100"));
  ASSERT_EQ(seq.schedule.groups.size(), 1u);
  EXPECT_EQ(seq.schedule.groups[0].to_string(k22), "b1,b2");
  EXPECT_EQ(seq.first_phase_rounds, 1u);
  EXPECT_EQ(seq.second_phase_rounds, 0u);
  EXPECT_EQ(seq.result, bits("1111"));
  EXPECT_TRUE(seq.verified);

  auto rev = construct_converging_sequence(k22, majority(k22), bits("1100"),
                                           PhaseOrder::decreasing_first);
  EXPECT_EQ(rev.result, bits("0000"));
  EXPECT_TRUE(rev.verified);
}

TEST(ConvergingSequenceTest, EquilibriumStartIsEmpty) {
  auto path = families::path(3);
  auto seq = construct_converging_sequence(path, majority(path), bits("110"));
  EXPECT_TRUE(seq.schedule.groups.empty());
  EXPECT_EQ(seq.result, bits("110"));
}

TEST(ConvergingSequenceTest, PhasesAreMonotoneAndReplay) {
  for (const auto& net : oracle::all_networks(3)) {
    auto fam = majority(net);
    for (const auto& p : oracle::all_profiles(3)) {
      for (auto order : {PhaseOrder::increasing_first, PhaseOrder::decreasing_first}) {
        auto seq = construct_converging_sequence(net, fam, p, order);
        ASSERT_TRUE(seq.verified);
        ASSERT_TRUE(is_equilibrium(net, fam, seq.result));
        ASSERT_LE(seq.schedule.groups.size(), 6u);
        ASSERT_EQ(seq.profiles.size(), seq.schedule.groups.size() + 1);
        const bool up_first = order == PhaseOrder::increasing_first;
        for (std::size_t i = 0; i < seq.schedule.groups.size(); ++i) {
          const auto& before = seq.profiles[i];
          const auto& after = seq.profiles[i + 1];
          ASSERT_EQ(apply_group(net, fam, before, seq.schedule.groups[i]), after);
          const bool up = (i < seq.first_phase_rounds) == up_first;
          ASSERT_TRUE(up ? profile_leq(before, after) : profile_leq(after, before));
        }
        auto replay = run_scheduled(net, fam, p, seq.schedule);
        ASSERT_TRUE(replay.converged());
        ASSERT_EQ(replay.final_profile(), seq.result);
      }
    }
  }
}

TEST(ConvergingSequenceTest, NonMonotonicFamilyIsFlagged) {
  auto net = families::complete(2);
  auto seq = construct_converging_sequence(net, FunctionFamily::uniform(net, "flipper"), bits("01"));
  EXPECT_FALSE(seq.verified);
}

TEST(ReachableTest, Examples) {
  auto path = families::path(3);
  EXPECT_EQ(reachable_equilibria(path, majority(path), bits("110")), profiles({"110"}));

  auto k22 = families::complete_bipartite(2, 2);
  auto k22_reach = reachable_equilibria(k22, majority(k22), bits("1100"));
  EXPECT_TRUE(std::binary_search(k22_reach.begin(), k22_reach.end(), bits("1111")));
  EXPECT_TRUE(std::binary_search(k22_reach.begin(), k22_reach.end(), bits("0000")));

  auto star = families::star(3);
  auto star_reach = reachable_equilibria(star, majority(star), bits("0111"));
  EXPECT_TRUE(std::binary_search(star_reach.begin(), star_reach.end(), bits("1111")));
}

TEST(ReachableTest, MatchesClosureOracle) {
  for (const auto& net : oracle::all_networks(3)) {
    auto fam = majority(net);
    auto ref = oracle::closure_components(oracle::definitional_graph(net, fam));
    for (const auto& p : oracle::all_profiles(3)) {
      std::vector<BeliefProfile> expected;
      for (const auto& q : oracle::all_profiles(3)) {
        if (ref.reach[p.index()][q.index()] && is_equilibrium(net, fam, q)) expected.push_back(q);
      }
      ASSERT_EQ(reachable_equilibria(net, fam, p), expected);
    }
  }
}

TEST(DotTest, TransitionGraphExport) {
  auto k2 = families::complete(2);
  auto fam = FunctionFamily::uniform(k2, "flipper");
  auto g = build_transition_graph(k2, fam);
  auto dot = transition_graph_dot(k2, g);
  EXPECT_EQ(dot.rfind("digraph", 0), 0u);
  EXPECT_NE(dot.find("\"00\" -> \"11\" [label=\"{a,b}\"]"), std::string::npos) << dot;
  EXPECT_EQ(dot.find("doublecircle"), std::string::npos);

  auto maj = build_transition_graph(k2, majority(k2));
  EXPECT_NE(transition_graph_dot(k2, maj).find("doublecircle"), std::string::npos);
  EXPECT_EQ(transition_graph_dot(k2, maj), transition_graph_dot(k2, maj));
  auto cdot = condensation_dot(maj, condense(maj));
  EXPECT_EQ(cdot.rfind("digraph", 0), 0u);
}
