#include <csf/error.hpp>
#include <csf/stability.hpp>

#include "fixtures.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>

using namespace csf;
using namespace csf::testing;

namespace {

FamilyMember solved_member(const GameSpec& spec) {
  FamilyMember member;
  member.k = spec.k_max;
  member.game = build_game(spec);
  member.induced = induced_normal_form(member.game);
  member.equilibria = solve_support_enumeration(member.induced).equilibria;
  return member;
}

FamilyAnalysis pd_family(bool select_component_mixture) {
  std::vector<FamilyMember> members;
  members.push_back(solved_member(pd_spec(1)));
  members.push_back(solved_member(pd_spec(2)));
  if (select_component_mixture) {
    // Put the full H x H component representative first: the 1/2 : 1/2
    // mixture over {(separated, H), (joint, H)}.
    auto& eqs = members[1].equilibria;
    std::stable_partition(eqs.begin(), eqs.end(), [](const EquilibriumResult& eq) {
      return eq.support[0].size() == 2 && eq.support[1].size() == 2;
    });
  }
  return FamilyAnalysis(std::move(members));
}

GameSpec raised_joint_spec() {
  GameSpec spec = pd_spec(2);
  for (auto& row : spec.payoffs) {
    if (row.structure_id == "1,2" && row.labels == std::vector<std::string>{"H", "H"}) {
      row.values = {Rational(1), Rational(1)};
    }
  }
  return spec;
}

}  // namespace

TEST_CASE("family validation") {
  SUBCASE("contiguity is required") {
    std::vector<FamilyMember> members;
    members.push_back(solved_member(pd_spec(2)));
    CHECK_THROWS_AS(FamilyAnalysis(std::move(members)), Error);
  }
  SUBCASE("missing equilibria surface on selection") {
    std::vector<FamilyMember> members;
    members.push_back(solved_member(pd_spec(1)));
    members.push_back(solved_member(pd_spec(2)));
    members[1].equilibria.clear();
    const FamilyAnalysis family(std::move(members));
    CHECK_THROWS_AS(family.selected(2), Error);
    CHECK_THROWS_AS(local_stability(family, 2), Error);
    try {
      local_stability(family, 2);
    } catch (const Error& e) {
      CHECK(e.code() == errc::missing_equilibrium);
    }
  }
}

TEST_CASE("the dilemma family is locally and globally stable at K=2") {
  const FamilyAnalysis family = pd_family(false);

  const StabilityVerdict local = local_stability(family, 2);
  CHECK(local.stable);
  for (const auto& cmp : local.comparisons) {
    CHECK(cmp.equilibrium_payoff == Rational(-2));
    CHECK(cmp.best_deviation == Rational(-2));
    CHECK(cmp.holds);
  }

  // With two games in the family, local and global coincide.
  const StabilityVerdict global = global_stability(family, 2);
  CHECK(global.stable == local.stable);
  REQUIRE(global.comparisons.size() == local.comparisons.size());
  for (std::size_t i = 0; i < global.comparisons.size(); ++i) {
    CHECK(global.comparisons[i].best_deviation == local.comparisons[i].best_deviation);
  }
}

TEST_CASE("the dilemma family fails the strong criterion") {
  SUBCASE("with the half-half H mixture selected, mass 3/4 stays separated") {
    const FamilyAnalysis family = pd_family(true);
    const EquilibriumResult& selected = family.selected(2);
    REQUIRE(selected.support[0].size() == 2);  // the component representative
    const StabilityVerdict verdict = strong_nash_criterion(family);
    CHECK(!verdict.stable);
    REQUIRE(verdict.distribution_witness.size() == 1);
    CHECK(verdict.distribution_witness[0].first == "1|2");
    CHECK(verdict.distribution_witness[0].second == Rational(3, 4));
    // The payoff inequality itself holds; only the grand-coalition condition
    // fails.
    CHECK(verdict.witnesses.empty());
  }
  SUBCASE("with a pure separated equilibrium selected it fails too") {
    const FamilyAnalysis family = pd_family(false);
    const StabilityVerdict verdict = strong_nash_criterion(family);
    CHECK(!verdict.stable);
    REQUIRE(verdict.distribution_witness.size() == 1);
    CHECK(verdict.distribution_witness[0].first == "1|2");
    CHECK(verdict.distribution_witness[0].second == Rational(1));
  }
}

TEST_CASE("raising the joint payoff makes the strong criterion pass") {
  std::vector<FamilyMember> members;
  members.push_back(solved_member(pd_spec(1)));
  members.push_back(solved_member(raised_joint_spec()));
  // Select the grand-coalition equilibrium at K = 2.
  auto& eqs = members[1].equilibria;
  std::stable_partition(eqs.begin(), eqs.end(), [&](const EquilibriumResult& eq) {
    return eq.structure_distribution.size() == 1 &&
           members[1].induced.game().structure(eq.structure_distribution[0].first).id() == "1,2";
  });
  const FamilyAnalysis family(std::move(members));
  REQUIRE(family.selected(2).payoffs == std::vector<Rational>{1, 1});

  const StabilityVerdict verdict = strong_nash_criterion(family);
  CHECK(verdict.stable);
  CHECK(verdict.distribution_witness.empty());
  for (const auto& cmp : verdict.comparisons) {
    CHECK(cmp.equilibrium_payoff == Rational(1));
    CHECK(cmp.best_deviation == Rational(-2));
  }
}

TEST_CASE("a single-player family is vacuously stable") {
  GameSpec spec;
  spec.player_names = {"1"};
  spec.k_max = 1;
  spec.shared_labels = std::vector<std::string>{"z"};
  spec.payoffs.push_back({"1", {"z"}, {Rational(3)}});
  std::vector<FamilyMember> members;
  members.push_back(solved_member(spec));
  const FamilyAnalysis family(std::move(members));

  CHECK(local_stability(family, 1).stable);
  CHECK(global_stability(family, 1).stable);
  CHECK(strong_nash_criterion(family).stable);  // the grand coalition is the singleton
}

TEST_CASE("a dominant smaller game breaks local stability at K=2") {
  // Gamma(1) pays a flat 5, Gamma(2) a flat 0.
  GameSpec small;
  small.player_names = {"1", "2"};
  small.k_max = 1;
  small.shared_labels = std::vector<std::string>{"L", "H"};
  for (const char* l1 : {"L", "H"}) {
    for (const char* l2 : {"L", "H"}) {
      small.payoffs.push_back({"1|2", {l1, l2}, {Rational(5), Rational(5)}});
    }
  }
  GameSpec large = small;
  large.k_max = 2;
  for (auto& row : large.payoffs) row.values = {Rational(0), Rational(0)};
  for (const char* l1 : {"L", "H"}) {
    for (const char* l2 : {"L", "H"}) {
      large.payoffs.push_back({"1,2", {l1, l2}, {Rational(0), Rational(0)}});
    }
  }

  std::vector<FamilyMember> members;
  members.push_back(solved_member(small));
  members.push_back(solved_member(large));
  const FamilyAnalysis family(std::move(members));

  const StabilityVerdict verdict = local_stability(family, 2);
  CHECK(!verdict.stable);
  REQUIRE(!verdict.witnesses.empty());
  for (const auto& witness : verdict.witnesses) {
    CHECK(witness.k1 == 1);
    CHECK(witness.equilibrium_payoff == Rational(0));
    CHECK(witness.best_deviation == Rational(5));
  }
  // K=1 remains stable: 5 >= 0. Globally, exactly K=1 passes.
  CHECK(local_stability(family, 1).stable);
  CHECK(global_stability(family, 1).stable);
  CHECK(!global_stability(family, 2).stable);
}

TEST_CASE("constant-payoff families are stable at every K") {
  GameSpec small;
  small.player_names = {"1", "2"};
  small.k_max = 1;
  small.shared_labels = std::vector<std::string>{"L", "H"};
  for (const char* l1 : {"L", "H"}) {
    for (const char* l2 : {"L", "H"}) {
      small.payoffs.push_back({"1|2", {l1, l2}, {Rational(7), Rational(7)}});
    }
  }
  GameSpec large = small;
  large.k_max = 2;
  for (const char* l1 : {"L", "H"}) {
    for (const char* l2 : {"L", "H"}) {
      large.payoffs.push_back({"1,2", {l1, l2}, {Rational(7), Rational(7)}});
    }
  }
  std::vector<FamilyMember> members;
  members.push_back(solved_member(small));
  members.push_back(solved_member(large));
  const FamilyAnalysis family(std::move(members));
  for (int k = 1; k <= 2; ++k) {
    CHECK(local_stability(family, k).stable);
    CHECK(global_stability(family, k).stable);
  }
}

TEST_CASE("for-all versus exists aggregation") {
  // Gamma(1): a coordination game with equilibria paying 2, 1, and 2/3; the
  // best response against them is 2, 1, and 2/3 respectively.
  GameSpec coordination;
  coordination.player_names = {"1", "2"};
  coordination.k_max = 1;
  coordination.shared_labels = std::vector<std::string>{"a", "b"};
  coordination.payoffs.push_back({"1|2", {"a", "a"}, {Rational(2), Rational(2)}});
  coordination.payoffs.push_back({"1|2", {"a", "b"}, {Rational(0), Rational(0)}});
  coordination.payoffs.push_back({"1|2", {"b", "a"}, {Rational(0), Rational(0)}});
  coordination.payoffs.push_back({"1|2", {"b", "b"}, {Rational(1), Rational(1)}});

  // Gamma(2): flat 3/2, so its equilibrium payoff sits strictly between the
  // coordination equilibria's best responses.
  GameSpec flat;
  flat.player_names = {"1", "2"};
  flat.k_max = 2;
  flat.shared_labels = std::vector<std::string>{"a", "b"};
  for (const char* s : {"1|2", "1,2"}) {
    for (const char* l1 : {"a", "b"}) {
      for (const char* l2 : {"a", "b"}) {
        flat.payoffs.push_back({s, {l1, l2}, {Rational(3, 2), Rational(3, 2)}});
      }
    }
  }

  std::vector<FamilyMember> members;
  members.push_back(solved_member(coordination));
  members.push_back(solved_member(flat));
  REQUIRE(members[0].equilibria.size() == 3);
  const FamilyAnalysis family(std::move(members));

  const StabilityVerdict forall = local_stability(family, 2, StabilityMode::for_all);
  CHECK(!forall.stable);  // 3/2 < 2 against the (a,a) equilibrium
  const StabilityVerdict exists = local_stability(family, 2, StabilityMode::exists);
  CHECK(exists.stable);  // 3/2 >= 1 against (b,b), and >= 2/3 against the mix
}

TEST_CASE("global stability implies local stability") {
  std::vector<FamilyAnalysis> families;
  families.push_back(pd_family(false));
  families.push_back(pd_family(true));
  for (const auto& family : families) {
    for (int k = 1; k <= family.n_players(); ++k) {
      for (StabilityMode mode : {StabilityMode::for_all, StabilityMode::exists}) {
        if (global_stability(family, k, mode).stable) {
          CHECK(local_stability(family, k, mode).stable);
        }
      }
    }
  }
}

TEST_CASE("witnesses replay to their reported payoffs") {
  const FamilyAnalysis family = [&] {
    GameSpec small;
    small.player_names = {"1", "2"};
    small.k_max = 1;
    small.shared_labels = std::vector<std::string>{"L", "H"};
    for (const char* l1 : {"L", "H"}) {
      for (const char* l2 : {"L", "H"}) {
        small.payoffs.push_back({"1|2", {l1, l2}, {Rational(5), Rational(5)}});
      }
    }
    GameSpec large = pd_spec(2);
    std::vector<FamilyMember> members;
    members.push_back(solved_member(small));
    members.push_back(solved_member(large));
    return FamilyAnalysis(std::move(members));
  }();

  const StabilityVerdict verdict = local_stability(family, 2);
  CHECK(!verdict.stable);
  for (const auto& witness : verdict.witnesses) {
    const FamilyMember& target = family.at_k(witness.k1);
    const EquilibriumResult& eq = target.equilibria[witness.k1_equilibrium];
    // Replaying the deviation: pin the witness player to the reported choice
    // against the stored equilibrium.
    MixedProfile replay = eq.profile;
    replay.probs[witness.player - 1].assign(target.induced.choice_count(witness.player),
                                            Rational(0));
    replay.probs[witness.player - 1][witness.deviation_choice] = 1;
    const auto eu = expected_utility(target.induced, replay);
    CHECK(eu[witness.player - 1] == witness.best_deviation);
  }
}
