#include <csf/error.hpp>
#include <csf/game.hpp>

#include "fixtures.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <set>

using namespace csf;
using namespace csf::testing;

namespace {

errc code_of(const std::function<void()>& body) {
  try {
    body();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return errc::invalid_argument;
}

std::set<std::string> choice_descriptions(const InducedGame& game, int player) {
  std::set<std::string> out;
  for (const Choice& c : game.game().choice_set(player)) {
    out.insert(game.game().choice_to_string(player, c));
  }
  return out;
}

}  // namespace

TEST_CASE("the two-player dilemma builds with four choices per player") {
  const auto game = build_game(pd_spec());
  REQUIRE(game->n_players() == 2);
  for (int p = 1; p <= 2; ++p) {
    const auto& choices = game->choice_set(p);
    REQUIRE(choices.size() == 4);
    CHECK(game->choice_to_string(p, choices[0]) == "(1|2, L)");
    CHECK(game->choice_to_string(p, choices[1]) == "(1|2, H)");
    CHECK(game->choice_to_string(p, choices[2]) == "(1,2, L)");
    CHECK(game->choice_to_string(p, choices[3]) == "(1,2, H)");
  }
  CHECK(game->profile_count() == 16);
  CHECK_THROWS_AS(game->choice_set(3), Error);
}

TEST_CASE("single-player game has one choice") {
  GameSpec spec;
  spec.player_names = {"1"};
  spec.k_max = 1;
  spec.shared_labels = std::vector<std::string>{"only"};
  spec.payoffs.push_back({"1", {"only"}, {Rational(7)}});
  const auto game = build_game(spec);
  CHECK(game->choice_set(1).size() == 1);
  CHECK(induced_normal_form(game).profile_count() == 1);
}

TEST_CASE("build validation errors") {
  SUBCASE("missing payoff row on an implementable structure") {
    GameSpec spec = three_player_spec(2);
    spec.payoffs.pop_back();
    CHECK(code_of([&] { build_game(spec); }) == errc::missing_payoff);
  }
  SUBCASE("duplicate label") {
    GameSpec spec = pd_spec();
    spec.shared_labels = std::vector<std::string>{"L", "L"};
    CHECK(code_of([&] { build_game(spec); }) == errc::duplicate_label);
  }
  SUBCASE("payoff row for an out-of-bounds structure") {
    GameSpec spec = pd_spec(1);
    spec.payoffs.push_back({"1,2", {"L", "L"}, {Rational(0), Rational(0)}});
    CHECK(code_of([&] { build_game(spec); }) == errc::structure_out_of_bounds);
  }
  SUBCASE("incomplete per-player labels") {
    GameSpec spec;
    spec.player_names = {"1", "2"};
    spec.k_max = 2;
    spec.labels[1]["1|2"] = {"L"};
    CHECK(code_of([&] { build_game(spec); }) == errc::missing_labels);
  }
  SUBCASE("undeclared label in a payoff row") {
    GameSpec spec = pd_spec();
    spec.payoffs.push_back({"1|2", {"L", "X"}, {Rational(0), Rational(0)}});
    CHECK(code_of([&] { build_game(spec); }) == errc::label_undeclared);
  }
  SUBCASE("payoff arity") {
    GameSpec spec = pd_spec();
    spec.payoffs.push_back({"1|2", {"L"}, {Rational(0), Rational(0)}});
    CHECK(code_of([&] { build_game(spec); }) == errc::payoff_row_arity_mismatch);
  }
  SUBCASE("duplicate payoff row") {
    GameSpec spec = pd_spec();
    spec.payoffs.push_back(spec.payoffs.front());
    CHECK(code_of([&] { build_game(spec); }) == errc::invalid_argument);
  }
  SUBCASE("profile-count guardrail") {
    BuildOptions options;
    options.max_profiles = 10;
    CHECK(code_of([&] { build_game(pd_spec(), options); }) == errc::scale_exceeded);
  }
  SUBCASE("bad bounds") {
    GameSpec spec = pd_spec();
    spec.k_max = 3;
    CHECK(code_of([&] { build_game(spec); }) == errc::invalid_bounds);
  }
}

TEST_CASE("induced game reproduces the resolved payoff table") {
  const InducedGame game = pd_game();
  const int ls = choice_index(game, 1, "1|2", "L");
  const int hs = choice_index(game, 1, "1|2", "H");
  const int lj = choice_index(game, 1, "1,2", "L");
  const int hj = choice_index(game, 1, "1,2", "H");

  auto util = [&](int c1, int c2) {
    const std::vector<int> profile{c1, c2};
    const auto u = game.utility(profile);
    return std::pair<Rational, Rational>(u[0], u[1]);
  };

  // Rows with any disagreement resolve in the separated block; the payoff
  // depends only on the L/H pair.
  CHECK(util(ls, ls) == std::pair<Rational, Rational>(0, 0));
  CHECK(util(ls, hs) == std::pair<Rational, Rational>(-5, 3));
  CHECK(util(hs, ls) == std::pair<Rational, Rational>(3, -5));
  CHECK(util(hs, hs) == std::pair<Rational, Rational>(-2, -2));
  CHECK(util(hs, hj) == std::pair<Rational, Rational>(-2, -2));
  CHECK(util(lj, hs) == std::pair<Rational, Rational>(-5, 3));
  CHECK(util(hj, hj) == std::pair<Rational, Rational>(-2, -2));
  CHECK(util(lj, lj) == std::pair<Rational, Rational>(0, 0));

  std::vector<int> joint_profile{hj, hj};
  CHECK(game.game().structure(game.outcome(joint_profile).structure).id() == "1,2");
  std::vector<int> mixed_profile{hs, hj};
  CHECK(game.game().structure(game.outcome(mixed_profile).structure).id() == "1|2");
}

TEST_CASE("k = 1 with the identity mechanism is the plain matrix game") {
  GameSpec spec = pd_spec(1);
  spec.mechanism_name = "identity";
  const InducedGame game = induced_normal_form(build_game(spec));
  CHECK(game.profile_count() == 4);
  for (std::uint64_t r = 0; r < game.profile_count(); ++r) {
    const auto profile = game.unrank(r);
    const Outcome out = game.outcome(profile);
    // identity: outcome labels are the chosen labels
    for (int p = 1; p <= 2; ++p) {
      CHECK(out.labels[p - 1] == game.choice(p, profile[p - 1]).label);
    }
  }
}

TEST_CASE("composition identity holds on every profile") {
  GameSpec identity_spec = pd_spec(1);
  identity_spec.mechanism_name = "identity";
  for (const InducedGame& game : {pd_game(), induced_normal_form(build_game(three_player_spec(2))),
                                  induced_normal_form(build_game(identity_spec))}) {
    for (std::uint64_t r = 0; r < game.profile_count(); ++r) {
      const auto profile = game.unrank(r);
      const Outcome out = game.outcome(profile);
      const auto direct = game.game().payoff(out.structure, out.labels);
      const auto via_induced = game.utility(profile);
      REQUIRE(direct.size() == via_induced.size());
      for (std::size_t p = 0; p < direct.size(); ++p) CHECK(direct[p] == via_induced[p]);
    }
  }
}

TEST_CASE("choice sets nest across k") {
  SUBCASE("two players") {
    const InducedGame small = pd_game(1);
    const InducedGame large = pd_game(2);
    for (int p = 1; p <= 2; ++p) {
      const auto small_set = choice_descriptions(small, p);
      const auto large_set = choice_descriptions(large, p);
      CHECK(std::includes(large_set.begin(), large_set.end(), small_set.begin(),
                          small_set.end()));
    }
  }
  SUBCASE("three players") {
    std::vector<InducedGame> family;
    for (int k = 1; k <= 3; ++k) {
      family.push_back(induced_normal_form(build_game(three_player_spec(k))));
    }
    for (int k = 0; k < 2; ++k) {
      for (int p = 1; p <= 3; ++p) {
        const auto small_set = choice_descriptions(family[k], p);
        const auto large_set = choice_descriptions(family[k + 1], p);
        CHECK(std::includes(large_set.begin(), large_set.end(), small_set.begin(),
                            small_set.end()));
      }
    }
    CHECK(family[1].choice_count(1) == 8);  // 4 structures x 2 labels
  }
}

TEST_CASE("a mechanism reaching uncovered structures is rejected") {
  // Game whose own extensional mechanism never leaves the separated
  // structure, with payoffs only there; swapping in unanimity exposes the
  // uncovered grand coalition.
  GameSpec spec;
  spec.player_names = {"1", "2"};
  spec.k_max = 2;
  spec.shared_labels = std::vector<std::string>{"L", "H"};
  spec.mechanism_name = "always-separate";
  for (const char* l1 : {"L", "H"}) {
    for (const char* l2 : {"L", "H"}) {
      spec.payoffs.push_back({"1|2", {l1, l2}, {Rational(0), Rational(0)}});
    }
  }
  for (const char* s1 : {"1|2", "1,2"}) {
    for (const char* l1 : {"L", "H"}) {
      for (const char* s2 : {"1|2", "1,2"}) {
        for (const char* l2 : {"L", "H"}) {
          GameSpec::MechanismRow row;
          row.choices = {{s1, l1}, {s2, l2}};
          row.structure_id = "1|2";
          row.labels = {l1, l2};
          spec.mechanism_table.push_back(std::move(row));
        }
      }
    }
  }
  const auto game = build_game(spec);
  CHECK(implementable_structures(*game, game->mechanism()).size() == 1);

  try {
    induced_normal_form(game, make_unanimity_mechanism());
    FAIL("expected mechanism-image-uncovered");
  } catch (const Error& e) {
    CHECK(e.code() == errc::mechanism_image_uncovered);
  }
}
