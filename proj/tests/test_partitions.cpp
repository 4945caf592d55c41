#include <csf/error.hpp>
#include <csf/partitions.hpp>

#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

using namespace csf;

namespace {

std::vector<std::vector<int>> parts_of(const std::vector<YoungDiagram>& diagrams) {
  std::vector<std::vector<int>> out;
  for (const auto& d : diagrams) out.push_back(d.parts());
  return out;
}

std::vector<std::string> ids_of(const std::vector<CoalitionStructure>& structures) {
  std::vector<std::string> out;
  for (const auto& s : structures) out.push_back(s.id());
  return out;
}

}  // namespace

TEST_CASE("enumerate_diagrams matches the small cases") {
  CHECK(parts_of(enumerate_diagrams(3, 1)) == std::vector<std::vector<int>>{{1, 1, 1}});
  CHECK(parts_of(enumerate_diagrams(3, 2)) == std::vector<std::vector<int>>{{2, 1}, {1, 1, 1}});
  CHECK(parts_of(enumerate_diagrams(1, 1)) == std::vector<std::vector<int>>{{1}});
  CHECK(enumerate_diagrams(6, 3).size() == 7);  // partitions of 6 with parts <= 3
}

TEST_CASE("enumerate_diagrams rejects bad bounds") {
  CHECK_THROWS_AS(enumerate_diagrams(3, 0), Error);
  CHECK_THROWS_AS(enumerate_diagrams(3, 4), Error);
  CHECK_THROWS_AS(enumerate_diagrams(0, 1), Error);
  try {
    enumerate_diagrams(3, 4);
  } catch (const Error& e) {
    CHECK(e.code() == errc::invalid_bounds);
  }
}

TEST_CASE("enumerate_structures matches the small cases") {
  CHECK(ids_of(enumerate_structures(2, 2)) == std::vector<std::string>{"1|2", "1,2"});
  CHECK(ids_of(enumerate_structures(3, 1)) == std::vector<std::string>{"1|2|3"});
  CHECK(enumerate_structures(3, 2).size() == 4);
  CHECK(enumerate_structures(3, 3).size() == 5);
}

TEST_CASE("structure sequences nest as prefixes across k") {
  for (int n = 1; n <= 6; ++n) {
    for (int k = 1; k < n; ++k) {
      const auto smaller = ids_of(enumerate_structures(n, k));
      const auto larger = ids_of(enumerate_structures(n, k + 1));
      REQUIRE(smaller.size() <= larger.size());
      CHECK(std::equal(smaller.begin(), smaller.end(), larger.begin()));
    }
  }
}

TEST_CASE("check_nesting") {
  CHECK(check_nesting(2));
  CHECK(check_nesting(1));
  CHECK(check_nesting(5));
}

TEST_CASE("allocations_of_diagram") {
  const auto three = allocations_of_diagram(YoungDiagram({2, 1}), {1, 2, 3});
  CHECK(ids_of(three) == std::vector<std::string>{"1,2|3", "1,3|2", "1|2,3"});

  CHECK(allocations_of_diagram(YoungDiagram({1, 1}), {1, 2}).size() == 1);
  CHECK(allocations_of_diagram(YoungDiagram({2, 2}), {1, 2, 3, 4}).size() == 3);
  CHECK_THROWS_AS(allocations_of_diagram(YoungDiagram({2, 1}), {1, 2}), Error);
}

TEST_CASE("count_structures equals the enumeration length and the oracle") {
  for (int n = 1; n <= 6; ++n) {
    for (int k = 1; k <= n; ++k) {
      const auto structures = enumerate_structures(n, k);
      CHECK(count_structures(n, k) == structures.size());
      CHECK(count_structures(n, k) == testing::rgs_partition_count(n, k));
    }
  }
  CHECK(count_structures(2, 1) == 1);
  CHECK(count_structures(4, 2) == 10);
  CHECK(count_structures(3, 3) == 5);
}

TEST_CASE("unrestricted counts are Bell numbers") {
  for (int n = 1; n <= 8; ++n) {
    CHECK(count_structures(n, n) == testing::rgs_partition_count(n, n));
  }
  // known values as an extra anchor
  CHECK(count_structures(8, 8) == 4140);
  CHECK(count_structures(5, 5) == 52);
}

TEST_CASE("counts are monotone in k") {
  for (int n = 1; n <= 7; ++n) {
    for (int k = 1; k < n; ++k) {
      CHECK(count_structures(n, k) <= count_structures(n, k + 1));
    }
  }
}

TEST_CASE("every enumerated structure satisfies its invariants") {
  for (int n = 1; n <= 6; ++n) {
    for (int k = 1; k <= n; ++k) {
      for (const auto& s : enumerate_structures(n, k)) {
        CHECK(s.max_block_size() <= k);
        CHECK(s.n_players() == n);
        std::set<PlayerId> seen;
        for (const auto& block : s.blocks()) {
          REQUIRE(!block.empty());
          for (PlayerId p : block) CHECK(seen.insert(p).second);
        }
        CHECK(static_cast<int>(seen.size()) == n);
      }
    }
  }
}

TEST_CASE("grouping structures by diagram matches allocations_of_diagram") {
  for (int n = 2; n <= 6; ++n) {
    for (int k = 1; k <= n; ++k) {
      std::map<std::vector<int>, std::size_t> by_diagram;
      for (const auto& s : enumerate_structures(n, k)) ++by_diagram[s.diagram().parts()];

      const auto diagrams = enumerate_diagrams(n, k);
      REQUIRE(by_diagram.size() == diagrams.size());
      std::vector<PlayerId> players(n);
      for (int i = 0; i < n; ++i) players[i] = i + 1;
      for (const auto& d : diagrams) {
        REQUIRE(by_diagram.count(d.parts()));
        CHECK(by_diagram[d.parts()] == allocations_of_diagram(d, players).size());
      }
    }
  }
}

TEST_CASE("enumeration is deterministic") {
  CHECK(ids_of(enumerate_structures(5, 3)) == ids_of(enumerate_structures(5, 3)));
  CHECK(parts_of(enumerate_diagrams(7, 4)) == parts_of(enumerate_diagrams(7, 4)));
}

TEST_CASE("structure ids round-trip") {
  for (const auto& s : enumerate_structures(5, 3)) {
    CHECK(structure_from_id(s.id()) == s);
  }
  CHECK(structure_from_id("2,1|3").id() == "1,2|3");  // canonicalization
  CHECK_THROWS_AS(structure_from_id(""), Error);
  CHECK_THROWS_AS(structure_from_id("1,,2"), Error);
  CHECK_THROWS_AS(structure_from_id("1|x"), Error);
  CHECK_THROWS_AS(structure_from_id("1|1"), Error);
}

TEST_CASE("block_of and diagram accessors") {
  const CoalitionStructure s({{2, 1}, {3}});
  CHECK(s.id() == "1,2|3");
  CHECK(s.block_of(2) == std::vector<PlayerId>{1, 2});
  CHECK(s.block_of(3) == std::vector<PlayerId>{3});
  CHECK_THROWS_AS(s.block_of(4), Error);
  CHECK(s.diagram().parts() == std::vector<int>{2, 1});
}
