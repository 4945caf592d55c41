#pragma once

#include <csf/game.hpp>
#include <csf/partitions.hpp>
#include <csf/rational.hpp>

#include <random>
#include <string>

namespace csf::bench {

// n-player game at the given maximum coalition size with two labels per
// structure and seeded random payoffs.
inline GameSpec random_spec(int n, int k, unsigned seed) {
  GameSpec spec;
  for (int p = 1; p <= n; ++p) spec.player_names.push_back(std::to_string(p));
  spec.k_max = k;
  spec.shared_labels = std::vector<std::string>{"L", "H"};
  spec.mechanism_name = "unanimity";
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> value(-100000, 100000);
  for (const auto& structure : enumerate_structures(n, k)) {
    std::vector<int> labels(n, 0);
    while (true) {
      GameSpec::PayoffRow row;
      row.structure_id = structure.id();
      for (int p = 0; p < n; ++p) row.labels.push_back(labels[p] ? "H" : "L");
      for (int p = 0; p < n; ++p) row.values.push_back(Rational(value(rng), 10000));
      spec.payoffs.push_back(std::move(row));
      int i = n - 1;
      while (i >= 0 && labels[i] == 1) labels[i--] = 0;
      if (i < 0) break;
      labels[i] = 1;
    }
  }
  return spec;
}

}  // namespace csf::bench
