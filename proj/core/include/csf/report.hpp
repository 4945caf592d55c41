#pragma once

#include "csf/equilibrium.hpp"
#include "csf/stability.hpp"

#include <string>
#include <vector>

namespace csf {

// Machine-readable JSON plus the human table rendering of the same numbers.
// Every numeric value printed in `table` also appears in `json`; rationals
// print as "p" or "p/q".
struct RenderedReport {
  std::string json;
  std::string table;
};

inline constexpr int kReportSchemaVersion = 1;

RenderedReport report_enumeration(int n, int k, bool show_diagrams, bool show_structures);

RenderedReport report_solve(const InducedGame& game, const SolveReport& solve,
                            const std::string& method, bool include_induced_table);

RenderedReport report_stability(const FamilyAnalysis& family,
                                const std::vector<StabilityVerdict>& verdicts);

}  // namespace csf
