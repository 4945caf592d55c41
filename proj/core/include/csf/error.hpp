#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace csf {

// Stable error codes; the hyphenated names are part of the CLI/diagnostic
// contract (see errc_name).
enum class errc {
  invalid_bounds,
  size_mismatch,
  unknown_player,
  duplicate_label,
  missing_labels,
  missing_payoff,
  structure_out_of_bounds,
  mechanism_image_uncovered,
  projection_undefined,
  structure_not_implementable,
  scale_exceeded,
  numeric_nonconvergence,
  dimension_mismatch,
  invalid_init,
  syntax_error,
  unknown_structure_id,
  payoff_row_arity_mismatch,
  label_undeclared,
  missing_equilibrium,
  invalid_argument,
};

std::string_view errc_name(errc code);

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& message, std::string path = {});

  errc code() const { return code_; }
  // Field path for document validation errors, e.g. "payoffs[3].values".
  const std::string& path() const { return path_; }

 private:
  errc code_;
  std::string path_;
};

[[noreturn]] void fail(errc code, const std::string& message, std::string path = {});

}  // namespace csf
