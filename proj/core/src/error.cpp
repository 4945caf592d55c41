#include "csf/error.hpp"

namespace csf {

std::string_view errc_name(errc code) {
  switch (code) {
    case errc::invalid_bounds: return "invalid-bounds";
    case errc::size_mismatch: return "size-mismatch";
    case errc::unknown_player: return "unknown-player";
    case errc::duplicate_label: return "duplicate-label";
    case errc::missing_labels: return "missing-labels";
    case errc::missing_payoff: return "missing-payoff";
    case errc::structure_out_of_bounds: return "structure-out-of-bounds";
    case errc::mechanism_image_uncovered: return "mechanism-image-uncovered";
    case errc::projection_undefined: return "projection-undefined";
    case errc::structure_not_implementable: return "structure-not-implementable";
    case errc::scale_exceeded: return "scale-exceeded";
    case errc::numeric_nonconvergence: return "numeric-nonconvergence";
    case errc::dimension_mismatch: return "dimension-mismatch";
    case errc::invalid_init: return "invalid-init";
    case errc::syntax_error: return "syntax-error";
    case errc::unknown_structure_id: return "unknown-structure-id";
    case errc::payoff_row_arity_mismatch: return "payoff-row-arity-mismatch";
    case errc::label_undeclared: return "label-undeclared";
    case errc::missing_equilibrium: return "missing-equilibrium";
    case errc::invalid_argument: return "invalid-argument";
  }
  return "unknown-error";
}

namespace {
std::string format_message(errc code, const std::string& message, const std::string& path) {
  std::string out{errc_name(code)};
  if (!path.empty()) {
    out += " at ";
    out += path;
  }
  out += ": ";
  out += message;
  return out;
}
}  // namespace

Error::Error(errc code, const std::string& message, std::string path)
    : std::runtime_error(format_message(code, message, path)),
      code_(code),
      path_(std::move(path)) {}

void fail(errc code, const std::string& message, std::string path) {
  throw Error(code, message, std::move(path));
}

}  // namespace csf
