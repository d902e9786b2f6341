#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace collapse {

enum class Errc {
  negative_mass,
  length_mismatch,
  not_normalized,
  empty_distribution,
  product_too_large,
  alpha_out_of_range,
  infeasible_parameters,
  degenerate_input,
  dimension_mismatch,
  too_few_samples,
  undefined_kl,
  invalid_argument,
  invalid_region,
  parse_error,
  io_error,
};

std::string_view errc_name(Errc code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

inline std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::negative_mass: return "NegativeMass";
    case Errc::length_mismatch: return "LengthMismatch";
    case Errc::not_normalized: return "NotNormalized";
    case Errc::empty_distribution: return "EmptyDistribution";
    case Errc::product_too_large: return "ProductTooLarge";
    case Errc::alpha_out_of_range: return "AlphaOutOfRange";
    case Errc::infeasible_parameters: return "InfeasibleParameters";
    case Errc::degenerate_input: return "DegenerateInput";
    case Errc::dimension_mismatch: return "DimensionMismatch";
    case Errc::too_few_samples: return "TooFewSamples";
    case Errc::undefined_kl: return "UndefinedKL";
    case Errc::invalid_argument: return "InvalidArgument";
    case Errc::invalid_region: return "InvalidRegion";
    case Errc::parse_error: return "ParseError";
    case Errc::io_error: return "IoError";
  }
  return "Unknown";
}

}  // namespace collapse
