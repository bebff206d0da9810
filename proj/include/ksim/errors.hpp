#pragma once

#include <stdexcept>
#include <string>

namespace ksim {

// Every failure carries a stable machine-readable kind plus a human message.
class error : public std::runtime_error {
 public:
  error(std::string kind, const std::string& msg)
      : std::runtime_error(kind + ": " + msg), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

namespace errk {
inline constexpr const char* division_by_zero = "DivisionByZero";
inline constexpr const char* mismatched_field = "MismatchedField";
inline constexpr const char* factorization_limit = "FactorizationLimit";
inline constexpr const char* dimension_mismatch = "DimensionMismatch";
inline constexpr const char* not_symmetric = "NotSymmetric";
inline constexpr const char* degenerate_form = "DegenerateForm";
inline constexpr const char* zero_scale = "ZeroScale";
inline constexpr const char* not_a_similarity = "NotASimilarity";
inline constexpr const char* singular = "Singular";
inline constexpr const char* not_endomorphism = "NotEndomorphism";
inline constexpr const char* precondition_failed = "PreconditionFailed";
inline constexpr const char* space_mismatch = "SpaceMismatch";
inline constexpr const char* too_large = "TooLarge";
inline constexpr const char* zero_coefficient = "ZeroCoefficient";
inline constexpr const char* algebra_mismatch = "AlgebraMismatch";
inline constexpr const char* not_even = "NotEven";
inline constexpr const char* well_definedness = "WellDefinednessFailure";
inline constexpr const char* bad_polarization_pair = "BadPolarizationPair";
inline constexpr const char* zero_norm_base_point = "ZeroNormBasePoint";
inline constexpr const char* convention_error = "ConventionError";
inline constexpr const char* unknown_lattice = "UnknownLattice";
inline constexpr const char* unknown_name = "UnknownName";
inline constexpr const char* catalog_corrupt = "CatalogCorrupt";
inline constexpr const char* parse_error = "ParseError";
}  // namespace errk

[[noreturn]] inline void fail(const char* kind, const std::string& msg) {
  throw error(kind, msg);
}

inline void require(bool ok, const char* kind, const std::string& msg) {
  if (!ok) fail(kind, msg);
}

}  // namespace ksim
