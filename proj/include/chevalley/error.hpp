#pragma once

#include <stdexcept>
#include <string>

namespace chevalley {

// Base class for everything this library throws on contract violations.
struct error : std::runtime_error {
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

#define CHEVALLEY_DEFINE_ERROR(name)                                  \
  struct name : error {                                               \
    explicit name(const std::string& what) : error(what) {}           \
  }

CHEVALLEY_DEFINE_ERROR(descriptor_mismatch);
CHEVALLEY_DEFINE_ERROR(not_a_unit);
CHEVALLEY_DEFINE_ERROR(unsupported_ring);
CHEVALLEY_DEFINE_ERROR(invalid_type);
CHEVALLEY_DEFINE_ERROR(not_a_root);
CHEVALLEY_DEFINE_ERROR(proportional_roots);
CHEVALLEY_DEFINE_ERROR(not_an_automorphism);
CHEVALLEY_DEFINE_ERROR(not_unipotent);
CHEVALLEY_DEFINE_ERROR(exponent_too_large);
CHEVALLEY_DEFINE_ERROR(bad_idempotents);
CHEVALLEY_DEFINE_ERROR(extension_inconsistent);
CHEVALLEY_DEFINE_ERROR(not_monomial);
CHEVALLEY_DEFINE_ERROR(residual_not_torus);
CHEVALLEY_DEFINE_ERROR(not_linear);
CHEVALLEY_DEFINE_ERROR(not_semilinear);
CHEVALLEY_DEFINE_ERROR(not_based_at_identity);
CHEVALLEY_DEFINE_ERROR(parse_error);
CHEVALLEY_DEFINE_ERROR(unsupported);

#undef CHEVALLEY_DEFINE_ERROR

}  // namespace chevalley
