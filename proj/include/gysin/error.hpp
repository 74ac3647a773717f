#pragma once

#include <stdexcept>
#include <string>

namespace gysin {

/// Base for all domain errors. Messages name the failing invariant and the
/// location (degree, generator pair, slot) that witnesses it.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define GYSIN_DEFINE_ERROR(Name)   \
  struct Name : Error {            \
    using Error::Error;            \
  }

GYSIN_DEFINE_ERROR(InvalidComplex);
GYSIN_DEFINE_ERROR(InvalidChainMap);
GYSIN_DEFINE_ERROR(RingMismatch);
GYSIN_DEFINE_ERROR(NotASublattice);
GYSIN_DEFINE_ERROR(ExactnessFailure);
GYSIN_DEFINE_ERROR(NotAMorphism);
GYSIN_DEFINE_ERROR(InvalidFiltration);
GYSIN_DEFINE_ERROR(NotAHomotopy);
GYSIN_DEFINE_ERROR(OrderTooHigh);
GYSIN_DEFINE_ERROR(DSquaredNonzero);
GYSIN_DEFINE_ERROR(SubcomplexViolation);
GYSIN_DEFINE_ERROR(BadParams);
GYSIN_DEFINE_ERROR(Contradiction);
GYSIN_DEFINE_ERROR(SchemaError);

#undef GYSIN_DEFINE_ERROR

}  // namespace gysin
