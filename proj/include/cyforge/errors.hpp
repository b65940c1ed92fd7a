#pragma once

#include <stdexcept>
#include <string>

namespace cyforge {

// Base for all domain errors; the CLI maps these to exit code 1.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define CYFORGE_ERROR(Name)                    \
  struct Name : Error {                        \
    using Error::Error;                        \
    Name() : Error(#Name) {}                   \
  }

CYFORGE_ERROR(NotFullDimensional);
CYFORGE_ERROR(OriginNotInterior);
CYFORGE_ERROR(NonIntegralDual);
CYFORGE_ERROR(NotReflexive);
CYFORGE_ERROR(WrongDimension);
CYFORGE_ERROR(NotAdmissible);
CYFORGE_ERROR(NotSmoothable);
CYFORGE_ERROR(NonIntegralInvariant);
CYFORGE_ERROR(InconsistentSystem);
CYFORGE_ERROR(NoOperatorFound);
CYFORGE_ERROR(AmbiguousFit);
CYFORGE_ERROR(NonMUMPoint);
CYFORGE_ERROR(SingularNormalization);
CYFORGE_ERROR(NonIntegralInstanton);
CYFORGE_ERROR(MalformedHeader);
CYFORGE_ERROR(DimensionNotFour);
CYFORGE_ERROR(DuplicateMonomial);
CYFORGE_ERROR(VariableIndexOutOfRange);
CYFORGE_ERROR(InvalidSupport);

#undef CYFORGE_ERROR

// Parse failure with a character position, for the Laurent grammar.
struct SyntaxError : Error {
  std::size_t position;
  SyntaxError(const std::string& what, std::size_t pos)
      : Error(what + " at position " + std::to_string(pos)), position(pos) {}
};

}  // namespace cyforge
