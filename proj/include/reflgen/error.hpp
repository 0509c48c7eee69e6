#pragma once

#include <stdexcept>
#include <string>

namespace reflgen {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define REFLGEN_DEFINE_ERROR(Name)            \
  class Name : public Error {                 \
   public:                                    \
    explicit Name(const std::string& what)    \
        : Error(#Name ": " + what) {}         \
  }

// exact
REFLGEN_DEFINE_ERROR(RankDeficient);
REFLGEN_DEFINE_ERROR(NoKernel);
REFLGEN_DEFINE_ERROR(SingularMatrix);
REFLGEN_DEFINE_ERROR(DimensionMismatch);
REFLGEN_DEFINE_ERROR(ArithmeticOverflow);

// roots / gen
REFLGEN_DEFINE_ERROR(UnsupportedType);
REFLGEN_DEFINE_ERROR(ZeroMirror);
REFLGEN_DEFINE_ERROR(NonCrystallographicAngle);
REFLGEN_DEFINE_ERROR(UnknownType);

// diagram / enumerate
REFLGEN_DEFINE_ERROR(NotSimplyLaced);
REFLGEN_DEFINE_ERROR(NotF4);
REFLGEN_DEFINE_ERROR(NotSeriesModel);
REFLGEN_DEFINE_ERROR(NotBCModel);

// alcove
REFLGEN_DEFINE_ERROR(BudgetExceeded);
REFLGEN_DEFINE_ERROR(UnboundedCell);
REFLGEN_DEFINE_ERROR(NoSpecialVertex);
REFLGEN_DEFINE_ERROR(InvalidSimplex);

// serialization
REFLGEN_DEFINE_ERROR(ParseError);
REFLGEN_DEFINE_ERROR(CheckpointMismatch);

#undef REFLGEN_DEFINE_ERROR

}  // namespace reflgen
