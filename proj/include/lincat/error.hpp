#pragma once

#include <stdexcept>
#include <string>

namespace lincat {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define LINCAT_DEFINE_ERROR(Name)            \
  class Name : public Error {                \
   public:                                   \
    explicit Name(const std::string& what)   \
        : Error(#Name ": " + what) {}        \
  };

// gpd
LINCAT_DEFINE_ERROR(AxiomViolation)
LINCAT_DEFINE_ERROR(TargetMismatch)
LINCAT_DEFINE_ERROR(SpanMismatch)
LINCAT_DEFINE_ERROR(StrictnessViolation)
LINCAT_DEFINE_ERROR(IndexOutOfRange)
LINCAT_DEFINE_ERROR(InvalidFunctor)

// rep
LINCAT_DEFINE_ERROR(NumericalFailure)
LINCAT_DEFINE_ERROR(GroupMismatch)
LINCAT_DEFINE_ERROR(NonIntegralMultiplicity)
LINCAT_DEFINE_ERROR(RankMismatch)
LINCAT_DEFINE_ERROR(SingularMap)
LINCAT_DEFINE_ERROR(ModelMismatch)

// twovect
LINCAT_DEFINE_ERROR(BasisMismatch)
LINCAT_DEFINE_ERROR(ShapeMismatch)

// lambda
LINCAT_DEFINE_ERROR(DimensionMismatch)
LINCAT_DEFINE_ERROR(IntertwinerProjectionFailure)

// io
LINCAT_DEFINE_ERROR(SchemaError)
LINCAT_DEFINE_ERROR(UnresolvedReference)

#undef LINCAT_DEFINE_ERROR

}  // namespace lincat
