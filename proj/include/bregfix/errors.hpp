#pragma once

#include <stdexcept>
#include <string>

namespace bregfix {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define BREGFIX_DECLARE_ERROR(Name)         \
  class Name : public Error {               \
   public:                                  \
    using Error::Error;                     \
  }

// Geometry / metrics
BREGFIX_DECLARE_ERROR(DomainViolation);
BREGFIX_DECLARE_ERROR(WeightError);
BREGFIX_DECLARE_ERROR(NumericalConsistency);

// Sets and projections
BREGFIX_DECLARE_ERROR(Infeasible);
BREGFIX_DECLARE_ERROR(UnsupportedCombination);
BREGFIX_DECLARE_ERROR(NonConvergence);
BREGFIX_DECLARE_ERROR(ProbeOutsideSet);

// Mappings
BREGFIX_DECLARE_ERROR(NotAFixedPoint);
BREGFIX_DECLARE_ERROR(NewtonNonConvergence);

// Solver
BREGFIX_DECLARE_ERROR(ScheduleViolation);
BREGFIX_DECLARE_ERROR(AuditFailure);

// Configuration
BREGFIX_DECLARE_ERROR(ParseError);
BREGFIX_DECLARE_ERROR(SchemaError);
BREGFIX_DECLARE_ERROR(DimensionMismatch);

#undef BREGFIX_DECLARE_ERROR

}  // namespace bregfix
