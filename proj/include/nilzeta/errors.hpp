#pragma once

#include <stdexcept>
#include <string>

namespace nilzeta {

// Every failure raised by the library derives from Error so callers (the CLI
// in particular) can separate library rejections from programming errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define NILZETA_DEFINE_ERROR(Name)       \
  class Name : public Error {            \
   public:                               \
    using Error::Error;                  \
  }

NILZETA_DEFINE_ERROR(InvalidArgument);
NILZETA_DEFINE_ERROR(Overflow);
NILZETA_DEFINE_ERROR(SingularMatrix);
NILZETA_DEFINE_ERROR(NotPPower);
NILZETA_DEFINE_ERROR(InvalidAutomorphism);
NILZETA_DEFINE_ERROR(BudgetExceeded);
NILZETA_DEFINE_ERROR(IncomparableLattices);
NILZETA_DEFINE_ERROR(NotAnIdeal);
NILZETA_DEFINE_ERROR(InvalidTuple);
NILZETA_DEFINE_ERROR(ReductionDiverged);
NILZETA_DEFINE_ERROR(ParseError);

#undef NILZETA_DEFINE_ERROR

}  // namespace nilzeta
