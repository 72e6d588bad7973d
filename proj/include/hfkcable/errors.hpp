#pragma once

#include <stdexcept>
#include <string>

namespace hfk {

// Base class for every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define HFK_DEFINE_ERROR(Name)                 \
  class Name : public Error {                  \
   public:                                     \
    using Error::Error;                        \
  };

HFK_DEFINE_ERROR(DimensionMismatch)
HFK_DEFINE_ERROR(CompositionNonzero)
HFK_DEFINE_ERROR(EmptyTable)
HFK_DEFINE_ERROR(ConflictingEntry)
HFK_DEFINE_ERROR(InvalidComplex)
HFK_DEFINE_ERROR(InconsistentDisks)
HFK_DEFINE_ERROR(DisconnectedGraph)
HFK_DEFINE_ERROR(ZeroParameter)
HFK_DEFINE_ERROR(NotCoprime)
HFK_DEFINE_ERROR(MissingCPrime)
HFK_DEFINE_ERROR(InvalidParameter)
HFK_DEFINE_ERROR(ParseError)

#undef HFK_DEFINE_ERROR

}  // namespace hfk
