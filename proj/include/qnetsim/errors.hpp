// Copyright 2026 The qnetsim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace qnetsim {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define QNETSIM_DEFINE_ERROR(Name)         \
  class Name : public Error {              \
   public:                                 \
    using Error::Error;                    \
  };

QNETSIM_DEFINE_ERROR(PastTimeError)
QNETSIM_DEFINE_ERROR(FormMismatch)
QNETSIM_DEFINE_ERROR(DimensionMismatch)
QNETSIM_DEFINE_ERROR(LengthMismatch)
QNETSIM_DEFINE_ERROR(TooShort)
QNETSIM_DEFINE_ERROR(Unattainable)
QNETSIM_DEFINE_ERROR(NotBalanced)
QNETSIM_DEFINE_ERROR(UnknownDetector)
QNETSIM_DEFINE_ERROR(Unsupported)
QNETSIM_DEFINE_ERROR(WiringError)
QNETSIM_DEFINE_ERROR(IoError)
QNETSIM_DEFINE_ERROR(ProtocolError)

// Configuration problems. Both map to the CLI's config-error exit code.
QNETSIM_DEFINE_ERROR(ParseError)
QNETSIM_DEFINE_ERROR(ValidationError)

#undef QNETSIM_DEFINE_ERROR

}  // namespace qnetsim
