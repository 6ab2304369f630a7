// ivcomp/error.h

// Copyright 2026  The ivcomp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef IVCOMP_ERROR_H_
#define IVCOMP_ERROR_H_

#include <stdexcept>
#include <string>

namespace ivcomp {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define IVCOMP_DECLARE_ERROR(Name, Base)   \
  class Name : public Base {               \
   public:                                 \
    using Base::Base;                      \
  };

IVCOMP_DECLARE_ERROR(DimensionError, Error)
IVCOMP_DECLARE_ERROR(NumericalError, Error)
IVCOMP_DECLARE_ERROR(NotPositiveDefiniteError, NumericalError)
// Within-class scatter (plus ridge) not invertible in LDA.
IVCOMP_DECLARE_ERROR(SingularityError, NumericalError)
IVCOMP_DECLARE_ERROR(DegenerateInputError, Error)
IVCOMP_DECLARE_ERROR(ConfigError, Error)
IVCOMP_DECLARE_ERROR(FormatError, Error)
IVCOMP_DECLARE_ERROR(LookupError, Error)
IVCOMP_DECLARE_ERROR(LabelError, Error)
// PLDA within-speaker covariance cannot be estimated.
IVCOMP_DECLARE_ERROR(IdentifiabilityError, Error)
IVCOMP_DECLARE_ERROR(BatchStatisticsError, Error)
IVCOMP_DECLARE_ERROR(CacheError, Error)
IVCOMP_DECLARE_ERROR(ModeError, Error)

#undef IVCOMP_DECLARE_ERROR

/// Malformed text input; carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(const std::string &what, std::size_t line)
      : Error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace ivcomp

#endif  // IVCOMP_ERROR_H_
