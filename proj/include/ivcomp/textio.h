// ivcomp/textio.h

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

// Shared numeric text conventions: whitespace-separated tokens, doubles in
// shortest round-trip decimal form, LF line endings.

#ifndef IVCOMP_TEXTIO_H_
#define IVCOMP_TEXTIO_H_

#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ivcomp/linalg.h"

namespace ivcomp {

std::string format_double(double x);
/// Throws FormatError when `tok` is not entirely a finite number.
double parse_double(std::string_view tok);
std::size_t parse_count(std::string_view tok);
std::vector<std::string_view> split_ws(std::string_view line);

std::ofstream open_out(const std::filesystem::path &path);
std::ifstream open_in(const std::filesystem::path &path);

/// Reads whitespace-separated tokens, tracking line numbers for errors.
class TokenReader {
 public:
  explicit TokenReader(std::istream &is) : is_(is) {}

  std::string next(const char *what);
  void expect(std::string_view token);
  double next_double(const char *what);
  std::size_t next_count(const char *what);
  Vector next_vector(const char *what);
  Matrix next_matrix(const char *what);
  std::size_t line() const { return line_; }

 private:
  std::istream &is_;
  std::size_t line_ = 1;
};

/// `name n` then the n values on one line.
void write_vector(std::ostream &os, std::string_view name, std::span<const double> v);
/// `name rows cols` then one line per row.
void write_matrix(std::ostream &os, std::string_view name, const Matrix &m);

}  // namespace ivcomp

#endif  // IVCOMP_TEXTIO_H_
