// src/textio.cc

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

#include "ivcomp/textio.h"

#include <cctype>
#include <charconv>
#include <cmath>

#include "ivcomp/error.h"

namespace ivcomp {

std::string format_double(double x) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view tok) {
  double x = 0.0;
  auto res = std::from_chars(tok.data(), tok.data() + tok.size(), x);
  if (res.ec != std::errc() || res.ptr != tok.data() + tok.size() ||
      !std::isfinite(x))
    throw FormatError("not a finite number: '" + std::string(tok) + "'");
  return x;
}

std::size_t parse_count(std::string_view tok) {
  std::size_t n = 0;
  auto res = std::from_chars(tok.data(), tok.data() + tok.size(), n);
  if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
    throw FormatError("not a count: '" + std::string(tok) + "'");
  return n;
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  auto is_ws = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
  while (i < line.size()) {
    while (i < line.size() && is_ws(line[i])) ++i;
    std::size_t j = i;
    while (j < line.size() && !is_ws(line[j])) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::ofstream open_out(const std::filesystem::path &path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot open for writing: " + path.string());
  return os;
}

std::ifstream open_in(const std::filesystem::path &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("cannot open for reading: " + path.string());
  return is;
}

std::string TokenReader::next(const char *what) {
  std::string tok;
  int c;
  while ((c = is_.peek()) != EOF && std::isspace(c)) {
    if (c == '\n') ++line_;
    is_.get();
  }
  while ((c = is_.peek()) != EOF && !std::isspace(c)) tok.push_back(char(is_.get()));
  if (tok.empty())
    throw ParseError(std::string("unexpected end of input reading ") + what, line_);
  return tok;
}

void TokenReader::expect(std::string_view token) {
  std::string tok = next(std::string(token).c_str());
  if (tok != token)
    throw ParseError("expected '" + std::string(token) + "', got '" + tok + "'",
                     line_);
}

double TokenReader::next_double(const char *what) {
  std::string tok = next(what);
  try {
    return parse_double(tok);
  } catch (const FormatError &e) {
    throw ParseError(std::string(what) + ": " + e.what(), line_);
  }
}

std::size_t TokenReader::next_count(const char *what) {
  std::string tok = next(what);
  try {
    return parse_count(tok);
  } catch (const FormatError &e) {
    throw ParseError(std::string(what) + ": " + e.what(), line_);
  }
}

Vector TokenReader::next_vector(const char *what) {
  expect(what);
  std::size_t n = next_count(what);
  Vector v(n);
  for (double &x : v) x = next_double(what);
  return v;
}

Matrix TokenReader::next_matrix(const char *what) {
  expect(what);
  std::size_t r = next_count(what), c = next_count(what);
  Matrix m(r, c);
  for (double &x : m.data()) x = next_double(what);
  return m;
}

void write_vector(std::ostream &os, std::string_view name, std::span<const double> v) {
  os << name << ' ' << v.size() << '\n';
  for (std::size_t i = 0; i < v.size(); ++i)
    os << (i ? " " : "") << format_double(v[i]);
  os << '\n';
}

void write_matrix(std::ostream &os, std::string_view name, const Matrix &m) {
  os << name << ' ' << m.rows() << ' ' << m.cols() << '\n';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto row = m.row(r);
    for (std::size_t c = 0; c < row.size(); ++c)
      os << (c ? " " : "") << format_double(row[c]);
    os << '\n';
  }
}

}  // namespace ivcomp
