/**
 * @file io.hpp
 * @brief Text formats for arrangements and residue data.
 *
 * Arrangement files:
 *
 *     # comment
 *     field M=4
 *     dim n=3
 *     x1 = z*x2
 *     x3 = 1/2      # trailing comments are fine
 *
 * Residue files list the matrix size, then one block per hyperplane index
 * (1-based, as in the arrangement file) with N rows of N scalar literals:
 *
 *     size 2
 *     H 1
 *     1 0
 *     0 0
 */
#pragma once

#include <cctype>
#include <cstddef>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stabhyp/arrangement.hpp"
#include "stabhyp/geom.hpp"
#include "stabhyp/parse.hpp"
#include "stabhyp/pfaffian.hpp"

namespace stabhyp {

/// Error in an input file, rendered as `name:line:column: message`.
class InputError : public std::runtime_error {
 public:
  InputError(const std::string& source, std::size_t line, std::size_t column, const std::string& message)
      : std::runtime_error(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_, column_;
};

namespace detail {

/// Strips a trailing comment; returns the content and the column of its first
/// non-blank character (1-based).
inline std::pair<std::string_view, std::size_t> content_of(std::string_view line) {
  if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
  std::size_t b = 0;
  while (b < line.size() && std::isspace(static_cast<unsigned char>(line[b]))) ++b;
  std::size_t e = line.size();
  while (e > b && std::isspace(static_cast<unsigned char>(line[e - 1]))) --e;
  return {line.substr(b, e - b), b + 1};
}

/// Parses `<key> <var>=<int>` such as `field M=4`; nullopt when `key` does not match.
inline std::optional<long> header_value(std::string_view text, std::string_view key, std::string_view var,
                                        const std::string& source, std::size_t lineno, std::size_t col) {
  if (text.substr(0, key.size()) != key) return std::nullopt;
  if (text.size() > key.size() && !std::isspace(static_cast<unsigned char>(text[key.size()]))) return std::nullopt;
  std::string_view rest = text.substr(key.size());
  std::size_t skip = 0;
  while (skip < rest.size() && std::isspace(static_cast<unsigned char>(rest[skip]))) ++skip;
  rest.remove_prefix(skip);
  const std::size_t at = col + key.size() + skip;
  const std::string want = std::string(var) + "=";
  if (rest.substr(0, want.size()) != want)
    throw InputError(source, lineno, at, "expected '" + want + "<integer>' after '" + std::string(key) + "'");
  rest.remove_prefix(want.size());
  if (rest.empty()) throw InputError(source, lineno, at + want.size(), "missing integer");
  long v = 0;
  for (std::size_t i = 0; i < rest.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(rest[i])))
      throw InputError(source, lineno, at + want.size() + i, "expected a positive integer");
    v = v * 10 + (rest[i] - '0');
    if (v > 1'000'000) throw InputError(source, lineno, at + want.size(), "value too large");
  }
  if (v < 1) throw InputError(source, lineno, at + want.size(), "expected a positive integer");
  return v;
}

/// Whitespace-separated tokens, keeping parenthesized groups together.
inline std::vector<std::pair<std::size_t, std::string_view>> tokens(std::string_view s) {
  std::vector<std::pair<std::size_t, std::string_view>> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i == s.size()) break;
    const std::size_t start = i;
    int depth = 0;
    while (i < s.size() && (depth > 0 || !std::isspace(static_cast<unsigned char>(s[i])))) {
      if (s[i] == '(') ++depth;
      if (s[i] == ')') --depth;
      ++i;
    }
    out.emplace_back(start, s.substr(start, i - start));
  }
  return out;
}

}  // namespace detail

/// Reads an arrangement. Duplicate equations are skipped and reported in
/// `warnings` when given.
inline Arrangement read_arrangement(std::istream& in, const std::string& source = "<input>",
                                    std::vector<std::string>* warnings = nullptr) {
  std::optional<long> modulus, dim;
  std::optional<Arrangement> out;
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    auto [text, col] = detail::content_of(raw);
    if (text.empty()) continue;
    if (auto v = detail::header_value(text, "field", "M", source, lineno, col)) {
      if (out) throw InputError(source, lineno, col, "header after the first equation");
      if (modulus) throw InputError(source, lineno, col, "field given twice");
      modulus = v;
      continue;
    }
    if (auto v = detail::header_value(text, "dim", "n", source, lineno, col)) {
      if (out) throw InputError(source, lineno, col, "header after the first equation");
      if (dim) throw InputError(source, lineno, col, "dimension given twice");
      dim = v;
      continue;
    }
    if (!dim) throw InputError(source, lineno, col, "missing 'dim n=<int>' header before the first equation");
    const Field& field = Field::get(static_cast<unsigned>(modulus.value_or(1)));
    if (!out) out.emplace(static_cast<std::size_t>(*dim), field);
    Hyperplane h = [&] {
      try {
        return Hyperplane::parse(text, field, out->dim());
      } catch (const ParseError& e) {
        throw InputError(source, lineno, col + e.column() - 1, e.what());
      } catch (const std::invalid_argument& e) {
        throw InputError(source, lineno, col, e.what());
      } catch (const std::domain_error& e) {
        throw InputError(source, lineno, col, e.what());
      }
    }();
    if (!out->add(h) && warnings) {
      warnings->push_back(source + ":" + std::to_string(lineno) + ": duplicate hyperplane " + h.str() + " ignored");
    }
  }
  if (!dim) throw InputError(source, lineno + 1, 1, "missing 'dim n=<int>' header");
  if (!out) out.emplace(static_cast<std::size_t>(*dim), Field::get(static_cast<unsigned>(modulus.value_or(1))));
  return std::move(*out);
}

inline Arrangement read_arrangement_file(const std::string& path, std::vector<std::string>* warnings = nullptr) {
  std::ifstream in(path);
  if (!in) throw InputError(path, 0, 0, "cannot open file");
  return read_arrangement(in, path, warnings);
}

inline void write_arrangement(std::ostream& os, const Arrangement& a) {
  os << "field M=" << a.field().modulus() << "\n";
  os << "dim n=" << a.dim() << "\n";
  for (const auto& h : a) os << h.str() << "\n";
}

inline LogConnection read_residues(std::istream& in, const Arrangement& a, const std::string& source = "<residues>") {
  std::string raw;
  std::size_t lineno = 0;
  std::optional<std::size_t> size;
  std::vector<std::optional<SquareMatrix>> res(a.size());
  std::optional<std::size_t> current;
  std::vector<std::vector<Scalar>> rows;
  std::size_t block_line = 0;

  auto finish = [&]() {
    if (!current) return;
    if (rows.size() != *size)
      throw InputError(source, block_line, 1,
                       "residue for H " + std::to_string(*current + 1) + " has " + std::to_string(rows.size()) +
                           " rows, expected " + std::to_string(*size));
    res[*current] = SquareMatrix::from_rows(rows);
    rows.clear();
    current.reset();
  };

  while (std::getline(in, raw)) {
    ++lineno;
    auto [text, col] = detail::content_of(raw);
    if (text.empty()) continue;
    auto toks = detail::tokens(text);
    if (toks[0].second == "size") {
      if (size) throw InputError(source, lineno, col, "size given twice");
      if (toks.size() != 2) throw InputError(source, lineno, col, "expected 'size <N>'");
      try {
        const long v = std::stol(std::string(toks[1].second));
        if (v < 1) throw std::invalid_argument("");
        size = static_cast<std::size_t>(v);
      } catch (const std::exception&) {
        throw InputError(source, lineno, col + toks[1].first, "expected a positive integer");
      }
      continue;
    }
    if (!size) throw InputError(source, lineno, col, "missing 'size <N>' header");
    if (toks[0].second == "H") {
      finish();
      if (toks.size() != 2) throw InputError(source, lineno, col, "expected 'H <index>'");
      std::size_t idx = 0;
      try {
        idx = static_cast<std::size_t>(std::stoul(std::string(toks[1].second)));
      } catch (const std::exception&) {
        throw InputError(source, lineno, col + toks[1].first, "expected a hyperplane index");
      }
      if (idx < 1 || idx > a.size())
        throw InputError(source, lineno, col + toks[1].first,
                         "hyperplane index " + std::to_string(idx) + " out of range 1.." + std::to_string(a.size()));
      if (res[idx - 1]) throw InputError(source, lineno, col, "residue for H " + std::to_string(idx) + " given twice");
      current = idx - 1;
      block_line = lineno;
      continue;
    }
    if (!current) throw InputError(source, lineno, col, "matrix row outside an 'H <index>' block");
    if (rows.size() == *size) throw InputError(source, lineno, col, "too many rows for H " + std::to_string(*current + 1));
    if (toks.size() != *size)
      throw InputError(source, lineno, col,
                       "row has " + std::to_string(toks.size()) + " entries, expected " + std::to_string(*size));
    std::vector<Scalar> row;
    for (auto [off, tok] : toks) {
      try {
        row.push_back(parse_scalar(tok, a.field()));
      } catch (const ParseError& e) {
        throw InputError(source, lineno, col + off + e.column() - 1, e.what());
      } catch (const std::domain_error& e) {
        throw InputError(source, lineno, col + off, e.what());
      }
    }
    rows.push_back(std::move(row));
  }
  if (!size) throw InputError(source, lineno + 1, 1, "missing 'size <N>' header");
  finish();
  std::vector<SquareMatrix> out;
  for (std::size_t i = 0; i < res.size(); ++i) {
    if (!res[i]) throw InputError(source, lineno + 1, 1, "no residue for hyperplane " + std::to_string(i + 1));
    out.push_back(std::move(*res[i]));
  }
  return LogConnection(a, *size, std::move(out));
}

inline LogConnection read_residues_file(const std::string& path, const Arrangement& a) {
  std::ifstream in(path);
  if (!in) throw InputError(path, 0, 0, "cannot open file");
  return read_residues(in, a, path);
}

inline void write_residues(std::ostream& os, const LogConnection& c) {
  os << "size " << c.size() << "\n";
  for (std::size_t h = 0; h < c.residues().size(); ++h) {
    os << "H " << h + 1 << "\n";
    const auto& m = c.residue(h);
    for (std::size_t i = 0; i < m.size(); ++i) {
      for (std::size_t j = 0; j < m.size(); ++j) os << (j ? " " : "") << m(i, j).str();
      os << "\n";
    }
  }
}

}  // namespace stabhyp
