/**
 * @file geom.hpp
 * @brief Hyperplanes, flats and direction subspaces of C^n over Q(zeta_M).
 *
 * A flat is stored as the reduced row echelon form of an augmented system
 * (B | d), i.e. { x : B x = d }. Pivots are chosen leftmost-first and scaled
 * to 1, so two flats are equal exactly when their row systems are identical.
 */
#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stabhyp/cyclo.hpp"
#include "stabhyp/parse.hpp"

namespace stabhyp {

/// Augmented row [b_1 .. b_n | d] representing b . x = d.
using Row = std::vector<Scalar>;

namespace detail {

inline bool linear_part_zero(const Row& r) {
  for (std::size_t i = 0; i + 1 < r.size(); ++i) {
    if (!r[i].is_zero()) return false;
  }
  return true;
}

inline std::size_t leading_column(const Row& r) {
  for (std::size_t i = 0; i + 1 < r.size(); ++i) {
    if (!r[i].is_zero()) return i;
  }
  return r.size() - 1;
}

// row -= f * other
inline void axpy(Row& row, const Scalar& f, const Row& other) {
  for (std::size_t k = 0; k < row.size(); ++k) {
    if (!other[k].is_zero()) row[k] -= f * other[k];
  }
}

inline void normalize_leading(Row& row, std::size_t col) {
  if (row[col].is_one()) return;
  const Scalar inv = row[col].inverse();
  for (std::size_t k = col; k < row.size(); ++k) {
    if (!row[k].is_zero()) row[k] *= inv;
  }
}

/// Gauss-Jordan elimination. Returns nullopt when some row reads 0 = d != 0.
inline std::optional<std::vector<Row>> rref(std::vector<Row> rows) {
  if (rows.empty()) return rows;
  const std::size_t width = rows.front().size();
  std::size_t rank = 0;
  for (std::size_t col = 0; col + 1 < width && rank < rows.size(); ++col) {
    std::size_t p = rank;
    while (p < rows.size() && rows[p][col].is_zero()) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[rank], rows[p]);
    normalize_leading(rows[rank], col);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == rank || rows[i][col].is_zero()) continue;
      const Scalar f = rows[i][col];
      axpy(rows[i], f, rows[rank]);
    }
    ++rank;
  }
  for (std::size_t i = rank; i < rows.size(); ++i) {
    if (!rows[i].back().is_zero()) return std::nullopt;
  }
  rows.resize(rank);
  return rows;
}

/// Eliminates the pivot columns of an RREF system from `row`.
inline void reduce_against(Row& row, const std::vector<Row>& system) {
  for (const auto& r : system) {
    const std::size_t p = leading_column(r);
    if (!row[p].is_zero()) {
      const Scalar f = row[p];
      axpy(row, f, r);
    }
  }
}

inline bool row_is_zero(const Row& r) {
  for (const auto& s : r) {
    if (!s.is_zero()) return false;
  }
  return true;
}

inline int compare_rows(const Row& a, const Row& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const int c = compare(a[i], b[i]);
    if (c != 0) return c;
  }
  return 0;
}

inline int compare_systems(const std::vector<Row>& a, const std::vector<Row>& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const int c = compare_rows(a[i], b[i]);
    if (c != 0) return c;
  }
  return 0;
}

/// Renders sum_i row[i] x_(i+1) without the right-hand side.
inline std::string render_linear(const std::vector<Scalar>& coeffs) {
  std::string out;
  bool first = true;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const Scalar& c = coeffs[i];
    if (c.is_zero()) continue;
    const std::string var = "x" + std::to_string(i + 1);
    // A literal "is negative" when it prints with a leading '-' and no parens.
    std::string lit = c.str();
    bool negative = !lit.empty() && lit[0] == '-';
    if (negative) lit = (-c).str();
    std::string term = lit == "1" ? var : lit + "*" + var;
    if (first) {
      out += negative ? "-" + term : term;
    } else {
      out += negative ? " - " + term : " + " + term;
    }
    first = false;
  }
  return first ? "0" : out;
}

}  // namespace detail

/// Nonzero vector of C^n.
class Vector {
 public:
  explicit Vector(std::vector<Scalar> entries) : e_(std::move(entries)) {
    bool any = false;
    for (const auto& s : e_) any = any || !s.is_zero();
    if (!any) throw std::invalid_argument("direction vector must be nonzero");
  }

  static Vector axis(std::size_t n, std::size_t i) {
    std::vector<Scalar> e(n, Scalar(0));
    e.at(i) = Scalar(1);
    return Vector(std::move(e));
  }

  std::size_t size() const noexcept { return e_.size(); }
  const Scalar& operator[](std::size_t i) const { return e_[i]; }
  const std::vector<Scalar>& entries() const noexcept { return e_; }

  std::string str() const {
    std::string out = "(";
    for (std::size_t i = 0; i < e_.size(); ++i) {
      if (i) out += ", ";
      out += e_[i].str();
    }
    return out + ")";
  }

  friend bool operator==(const Vector& a, const Vector& b) {
    return detail::compare_rows(a.e_, b.e_) == 0;
  }

 private:
  std::vector<Scalar> e_;
};

/// Affine hyperplane sum_i c_i x_i + c = 0 with the first nonzero c_i equal to 1.
class Hyperplane {
 public:
  Hyperplane(std::vector<Scalar> linear, Scalar constant) : linear_(std::move(linear)), constant_(std::move(constant)) {
    std::size_t lead = 0;
    while (lead < linear_.size() && linear_[lead].is_zero()) ++lead;
    if (lead == linear_.size()) throw std::invalid_argument("hyperplane needs a nonzero linear part");
    if (!linear_[lead].is_one()) {
      const Scalar inv = linear_[lead].inverse();
      for (auto& c : linear_) {
        if (!c.is_zero()) c *= inv;
      }
      constant_ *= inv;
    }
    // Keep every coefficient in one field for consistent ordering.
    const Field* f = &Field::rationals();
    for (const auto& c : linear_) {
      if (c.field().modulus() != 1) f = &c.field();
    }
    if (constant_.field().modulus() != 1) f = &constant_.field();
    for (auto& c : linear_) c = c.in(*f);
    constant_ = constant_.in(*f);
  }

  /// From an augmented row b . x = d.
  static Hyperplane from_row(const Row& r) {
    std::vector<Scalar> lin(r.begin(), r.end() - 1);
    return Hyperplane(std::move(lin), -r.back());
  }

  /// Parses `<lin-comb> = <lin-comb>`.
  static Hyperplane parse(std::string_view text, const Field& field, std::size_t n) {
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) throw ParseError(text.size() + 1, "expected '=' in hyperplane equation");
    if (text.find('=', eq + 1) != std::string_view::npos)
      throw ParseError(text.find('=', eq + 1) + 1, "more than one '=' in hyperplane equation");
    AffineForm lhs = parse_affine(text.substr(0, eq), field, n);
    AffineForm rhs;
    try {
      rhs = parse_affine(text.substr(eq + 1), field, n);
    } catch (const ParseError& e) {
      throw ParseError(eq + 1 + e.column(), e.what());
    }
    for (std::size_t i = 0; i < n; ++i) lhs.linear[i] -= rhs.linear[i];
    lhs.constant -= rhs.constant;
    if (lhs.is_constant()) throw ParseError(1, "equation has no variable part");
    return Hyperplane(std::move(lhs.linear), std::move(lhs.constant));
  }

  std::size_t dim() const noexcept { return linear_.size(); }
  const std::vector<Scalar>& linear() const noexcept { return linear_; }
  const Scalar& coefficient(std::size_t i) const { return linear_.at(i); }
  const Scalar& constant() const noexcept { return constant_; }
  const Field& field() const { return constant_.field(); }

  Row row() const {
    Row r(linear_.begin(), linear_.end());
    r.push_back(-constant_);
    return r;
  }

  /// Coordinates with nonzero coefficient.
  std::vector<std::size_t> support() const {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < linear_.size(); ++i) {
      if (!linear_[i].is_zero()) s.push_back(i);
    }
    return s;
  }

  Scalar dot(const Vector& v) const {
    if (v.size() != dim()) throw std::invalid_argument("dimension mismatch");
    Scalar s(0);
    for (std::size_t i = 0; i < linear_.size(); ++i) {
      if (!linear_[i].is_zero() && !v[i].is_zero()) s += linear_[i] * v[i];
    }
    return s;
  }

  /// `x1 - x2 = 0` style rendering; re-parses to the same hyperplane.
  std::string str() const { return detail::render_linear(linear_) + " = " + (-constant_).str(); }

  friend int compare(const Hyperplane& a, const Hyperplane& b) {
    if (a.dim() != b.dim()) return a.dim() < b.dim() ? -1 : 1;
    const int c = detail::compare_rows(a.linear_, b.linear_);
    if (c != 0) return c;
    return compare(a.constant_, b.constant_);
  }
  friend bool operator==(const Hyperplane& a, const Hyperplane& b) { return compare(a, b) == 0; }
  friend bool operator!=(const Hyperplane& a, const Hyperplane& b) { return compare(a, b) != 0; }
  friend bool operator<(const Hyperplane& a, const Hyperplane& b) { return compare(a, b) < 0; }

 private:
  std::vector<Scalar> linear_;
  Scalar constant_;
};

/// Nonempty affine subspace in canonical RREF.
class Flat {
 public:
  /// The whole space C^n.
  static Flat whole(std::size_t n) { return Flat(n, {}); }

  static Flat from(const Hyperplane& h) { return Flat(h.dim(), {h.row()}); }

  /// Canonical flat of the system, or nullopt if inconsistent.
  static std::optional<Flat> from_rows(std::size_t n, std::vector<Row> rows) {
    for (const auto& r : rows) {
      if (r.size() != n + 1) throw std::invalid_argument("row width does not match ambient dimension");
    }
    auto reduced = detail::rref(std::move(rows));
    if (!reduced) return std::nullopt;
    return Flat(n, std::move(*reduced));
  }

  std::size_t ambient() const noexcept { return n_; }
  std::size_t codim() const noexcept { return rows_.size(); }
  std::size_t dim() const noexcept { return n_ - rows_.size(); }
  const std::vector<Row>& rows() const noexcept { return rows_; }
  bool is_point() const noexcept { return rows_.size() == n_; }

  /// Coordinates of a point flat.
  std::vector<Scalar> point() const {
    if (!is_point()) throw std::logic_error("flat is not a point");
    std::vector<Scalar> p;
    for (const auto& r : rows_) p.push_back(r.back());
    return p;
  }

  /// Some point of the flat (free coordinates set to zero).
  std::vector<Scalar> particular_point() const {
    std::vector<Scalar> p(n_, Scalar(0));
    for (const auto& r : rows_) p[detail::leading_column(r)] = r.back();
    return p;
  }

  /// The flat as a hyperplane; requires codim 1.
  Hyperplane hyperplane() const {
    if (codim() != 1) throw std::logic_error("flat is not a hyperplane");
    return Hyperplane::from_row(rows_.front());
  }

  /// `{x1 = 1/2; x2 = 1/2}`; the whole space renders as `V`.
  std::string str() const {
    if (rows_.empty()) return "V";
    std::string out = "{";
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (i) out += "; ";
      out += equation(i);
    }
    return out + "}";
  }

  std::string equation(std::size_t i) const {
    const Row& r = rows_.at(i);
    return detail::render_linear(std::vector<Scalar>(r.begin(), r.end() - 1)) + " = " + r.back().str();
  }

  friend int compare(const Flat& a, const Flat& b) {
    if (a.n_ != b.n_) return a.n_ < b.n_ ? -1 : 1;
    return detail::compare_systems(a.rows_, b.rows_);
  }
  friend bool operator==(const Flat& a, const Flat& b) { return compare(a, b) == 0; }
  friend bool operator!=(const Flat& a, const Flat& b) { return compare(a, b) != 0; }
  friend bool operator<(const Flat& a, const Flat& b) { return compare(a, b) < 0; }

 private:
  friend std::optional<Flat> intersect(const Flat&, const Hyperplane&);
  friend Flat cylinder(const Vector&, const Flat&);

  Flat(std::size_t n, std::vector<Row> rows) : n_(n), rows_(std::move(rows)) {}

  std::size_t n_;
  std::vector<Row> rows_;
};

/// S ∩ H, or nullopt when empty.
inline std::optional<Flat> intersect(const Flat& s, const Hyperplane& h) {
  if (s.ambient() != h.dim()) throw std::invalid_argument("dimension mismatch in intersect");
  Row r = h.row();
  detail::reduce_against(r, s.rows_);
  if (detail::linear_part_zero(r)) {
    if (r.back().is_zero()) return s;
    return std::nullopt;
  }
  const std::size_t col = detail::leading_column(r);
  detail::normalize_leading(r, col);
  std::vector<Row> rows = s.rows_;
  for (auto& other : rows) {
    if (!other[col].is_zero()) {
      const Scalar f = other[col];
      detail::axpy(other, f, r);
    }
  }
  auto pos = rows.begin();
  while (pos != rows.end() && detail::leading_column(*pos) < col) ++pos;
  rows.insert(pos, std::move(r));
  return Flat(s.ambient(), std::move(rows));
}

inline std::optional<Flat> intersect(const Flat& s, const Flat& t) {
  std::optional<Flat> acc = s;
  for (const auto& r : t.rows()) {
    acc = intersect(*acc, Hyperplane::from_row(r));
    if (!acc) return acc;
  }
  return acc;
}

/// H ⊇ S.
inline bool contains(const Hyperplane& h, const Flat& s) {
  if (s.ambient() != h.dim()) throw std::invalid_argument("dimension mismatch in contains");
  Row r = h.row();
  detail::reduce_against(r, s.rows());
  return detail::row_is_zero(r);
}

/// outer ⊇ inner.
inline bool contains(const Flat& outer, const Flat& inner) {
  if (outer.ambient() != inner.ambient()) throw std::invalid_argument("dimension mismatch in contains");
  if (outer.codim() > inner.codim()) return false;
  for (const auto& row : outer.rows()) {
    Row r = row;
    detail::reduce_against(r, inner.rows());
    if (!detail::row_is_zero(r)) return false;
  }
  return true;
}

/// (B v)_r for each row of the flat.
inline std::vector<Scalar> apply_linear(const Flat& s, const Vector& v) {
  if (s.ambient() != v.size()) throw std::invalid_argument("dimension mismatch");
  std::vector<Scalar> w;
  w.reserve(s.codim());
  for (const auto& r : s.rows()) {
    Scalar acc(0);
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (!r[j].is_zero() && !v[j].is_zero()) acc += r[j] * v[j];
    }
    w.push_back(std::move(acc));
  }
  return w;
}

/// v lies in the direction space of S (S is v-closed).
inline bool direction_contains(const Flat& s, const Vector& v) {
  for (const auto& x : apply_linear(s, v)) {
    if (!x.is_zero()) return false;
  }
  return true;
}

/// c . v = 0, i.e. H belongs to the parallel part A_v^c.
inline bool direction_contains(const Hyperplane& h, const Vector& v) { return h.dot(v).is_zero(); }

/// <v, S> = { t v + y : t ∈ C, y ∈ S }.
inline Flat cylinder(const Vector& v, const Flat& s) {
  const auto w = apply_linear(s, v);
  std::size_t pick = w.size();
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!w[i].is_zero()) {
      pick = i;
      break;
    }
  }
  if (pick == w.size()) return s;
  std::vector<Row> rows;
  rows.reserve(w.size() - 1);
  const Scalar inv = w[pick].inverse();
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i == pick) continue;
    Row r = s.rows()[i];
    if (!w[i].is_zero()) detail::axpy(r, w[i] * inv, s.rows()[pick]);
    rows.push_back(std::move(r));
  }
  // Remaining rows stay independent and consistent.
  return *Flat::from_rows(s.ambient(), std::move(rows));
}

/// Linear subspace { v : E v = 0 } of C^n, stored by its RREF equations.
class LinearSubspace {
 public:
  static LinearSubspace whole(std::size_t n) { return LinearSubspace(Flat::whole(n)); }

  /// Direction space of a flat (or hyperplane).
  static LinearSubspace direction_of(const Flat& s) {
    std::vector<Row> rows;
    for (auto r : s.rows()) {
      r.back() = Scalar(0);
      rows.push_back(std::move(r));
    }
    return LinearSubspace(*Flat::from_rows(s.ambient(), std::move(rows)));
  }
  static LinearSubspace direction_of(const Hyperplane& h) { return direction_of(Flat::from(h)); }

  /// Span of the given vectors.
  static LinearSubspace span(std::size_t n, const std::vector<Vector>& gens) {
    // Equations are the null space of the generator matrix.
    std::vector<Row> rows;
    for (const auto& g : gens) {
      Row r(g.entries().begin(), g.entries().end());
      r.push_back(Scalar(0));
      rows.push_back(std::move(r));
    }
    LinearSubspace gen_eqs(*Flat::from_rows(n, std::move(rows)));
    std::vector<Row> eqs;
    for (const auto& b : gen_eqs.basis()) {
      Row r(b.entries().begin(), b.entries().end());
      r.push_back(Scalar(0));
      eqs.push_back(std::move(r));
    }
    return LinearSubspace(*Flat::from_rows(n, std::move(eqs)));
  }

  std::size_t ambient() const noexcept { return eqs_.ambient(); }
  std::size_t dim() const noexcept { return eqs_.dim(); }
  const Flat& equations() const noexcept { return eqs_; }

  /// Canonical null-space basis: one vector per free column.
  std::vector<Vector> basis() const {
    const std::size_t n = ambient();
    std::vector<bool> pivot(n, false);
    for (const auto& r : eqs_.rows()) pivot[detail::leading_column(r)] = true;
    std::vector<Vector> out;
    for (std::size_t f = 0; f < n; ++f) {
      if (pivot[f]) continue;
      std::vector<Scalar> v(n, Scalar(0));
      v[f] = Scalar(1);
      for (const auto& r : eqs_.rows()) v[detail::leading_column(r)] = -r[f];
      out.emplace_back(std::move(v));
    }
    return out;
  }

  bool contains(const Vector& v) const { return direction_contains(eqs_, v); }

  /// this ⊇ other
  bool contains(const LinearSubspace& other) const { return stabhyp::contains(eqs_, other.eqs_); }

  LinearSubspace intersect(const LinearSubspace& other) const {
    return LinearSubspace(*stabhyp::intersect(eqs_, other.eqs_));
  }

  std::string str() const {
    std::string out = "span{";
    const auto b = basis();
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (i) out += ", ";
      out += b[i].str();
    }
    return out + "}";
  }

  friend bool operator==(const LinearSubspace& a, const LinearSubspace& b) { return a.eqs_ == b.eqs_; }
  friend bool operator<(const LinearSubspace& a, const LinearSubspace& b) { return a.eqs_ < b.eqs_; }

 private:
  explicit LinearSubspace(Flat eqs) : eqs_(std::move(eqs)) {}
  Flat eqs_;
};

}  // namespace stabhyp
