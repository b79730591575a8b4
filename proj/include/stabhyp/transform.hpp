/**
 * @file transform.hpp
 * @brief Affine coordinate changes acting on arrangements.
 *
 * A change of coordinates is written x = P y + b, expressing the old
 * coordinates x through the new ones y. A hyperplane c.x + c0 = 0 becomes
 * (P^T c).y + (c.b + c0) = 0.
 */
#pragma once

#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "stabhyp/arrangement.hpp"
#include "stabhyp/geom.hpp"

namespace stabhyp {

/// General invertible affine change x = P y + b.
struct AffineChange {
  std::vector<std::vector<Scalar>> matrix;  // P, row-major n x n
  std::vector<Scalar> shift;                // b

  static AffineChange identity(std::size_t n) {
    AffineChange t;
    t.matrix.assign(n, std::vector<Scalar>(n, Scalar(0)));
    for (std::size_t i = 0; i < n; ++i) t.matrix[i][i] = Scalar(1);
    t.shift.assign(n, Scalar(0));
    return t;
  }

  /// Columns of P are the given vectors, so v_i becomes the i-th axis.
  static AffineChange from_basis(const std::vector<Vector>& basis) {
    const std::size_t n = basis.size();
    AffineChange t = identity(n);
    for (std::size_t j = 0; j < n; ++j) {
      if (basis[j].size() != n) throw std::invalid_argument("basis vector has wrong length");
      for (std::size_t i = 0; i < n; ++i) t.matrix[i][j] = basis[j][i];
    }
    std::vector<Row> rows;
    for (const auto& v : basis) {
      Row r(v.entries().begin(), v.entries().end());
      r.push_back(Scalar(0));
      rows.push_back(std::move(r));
    }
    if (detail::rref(std::move(rows))->size() != n) throw std::invalid_argument("basis vectors are dependent");
    return t;
  }

  std::size_t dim() const noexcept { return shift.size(); }

  bool is_identity() const {
    for (std::size_t i = 0; i < dim(); ++i) {
      if (!shift[i].is_zero()) return false;
      for (std::size_t j = 0; j < dim(); ++j) {
        if (matrix[i][j] != Scalar(i == j ? 1 : 0)) return false;
      }
    }
    return true;
  }

  Hyperplane apply(const Hyperplane& h) const {
    const std::size_t n = dim();
    if (h.dim() != n) throw std::invalid_argument("dimension mismatch in coordinate change");
    std::vector<Scalar> lin(n, Scalar(0));
    Scalar c0 = h.constant();
    for (std::size_t i = 0; i < n; ++i) {
      const Scalar& ci = h.linear()[i];
      if (ci.is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (!matrix[i][j].is_zero()) lin[j] += ci * matrix[i][j];
      }
      if (!shift[i].is_zero()) c0 += ci * shift[i];
    }
    return Hyperplane(std::move(lin), std::move(c0));
  }

  Arrangement apply(const Arrangement& a) const {
    Arrangement out(a.dim(), a.field());
    for (const auto& h : a) out.add(apply(h));
    return out;
  }
};

/// x_j = a_j y_{σ(j)} + b_j with every a_j ≠ 0.
struct CoordTransform {
  std::vector<std::size_t> perm;  // σ, 0-based
  std::vector<Scalar> scales;     // a
  std::vector<Scalar> shifts;     // b

  static CoordTransform identity(std::size_t n) {
    CoordTransform t;
    t.perm.resize(n);
    std::iota(t.perm.begin(), t.perm.end(), std::size_t{0});
    t.scales.assign(n, Scalar(1));
    t.shifts.assign(n, Scalar(0));
    return t;
  }

  std::size_t dim() const noexcept { return perm.size(); }

  void validate() const {
    const std::size_t n = perm.size();
    if (scales.size() != n || shifts.size() != n) throw std::invalid_argument("transform component sizes differ");
    std::vector<bool> hit(n, false);
    for (std::size_t p : perm) {
      if (p >= n || hit[p]) throw std::invalid_argument("transform index map is not a permutation");
      hit[p] = true;
    }
    for (const auto& a : scales) {
      if (a.is_zero()) throw std::invalid_argument("transform scale must be nonzero");
    }
  }

  AffineChange affine() const {
    validate();
    AffineChange t = AffineChange::identity(dim());
    for (std::size_t j = 0; j < dim(); ++j) {
      for (std::size_t k = 0; k < dim(); ++k) t.matrix[j][k] = Scalar(0);
      t.matrix[j][perm[j]] = scales[j];
      t.shift[j] = shifts[j];
    }
    return t;
  }

  Hyperplane apply(const Hyperplane& h) const { return affine().apply(h); }
  Arrangement apply(const Arrangement& a) const { return affine().apply(a); }

  /// `x1 = 2*y2 + 1, x2 = -y1`
  std::string str() const {
    std::string out;
    for (std::size_t j = 0; j < dim(); ++j) {
      if (j) out += ", ";
      out += "x" + std::to_string(j + 1) + " = ";
      const std::string y = "y" + std::to_string(perm[j] + 1);
      out += scales[j].is_one() ? y : scales[j].str() + "*" + y;
      if (!shifts[j].is_zero()) out += " + " + shifts[j].str();
    }
    return out;
  }
};

}  // namespace stabhyp
