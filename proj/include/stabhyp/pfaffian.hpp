/**
 * @file pfaffian.hpp
 * @brief Logarithmic connections sum_H A_H dlog f_H over an arrangement.
 *
 * Integrability is tested at every codimension-two flat S through the residue
 * condition [A_H, sum_{H' ⊃ S} A_H'] = 0 for H ⊃ S.
 */
#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "stabhyp/arrangement.hpp"
#include "stabhyp/cyclo.hpp"
#include "stabhyp/poset.hpp"

namespace stabhyp {

class SquareMatrix {
 public:
  explicit SquareMatrix(std::size_t n = 0) : n_(n), e_(n * n, Scalar(0)) {}

  static SquareMatrix identity(std::size_t n) {
    SquareMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar(1);
    return m;
  }

  /// Row-major entries.
  static SquareMatrix from_rows(const std::vector<std::vector<Scalar>>& rows) {
    SquareMatrix m(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != rows.size()) throw std::invalid_argument("matrix is not square");
      for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t size() const noexcept { return n_; }
  Scalar& operator()(std::size_t i, std::size_t j) { return e_[i * n_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return e_[i * n_ + j]; }

  bool is_zero() const {
    for (const auto& x : e_) {
      if (!x.is_zero()) return false;
    }
    return true;
  }

  friend SquareMatrix operator+(SquareMatrix a, const SquareMatrix& b) {
    check(a, b);
    for (std::size_t k = 0; k < a.e_.size(); ++k) a.e_[k] += b.e_[k];
    return a;
  }
  friend SquareMatrix operator-(SquareMatrix a, const SquareMatrix& b) {
    check(a, b);
    for (std::size_t k = 0; k < a.e_.size(); ++k) a.e_[k] -= b.e_[k];
    return a;
  }
  friend SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b) {
    check(a, b);
    SquareMatrix c(a.n_);
    for (std::size_t i = 0; i < a.n_; ++i)
      for (std::size_t k = 0; k < a.n_; ++k) {
        if (a(i, k).is_zero()) continue;
        for (std::size_t j = 0; j < a.n_; ++j) {
          if (!b(k, j).is_zero()) c(i, j) += a(i, k) * b(k, j);
        }
      }
    return c;
  }
  friend SquareMatrix operator*(const Scalar& s, SquareMatrix a) {
    for (auto& x : a.e_) x *= s;
    return a;
  }
  friend bool operator==(const SquareMatrix& a, const SquareMatrix& b) { return a.n_ == b.n_ && a.e_ == b.e_; }

  /// Gauss-Jordan inverse; throws when singular.
  SquareMatrix inverse() const {
    SquareMatrix a = *this, inv = identity(n_);
    for (std::size_t col = 0; col < n_; ++col) {
      std::size_t piv = col;
      while (piv < n_ && a(piv, col).is_zero()) ++piv;
      if (piv == n_) throw std::domain_error("matrix is singular");
      for (std::size_t j = 0; j < n_; ++j) {
        std::swap(a(col, j), a(piv, j));
        std::swap(inv(col, j), inv(piv, j));
      }
      const Scalar p = a(col, col).inverse();
      for (std::size_t j = 0; j < n_; ++j) {
        a(col, j) *= p;
        inv(col, j) *= p;
      }
      for (std::size_t i = 0; i < n_; ++i) {
        if (i == col || a(i, col).is_zero()) continue;
        const Scalar f = a(i, col);
        for (std::size_t j = 0; j < n_; ++j) {
          a(i, j) -= f * a(col, j);
          inv(i, j) -= f * inv(col, j);
        }
      }
    }
    return inv;
  }

  std::string str() const {
    std::string out;
    for (std::size_t i = 0; i < n_; ++i) {
      out += i ? "; " : "[";
      for (std::size_t j = 0; j < n_; ++j) out += (j ? " " : "") + (*this)(i, j).str();
    }
    return out + "]";
  }

 private:
  static void check(const SquareMatrix& a, const SquareMatrix& b) {
    if (a.n_ != b.n_) throw std::invalid_argument("matrix sizes differ");
  }

  std::size_t n_;
  std::vector<Scalar> e_;
};

inline SquareMatrix commutator(const SquareMatrix& a, const SquareMatrix& b) { return a * b - b * a; }

/// Arrangement with one N x N residue per hyperplane, indexed like the arrangement.
class LogConnection {
 public:
  LogConnection(Arrangement arrangement, std::size_t size, std::vector<SquareMatrix> residues)
      : a_(std::move(arrangement)), n_(size), res_(std::move(residues)) {
    if (res_.size() != a_.size())
      throw std::invalid_argument("connection has " + std::to_string(res_.size()) + " residues for " +
                                  std::to_string(a_.size()) + " hyperplanes");
    for (const auto& r : res_) {
      if (r.size() != n_) throw std::invalid_argument("residue size differs from " + std::to_string(n_));
    }
  }

  static LogConnection zero(Arrangement a, std::size_t size) {
    std::vector<SquareMatrix> r(a.size(), SquareMatrix(size));
    return LogConnection(std::move(a), size, std::move(r));
  }

  const Arrangement& arrangement() const noexcept { return a_; }
  std::size_t size() const noexcept { return n_; }
  const std::vector<SquareMatrix>& residues() const noexcept { return res_; }
  const SquareMatrix& residue(std::size_t h) const { return res_.at(h); }

 private:
  Arrangement a_;
  std::size_t n_;
  std::vector<SquareMatrix> res_;
};

/// One codim-2 flat where the residue condition fails, with the failing hyperplanes.
struct IntegrabilityViolation {
  Flat flat;
  std::vector<std::size_t> hyperplanes;

  friend bool operator==(const IntegrabilityViolation& a, const IntegrabilityViolation& b) {
    return a.flat == b.flat && a.hyperplanes == b.hyperplanes;
  }
};

inline std::vector<IntegrabilityViolation> check_integrability(const LogConnection& c) {
  const CodimTwo l2 = codim_two_flats(c.arrangement());
  std::vector<IntegrabilityViolation> out;
  for (std::size_t s = 0; s < l2.flats.size(); ++s) {
    const auto& through = l2.through[s];
    SquareMatrix total(c.size());
    for (std::size_t h : through) total = total + c.residue(h);
    std::vector<std::size_t> bad;
    for (std::size_t h : through) {
      if (!commutator(c.residue(h), total).is_zero()) bad.push_back(h);
    }
    if (!bad.empty()) out.push_back({l2.flats[s], std::move(bad)});
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.flat < y.flat; });
  return out;
}

/// Gauge change by prod f_H^{lambda_H}: A_H -> A_H + lambda_H I. Missing entries mean 0.
inline LogConnection apply_addition(const LogConnection& c, const std::map<std::size_t, Scalar>& lambdas) {
  std::vector<SquareMatrix> res = c.residues();
  const SquareMatrix id = SquareMatrix::identity(c.size());
  for (const auto& [h, lambda] : lambdas) {
    if (h >= res.size()) throw std::invalid_argument("no hyperplane with index " + std::to_string(h));
    res[h] = res[h] + lambda * id;
  }
  return LogConnection(c.arrangement(), c.size(), std::move(res));
}

/// Simultaneous conjugation A_H -> G A_H G^{-1}.
inline LogConnection conjugate(const LogConnection& c, const SquareMatrix& g) {
  const SquareMatrix gi = g.inverse();
  std::vector<SquareMatrix> res;
  res.reserve(c.residues().size());
  for (const auto& r : c.residues()) res.push_back(g * r * gi);
  return LogConnection(c.arrangement(), c.size(), std::move(res));
}

}  // namespace stabhyp
