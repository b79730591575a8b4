/**
 * @file cyclo.hpp
 * @brief Exact arithmetic in the cyclotomic field Q(zeta_M).
 *
 * A Scalar is a polynomial in zeta_M of degree < phi(M) with rational
 * coefficients, reduced modulo the M-th cyclotomic polynomial. Each value
 * points at a shared, immutable Field descriptor; values from Q (M = 1) are
 * promoted silently when combined with values from a larger field.
 */
#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace stabhyp {

namespace detail {

using QPoly = std::vector<mpq_class>;

inline void trim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline QPoly poly_mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  trim(out);
  return out;
}

inline QPoly poly_sub(QPoly a, const QPoly& b) {
  if (a.size() < b.size()) a.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

/// Quotient and remainder; `b` must be nonzero after trimming.
inline std::pair<QPoly, QPoly> poly_divmod(QPoly a, QPoly b) {
  trim(a);
  trim(b);
  if (b.empty()) throw std::domain_error("polynomial division by zero");
  if (a.size() < b.size()) return {QPoly{}, a};
  QPoly q(a.size() - b.size() + 1);
  const mpq_class lead = b.back();
  while (!a.empty() && a.size() >= b.size()) {
    const std::size_t shift = a.size() - b.size();
    const mpq_class f = a.back() / lead;
    q[shift] = f;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    a.pop_back();
    trim(a);
  }
  trim(q);
  return {q, a};
}

}  // namespace detail

/// Monic M-th cyclotomic polynomial, coefficients from degree 0 upward.
inline std::vector<mpz_class> cyclotomic_polynomial(unsigned modulus) {
  if (modulus == 0) throw std::invalid_argument("cyclotomic modulus must be positive");
  detail::QPoly num(modulus + 1);
  num[0] = -1;
  num[modulus] = 1;
  for (unsigned d = 1; d < modulus; ++d) {
    if (modulus % d != 0) continue;
    auto phi_d = cyclotomic_polynomial(d);
    detail::QPoly den(phi_d.begin(), phi_d.end());
    auto [q, r] = detail::poly_divmod(num, den);
    if (!r.empty()) throw std::logic_error("cyclotomic division left a remainder");
    num = std::move(q);
  }
  std::vector<mpz_class> out;
  out.reserve(num.size());
  for (const auto& c : num) {
    if (c.get_den() != 1) throw std::logic_error("cyclotomic coefficient is not integral");
    out.emplace_back(c.get_num());
  }
  return out;
}

/// Immutable descriptor of Q(zeta_M). Instances are interned per modulus.
class Field {
 public:
  Field(const Field&) = delete;
  Field& operator=(const Field&) = delete;

  static const Field& get(unsigned modulus) {
    static std::mutex lock;
    static std::map<unsigned, std::unique_ptr<Field>> registry;
    if (modulus == 0) throw std::invalid_argument("field modulus must be positive");
    std::lock_guard guard(lock);
    auto& slot = registry[modulus];
    if (!slot) slot.reset(new Field(modulus));
    return *slot;
  }

  static const Field& rationals() {
    static const Field& q = get(1);
    return q;
  }

  unsigned modulus() const noexcept { return modulus_; }
  std::size_t degree() const noexcept { return cyclotomic_.size() - 1; }

  /// Every root of unity in Q(zeta_M) has order dividing this number.
  unsigned root_capacity() const noexcept { return modulus_ % 2 == 0 ? modulus_ : 2 * modulus_; }

  const std::vector<mpz_class>& cyclotomic() const noexcept { return cyclotomic_; }

  /// folding()[k] is zeta^(degree + k) written in the power basis.
  const std::vector<std::vector<mpq_class>>& folding() const noexcept { return folding_; }

 private:
  explicit Field(unsigned modulus) : modulus_(modulus), cyclotomic_(cyclotomic_polynomial(modulus)) {
    const std::size_t d = degree();
    // zeta^d = -sum_{i<d} phi_i zeta^i
    std::vector<mpq_class> top(d);
    for (std::size_t i = 0; i < d; ++i) top[i] = -mpq_class(cyclotomic_[i]);
    if (d >= 2) {
      folding_.push_back(top);
      for (std::size_t k = 1; k + 1 < d; ++k) {
        const auto& prev = folding_.back();
        std::vector<mpq_class> next(d);
        for (std::size_t i = 0; i + 1 < d; ++i) next[i + 1] = prev[i];
        const mpq_class carry = prev[d - 1];
        if (carry != 0)
          for (std::size_t i = 0; i < d; ++i) next[i] += carry * top[i];
        folding_.push_back(std::move(next));
      }
    }
  }

  unsigned modulus_;
  std::vector<mpz_class> cyclotomic_;
  std::vector<std::vector<mpq_class>> folding_;
};

/// Element of Q(zeta_M) in canonical power-basis form.
class Scalar {
 public:
  Scalar() : Scalar(Field::rationals(), mpq_class(0)) {}
  Scalar(int v) : Scalar(Field::rationals(), mpq_class(v)) {}  // NOLINT(google-explicit-constructor)
  Scalar(long v) : Scalar(Field::rationals(), mpq_class(v)) {}  // NOLINT(google-explicit-constructor)
  explicit Scalar(const mpq_class& q) : Scalar(Field::rationals(), q) {}

  Scalar(const Field& field, const mpq_class& q) : field_(&field), c_(field.degree()) {
    c_[0] = q;
    c_[0].canonicalize();
  }

  static Scalar zeta(const Field& field) {
    std::vector<mpq_class> c(2);
    c[1] = 1;
    return from_coefficients(field, std::move(c));
  }

  /// Reduces an arbitrary-length coefficient sequence modulo Phi_M.
  static Scalar from_coefficients(const Field& field, std::vector<mpq_class> coeffs) {
    Scalar s(field, mpq_class(0));
    const std::size_t d = field.degree();
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      coeffs[i].canonicalize();
      if (coeffs[i] == 0) continue;
      if (i < d) {
        s.c_[i] += coeffs[i];
      } else {
        s.add_power(i, coeffs[i]);
      }
    }
    return s;
  }

  const Field& field() const noexcept { return *field_; }
  const std::vector<mpq_class>& coefficients() const noexcept { return c_; }

  bool is_zero() const noexcept {
    return std::all_of(c_.begin(), c_.end(), [](const mpq_class& q) { return q == 0; });
  }
  bool is_rational() const noexcept {
    return std::all_of(c_.begin() + 1, c_.end(), [](const mpq_class& q) { return q == 0; });
  }
  bool is_one() const noexcept { return is_rational() && c_[0] == 1; }
  const mpq_class& rational_part() const noexcept { return c_[0]; }

  /// Same value viewed in `target`; only rationals may change field.
  Scalar in(const Field& target) const {
    if (field_ == &target) return *this;
    if (!is_rational()) throw std::invalid_argument("cannot move an irrational scalar between cyclotomic fields");
    return Scalar(target, c_[0]);
  }

  Scalar operator-() const {
    Scalar out = *this;
    for (auto& q : out.c_) q = -q;
    return out;
  }

  Scalar& operator+=(const Scalar& o) {
    const Field* f = common(*this, o);
    if (f != field_) *this = in(*f);
    if (o.field_ == f) {
      for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    } else {
      c_[0] += o.c_[0];
    }
    return *this;
  }

  Scalar& operator-=(const Scalar& o) {
    const Field* f = common(*this, o);
    if (f != field_) *this = in(*f);
    if (o.field_ == f) {
      for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    } else {
      c_[0] -= o.c_[0];
    }
    return *this;
  }

  Scalar& operator*=(const Scalar& o) {
    *this = *this * o;
    return *this;
  }

  Scalar& operator/=(const Scalar& o) {
    *this = *this / o;
    return *this;
  }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }

  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    const Field* f = common(a, b);
    if (a.is_rational() || b.is_rational()) {
      const Scalar& r = a.is_rational() ? a : b;
      const Scalar& other = a.is_rational() ? b : a;
      Scalar out = other.in(*f);
      if (r.c_[0] == 1) return out;
      for (auto& q : out.c_) {
        if (q != 0) q *= r.c_[0];
      }
      return out;
    }
    // Both irrational, hence both already live in f.
    const std::size_t d = f->degree();
    std::vector<mpq_class> prod(2 * d - 1);
    for (std::size_t i = 0; i < d; ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < d; ++j) {
        if (b.c_[j] != 0) prod[i + j] += a.c_[i] * b.c_[j];
      }
    }
    Scalar out(*f, mpq_class(0));
    for (std::size_t i = 0; i < d; ++i) out.c_[i] = std::move(prod[i]);
    for (std::size_t k = d; k < prod.size(); ++k) {
      if (prod[k] != 0) out.add_power(k, prod[k]);
    }
    return out;
  }

  friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }

  /// Multiplicative inverse via the extended Euclidean algorithm modulo Phi_M.
  Scalar inverse() const {
    if (is_zero()) throw std::domain_error("division by zero");
    if (is_rational()) return Scalar(*field_, 1 / c_[0]);
    detail::QPoly a(c_.begin(), c_.end());
    detail::trim(a);
    detail::QPoly m(field_->cyclotomic().begin(), field_->cyclotomic().end());
    // Invariant: s0*a_orig == r0, s1*a_orig == r1 (mod m).
    detail::QPoly r0 = m, r1 = a, s0{}, s1{mpq_class(1)};
    while (!r1.empty() && r1.size() > 1) {
      auto [q, r] = detail::poly_divmod(r0, r1);
      auto s = detail::poly_sub(s0, detail::poly_mul(q, s1));
      r0 = std::move(r1);
      r1 = std::move(r);
      s0 = std::move(s1);
      s1 = std::move(s);
    }
    if (r1.empty()) throw std::logic_error("cyclotomic polynomial is not irreducible?");
    const mpq_class g = r1[0];
    for (auto& q : s1) q /= g;
    return from_coefficients(*field_, std::move(s1));
  }

  Scalar pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    Scalar result(*field_, mpq_class(1));
    Scalar base = *this;
    while (e > 0) {
      if (e & 1) result *= base;
      e >>= 1;
      if (e) base *= base;
    }
    return result;
  }

  /// Three-way comparison of canonical coefficient sequences (a total order
  /// within one field; rationals compare by value).
  friend int compare(const Scalar& a, const Scalar& b) {
    const Field* f = common(a, b);
    const std::size_t d = f->degree();
    for (std::size_t i = 0; i < d; ++i) {
      const mpq_class& x = (a.field_ == f || i == 0) ? a.c_[i] : zero_q();
      const mpq_class& y = (b.field_ == f || i == 0) ? b.c_[i] : zero_q();
      const int c = cmp(x, y);
      if (c != 0) return c < 0 ? -1 : 1;
    }
    return 0;
  }

  friend bool operator==(const Scalar& a, const Scalar& b) { return compare(a, b) == 0; }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return compare(a, b) != 0; }
  friend bool operator<(const Scalar& a, const Scalar& b) { return compare(a, b) < 0; }
  friend std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

  /// Canonical literal, e.g. `3`, `-1/2`, `z`, `(3/2*z^2 - 1)`.
  std::string str() const {
    if (is_rational()) return c_[0].get_str();
    std::vector<std::size_t> nz;
    for (std::size_t i = c_.size(); i-- > 0;) {
      if (c_[i] != 0) nz.push_back(i);
    }
    std::string out;
    bool first = true;
    for (std::size_t i : nz) {
      mpq_class q = c_[i];
      if (first) {
        if (q < 0) {
          out += "-";
          q = -q;
        }
      } else {
        out += q < 0 ? " - " : " + ";
        if (q < 0) q = -q;
      }
      out += monomial(q, i);
      first = false;
    }
    return nz.size() > 1 ? "(" + out + ")" : out;
  }

 private:
  static const mpq_class& zero_q() {
    static const mpq_class z(0);
    return z;
  }

  static const Field* common(const Scalar& a, const Scalar& b) {
    if (a.field_ == b.field_) return a.field_;
    if (a.field_->modulus() == 1) return b.field_;
    if (b.field_->modulus() == 1) return a.field_;
    if (a.is_rational() && b.is_rational()) return a.field_;
    throw std::invalid_argument("scalars belong to different cyclotomic fields");
  }

  static std::string monomial(const mpq_class& q, std::size_t power) {
    std::string zpart = power == 0 ? "" : (power == 1 ? "z" : "z^" + std::to_string(power));
    if (power == 0) return q.get_str();
    if (q == 1) return zpart;
    return q.get_str() + "*" + zpart;
  }

  // c_ += q * zeta^k for k >= degree
  void add_power(std::size_t k, const mpq_class& q) {
    const std::size_t d = field_->degree();
    if (d == 1) {
      // zeta is rational: zeta = -phi_0.
      mpq_class z = -mpq_class(field_->cyclotomic()[0]);
      mpq_class p = 1;
      for (std::size_t i = 0; i < k; ++i) p *= z;
      c_[0] += q * p;
      return;
    }
    const auto& fold = field_->folding();
    // zeta^k = zeta^(k mod M)
    const std::size_t r = k % field_->modulus();
    if (r < d) {
      c_[r] += q;
      return;
    }
    if (r - d < fold.size()) {
      const auto& row = fold[r - d];
      for (std::size_t i = 0; i < d; ++i) {
        if (row[i] != 0) c_[i] += q * row[i];
      }
      return;
    }
    std::vector<mpq_class> v = fold.back();  // zeta^(2d-2)
    for (std::size_t p = 2 * d - 2; p < r; ++p) {
      const mpq_class carry = v[d - 1];
      for (std::size_t i = d - 1; i > 0; --i) v[i] = v[i - 1];
      v[0] = 0;
      if (carry != 0)
        for (std::size_t i = 0; i < d; ++i) v[i] -= carry * mpq_class(field_->cyclotomic()[i]);
    }
    for (std::size_t i = 0; i < d; ++i) {
      if (v[i] != 0) c_[i] += q * v[i];
    }
  }

  const Field* field_;
  std::vector<mpq_class> c_;
};

/// Least k >= 1 with a^k = 1, or nullopt when `a` is not a root of unity.
inline std::optional<unsigned> root_of_unity_order(const Scalar& a) {
  if (a.is_zero()) throw std::invalid_argument("zero is not a root of unity");
  const unsigned bound = a.field().root_capacity();
  Scalar p = a;
  for (unsigned k = 1; k <= bound; ++k) {
    if (p.is_one()) return k;
    p *= a;
  }
  return std::nullopt;
}

/// A primitive root of unity of order `order`, which must divide the field's
/// root capacity.
inline Scalar primitive_root(const Field& field, unsigned order) {
  const unsigned cap = field.root_capacity();
  if (order == 0 || cap % order != 0)
    throw std::invalid_argument("Q(zeta_" + std::to_string(field.modulus()) + ") has no primitive root of unity of order " +
                                std::to_string(order));
  // zeta_M generates the roots when M is even; -zeta_M when M is odd.
  Scalar gen = Scalar::zeta(field);
  if (field.modulus() % 2 == 1) gen = -gen;
  return gen.pow(cap / order);
}

}  // namespace stabhyp
