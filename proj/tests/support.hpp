// Helpers shared by the test suites: quick constructors and random arrangements.
#pragma once

#include <cstddef>
#include <initializer_list>
#include <random>
#include <string>
#include <vector>

#include "stabhyp.hpp"

namespace testing_support {

using namespace stabhyp;

inline Hyperplane hp(const std::string& text, std::size_t n, const Field& f = Field::rationals()) {
  return Hyperplane::parse(text, f, n);
}

inline Arrangement arr(std::size_t n, std::initializer_list<const char*> eqs, const Field& f = Field::rationals()) {
  Arrangement a(n, f);
  for (const char* e : eqs) a.add(hp(e, n, f));
  return a;
}

inline Vector vec(std::initializer_list<long> xs) {
  std::vector<Scalar> v;
  for (long x : xs) v.emplace_back(x);
  return Vector(std::move(v));
}

inline Flat flat_of(std::size_t n, std::initializer_list<const char*> eqs, const Field& f = Field::rationals()) {
  Flat s = Flat::whole(n);
  for (const char* e : eqs) s = *intersect(s, hp(e, n, f));
  return s;
}

inline Arrangement braid(std::size_t n) {
  Arrangement a(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      std::vector<Scalar> lin(n, Scalar(0));
      lin[i] = Scalar(1);
      lin[j] = Scalar(-1);
      a.add(Hyperplane(lin, Scalar(0)));
    }
  return a;
}

/// {x_i = ±x_j}, plus {x_i = 0} when `with_axes`.
inline Arrangement mirrors_bd(std::size_t n, bool with_axes) {
  Arrangement a(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (long s : {1L, -1L}) {
        std::vector<Scalar> lin(n, Scalar(0));
        lin[i] = Scalar(1);
        lin[j] = Scalar(-s);
        a.add(Hyperplane(lin, Scalar(0)));
      }
  if (with_axes) {
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<Scalar> lin(n, Scalar(0));
      lin[i] = Scalar(1);
      a.add(Hyperplane(lin, Scalar(0)));
    }
  }
  return a;
}

/// Random small rational from a grid.
inline Scalar grid_scalar(std::mt19937& rng, int lo = -2, int hi = 2) {
  std::uniform_int_distribution<int> d(lo, hi);
  return Scalar(d(rng));
}

inline Scalar nonzero_rational(std::mt19937& rng, int range = 3) {
  std::uniform_int_distribution<int> num(1, range), den(1, 3), sign(0, 1);
  mpq_class q(num(rng), den(rng));
  q.canonicalize();
  return Scalar(sign(rng) ? q : mpq_class(-q));
}

inline Hyperplane random_hyperplane(std::mt19937& rng, std::size_t n, int lo = -2, int hi = 2) {
  for (;;) {
    std::vector<Scalar> lin;
    bool any = false;
    for (std::size_t i = 0; i < n; ++i) {
      lin.push_back(grid_scalar(rng, lo, hi));
      any = any || !lin.back().is_zero();
    }
    if (any) return Hyperplane(std::move(lin), grid_scalar(rng, lo, hi));
  }
}

/// Arrangement of up to `max_size` random hyperplanes (duplicates collapse).
inline Arrangement random_arrangement(std::mt19937& rng, std::size_t n, std::size_t max_size, int lo = -2,
                                      int hi = 2) {
  std::uniform_int_distribution<std::size_t> sz(1, max_size);
  Arrangement a(n);
  const std::size_t k = sz(rng);
  for (std::size_t i = 0; i < k; ++i) a.add(random_hyperplane(rng, n, lo, hi));
  return a;
}

inline Vector random_vector(std::mt19937& rng, std::size_t n, int lo = -2, int hi = 2) {
  for (;;) {
    std::vector<Scalar> v;
    bool any = false;
    for (std::size_t i = 0; i < n; ++i) {
      v.push_back(grid_scalar(rng, lo, hi));
      any = any || !v.back().is_zero();
    }
    if (any) return Vector(std::move(v));
  }
}

/// Random element of Q(zeta_M) with small coefficients.
inline Scalar random_cyclo(std::mt19937& rng, const Field& f, int range = 3) {
  std::uniform_int_distribution<int> num(-range, range), den(1, 3);
  std::vector<mpq_class> c;
  for (std::size_t i = 0; i < f.degree(); ++i) {
    mpq_class q(num(rng), den(rng));
    q.canonicalize();
    c.push_back(q);
  }
  return Scalar::from_coefficients(f, c);
}

inline SquareMatrix random_matrix(std::mt19937& rng, std::size_t n, int lo = -2, int hi = 2) {
  std::vector<std::vector<Scalar>> rows(n);
  for (auto& r : rows)
    for (std::size_t j = 0; j < n; ++j) r.push_back(grid_scalar(rng, lo, hi));
  return SquareMatrix::from_rows(rows);
}

inline SquareMatrix random_invertible(std::mt19937& rng, std::size_t n) {
  for (;;) {
    SquareMatrix g = random_matrix(rng, n);
    try {
      (void)g.inverse();
      return g;
    } catch (const std::domain_error&) {
    }
  }
}

/// Random residues on a random arrangement; when `commuting`, every residue
/// is a polynomial in one matrix, so the connection is integrable.
inline LogConnection random_connection(std::mt19937& rng, std::size_t n, std::size_t size, bool commuting) {
  Arrangement a = random_arrangement(rng, n, 5, -1, 1);
  const SquareMatrix base = random_matrix(rng, size);
  std::vector<SquareMatrix> res;
  for (std::size_t h = 0; h < a.size(); ++h) {
    if (commuting) {
      res.push_back(grid_scalar(rng) * SquareMatrix::identity(size) + grid_scalar(rng) * base +
                    grid_scalar(rng) * base * base);
    } else {
      res.push_back(random_matrix(rng, size));
    }
  }
  return LogConnection(std::move(a), size, std::move(res));
}

}  // namespace testing_support
