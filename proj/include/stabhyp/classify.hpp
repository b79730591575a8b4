/**
 * @file classify.hpp
 * @brief Normal-form families of stable arrangements and a recognizer that
 *        maps a given arrangement onto one of them.
 *
 * A family is described by (n, m, alphas, omega_prime, variant):
 *
 *   Omega = m-th roots of unity
 *   A_c   = { x_i = w * alpha_j : w in Omega }
 *   A_0   = { x_i = 0 }
 *   A'    = { x_i = w * x_j : w in Omega, i < j }            (n >= 3)
 *         = { x_1 = w * x_2 : w in omega_prime }             (n == 2)
 *
 * The full variant is A' ∪ A_c ∪ A_0; the a_prime_only variant is A' alone.
 */
#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "stabhyp/arrangement.hpp"
#include "stabhyp/convolve.hpp"
#include "stabhyp/cyclo.hpp"
#include "stabhyp/geom.hpp"
#include "stabhyp/poset.hpp"
#include "stabhyp/structure.hpp"
#include "stabhyp/transform.hpp"

namespace stabhyp {

enum class FamilyVariant { full, a_prime_only };

inline const char* to_string(FamilyVariant v) { return v == FamilyVariant::full ? "full" : "a-prime-only"; }

struct FamilyDescriptor {
  std::size_t n = 2;
  unsigned m = 1;
  std::vector<Scalar> alphas;
  std::vector<Scalar> omega_prime;  // only used when n == 2
  FamilyVariant variant = FamilyVariant::full;

  std::size_t r() const noexcept { return alphas.size(); }

  std::string str() const {
    std::ostringstream os;
    os << "n=" << n << " m=" << m << " r=" << r() << " variant=" << to_string(variant);
    if (!alphas.empty()) {
      os << " alphas=";
      for (std::size_t i = 0; i < alphas.size(); ++i) os << (i ? "," : "") << alphas[i];
    }
    if (n == 2) {
      os << " omega'=";
      for (std::size_t i = 0; i < omega_prime.size(); ++i) os << (i ? "," : "") << omega_prime[i];
    }
    return os.str();
  }
};

/// The m-th roots of unity as 1, w, w^2, ..., w^(m-1).
inline std::vector<Scalar> roots_of_unity(const Field& field, unsigned m) {
  const Scalar w = primitive_root(field, m);
  std::vector<Scalar> out{Scalar(1)};
  for (unsigned k = 1; k < m; ++k) out.push_back(out.back() * w);
  return out;
}

/// Multiplicative closure of a finite set of roots of unity.
inline std::vector<Scalar> omega_prime_saturation(const std::vector<Scalar>& omega_prime) {
  std::set<Scalar> out{Scalar(1)};
  for (const auto& w : omega_prime) {
    if (w.is_zero() || !root_of_unity_order(w)) throw std::invalid_argument(w.str() + " is not a root of unity");
  }
  std::vector<Scalar> frontier(out.begin(), out.end());
  while (!frontier.empty()) {
    std::vector<Scalar> next;
    for (const auto& x : frontier) {
      for (const auto& w : omega_prime) {
        Scalar y = x * w;
        if (out.insert(y).second) next.push_back(std::move(y));
      }
    }
    frontier = std::move(next);
  }
  return {out.begin(), out.end()};
}

inline void validate(const FamilyDescriptor& d, const Field& field) {
  auto fail = [](const std::string& msg) { throw std::invalid_argument("invalid family: " + msg); };
  if (d.n < 2) fail("n must be at least 2");
  if (d.m < 1) fail("m must be positive");
  if (field.root_capacity() % d.m != 0)
    fail("m=" + std::to_string(d.m) + " does not divide the root capacity " + std::to_string(field.root_capacity()) +
         " of the field M=" + std::to_string(field.modulus()));
  for (const auto& a : d.alphas) {
    if (a.is_zero()) fail("alphas must be nonzero");
    (void)a.in(field);
  }
  if (d.n == 2) {
    if (d.variant != FamilyVariant::full) fail("n=2 only has the full variant");
    if (d.r() < 1) fail("n=2 requires r >= 1");
    if (std::find(d.omega_prime.begin(), d.omega_prime.end(), Scalar(1)) == d.omega_prime.end())
      fail("omega' must contain 1");
    for (const auto& w : d.omega_prime) {
      if (w.is_zero() || !(w.in(field).pow(d.m)).is_one())
        fail("omega' element " + w.str() + " is not an m-th root of unity");
    }
  } else {
    if (!d.omega_prime.empty()) fail("omega' only applies when n=2");
  }
  if (d.variant == FamilyVariant::a_prime_only && (d.m != 1 || d.n <= 3 || d.r() != 0))
    fail("the a-prime-only variant needs m=1, n>3 and r=0");
}

inline Arrangement make_family(const FamilyDescriptor& d, const Field& field) {
  validate(d, field);
  const std::size_t n = d.n;
  const auto omega = roots_of_unity(field, d.m);
  Arrangement out(n, field);
  auto slanted = [&](std::size_t i, std::size_t j, const Scalar& w) {
    std::vector<Scalar> lin(n, Scalar(0));
    lin[i] = Scalar(1);
    lin[j] = -w;
    out.add(Hyperplane(std::move(lin), Scalar(0)));
  };
  auto axis = [&](std::size_t i, const Scalar& c) {
    std::vector<Scalar> lin(n, Scalar(0));
    lin[i] = Scalar(1);
    out.add(Hyperplane(std::move(lin), -c));
  };
  if (n == 2) {
    for (const auto& w : d.omega_prime) slanted(0, 1, w);
  } else {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        for (const auto& w : omega) slanted(i, j, w);
  }
  if (d.variant == FamilyVariant::full) {
    for (std::size_t i = 0; i < n; ++i)
      for (const auto& a : d.alphas)
        for (const auto& w : omega) axis(i, w * a);
    for (std::size_t i = 0; i < n; ++i) axis(i, Scalar(0));
  }
  return out;
}

enum class VerdictKind { family, trivial, not_stable, unrecognized };

inline const char* to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::family: return "family";
    case VerdictKind::trivial: return "trivial";
    case VerdictKind::not_stable: return "not-stable";
    case VerdictKind::unrecognized: return "unrecognized";
  }
  return "?";
}

struct FactorVerdict {
  VerdictKind kind = VerdictKind::unrecognized;
  std::vector<std::size_t> block;       // coordinates of the stable frame
  Arrangement factor{0};                // block factor before reduction
  std::vector<Reduction> reductions;    // applied to `factor`
  Arrangement reduced{0};               // result of the reductions
  std::optional<FamilyDescriptor> family;
  std::optional<CoordTransform> normalization;  // normalization.apply(reduced) == make_family(*family)
  std::string diagnostic;
};

struct ClassificationReport {
  AffineChange coordinates;  // x = P y + b taking the input to the stable frame
  bool axis_stable = false;  // input already stable along the given axes
  std::vector<FactorVerdict> verdicts;

  bool all_recognized() const {
    return std::all_of(verdicts.begin(), verdicts.end(),
                       [](const FactorVerdict& v) { return v.kind != VerdictKind::unrecognized; });
  }
};

struct Recognition {
  std::optional<FamilyDescriptor> family;
  std::optional<CoordTransform> transform;
  std::string diagnostic;
};

namespace detail {

struct SlantedLine {
  std::size_t i, j;  // x_i = ratio * x_j + offset, i < j
  Scalar ratio, offset;
};

struct NormalData {
  std::vector<std::vector<Scalar>> constants;  // per coordinate: {c : x_i = c}
  std::vector<SlantedLine> slanted;
};

inline std::optional<NormalData> split_normal(const Arrangement& a, std::string& why) {
  NormalData nd;
  nd.constants.resize(a.dim());
  for (const auto& h : a) {
    const auto s = h.support();
    if (s.size() == 1) {
      nd.constants[s[0]].push_back(-h.constant());
    } else if (s.size() == 2) {
      nd.slanted.push_back({s[0], s[1], -h.linear()[s[1]], -h.constant()});
    } else {
      why = "hyperplane " + h.str() + " involves more than two coordinates";
      return std::nullopt;
    }
  }
  return nd;
}

inline std::optional<Scalar> first_ratio(const NormalData& nd, std::size_t i, std::size_t j) {
  for (const auto& s : nd.slanted) {
    if (s.i == i && s.j == j) return s.ratio;
  }
  return std::nullopt;
}

inline std::string first_difference(const Arrangement& got, const Arrangement& want) {
  for (const auto& h : got) {
    if (!want.contains(h)) return "unexpected hyperplane " + h.str();
  }
  for (const auto& h : want) {
    if (!got.contains(h)) return "missing hyperplane " + h.str();
  }
  return "arrangements agree";
}

/// Reads a descriptor off an arrangement already in normal position and checks it.
inline std::optional<FamilyDescriptor> read_descriptor(const Arrangement& g, FamilyVariant variant, std::string& why) {
  const std::size_t n = g.dim();
  std::string dummy;
  auto nd = split_normal(g, dummy);
  if (!nd) {
    why = dummy;
    return std::nullopt;
  }
  unsigned m = 1;
  std::set<Scalar> ratios;
  for (const auto& s : nd->slanted) {
    if (!s.offset.is_zero()) {
      why = "slanted hyperplane misses the center after normalization";
      return std::nullopt;
    }
    auto ord = root_of_unity_order(s.ratio);
    if (!ord) {
      why = "ratio " + s.ratio.str() + " is not a root of unity";
      return std::nullopt;
    }
    m = std::lcm(m, *ord);
    ratios.insert(s.ratio);
  }
  FamilyDescriptor d;
  d.n = n;
  d.m = m;
  d.variant = variant;
  if (n == 2) d.omega_prime.assign(ratios.begin(), ratios.end());
  if (variant == FamilyVariant::full) {
    const auto omega = roots_of_unity(g.field(), m);
    std::set<Scalar> covered;
    auto consts = nd->constants[0];
    std::sort(consts.begin(), consts.end());
    for (const auto& c : consts) {
      if (c.is_zero() || covered.count(c)) continue;
      d.alphas.push_back(c);
      for (const auto& w : omega) covered.insert(w * c);
    }
  }
  try {
    const Arrangement want = make_family(d, g.field());
    if (want == g) return d;
    why = first_difference(g, want) + " against " + d.str();
  } catch (const std::invalid_argument& e) {
    why = e.what();
  }
  return std::nullopt;
}

}  // namespace detail

/// Finds x_j = a_j y_j + b_j taking `a` onto a family in normal form. The
/// family is symmetric in the coordinates, so the index map stays the identity;
/// a_1 = 1 and a_j is fixed by one slanted ratio between x_1 and x_j, which
/// leaves only the center b to search.
inline Recognition recognize(const Arrangement& a) {
  Recognition out;
  const std::size_t n = a.dim();
  if (n < 2) {
    out.diagnostic = "dimension below 2";
    return out;
  }
  auto nd = detail::split_normal(a, out.diagnostic);
  if (!nd) return out;

  std::size_t with_consts = 0;
  for (const auto& c : nd->constants) with_consts += !c.empty();
  FamilyVariant variant;
  if (with_consts == n) {
    variant = FamilyVariant::full;
  } else if (with_consts == 0) {
    variant = FamilyVariant::a_prime_only;
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      if (nd->constants[i].empty()) {
        out.diagnostic = "x" + std::to_string(i + 1) + " has no hyperplane of the form x" + std::to_string(i + 1) +
                         " = c while other coordinates do";
        break;
      }
    }
    return out;
  }

  std::vector<Scalar> scales(n, Scalar(1));
  for (std::size_t j = 1; j < n; ++j) {
    auto rho = detail::first_ratio(*nd, 0, j);
    if (!rho) {
      out.diagnostic = "no hyperplane x1 = c*x" + std::to_string(j + 1) + " + d";
      return out;
    }
    scales[j] = rho->inverse();
  }

  std::optional<Flat> center = Flat::whole(n);
  for (const auto& s : nd->slanted) {
    std::vector<Scalar> lin(n, Scalar(0));
    lin[s.i] = Scalar(1);
    lin[s.j] = -s.ratio;
    center = intersect(*center, Hyperplane(std::move(lin), -s.offset));
    if (!center) {
      out.diagnostic = "the slanted hyperplanes have no common point";
      return out;
    }
  }

  std::string last_why = "no admissible center";
  auto attempt = [&](const std::vector<Scalar>& shift) {
    CoordTransform t;
    t.perm.resize(n);
    std::iota(t.perm.begin(), t.perm.end(), std::size_t{0});
    t.scales = scales;
    t.shifts = shift;
    const Arrangement g = t.apply(a);
    auto d = detail::read_descriptor(g, variant, last_why);
    if (!d) return false;
    out.family = std::move(d);
    out.transform = std::move(t);
    return true;
  };

  if (variant == FamilyVariant::a_prime_only) {
    if (!attempt(center->particular_point())) out.diagnostic = last_why;
    return out;
  }

  // b_i ranges over the constants of coordinate i, pruned by the center
  std::vector<Scalar> shift(n, Scalar(0));
  bool found = false;
  auto search = [&](auto&& self, std::size_t i, const Flat& z) -> void {
    if (found) return;
    if (i == n) {
      found = attempt(shift);
      return;
    }
    for (const auto& c : nd->constants[i]) {
      std::vector<Scalar> lin(n, Scalar(0));
      lin[i] = Scalar(1);
      auto next = intersect(z, Hyperplane(std::move(lin), -c));
      if (!next) continue;
      shift[i] = c;
      self(self, i + 1, *next);
      if (found) return;
    }
  };
  search(search, 0, *center);
  if (!found) out.diagnostic = last_why;
  return out;
}

/// Stable frame, decomposition, reduction and recognition of every factor.
inline ClassificationReport classify(const Arrangement& a) {
  ClassificationReport rep;
  const std::size_t n = a.dim();
  rep.coordinates = AffineChange::identity(n);
  const CodimTwo l2 = codim_two_flats(a);
  Arrangement frame = a;
  rep.axis_stable = is_axis_stable(a, l2);
  if (!rep.axis_stable) {
    const StabilityResult st = is_stable(a, l2);
    if (!st.stable) {
      FactorVerdict v;
      v.kind = VerdictKind::not_stable;
      v.block.resize(n);
      std::iota(v.block.begin(), v.block.end(), std::size_t{0});
      v.factor = a;
      v.reduced = a;
      v.diagnostic = "valid directions span a subspace of dimension " + std::to_string(st.span_dim) + " < " +
                     std::to_string(n);
      rep.verdicts.push_back(std::move(v));
      return rep;
    }
    rep.coordinates = AffineChange::from_basis(st.basis);
    frame = rep.coordinates.apply(a);
    if (!is_axis_stable(frame)) throw std::logic_error("stable basis did not yield an axis-stable frame");
  }

  const Decomposition dec = decompose(frame);
  for (std::size_t b = 0; b < dec.blocks.size(); ++b) {
    FactorVerdict v;
    v.block = dec.blocks[b];
    v.factor = dec.factors[b];
    auto [red, steps] = reduce_fully(v.factor);
    v.reduced = std::move(red);
    v.reductions = std::move(steps);
    if (v.reduced.dim() < 2 || codim_two_flats(v.reduced).flats.size() <= 1) {
      v.kind = VerdictKind::trivial;
    } else {
      Recognition r = recognize(v.reduced);
      if (r.family) {
        v.kind = VerdictKind::family;
        v.family = std::move(r.family);
        v.normalization = std::move(r.transform);
      } else {
        v.kind = VerdictKind::unrecognized;
        v.diagnostic = std::move(r.diagnostic);
      }
    }
    rep.verdicts.push_back(std::move(v));
  }
  return rep;
}

}  // namespace stabhyp
