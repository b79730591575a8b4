/**
 * @file oracle.hpp
 * @brief Brute-force cross-checks: subset-wise intersection posets, a census
 *        of stable arrangements drawn from a hyperplane pool, and orbit
 *        closure under two affine maps of the line.
 */
#pragma once

#include <algorithm>
#include <cstddef>
#include <bit>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "stabhyp/arrangement.hpp"
#include "stabhyp/classify.hpp"
#include "stabhyp/cyclo.hpp"
#include "stabhyp/geom.hpp"
#include "stabhyp/poset.hpp"
#include "stabhyp/structure.hpp"

namespace stabhyp {

/// Intersects every subset of A directly. A hyperplane passes through S when
/// appending its row leaves the canonical system unchanged.
inline IntersectionPoset brute_force_poset(const Arrangement& a, std::size_t bound = 12) {
  if (a.size() > bound)
    throw std::invalid_argument("brute force poset is limited to " + std::to_string(bound) + " hyperplanes, got " +
                                std::to_string(a.size()));
  const std::size_t n = a.dim();
  std::set<Flat> flats;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << a.size()); ++mask) {
    std::vector<Row> rows;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (mask >> i & 1) rows.push_back(a[i].row());
    }
    if (auto f = Flat::from_rows(n, std::move(rows))) flats.insert(std::move(*f));
  }
  std::size_t top = 0;
  for (const auto& f : flats) top = std::max(top, f.codim());
  std::vector<std::vector<Flat>> strata(top + 1);
  std::map<Flat, std::vector<std::size_t>> through;
  for (const auto& f : flats) {
    std::vector<std::size_t> at;
    for (std::size_t i = 0; i < a.size(); ++i) {
      std::vector<Row> rows = f.rows();
      rows.push_back(a[i].row());
      auto g = Flat::from_rows(n, std::move(rows));
      if (g && *g == f) at.push_back(i);
    }
    strata[f.codim()].push_back(f);
    through.emplace(f, std::move(at));
  }
  return IntersectionPoset(a, std::move(strata), std::move(through));
}

/// Same strata (as sets) and same through-map.
inline bool same_poset(const IntersectionPoset& p, const IntersectionPoset& q) {
  if (p.levels() != q.levels()) return false;
  for (std::size_t k = 0; k < p.levels(); ++k) {
    auto x = p.stratum(k), y = q.stratum(k);
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    if (x != y) return false;
    for (const auto& f : x) {
      if (p.through(f) != q.through(f)) return false;
    }
  }
  return true;
}

struct PoolSpec {
  std::size_t n = 2;
  const Field* field = &Field::rationals();
  std::vector<Hyperplane> pool;
  bool require_axis_stable = true;
  bool require_indecomposable = true;
  bool require_reduced = true;
  bool require_nontrivial = true;
  std::size_t min_size = 1;
  std::size_t max_size = 20;
};

struct CensusEntry {
  std::vector<std::size_t> members;  // pool indices
  Arrangement arrangement{0};
  ClassificationReport report;
};

struct Census {
  std::uint64_t examined = 0;
  std::vector<CensusEntry> entries;

  std::size_t count(VerdictKind k) const {
    std::size_t c = 0;
    for (const auto& e : entries) {
      for (const auto& v : e.report.verdicts) c += v.kind == k;
    }
    return c;
  }
};

/// Enumerates subsets of the pool, filters them and classifies the survivors.
/// Pairwise intersections of the pool are computed once, so the stability,
/// decomposition and triviality filters run on bitmasks.
inline Census enumerate_axis_stable(const PoolSpec& spec, std::size_t pool_limit = 20) {
  const std::size_t p = spec.pool.size();
  const std::size_t n = spec.n;
  if (p > pool_limit)
    throw std::invalid_argument("pool has " + std::to_string(p) + " hyperplanes, limit is " + std::to_string(pool_limit));
  {
    Arrangement check(n, *spec.field);
    for (const auto& h : spec.pool) {
      if (!check.add(h)) throw std::invalid_argument("pool contains " + h.str() + " twice");
    }
  }
  using Mask = std::uint32_t;

  std::vector<Mask> parallel(n, 0);  // hyperplanes with c_k = 0
  std::vector<Mask> support(p, 0);   // coordinates used
  for (std::size_t h = 0; h < p; ++h) {
    for (std::size_t k = 0; k < n; ++k) {
      if (spec.pool[h].linear()[k].is_zero())
        parallel[k] |= Mask{1} << h;
      else
        support[h] |= Mask{1} << k;
    }
  }
  std::map<Flat, std::size_t> flat_ids;
  std::vector<std::vector<bool>> flat_dir;  // flat_dir[f][k]: e_k ∈ Dir(f)
  std::vector<std::vector<int>> pair_flat(p, std::vector<int>(p, -1));
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = i + 1; j < p; ++j) {
      auto s = intersect(Flat::from(spec.pool[i]), spec.pool[j]);
      if (!s) continue;
      auto [it, fresh] = flat_ids.try_emplace(*s, flat_ids.size());
      if (fresh) {
        std::vector<bool> d(n);
        for (std::size_t k = 0; k < n; ++k) d[k] = direction_contains(*s, Vector::axis(n, k));
        flat_dir.push_back(std::move(d));
      }
      pair_flat[i][j] = static_cast<int>(it->second);
    }
  }

  Census census;
  std::vector<Mask> through(flat_ids.size());
  std::vector<std::size_t> present;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << p); ++mask) {
    const auto size = static_cast<std::size_t>(std::popcount(mask));
    if (size < spec.min_size || size > spec.max_size) continue;
    ++census.examined;
    std::vector<std::size_t> members;
    for (std::size_t h = 0; h < p; ++h) {
      if (mask >> h & 1) members.push_back(h);
    }

    if (spec.require_indecomposable) {
      Mask reach = support[members.front()];
      for (bool grew = true; grew;) {
        grew = false;
        for (std::size_t h : members) {
          if ((support[h] & reach) && (support[h] & ~reach)) {
            reach |= support[h];
            grew = true;
          }
        }
      }
      if (reach != (Mask{1} << n) - 1) continue;
    }

    present.clear();
    for (std::size_t x = 0; x < members.size(); ++x) {
      for (std::size_t y = x + 1; y < members.size(); ++y) {
        const int f = pair_flat[members[x]][members[y]];
        if (f < 0) continue;
        if (!through[f]) present.push_back(static_cast<std::size_t>(f));
        through[f] |= Mask{1} << members[x] | Mask{1} << members[y];
      }
    }
    bool keep = true;
    if (spec.require_nontrivial && present.size() <= 1) keep = false;
    if (keep && spec.require_axis_stable) {
      for (std::size_t f : present) {
        for (std::size_t k = 0; k < n && keep; ++k) {
          keep = flat_dir[f][k] || (through[f] & parallel[k]);
        }
        if (!keep) break;
      }
    }
    for (std::size_t f : present) through[f] = 0;
    if (!keep) continue;

    Arrangement arr(n, *spec.field);
    for (std::size_t h : members) arr.add(spec.pool[h]);
    if (spec.require_reduced && find_reduction(arr)) continue;
    CensusEntry e;
    e.members = std::move(members);
    e.report = classify(arr);
    e.arrangement = std::move(arr);
    census.entries.push_back(std::move(e));
  }
  return census;
}

/// Closure of {z} under T1(x) = a1 x and T2(x) = a2 x + a3.
struct OrbitReport {
  std::optional<std::vector<Scalar>> closure;  // empty when the budget was exceeded
  std::optional<unsigned> m;                   // least m with a1^m = a2^m = 1
  bool shift_vanishes = false;                 // a3 == 0
  bool contains_rotations = false;             // closure ⊇ {w z : w^m = 1}

  bool finite() const noexcept { return closure.has_value(); }
  bool conclusions_hold() const noexcept { return !finite() || (m && shift_vanishes && contains_rotations); }
};

inline OrbitReport orbit_closure(const Scalar& a1, const Scalar& a2, const Scalar& a3, const Scalar& z,
                                 std::size_t budget = 512) {
  if ((a1 * a2 * (a1 - Scalar(1))).is_zero()) throw std::invalid_argument("need a1 * a2 * (a1 - 1) != 0");
  if (z.is_zero()) throw std::invalid_argument("need z != 0");
  OrbitReport rep;
  std::set<Scalar> seen{z};
  std::vector<Scalar> frontier{z};
  while (!frontier.empty()) {
    std::vector<Scalar> next;
    for (const auto& x : frontier) {
      for (Scalar y : {a1 * x, a2 * x + a3}) {
        if (seen.insert(y).second) next.push_back(std::move(y));
      }
    }
    if (seen.size() > budget) return rep;
    frontier = std::move(next);
  }
  rep.closure.emplace(seen.begin(), seen.end());
  rep.shift_vanishes = a3.is_zero();
  auto o1 = root_of_unity_order(a1), o2 = root_of_unity_order(a2);
  if (o1 && o2) {
    rep.m = std::lcm(*o1, *o2);
    const Scalar w = primitive_root((a1 * a2 * z).field(), *rep.m);
    Scalar x = z;
    rep.contains_rotations = true;
    for (unsigned k = 0; k < *rep.m; ++k, x *= w) rep.contains_rotations = rep.contains_rotations && seen.count(x);
  }
  return rep;
}

}  // namespace stabhyp
