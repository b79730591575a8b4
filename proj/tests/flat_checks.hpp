// Property checks on convolution and the intersection poset, shared by the
// unit tests and the acceptance binary. Each returns a list of violations.
#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "stabhyp.hpp"

namespace flat_checks {

using namespace stabhyp;

using Violations = std::vector<std::string>;

inline std::string where(const Arrangement& a, const Vector& v) {
  std::string s = "A = {";
  for (std::size_t i = 0; i < a.size(); ++i) s += (i ? "; " : "") + a[i].str();
  return s + "}, v = " + v.str();
}

/// Two distinct flats directly below S share exactly the hyperplanes of S.
inline void covering_pairs(const IntersectionPoset& p, Violations& out) {
  for (const auto& s : p.all()) {
    const auto below = p.flats_between(s.codim() + 1, s, IntersectionPoset::Mode::sub);
    for (std::size_t i = 0; i < below.size(); ++i)
      for (std::size_t j = i + 1; j < below.size(); ++j) {
        const auto& x = p.through(below[i]);
        const auto& y = p.through(below[j]);
        std::vector<std::size_t> both;
        std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(both));
        if (both != p.through(s)) out.push_back("covering pair below " + s.str());
      }
  }
}

/// Subset of A_S made of hyperplanes parallel to v.
inline std::vector<std::size_t> parallel_through(const Arrangement& a, const std::vector<std::size_t>& through,
                                                 const Vector& v) {
  std::vector<std::size_t> out;
  for (std::size_t h : through)
    if (direction_contains(a[h], v)) out.push_back(h);
  return out;
}

inline Flat meet(std::size_t n, const Arrangement& a, const std::vector<std::size_t>& idx) {
  std::vector<Row> rows;
  for (std::size_t h : idx) rows.push_back(a[h].row());
  return *Flat::from_rows(n, rows);
}

/// Clauses (ii) through (v) for one arrangement and direction.
inline void direction_clauses(const Arrangement& a, const Vector& v, Violations& out) {
  const std::size_t n = a.dim();
  const auto p = build_poset(a);
  const auto tag = where(a, v);

  // (ii)
  if (!is_v_closed(convolution(a, v), v).closed) out.push_back("(ii) convolution not closed: " + tag);

  for (const auto& s : p.all()) {
    const auto& through = p.through(s);
    const auto par = parallel_through(a, through, v);
    // (iii)
    if (direction_contains(s, v) != (par.size() == through.size()))
      out.push_back("(iii) at " + s.str() + ": " + tag);
    // (iv)
    if (direction_contains(s, v)) {
      for (std::size_t h = 0; h < a.size(); ++h) {
        if (direction_contains(a[h], v)) continue;
        auto t = intersect(s, a[h]);
        if (!t) {
          out.push_back("(iv) empty meet at " + s.str() + ": " + tag);
          continue;
        }
        if (parallel_through(a, p.through(*t), v) != through)
          out.push_back("(iv) at " + s.str() + " with " + a[h].str() + ": " + tag);
      }
    }
  }

  // (v)
  if (!is_v_closed(a, v).closed) return;
  for (const auto& s : p.all()) {
    if (direction_contains(s, v)) continue;
    const Flat c = cylinder(v, s);
    if (!p.contains(c)) out.push_back("(v) cylinder of " + s.str() + " missing: " + tag);
    const auto par = parallel_through(a, p.through(s), v);
    if (meet(n, a, par) != c) out.push_back("(v) cylinder of " + s.str() + " is not the parallel meet: " + tag);
    // a parallel H through S contains the whole cylinder, so S is cut out by
    // the transversal members of A_S
    for (std::size_t h : p.through(s)) {
      if (direction_contains(a[h], v)) continue;
      auto back = intersect(c, a[h]);
      if (!back || *back != s) out.push_back("(v) S != H meet cylinder at " + s.str() + ": " + tag);
    }
  }
}

/// Closure of a set of flats under pairwise nonempty intersection.
inline std::set<Flat> intersection_closure(std::set<Flat> flats) {
  for (bool grew = true; grew;) {
    grew = false;
    std::vector<Flat> cur(flats.begin(), flats.end());
    for (std::size_t i = 0; i < cur.size(); ++i)
      for (std::size_t j = i + 1; j < cur.size(); ++j)
        if (auto t = intersect(cur[i], cur[j]); t && flats.insert(*t).second) grew = true;
  }
  return flats;
}

inline std::set<Flat> all_flats(const Arrangement& a) {
  const auto v = build_poset(a).all();
  return {v.begin(), v.end()};
}

/// L(A) together with the axis-i cylinders of all its flats.
inline std::set<Flat> with_cylinders(const Arrangement& a, std::size_t i) {
  auto out = all_flats(a);
  for (const auto& s : all_flats(a)) out.insert(cylinder(Vector::axis(a.dim(), i), s));
  return out;
}

struct ProjectionCheck {
  bool literal = true;    // L(mc A) equals L(A) plus cylinders
  bool contains = true;   // L(mc A) contains L(A) plus cylinders
  bool closure = true;    // L(mc A) is the intersection closure of L(A) plus cylinders
  bool axis_form = true;  // axis-stable iff L(A) holds all its cylinders
};

inline ProjectionCheck projection_identity(const Arrangement& a) {
  ProjectionCheck r;
  bool every_axis = true;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const auto lhs = all_flats(convolution(a, Vector::axis(a.dim(), i)));
    const auto rhs = with_cylinders(a, i);
    r.literal = r.literal && lhs == rhs;
    r.contains = r.contains && std::includes(lhs.begin(), lhs.end(), rhs.begin(), rhs.end());
    r.closure = r.closure && lhs == intersection_closure(rhs);
    every_axis = every_axis && rhs == all_flats(a);
  }
  r.axis_form = every_axis == is_axis_stable(a);
  return r;
}

}  // namespace flat_checks
