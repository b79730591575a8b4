/**
 * @file convolve.hpp
 * @brief The convolution mc_v, v-closedness, valid directions and stability.
 *
 * Everything here only needs L^(2)(A): a codim-2 flat S with v ∉ Dir(S) has
 * <v,S> of codim 1, and <v,S> ∈ A exactly when some H ∈ A_S is parallel to v.
 */
#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "stabhyp/arrangement.hpp"
#include "stabhyp/geom.hpp"
#include "stabhyp/poset.hpp"

namespace stabhyp {

namespace detail {

inline void check_dim(const Arrangement& a, const Vector& v) {
  if (v.size() != a.dim())
    throw std::invalid_argument("vector has " + std::to_string(v.size()) + " entries, arrangement lives in C^" +
                                std::to_string(a.dim()));
}

inline bool flat_closed_in(const Arrangement& a, const std::vector<std::size_t>& through, const Flat& s,
                           const Vector& v) {
  if (direction_contains(s, v)) return true;
  return std::any_of(through.begin(), through.end(), [&](std::size_t h) { return direction_contains(a[h], v); });
}

}  // namespace detail

/// mc_v A = A ∪ { <v,S> : S ∈ L^(2)(A), codim <v,S> = 1 }.
inline Arrangement convolution(const Arrangement& a, const Vector& v, const CodimTwo& l2) {
  detail::check_dim(a, v);
  Arrangement out = a;
  for (const auto& s : l2.flats) {
    if (direction_contains(s, v)) continue;
    out.add(cylinder(v, s).hyperplane());
  }
  return out;
}

inline Arrangement convolution(const Arrangement& a, const Vector& v) {
  return convolution(a, v, codim_two_flats(a));
}

struct ClosednessResult {
  bool closed = true;
  std::optional<Flat> witness;  // S ∈ L^(2) with <v,S> ∉ L(A)
};

inline ClosednessResult is_v_closed(const Arrangement& a, const Vector& v, const CodimTwo& l2) {
  detail::check_dim(a, v);
  for (std::size_t i = 0; i < l2.flats.size(); ++i) {
    if (!detail::flat_closed_in(a, l2.through[i], l2.flats[i], v)) return {false, l2.flats[i]};
  }
  return {};
}

inline ClosednessResult is_v_closed(const Arrangement& a, const Vector& v) {
  return is_v_closed(a, v, codim_two_flats(a));
}

/// Finite union of linear subspaces, pairwise incomparable.
class DirectionFamily {
 public:
  explicit DirectionFamily(std::size_t n, std::vector<LinearSubspace> members = {}) : n_(n), members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
  }

  std::size_t ambient() const noexcept { return n_; }
  const std::vector<LinearSubspace>& members() const noexcept { return members_; }
  bool empty() const noexcept { return members_.empty(); }

  bool contains(const Vector& v) const {
    return std::any_of(members_.begin(), members_.end(), [&](const LinearSubspace& w) { return w.contains(v); });
  }

  /// Dimension of the span of the union.
  std::size_t span_dim() const { return spanning_vectors().size(); }

  /// A maximal independent subset of the members' canonical bases.
  std::vector<Vector> spanning_vectors() const {
    std::vector<Row> echelon;
    std::vector<Vector> picked;
    for (const auto& w : members_) {
      for (const auto& b : w.basis()) {
        Row r(b.entries().begin(), b.entries().end());
        r.push_back(Scalar(0));
        Row probe = r;
        detail::reduce_against(probe, echelon);
        if (detail::row_is_zero(probe)) continue;
        picked.push_back(b);
        echelon.push_back(r);
        echelon = *detail::rref(std::move(echelon));
      }
    }
    return picked;
  }

  friend bool operator==(const DirectionFamily& a, const DirectionFamily& b) {
    return a.n_ == b.n_ && a.members_.size() == b.members_.size() &&
           std::equal(a.members_.begin(), a.members_.end(), b.members_.begin());
  }

 private:
  std::size_t n_;
  std::vector<LinearSubspace> members_;
};

/// Keeps the inclusion-maximal, nonzero, distinct members.
inline std::vector<LinearSubspace> maximal_members(std::vector<LinearSubspace> cands) {
  std::sort(cands.begin(), cands.end());
  cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
  std::vector<LinearSubspace> out;
  for (std::size_t i = 0; i < cands.size(); ++i) {
    if (cands[i].dim() == 0) continue;
    bool dominated = false;
    for (std::size_t j = 0; j < cands.size() && !dominated; ++j) {
      dominated = j != i && cands[j].dim() > cands[i].dim() && cands[j].contains(cands[i]);
    }
    if (!dominated) out.push_back(cands[i]);
  }
  return out;
}

/// { v ≠ 0 : A is v-closed } = ⋂_{S ∈ L^(2)} ⋃_{H ∈ A_S} Dir(H).
inline DirectionFamily valid_directions(const Arrangement& a, const CodimTwo& l2) {
  std::vector<LinearSubspace> family{LinearSubspace::whole(a.dim())};
  std::vector<LinearSubspace> dirs;
  dirs.reserve(a.size());
  for (const auto& h : a) dirs.push_back(LinearSubspace::direction_of(h));
  for (std::size_t i = 0; i < l2.flats.size() && !family.empty(); ++i) {
    std::vector<LinearSubspace> next;
    for (const auto& w : family) {
      for (std::size_t h : l2.through[i]) next.push_back(w.intersect(dirs[h]));
    }
    family = maximal_members(std::move(next));
  }
  return DirectionFamily(a.dim(), std::move(family));
}

inline DirectionFamily valid_directions(const Arrangement& a) { return valid_directions(a, codim_two_flats(a)); }

struct StabilityResult {
  bool stable = false;
  std::vector<Vector> basis;  // n independent valid directions when stable
  std::size_t span_dim = 0;
};

inline StabilityResult is_stable(const Arrangement& a, const CodimTwo& l2) {
  const DirectionFamily fam = valid_directions(a, l2);
  StabilityResult out;
  auto vecs = fam.spanning_vectors();
  out.span_dim = vecs.size();
  out.stable = vecs.size() == a.dim();
  if (out.stable) {
    for (const auto& v : vecs) {
      if (!is_v_closed(a, v, l2).closed) throw std::logic_error("valid direction " + v.str() + " failed closedness");
    }
    out.basis = std::move(vecs);
  }
  return out;
}

inline StabilityResult is_stable(const Arrangement& a) { return is_stable(a, codim_two_flats(a)); }

/// First coordinate i (0-based) for which A is not e_i-closed, with its witness.
struct AxisStability {
  bool stable = true;
  std::size_t failing_axis = 0;
  std::optional<Flat> witness;
};

inline AxisStability axis_stability(const Arrangement& a, const CodimTwo& l2) {
  for (std::size_t i = 0; i < a.dim(); ++i) {
    auto r = is_v_closed(a, Vector::axis(a.dim(), i), l2);
    if (!r.closed) return {false, i, r.witness};
  }
  return {};
}

/// mc_{x_i} A = A for every coordinate i.
inline bool is_axis_stable(const Arrangement& a, const CodimTwo& l2) { return axis_stability(a, l2).stable; }
inline bool is_axis_stable(const Arrangement& a) { return is_axis_stable(a, codim_two_flats(a)); }

struct ClosureReport {
  std::optional<Arrangement> result;  // empty when the budget was exceeded
  std::size_t rounds = 0;             // full sweeps executed
  std::vector<std::size_t> growth;    // |A| initially and after each sweep

  bool diverged() const noexcept { return !result.has_value(); }
};

/// Repeats A <- mc_{x_1}(...mc_{x_n}(A)) until nothing is added or |A| > budget.
inline ClosureReport axis_closure(const Arrangement& a, std::size_t budget) {
  if (budget < a.size()) throw std::invalid_argument("closure budget is smaller than the arrangement");
  ClosureReport rep;
  Arrangement cur = a;
  rep.growth.push_back(cur.size());
  for (;;) {
    const std::size_t before = cur.size();
    for (std::size_t i = a.dim(); i-- > 0;) {
      cur = convolution(cur, Vector::axis(a.dim(), i));
      if (cur.size() > budget) {
        ++rep.rounds;
        rep.growth.push_back(cur.size());
        return rep;
      }
    }
    ++rep.rounds;
    rep.growth.push_back(cur.size());
    if (cur.size() == before) {
      rep.result = std::move(cur);
      return rep;
    }
  }
}

}  // namespace stabhyp
