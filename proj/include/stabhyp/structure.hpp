/**
 * @file structure.hpp
 * @brief Decomposition into coordinate blocks, reduction by merging two
 *        coordinates, and specialization to coordinate sections.
 */
#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "stabhyp/arrangement.hpp"
#include "stabhyp/geom.hpp"

namespace stabhyp {

struct Decomposition {
  std::vector<std::vector<std::size_t>> blocks;  // partition of {0..n-1}, each sorted
  std::vector<Arrangement> factors;              // factor j in C^{|blocks[j]|}

  bool indecomposable() const noexcept { return blocks.size() == 1; }
};

/// Blocks are the connected components of the graph linking i and i' when
/// some hyperplane has c_i ≠ 0 and c_i' ≠ 0.
inline Decomposition decompose(const Arrangement& a) {
  const std::size_t n = a.dim();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& h : a) {
    const auto s = h.support();
    for (std::size_t k = 1; k < s.size(); ++k) {
      const std::size_t r0 = find(s[0]), r1 = find(s[k]);
      if (r0 != r1) parent[std::max(r0, r1)] = std::min(r0, r1);
    }
  }
  Decomposition d;
  std::map<std::size_t, std::size_t> block_of_root;
  std::vector<std::size_t> block_of(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto [it, fresh] = block_of_root.try_emplace(find(i), d.blocks.size());
    if (fresh) d.blocks.emplace_back();
    d.blocks[it->second].push_back(i);
    block_of[i] = it->second;
  }
  for (const auto& b : d.blocks) d.factors.emplace_back(b.size(), a.field());
  for (const auto& h : a) {
    const auto s = h.support();
    const std::size_t blk = block_of[s.front()];
    const auto& coords = d.blocks[blk];
    std::vector<Scalar> lin;
    lin.reserve(coords.size());
    for (std::size_t c : coords) lin.push_back(h.linear()[c]);
    for (std::size_t c : s) {
      if (block_of[c] != blk) throw std::logic_error("hyperplane straddles two blocks");
    }
    d.factors[blk].add(Hyperplane(std::move(lin), h.constant()));
  }
  return d;
}

/// Union of the pullbacks pi_j^{-1}(factor_j).
inline Arrangement reassemble(const Decomposition& d, std::size_t n, const Field& field) {
  Arrangement out(n, field);
  for (std::size_t j = 0; j < d.blocks.size(); ++j) {
    for (const auto& h : d.factors[j]) {
      std::vector<Scalar> lin(n, Scalar(0));
      for (std::size_t k = 0; k < d.blocks[j].size(); ++k) lin[d.blocks[j][k]] = h.linear()[k];
      out.add(Hyperplane(std::move(lin), h.constant()));
    }
  }
  return out;
}

/// Merge of coordinates i < j into u = a x_i + b x_j, placed at position i.
/// (a, b) is nonzero with first nonzero entry 1.
struct Reduction {
  std::size_t i = 0;
  std::size_t j = 0;
  Scalar a = Scalar(1);
  Scalar b = Scalar(0);

  std::string str() const {
    return "merge x" + std::to_string(i + 1) + ", x" + std::to_string(j + 1) + " into " + detail::render_linear([&] {
             std::vector<Scalar> c(j + 1, Scalar(0));
             c[i] = a;
             c[j] = b;
             return c;
           }());
  }
};

/// First pair (i, j) in lexicographic order along which every hyperplane's
/// (c_i, c_j) is a multiple of one fixed (a, b).
inline std::optional<Reduction> find_reduction(const Arrangement& a) {
  const std::size_t n = a.dim();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      std::optional<std::pair<Scalar, Scalar>> dir;
      bool ok = true;
      for (const auto& h : a) {
        const Scalar& ci = h.linear()[i];
        const Scalar& cj = h.linear()[j];
        if (ci.is_zero() && cj.is_zero()) continue;
        if (!dir) {
          dir = ci.is_zero() ? std::pair<Scalar, Scalar>{Scalar(0), Scalar(1)}
                             : std::pair<Scalar, Scalar>{Scalar(1), cj / ci};
          continue;
        }
        // (ci, cj) ∥ (a, b)  <=>  ci b - cj a = 0
        if (!(ci * dir->second - cj * dir->first).is_zero()) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      if (!dir) dir = std::pair<Scalar, Scalar>{Scalar(1), Scalar(0)};
      return Reduction{i, j, dir->first, dir->second};
    }
  }
  return std::nullopt;
}

/// A' in C^{n-1} with A = pi^{-1}(A') for the merge described by `r`.
inline Arrangement apply_reduction(const Arrangement& a, const Reduction& r) {
  const std::size_t n = a.dim();
  Arrangement out(n - 1, a.field());
  for (const auto& h : a) {
    const Scalar& ci = h.linear()[r.i];
    const Scalar& cj = h.linear()[r.j];
    // (ci, cj) = lambda (a, b)
    const Scalar lambda = !r.a.is_zero() ? ci / r.a : cj / r.b;
    std::vector<Scalar> lin;
    lin.reserve(n - 1);
    for (std::size_t k = 0; k < n; ++k) {
      if (k == r.j) continue;
      lin.push_back(k == r.i ? lambda : h.linear()[k]);
    }
    out.add(Hyperplane(std::move(lin), h.constant()));
  }
  return out;
}

/// pi^{-1}(A') for the merge `r`; `n` is the dimension of the result.
inline Arrangement pullback(const Arrangement& reduced, const Reduction& r, std::size_t n) {
  if (reduced.dim() + 1 != n) throw std::invalid_argument("pullback dimension mismatch");
  Arrangement out(n, reduced.field());
  for (const auto& h : reduced) {
    std::vector<Scalar> lin(n, Scalar(0));
    std::size_t src = 0;
    for (std::size_t k = 0; k < n; ++k) {
      if (k == r.j) continue;
      if (k == r.i) {
        lin[r.i] = h.linear()[src] * r.a;
        lin[r.j] = h.linear()[src] * r.b;
      } else {
        lin[k] = h.linear()[src];
      }
      ++src;
    }
    out.add(Hyperplane(std::move(lin), h.constant()));
  }
  return out;
}

/// Applies find_reduction until the arrangement is reduced.
inline std::pair<Arrangement, std::vector<Reduction>> reduce_fully(const Arrangement& a) {
  Arrangement cur = a;
  std::vector<Reduction> steps;
  while (cur.dim() >= 2) {
    auto r = find_reduction(cur);
    if (!r) break;
    cur = apply_reduction(cur, *r);
    steps.push_back(*r);
  }
  return {std::move(cur), std::move(steps)};
}

/// Restriction to the section where the coordinates in `fixed` take the given
/// values; remaining coordinates keep their relative order. Tautologies and
/// contradictions are dropped.
inline Arrangement specialize(const Arrangement& a, const std::map<std::size_t, Scalar>& fixed) {
  const std::size_t n = a.dim();
  for (const auto& [k, v] : fixed) {
    if (k >= n) throw std::invalid_argument("cannot fix x" + std::to_string(k + 1) + " in C^" + std::to_string(n));
  }
  if (fixed.size() >= n) throw std::invalid_argument("specialization must keep at least one coordinate");
  Arrangement out(n - fixed.size(), a.field());
  for (const auto& h : a) {
    std::vector<Scalar> lin;
    Scalar c0 = h.constant();
    bool any = false;
    for (std::size_t k = 0; k < n; ++k) {
      auto it = fixed.find(k);
      if (it == fixed.end()) {
        lin.push_back(h.linear()[k]);
        any = any || !h.linear()[k].is_zero();
      } else if (!h.linear()[k].is_zero()) {
        c0 += h.linear()[k] * it->second;
      }
    }
    if (!any) continue;  // H ∩ V' is V' or empty
    out.add(Hyperplane(std::move(lin), std::move(c0)));
  }
  return out;
}

/// Fixes x_{m+1..n} = p.
inline Arrangement specialize(const Arrangement& a, std::size_t keep, const std::vector<Scalar>& p) {
  if (keep < 1 || keep >= a.dim()) throw std::invalid_argument("specialization must keep between 1 and n-1 coordinates");
  if (p.size() != a.dim() - keep) throw std::invalid_argument("specialization point has the wrong length");
  std::map<std::size_t, Scalar> fixed;
  for (std::size_t k = 0; k < p.size(); ++k) fixed.emplace(keep + k, p[k]);
  return specialize(a, fixed);
}

}  // namespace stabhyp
