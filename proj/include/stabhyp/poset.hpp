/**
 * @file poset.hpp
 * @brief The intersection poset L(A), stratified by codimension.
 */
#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "stabhyp/arrangement.hpp"
#include "stabhyp/geom.hpp"

namespace stabhyp {

/// Codimension-two flats with the hyperplanes through each one. Cheaper than
/// the full poset and sufficient for every closedness question.
struct CodimTwo {
  std::vector<Flat> flats;
  std::vector<std::vector<std::size_t>> through;  // sorted indices into A
};

/// L^(2)(A). A hyperplane contains a codim-2 flat S iff it meets some other
/// member of A_S exactly in S, so the pair scan yields A_S directly.
inline CodimTwo codim_two_flats(const Arrangement& a) {
  CodimTwo out;
  std::map<Flat, std::size_t> seen;
  std::vector<Flat> singles;
  singles.reserve(a.size());
  for (const auto& h : a) singles.push_back(Flat::from(h));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      auto s = intersect(singles[i], a[j]);
      if (!s) continue;  // parallel
      auto [it, fresh] = seen.try_emplace(std::move(*s), out.flats.size());
      if (fresh) {
        out.flats.push_back(it->first);
        out.through.emplace_back();
      }
      auto& t = out.through[it->second];
      t.push_back(i);
      t.push_back(j);
    }
  }
  for (auto& t : out.through) {
    std::sort(t.begin(), t.end());
    t.erase(std::unique(t.begin(), t.end()), t.end());
  }
  return out;
}

/// All flats of L(A) with the through-map S -> A_S.
class IntersectionPoset {
 public:
  IntersectionPoset(Arrangement source, std::vector<std::vector<Flat>> strata,
                    std::map<Flat, std::vector<std::size_t>> through)
      : source_(std::move(source)), strata_(std::move(strata)), through_(std::move(through)) {}

  const Arrangement& source() const noexcept { return source_; }

  /// Highest codimension present plus one.
  std::size_t levels() const noexcept { return strata_.size(); }

  /// L^(k); empty beyond the top level.
  const std::vector<Flat>& stratum(std::size_t k) const {
    static const std::vector<Flat> none;
    return k < strata_.size() ? strata_[k] : none;
  }

  std::size_t size() const {
    std::size_t s = 0;
    for (const auto& l : strata_) s += l.size();
    return s;
  }

  bool contains(const Flat& s) const { return through_.count(s) > 0; }

  /// A_S as sorted hyperplane indices.
  const std::vector<std::size_t>& through(const Flat& s) const {
    auto it = through_.find(s);
    if (it == through_.end()) throw std::invalid_argument("flat " + s.str() + " is not in the poset");
    return it->second;
  }

  enum class Mode { sub, super };

  /// L^(k)_{⊂S} (sub) or L^(k)_{⊃S} (super).
  std::vector<Flat> flats_between(std::size_t k, const Flat& s, Mode mode) const {
    if (!contains(s)) throw std::invalid_argument("flat " + s.str() + " is not in the poset");
    std::vector<Flat> out;
    for (const auto& t : stratum(k)) {
      const bool ok = mode == Mode::sub ? stabhyp::contains(s, t) : stabhyp::contains(t, s);
      if (ok) out.push_back(t);
    }
    return out;
  }

  /// Every flat, level by level.
  std::vector<Flat> all() const {
    std::vector<Flat> out;
    for (const auto& l : strata_) out.insert(out.end(), l.begin(), l.end());
    return out;
  }

 private:
  Arrangement source_;
  std::vector<std::vector<Flat>> strata_;
  std::map<Flat, std::vector<std::size_t>> through_;
};

/// Level-by-level construction: L^(k+1) = { S ∩ H : S ∈ L^(k), H ∉ A_S, nonempty }.
inline IntersectionPoset build_poset(const Arrangement& a) {
  const std::size_t n = a.dim();
  std::vector<std::vector<Flat>> strata;
  std::map<Flat, std::vector<std::size_t>> through;

  strata.push_back({Flat::whole(n)});
  through.emplace(Flat::whole(n), std::vector<std::size_t>{});
  std::vector<Flat> level;
  for (std::size_t i = 0; i < a.size(); ++i) {
    Flat f = Flat::from(a[i]);
    level.push_back(f);
    through.emplace(std::move(f), std::vector<std::size_t>{i});
  }
  if (!level.empty()) strata.push_back(std::move(level));

  for (std::size_t k = 1; k < n && k < strata.size(); ++k) {
    std::vector<Flat> next;
    for (const auto& s : strata[k]) {
      const auto& as = through.at(s);
      for (std::size_t h = 0; h < a.size(); ++h) {
        if (std::binary_search(as.begin(), as.end(), h)) continue;
        auto t = intersect(s, a[h]);
        if (!t || through.count(*t)) continue;
        std::vector<std::size_t> at;
        for (std::size_t g = 0; g < a.size(); ++g) {
          if (g == h || std::binary_search(as.begin(), as.end(), g) || contains(a[g], *t)) at.push_back(g);
        }
        through.emplace(*t, std::move(at));
        next.push_back(std::move(*t));
      }
    }
    if (next.empty()) break;
    std::sort(next.begin(), next.end());
    strata.push_back(std::move(next));
  }
  return IntersectionPoset(a, std::move(strata), std::move(through));
}

/// Partition of A into A_v (transversal to v) and A_v^c (parallel to v).
struct VectorSplit {
  std::vector<std::size_t> transversal;
  std::vector<std::size_t> parallel;
};

inline VectorSplit split_by_vector(const Arrangement& a, const Vector& v) {
  if (v.size() != a.dim()) throw std::invalid_argument("vector dimension does not match arrangement");
  VectorSplit out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    (direction_contains(a[i], v) ? out.parallel : out.transversal).push_back(i);
  }
  return out;
}

}  // namespace stabhyp
