/**
 * @file arrangement.hpp
 * @brief Finite sets of distinct hyperplanes in C^n.
 */
#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "stabhyp/geom.hpp"

namespace stabhyp {

/// Ordered set of distinct canonical hyperplanes. Insertion order is kept for
/// indexing; equality is set equality.
class Arrangement {
 public:
  explicit Arrangement(std::size_t dim, const Field& field = Field::rationals()) : dim_(dim), field_(&field) {}

  Arrangement(std::size_t dim, const Field& field, const std::vector<Hyperplane>& hs) : Arrangement(dim, field) {
    for (const auto& h : hs) add(h);
  }

  /// Adds `h`; returns false if it was already present.
  bool add(const Hyperplane& h) {
    if (h.dim() != dim_)
      throw std::invalid_argument("hyperplane lives in C^" + std::to_string(h.dim()) + ", arrangement in C^" +
                                  std::to_string(dim_));
    if (index_.count(h)) return false;
    index_.emplace(h, hs_.size());
    hs_.push_back(h);
    return true;
  }

  std::size_t dim() const noexcept { return dim_; }
  const Field& field() const noexcept { return *field_; }
  std::size_t size() const noexcept { return hs_.size(); }
  bool empty() const noexcept { return hs_.empty(); }
  const Hyperplane& operator[](std::size_t i) const { return hs_.at(i); }
  const std::vector<Hyperplane>& hyperplanes() const noexcept { return hs_; }
  auto begin() const { return hs_.begin(); }
  auto end() const { return hs_.end(); }

  bool contains(const Hyperplane& h) const { return index_.count(h) > 0; }

  std::optional<std::size_t> index_of(const Hyperplane& h) const {
    auto it = index_.find(h);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  /// Every hyperplane passes through the origin.
  bool is_homogeneous() const {
    return std::all_of(hs_.begin(), hs_.end(), [](const Hyperplane& h) { return h.constant().is_zero(); });
  }

  /// Hyperplanes in canonical order.
  std::vector<Hyperplane> sorted() const {
    std::vector<Hyperplane> out;
    out.reserve(index_.size());
    for (const auto& [h, i] : index_) out.push_back(h);
    return out;
  }

  friend bool operator==(const Arrangement& a, const Arrangement& b) {
    if (a.dim_ != b.dim_ || a.size() != b.size()) return false;
    auto ia = a.index_.begin();
    auto ib = b.index_.begin();
    for (; ia != a.index_.end(); ++ia, ++ib) {
      if (ia->first != ib->first) return false;
    }
    return true;
  }
  friend bool operator!=(const Arrangement& a, const Arrangement& b) { return !(a == b); }

  friend bool operator<(const Arrangement& a, const Arrangement& b) {
    if (a.dim_ != b.dim_) return a.dim_ < b.dim_;
    return std::lexicographical_compare(a.index_.begin(), a.index_.end(), b.index_.begin(), b.index_.end(),
                                        [](const auto& x, const auto& y) { return x.first < y.first; });
  }

 private:
  std::size_t dim_;
  const Field* field_;
  std::vector<Hyperplane> hs_;
  std::map<Hyperplane, std::size_t> index_;
};

}  // namespace stabhyp
