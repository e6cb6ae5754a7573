#pragma once

#include <map>
#include <vector>

#include "bcca/rat.hpp"

namespace bcca {

// Exact row-echelon span over an ordered key type. Rows are sparse vectors
// keyed by Key; elimination is exact rational Gaussian elimination with the
// pivot of each row at its minimal key, rows kept fully reduced against
// each other (so the row set is canonical for the span). The comparator
// fixes the pivot order.
template <typename Key, typename Compare = std::less<Key>>
class EchelonSpace {
 public:
  using Vec = std::map<Key, Rat, Compare>;

  explicit EchelonSpace(Compare cmp = Compare())
      : cmp_(cmp), pivots_(cmp) {}

  // Builds an empty vector carrying this space's comparator; required when
  // the comparator is stateful.
  Vec make_vec() const { return Vec(cmp_); }

  // Reduces v against the rows; the remainder has no pivot key in common
  // with any row.
  Vec reduce(Vec v) const {
    auto it = v.begin();
    while (it != v.end()) {
      auto p = pivots_.find(it->first);
      if (p == pivots_.end()) {
        ++it;
        continue;
      }
      const Key k = it->first;
      const Rat factor = it->second;
      subtract_scaled(v, rows_[p->second], factor);
      it = v.upper_bound(k);
    }
    return v;
  }

  bool contains(const Vec& v) const { return reduce(v).empty(); }

  // Inserts v's reduction as a new row; returns false if v was already in
  // the span. The new row is scaled to a unit pivot and back-substituted
  // into the existing rows.
  bool insert(Vec v) {
    v = reduce(std::move(v));
    if (v.empty()) return false;
    const Rat lead = v.begin()->second;
    for (auto& [k, c] : v) c /= lead;
    const Key pivot = v.begin()->first;
    for (auto& row : rows_) {
      auto hit = row.find(pivot);
      if (hit != row.end()) subtract_scaled(row, v, hit->second);
    }
    pivots_.emplace(pivot, rows_.size());
    rows_.push_back(std::move(v));
    return true;
  }

  std::size_t rank() const { return rows_.size(); }
  const std::vector<Vec>& rows() const { return rows_; }
  const std::map<Key, std::size_t, Compare>& pivots() const { return pivots_; }

 private:
  // factor is taken by value: callers may pass a coefficient stored inside
  // target, which the subtraction below erases.
  static void subtract_scaled(Vec& target, const Vec& row, Rat factor) {
    for (const auto& [k, c] : row) {
      auto [it, inserted] = target.try_emplace(k, Rat(0));
      it->second -= factor * c;
      if (it->second.is_zero()) target.erase(it);
    }
  }

  Compare cmp_;
  std::vector<Vec> rows_;
  std::map<Key, std::size_t, Compare> pivots_;
};

}  // namespace bcca
