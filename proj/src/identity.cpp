#include "bcca/identity.hpp"

#include <algorithm>
#include <random>

namespace bcca {

namespace {

Rat draw_rat(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num_dist(-50, 50);
  std::uniform_int_distribution<long> den_dist(1, 8);
  return Rat(num_dist(rng), den_dist(rng));
}

Rat draw_distinct(std::mt19937_64& rng, const std::vector<Rat>& taken) {
  for (int attempt = 0; attempt < 10000; ++attempt) {
    Rat v = draw_rat(rng);
    if (std::find(taken.begin(), taken.end(), v) == taken.end()) return v;
  }
  throw InternalError("could not draw a fresh sample point");
}

}  // namespace

bool identity_test(const ParamExpr& lhs, const ParamExpr& rhs,
                   const std::vector<ParamBound>& bounds, std::uint64_t seed,
                   const std::vector<Exclusion>& exclusions,
                   std::optional<IdentityWitness>* witness_out) {
  for (const auto& b : bounds) {
    if (b.degree_bound <= 0) {
      throw DomainError("degree bound for '" + b.name + "' must be positive");
    }
  }

  std::mt19937_64 rng(seed);
  std::vector<std::vector<Rat>> axes(bounds.size());
  for (std::size_t i = 0; i < bounds.size(); ++i) {
    for (long j = 0; j <= bounds[i].degree_bound; ++j) {
      axes[i].push_back(draw_distinct(rng, axes[i]));
    }
  }

  // Grid tuples are enumerated in odometer order; a tuple hit by an
  // exclusion forces a redraw of one of its axis values (round-robin over
  // axes) and a rescan, so the final grid avoids every excluded point.
  const auto excluded = [&](const ParamValues& point) {
    return std::any_of(exclusions.begin(), exclusions.end(),
                       [&](const Exclusion& e) { return e(point); });
  };

  std::size_t redraw_axis = 0;
  for (int attempt = 0;; ++attempt) {
    if (attempt > 1000) {
      throw DomainError("exclusions rejected every sampled grid");
    }
    bool clean = true;
    std::vector<std::size_t> idx(bounds.size(), 0);
    while (true) {
      ParamValues point;
      for (std::size_t i = 0; i < bounds.size(); ++i) {
        point[bounds[i].name] = axes[i][idx[i]];
      }
      if (excluded(point)) {
        if (bounds.empty()) throw DomainError("exclusions reject the empty tuple");
        auto& axis = axes[redraw_axis];
        axis[idx[redraw_axis] % axis.size()] = draw_distinct(rng, axis);
        redraw_axis = (redraw_axis + 1) % bounds.size();
        clean = false;
        break;
      }
      std::size_t k = 0;
      for (; k < idx.size(); ++k) {
        if (++idx[k] <= static_cast<std::size_t>(bounds[k].degree_bound)) break;
        idx[k] = 0;
      }
      if (k == idx.size()) break;
    }
    if (clean) break;
  }

  std::vector<std::size_t> idx(bounds.size(), 0);
  while (true) {
    ParamValues point;
    for (std::size_t i = 0; i < bounds.size(); ++i) {
      point[bounds[i].name] = axes[i][idx[i]];
    }
    const LaurentPoly lv = lhs(point);
    const LaurentPoly rv = rhs(point);
    if (lv != rv) {
      if (witness_out) *witness_out = IdentityWitness{point, lv, rv};
      return false;
    }
    std::size_t k = 0;
    for (; k < idx.size(); ++k) {
      if (++idx[k] <= static_cast<std::size_t>(bounds[k].degree_bound)) break;
      idx[k] = 0;
    }
    if (k == idx.size()) break;
  }
  return true;
}

}  // namespace bcca
