#include "drsys/core.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace drs {

std::optional<std::size_t> iterate(const PartialSystem& sys, std::size_t i, std::size_t k) {
  for (std::size_t s = 0; s < k; ++s) {
    if (!sys.in_domain(i)) return std::nullopt;
    i = sys.next(i);
  }
  return i;
}

std::optional<Point> iterate(const PartialSystem& sys, const Point& x, std::size_t k) {
  if (auto i = sys.index_of(x)) {
    auto j = iterate(sys, *i, k);
    if (!j) return std::nullopt;
    return sys.point(*j);
  }
  // off-sample points are evaluated through the map itself
  Point y = x;
  for (std::size_t s = 0; s < k; ++s) {
    if (!sys.spec().in_domain(y)) return std::nullopt;
    y = sys.spec().apply(y);
  }
  return y;
}

std::size_t defined_steps(const PartialSystem& sys, std::size_t i, std::size_t n) {
  std::size_t t = 1;
  while (t < n && sys.in_domain(i)) {
    i = sys.next(i);
    ++t;
  }
  return t;
}

std::vector<std::size_t> iteration_domain(const PartialSystem& sys, std::size_t i, std::size_t n) {
  std::vector<std::size_t> out(defined_steps(sys, i, n));
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = k;
  return out;
}

double dn_distance(const PartialSystem& sys, std::size_t i, std::size_t j, std::size_t n) {
  double d = sys.distance(i, j);
  for (std::size_t s = 1; s < n; ++s) {
    if (!sys.in_domain(i) || !sys.in_domain(j)) break;
    i = sys.next(i);
    j = sys.next(j);
    d = std::max(d, sys.distance(i, j));
  }
  return d;
}

double dn_distance(const PartialSystem& sys, const Point& x, const Point& y, std::size_t n) {
  auto i = sys.index_of(x), j = sys.index_of(y);
  if (i && j) return dn_distance(sys, *i, *j, n);
  auto metric = [&](const Point& a, const Point& b) {
    if (sys.spec().metric) return sys.spec().metric(a, b);
    double s = 0.0;
    for (std::size_t c = 0; c < a.coords().size(); ++c) s += (a.coords()[c] - b.coords()[c]) * (a.coords()[c] - b.coords()[c]);
    return std::sqrt(s);
  };
  double d = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    auto a = iterate(sys, x, k), b = iterate(sys, y, k);
    if (!a || !b) break;
    d = std::max(d, metric(*a, *b));
  }
  return d;
}

PointSet image_set(const PartialSystem& sys, const PointSet& U, std::size_t n) {
  std::vector<std::size_t> out;
  for (std::size_t i : U)
    if (auto j = iterate(sys, i, n)) out.push_back(*j);
  return make_set(std::move(out));
}

PointSet preimage_set(const PartialSystem& sys, const PointSet& U) {
  std::vector<std::size_t> out;
  for (std::size_t x : U)
    for (std::size_t y : sys.preimages(x)) out.push_back(y);
  return make_set(std::move(out));
}

PointSet preimage_of_image(const PartialSystem& sys, const PointSet& U, int k) {
  if (k <= 0) return intersect(U, image_set(sys, sys.all(), static_cast<std::size_t>(-k)));
  PointSet w = image_set(sys, U, static_cast<std::size_t>(k));
  for (int s = 0; s < k; ++s) w = preimage_set(sys, w);
  return w;
}

Invariance check_invariance(const PartialSystem& sys, const PointSet& Y) {
  Invariance r;
  for (std::size_t y : Y) {
    if (sys.in_domain(y) && !contains(Y, sys.next(y))) {
      r.sigma_invariant = false;
      r.forward_offender = y;
      break;
    }
  }
  for (std::size_t y : Y) {
    for (std::size_t z : sys.preimages(y))
      if (!contains(Y, z)) {
        r.sigma_inv_invariant = false;
        r.backward_offender = z;
        break;
      }
    if (!r.sigma_inv_invariant) break;
  }
  return r;
}

PartialSystem restrict(const PartialSystem& sys, const PointSet& Y) {
  auto inv = check_invariance(sys, Y);
  if (!inv.sigma_invariant)
    throw SystemError(sys.space_id() + ": restriction set is not forward invariant at " +
                      sys.point(*inv.forward_offender).to_string());
  if (!inv.sigma_inv_invariant)
    throw SystemError(sys.space_id() + ": restriction set is not backward invariant at " +
                      sys.point(*inv.backward_offender).to_string());
  if (Y.empty()) throw SystemError(sys.space_id() + ": restriction to the empty set");

  auto members = std::make_shared<std::set<Point>>();
  for (std::size_t y : Y) members->insert(sys.point(y));
  SystemSpec spec = sys.spec();
  spec.space_id = sys.space_id() + "|restricted";
  spec.sample.assign(members->begin(), members->end());
  auto base_dom = sys.spec().in_domain;
  auto base_pre = sys.spec().preimages;
  spec.in_domain = [members, base_dom](const Point& p) { return members->count(p) && base_dom(p); };
  spec.preimages = [members, base_pre](const Point& p) {
    std::vector<Point> out;
    for (auto& q : base_pre(p))
      if (members->count(q)) out.push_back(std::move(q));
    return out;
  };
  return PartialSystem(std::move(spec));
}

PointSet closure_in_sample(const PartialSystem& sys, const PointSet& S, std::optional<double> radius) {
  const double r = radius.value_or(sys.resolution());
  if (S.empty()) return {};
  PointSet out;
  if (sys.euclidean()) {
    // sample order is lexicographic, so S is sorted by first coordinate
    auto first = [&](std::size_t i) { return sys.point(i).coords()[0]; };
    for (std::size_t x = 0; x < sys.size(); ++x) {
      const double x0 = first(x);
      auto it = std::lower_bound(S.begin(), S.end(), x0 - r,
                                 [&](std::size_t s, double v) { return first(s) < v; });
      for (; it != S.end() && first(*it) <= x0 + r; ++it)
        if (sys.distance(x, *it) <= r) {
          out.push_back(x);
          break;
        }
    }
    return out;
  }
  for (std::size_t x = 0; x < sys.size(); ++x) {
    if (contains(S, x)) {
      out.push_back(x);
      continue;
    }
    for (std::size_t s : S)
      if (sys.distance(x, s) <= r) {
        out.push_back(x);
        break;
      }
  }
  return out;
}

PointSet full_domain(const PartialSystem& sys, std::size_t n) {
  PointSet out;
  for (std::size_t i = 0; i < sys.size(); ++i)
    if (defined_steps(sys, i, n) == n) out.push_back(i);
  return out;
}

}  // namespace drs
