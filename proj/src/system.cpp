#include "drsys/system.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace drs {

namespace {
constexpr std::size_t kCacheLimit = 1500;
}

std::string kind_name(SpaceKind k) {
  switch (k) {
    case SpaceKind::Euclidean: return "euclidean";
    case SpaceKind::Cantor: return "cantor";
    case SpaceKind::Sierpinski: return "sierpinski";
    case SpaceKind::Otw: return "otw";
    case SpaceKind::Table: return "table";
  }
  return "table";
}

SpaceKind kind_from_name(const std::string& s) {
  for (auto k : {SpaceKind::Euclidean, SpaceKind::Cantor, SpaceKind::Sierpinski, SpaceKind::Otw,
                 SpaceKind::Table})
    if (kind_name(k) == s) return k;
  throw SystemError("unknown space kind '" + s + "'");
}

PartialSystem::PartialSystem(SystemSpec spec) : spec_(std::move(spec)) {
  if (!spec_.in_domain || !spec_.apply || !spec_.preimages)
    throw SystemError(spec_.space_id + ": in_domain, apply and preimages are required");
  points_ = spec_.sample;
  std::sort(points_.begin(), points_.end());
  points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
  if (points_.empty()) throw SystemError(spec_.space_id + ": empty sample");
  const std::size_t n = points_.size();
  for (std::size_t i = 0; i < n; ++i) index_.emplace(points_[i], i);

  if (!spec_.metric) {
    for (const auto& p : points_)
      if (p.is_symbolic()) throw SystemError(spec_.space_id + ": symbolic point needs a metric");
    dim_ = points_[0].coords().size();
    flat_.reserve(n * dim_);
    for (const auto& p : points_) {
      if (p.coords().size() != dim_) throw SystemError(spec_.space_id + ": mixed dimensions");
      flat_.insert(flat_.end(), p.coords().begin(), p.coords().end());
    }
  }

  next_.assign(n, npos);
  std::vector<std::size_t> indegree(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (!spec_.in_domain(points_[i])) continue;
    auto j = index_of(spec_.apply(points_[i]));
    if (!j) {
      if (!spec_.truncate_at_sample_edge)
        throw SystemError(spec_.space_id + ": sample not closed under the map at " +
                          points_[i].to_string());
      truncated_.push_back(i);
      continue;
    }
    next_[i] = *j;
    ++indegree[*j];
  }
  for (std::size_t c : indegree)
    if (c > 1) injective_ = false;

  pre_offsets_.assign(n + 1, 0);
  for (std::size_t x = 0; x < n; ++x) {
    std::vector<std::size_t> found;
    for (const auto& y : spec_.preimages(points_[x])) {
      auto j = index_of(y);
      if (!j) continue;
      if (next_[*j] != x)
        throw SystemError(spec_.space_id + ": listed preimage " + y.to_string() + " does not map to " +
                          points_[x].to_string());
      found.push_back(*j);
    }
    found = make_set(std::move(found));
    if (found.size() != indegree[x])
      throw SystemError(spec_.space_id + ": preimage enumeration misses points over " +
                        points_[x].to_string());
    pre_flat_.insert(pre_flat_.end(), found.begin(), found.end());
    pre_offsets_[x + 1] = pre_flat_.size();
  }

  if (spec_.metric && n <= kCacheLimit) {
    cache_.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        cache_[i * n + j] = cache_[j * n + i] = spec_.metric(points_[i], points_[j]);
  }
}

std::optional<std::size_t> PartialSystem::index_of(const Point& p) const {
  auto it = index_.find(p);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t PartialSystem::require_index(const Point& p) const {
  auto i = index_of(p);
  if (!i) throw SystemError(spec_.space_id + ": point " + p.to_string() + " is not in the sample");
  return *i;
}

std::span<const std::size_t> PartialSystem::preimages(std::size_t i) const {
  return {pre_flat_.data() + pre_offsets_[i], pre_offsets_[i + 1] - pre_offsets_[i]};
}

double PartialSystem::distance(std::size_t i, std::size_t j) const {
  if (i == j) return 0.0;
  if (!cache_.empty()) return cache_[i * points_.size() + j];
  if (spec_.metric) return spec_.metric(points_[i], points_[j]);
  if (dim_ == 1) return std::abs(flat_[i] - flat_[j]);
  double s = 0.0;
  for (std::size_t k = 0; k < dim_; ++k) {
    double d = flat_[i * dim_ + k] - flat_[j * dim_ + k];
    s += d * d;
  }
  return std::sqrt(s);
}

PointSet PartialSystem::all() const {
  PointSet s(points_.size());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = i;
  return s;
}

PointSet PartialSystem::domain() const {
  PointSet s;
  for (std::size_t i = 0; i < points_.size(); ++i)
    if (in_domain(i)) s.push_back(i);
  return s;
}

PartialSystem table_system(const std::string& id, const std::vector<double>& coords,
                           const std::vector<std::optional<std::size_t>>& map) {
  if (coords.size() != map.size()) throw SystemError(id + ": coordinate and map sizes differ");
  auto xs = std::make_shared<std::vector<double>>(coords);
  auto table = std::make_shared<std::vector<std::optional<std::size_t>>>(map);
  auto where = std::make_shared<std::map<double, std::size_t>>();
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (!where->emplace(coords[i], i).second) throw SystemError(id + ": repeated coordinate");
    if (map[i] && *map[i] >= coords.size()) {
      std::ostringstream os;
      os << id << ": map entry " << i << " points outside the table";
      throw SystemError(os.str());
    }
  }
  auto lookup = [where](const Point& p) { return where->at(p.coords()[0]); };

  SystemSpec spec;
  spec.space_id = id;
  spec.kind = SpaceKind::Table;
  spec.in_domain = [table, lookup](const Point& p) { return (*table)[lookup(p)].has_value(); };
  spec.apply = [table, xs, lookup](const Point& p) { return Point::real((*xs)[*(*table)[lookup(p)]]); };
  spec.preimages = [table, xs, lookup](const Point& p) {
    std::vector<Point> out;
    std::size_t target = lookup(p);
    for (std::size_t i = 0; i < table->size(); ++i)
      if ((*table)[i] == target) out.push_back(Point::real((*xs)[i]));
    return out;
  };
  for (double x : coords) spec.sample.push_back(Point::real(x));
  spec.dom_clopen = true;
  spec.compact_space = true;
  return PartialSystem(std::move(spec));
}

MetricCheck check_metric_axioms(const PartialSystem& sys, double tol) {
  const std::size_t n = sys.size();
  auto fail = [&](const std::string& what, std::size_t i, std::size_t j) {
    return MetricCheck{false, what + " at " + sys.point(i).to_string() + ", " + sys.point(j).to_string()};
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double d = sys.distance(i, j);
      if (d < 0) return fail("negative distance", i, j);
      if ((d == 0) != (i == j)) return fail("zero distance off the diagonal", i, j);
      if (std::abs(d - sys.distance(j, i)) > tol) return fail("asymmetry", i, j);
      for (std::size_t k = 0; k < n; ++k)
        if (d > sys.distance(i, k) + sys.distance(k, j) + tol) return fail("triangle inequality", i, j);
    }
  return {};
}

}  // namespace drs
