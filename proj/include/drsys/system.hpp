#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "drsys/point.hpp"

namespace drs {

namespace otw {
struct OtwSubshift;
}

class SystemError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class SpaceKind { Euclidean, Cantor, Sierpinski, Otw, Table };

std::string kind_name(SpaceKind k);
SpaceKind kind_from_name(const std::string& s);

using MetricFn = std::function<double(const Point&, const Point&)>;

struct SystemSpec {
  std::string space_id;
  SpaceKind kind = SpaceKind::Table;
  MetricFn metric;  // empty: Euclidean distance on coordinates
  std::function<bool(const Point&)> in_domain;
  std::function<Point(const Point&)> apply;
  std::function<std::vector<Point>(const Point&)> preimages;
  std::vector<Point> sample;
  bool dom_clopen = false;
  bool compact_space = false;
  double resolution = 0.0;  // grid step used for closure in the sample
  // Points whose image leaves the sample are dropped from the domain instead
  // of rejected; they are listed by PartialSystem::truncated().
  bool truncate_at_sample_edge = false;
  std::shared_ptr<const otw::OtwSubshift> subshift;
};

// A partially defined map on a finite canonical sample, validated on
// construction: the sample is closed under apply and preimages invert it.
class PartialSystem {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  explicit PartialSystem(SystemSpec spec);

  std::size_t size() const { return points_.size(); }
  const Point& point(std::size_t i) const { return points_[i]; }
  std::optional<std::size_t> index_of(const Point& p) const;
  std::size_t require_index(const Point& p) const;

  bool in_domain(std::size_t i) const { return next_[i] != npos; }
  std::size_t next(std::size_t i) const { return next_[i]; }
  std::span<const std::size_t> preimages(std::size_t i) const;

  double distance(std::size_t i, std::size_t j) const;
  bool injective() const { return injective_; }

  PointSet all() const;
  PointSet domain() const;
  const PointSet& truncated() const { return truncated_; }

  const std::string& space_id() const { return spec_.space_id; }
  SpaceKind kind() const { return spec_.kind; }
  bool dom_clopen() const { return spec_.dom_clopen; }
  bool compact_space() const { return spec_.compact_space; }
  double resolution() const { return spec_.resolution; }
  bool euclidean() const { return !spec_.metric; }
  const SystemSpec& spec() const { return spec_; }
  const std::shared_ptr<const otw::OtwSubshift>& subshift() const { return spec_.subshift; }

 private:
  SystemSpec spec_;
  std::vector<Point> points_;
  std::map<Point, std::size_t> index_;
  std::vector<std::size_t> next_;
  std::vector<std::size_t> pre_offsets_;
  std::vector<std::size_t> pre_flat_;
  PointSet truncated_;
  bool injective_ = true;
  std::size_t dim_ = 0;
  std::vector<double> flat_;
  std::vector<double> cache_;
};

// Brute-force system on explicit points: `coords[i]` is a real coordinate,
// `map[i]` the image index or nullopt outside the domain.
PartialSystem table_system(const std::string& id, const std::vector<double>& coords,
                           const std::vector<std::optional<std::size_t>>& map);

struct MetricCheck {
  bool ok = true;
  std::string violation;
};

// Exhaustive axiom check over all pairs and triples of the sample.
MetricCheck check_metric_axioms(const PartialSystem& sys, double tol = 1e-12);

}  // namespace drs
