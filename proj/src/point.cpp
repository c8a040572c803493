#include "drsys/point.hpp"

#include <algorithm>
#include <iterator>
#include <sstream>

namespace drs {

std::string Point::to_string() const {
  if (is_symbolic()) return element().to_string();
  std::ostringstream os;
  os.precision(17);
  os << '(';
  const auto& c = coords();
  for (std::size_t i = 0; i < c.size(); ++i) os << (i ? ", " : "") << c[i];
  os << ')';
  return os.str();
}

bool operator<(const Point& a, const Point& b) {
  if (a.v_.index() != b.v_.index()) return a.v_.index() < b.v_.index();
  if (a.is_symbolic()) return a.element() < b.element();
  const auto& x = a.coords();
  const auto& y = b.coords();
  return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
}

PointSet make_set(std::vector<std::size_t> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  return members;
}

PointSet unite(const PointSet& a, const PointSet& b) {
  PointSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

PointSet intersect(const PointSet& a, const PointSet& b) {
  PointSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

PointSet subtract(const PointSet& a, const PointSet& b) {
  PointSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool is_subset(const PointSet& a, const PointSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

bool contains(const PointSet& s, std::size_t i) { return std::binary_search(s.begin(), s.end(), i); }

}  // namespace drs
