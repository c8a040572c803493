#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <variant>
#include <vector>

#include "drsys/otw_element.hpp"

namespace drs {

struct Euclidean {
  std::vector<double> coords;
  bool operator==(const Euclidean&) const = default;
};

// A point of the ambient space: coordinates or a symbolic sequence.
class Point {
 public:
  Point() = default;
  Point(Euclidean e) : v_(std::move(e)) {}
  Point(otw::OtwElement e) : v_(std::move(e)) {}

  static Point real(double x) { return Euclidean{{x}}; }
  static Point plane(double x, double y) { return Euclidean{{x, y}}; }
  static Point coords(std::vector<double> c) { return Euclidean{std::move(c)}; }

  bool is_symbolic() const { return std::holds_alternative<otw::OtwElement>(v_); }
  const std::vector<double>& coords() const { return std::get<Euclidean>(v_).coords; }
  const otw::OtwElement& element() const { return std::get<otw::OtwElement>(v_); }

  std::string to_string() const;

  friend bool operator==(const Point& a, const Point& b) { return a.v_ == b.v_; }
  friend bool operator<(const Point& a, const Point& b);

 private:
  std::variant<Euclidean, otw::OtwElement> v_{Euclidean{}};
};

// Sorted, duplicate-free list of sample indices.
using PointSet = std::vector<std::size_t>;

PointSet make_set(std::vector<std::size_t> members);
PointSet unite(const PointSet& a, const PointSet& b);
PointSet intersect(const PointSet& a, const PointSet& b);
PointSet subtract(const PointSet& a, const PointSet& b);
bool is_subset(const PointSet& a, const PointSet& b);
bool contains(const PointSet& s, std::size_t i);

}  // namespace drs
