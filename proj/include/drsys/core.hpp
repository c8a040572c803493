#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "drsys/point.hpp"
#include "drsys/system.hpp"

namespace drs {

// sigma^k applied to sample point i; absent when some step leaves the domain.
// The Point overloads also accept points outside the sample.
std::optional<std::size_t> iterate(const PartialSystem& sys, std::size_t i, std::size_t k);
std::optional<Point> iterate(const PartialSystem& sys, const Point& x, std::size_t k);

// I_n(x) = {0, ..., t-1}; returned explicitly, always contains 0.
std::vector<std::size_t> iteration_domain(const PartialSystem& sys, std::size_t i, std::size_t n);

// Number of defined iterates among 0..n-1, i.e. |I_n(x)|.
std::size_t defined_steps(const PartialSystem& sys, std::size_t i, std::size_t n);

double dn_distance(const PartialSystem& sys, std::size_t i, std::size_t j, std::size_t n);
double dn_distance(const PartialSystem& sys, const Point& x, const Point& y, std::size_t n);

PointSet image_set(const PartialSystem& sys, const PointSet& U, std::size_t n);
PointSet preimage_set(const PartialSystem& sys, const PointSet& U);

// sigma^{-k}(sigma^k(U)) for any integer k.
PointSet preimage_of_image(const PartialSystem& sys, const PointSet& U, int k);

struct Invariance {
  bool sigma_invariant = true;
  bool sigma_inv_invariant = true;
  std::optional<std::size_t> forward_offender;   // y in Y with sigma(y) outside Y
  std::optional<std::size_t> backward_offender;  // z outside Y with sigma(z) in Y
  bool both() const { return sigma_invariant && sigma_inv_invariant; }
};

Invariance check_invariance(const PartialSystem& sys, const PointSet& Y);

// The system restricted to a (sigma, sigma^-1)-invariant Y; throws SystemError
// naming the offending point otherwise.
PartialSystem restrict(const PartialSystem& sys, const PointSet& Y);

// Points of the sample within `radius` of S (radius defaults to the declared
// resolution).
PointSet closure_in_sample(const PartialSystem& sys, const PointSet& S, std::optional<double> radius = {});

// Points whose orbit stays defined for n-1 steps: sample ∩ Dom(sigma^{n-1}).
PointSet full_domain(const PartialSystem& sys, std::size_t n);

}  // namespace drs
