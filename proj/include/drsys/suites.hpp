#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "drsys/gallery.hpp"
#include "drsys/report.hpp"

namespace drs {

// Random finite partial map: 1..max_points distinct coordinates, each point
// mapped to a uniform target or left outside the domain.
PartialSystem random_table(std::mt19937_64& rng, std::size_t max_points, double undefined_rate = 0.25);

// sspan <= ssep <= sspan(eps/2) and sspan <= sgen <= sspan(eps/2), exact counts.
std::vector<CheckRow> suite_sandwich(std::size_t systems, std::size_t draws, std::uint64_t seed);

// The four preimage-of-image items over every U and k in [-k_range, k_range].
std::vector<CheckRow> suite_preimage_identities(std::size_t maps, std::size_t max_points, int k_range, std::uint64_t seed);

// Omega, wandering set and its closure are (sigma, sigma^-1)-invariant, and
// Omega lies in the closure of the domain.
std::vector<CheckRow> suite_invariance(const GallerySystem& g);

struct DecompositionValues {
  double full = 0.0;
  double omega = 0.0;
  double wandering_closure = 0.0;
};

// h(full) = max(h(Omega), h(closure of wandering)); refuses on unknown verdicts.
std::vector<CheckRow> suite_max_decomposition(const GallerySystem& g, double tol,
                                              DecompositionValues* values = nullptr);

// h(full) = h(Omega) when the space is compact and the domain clopen; on
// other systems the row passes iff the equality visibly breaks.
std::vector<CheckRow> suite_concentration(const GallerySystem& g, double tol, DecompositionValues* values = nullptr);

// B(x,n,eps) = U(x,n,eps) for sampled x in Dom(sigma^{n-1}); B(w,n,eps) = {w}
// when the sample contains w.
std::vector<CheckRow> suite_balls(const GallerySystem& g, std::size_t points, std::uint64_t seed);

}  // namespace drs
