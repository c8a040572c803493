#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "drsys/point.hpp"
#include "drsys/system.hpp"

namespace drs {

// z ∈ sigma^n(U) ∩ sigma^{-k}(sigma^k(U)) with the center in U.
struct Witness {
  PointSet U;
  std::size_t n = 1;
  int k = 0;
  std::size_t z = 0;
};

enum class Status { Nonwandering, Wandering, Unknown };

enum class Reason {
  None,
  SweepWitness,
  MergingOrbit,
  Rational,
  RationalDensity,
  Propagated,
  IsolatedIrrational,
  EmptyWord,
  InjectiveSeparation,
  FiniteExhaustion,
};

std::string status_name(Status s);
std::string reason_name(Reason r);

struct WanderingVerdict {
  std::size_t point = 0;
  Status status = Status::Unknown;
  Reason reason = Reason::None;
  std::optional<Witness> witness;       // nonwandering by witness or merging
  std::optional<std::size_t> via;       // propagated from this point
  PointSet neighbourhood;               // certified wandering neighbourhood
  std::size_t n_max = 0;
  std::size_t k_max = 0;
};

struct WanderingPolicy {
  std::vector<double> radii;  // empty: {4, 1/2} times the declared resolution
  std::size_t n_max = 12;
  std::size_t k_max = 12;
  std::size_t merge_horizon = 64;
};

// Open metric ball around sample point i.
PointSet ball(const PartialSystem& sys, std::size_t i, double r);

// Neighbourhood family of x, largest first: cylinders for subshifts, metric
// balls at the policy radii otherwise.
std::vector<PointSet> neighbourhoods(const PartialSystem& sys, std::size_t i, const WanderingPolicy& policy);

// Re-verifies a witness from scratch.
bool check_witness(const PartialSystem& sys, std::size_t center, const Witness& w);

std::optional<Witness> eventually_merging_rule(const PartialSystem& sys, std::size_t i, std::size_t horizon);

// Sweep over the neighbourhood family, then the wandering certifications.
WanderingVerdict test_wandering_witness(const PartialSystem& sys, std::size_t i, const WanderingPolicy& policy);

// Exact on the finite sample: sigma^n(U) ∩ sigma^{-k}(sigma^k(U)) = ∅ for all
// n >= 1 and all k.
bool wanders_exhaustively(const PartialSystem& sys, const PointSet& U);

// Injective systems only: sigma^n(U) ∩ U = ∅ for every n >= 1.
bool forward_disjoint(const PartialSystem& sys, const PointSet& U);

struct Partition {
  PointSet omega;
  PointSet wandering;
  PointSet unknown;
  std::vector<WanderingVerdict> verdicts;
};

Partition partition_omega(const PartialSystem& sys, const WanderingPolicy& policy = {});

struct OmegaReport {
  bool omega_invariant = false;
  bool wandering_invariant = false;
  bool wandering_closure_invariant = false;
  bool omega_in_domain_closure = false;
  std::vector<std::string> failures;
  bool ok() const {
    return omega_invariant && wandering_invariant && wandering_closure_invariant && omega_in_domain_closure;
  }
};

OmegaReport verify_omega_properties(const PartialSystem& sys, const PointSet& omega, const PointSet& wandering);

struct DynamicalBall {
  std::size_t center = 0;
  std::size_t n = 1;
  double eps = 0.0;
  PointSet U_members;
  PointSet B_members;
};

DynamicalBall dynamical_ball(const PartialSystem& sys, std::size_t i, std::size_t n, double eps);

}  // namespace drs
