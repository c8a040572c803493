#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "drsys/point.hpp"
#include "drsys/system.hpp"

namespace drs {

class BudgetExceeded : public SystemError {
 public:
  using SystemError::SystemError;
};

struct SampleWindow {
  PointSet K;
  std::size_t n = 1;
  double eps = 1.0;
  PointSet F;  // subset of sample ∩ Dom(sigma^{n-1})
};

// Window with the maximal closed set F* = sample ∩ Dom(sigma^{n-1}).
SampleWindow make_window(const PartialSystem& sys, const PointSet& K, std::size_t n, double eps);
void validate_window(const SampleWindow& win, const PartialSystem& sys);

struct CountResult {
  std::size_t size = 0;
  PointSet witness;
  bool exact = false;
};

constexpr std::size_t kDefaultBudget = 40;

// Largest (n, eps)-separated subset of K ∩ F. Exact mode solves maximum
// independent set per component of the closeness graph and throws
// BudgetExceeded when a non-clique component has more than `budget` points.
CountResult max_separated(const SampleWindow& win, const PartialSystem& sys, bool exact,
                          std::size_t budget = kDefaultBudget);
CountResult min_spanning(const SampleWindow& win, const PartialSystem& sys, bool exact,
                         std::size_t budget = kDefaultBudget);
CountResult min_generating(const SampleWindow& win, const PartialSystem& sys, bool exact,
                           std::size_t budget = kDefaultBudget);

struct SupOptions {
  std::size_t budget = kDefaultBudget;
  std::size_t removal_budget = 1;  // span/gen: F* minus up to this many points
};

std::size_t ssep(const PartialSystem& sys, const PointSet& K, std::size_t n, double eps,
                 const SupOptions& opt = {});
std::size_t sspan(const PartialSystem& sys, const PointSet& K, std::size_t n, double eps,
                  const SupOptions& opt = {});
std::size_t sgen(const PartialSystem& sys, const PointSet& K, std::size_t n, double eps,
                 const SupOptions& opt = {});

using Schedule = std::vector<std::pair<std::size_t, double>>;

Schedule make_schedule(std::size_t n_min, std::size_t n_max, const std::vector<double>& eps);

struct CellCounts {
  std::size_t n = 0;
  double eps = 0.0;
  std::size_t population = 0;  // |K ∩ F*|
  std::size_t ssep = 0;
  std::size_t sspan_upper = 0;
  std::size_t sgen_upper = 0;
  std::size_t sspan_lower = 0;
  std::size_t sgen_lower = 0;
  bool exact = false;
  bool saturated = false;
};

struct FitResult {
  double eps = 0.0;
  double slope = 0.0;  // raw least-squares slope
  double h = 0.0;      // slope clamped at zero
  std::vector<std::size_t> n_used;
  std::vector<double> residuals;
  bool saturation_ignored = false;  // fewer than 3 unsaturated cells
};

struct EntropyReport {
  Schedule schedule;
  std::vector<CellCounts> cells;
  std::vector<FitResult> fits;
  double h_estimate = 0.0;
  std::vector<std::string> method_notes;

  const CellCounts* cell(std::size_t n, double eps) const;
};

struct EstimateOptions {
  std::size_t budget = kDefaultBudget;
  std::size_t exact_population_limit = 2000;  // larger cells go straight to greedy
  bool require_exact = false;                 // BudgetExceeded instead of greedy fallback
};

EntropyReport estimate_entropy(const PartialSystem& sys, const PointSet& K, const Schedule& schedule,
                               const EstimateOptions& opt = {});

struct SandwichRow {
  std::size_t n = 0;
  double eps = 0.0;
  std::size_t sspan = 0;
  std::size_t ssep = 0;
  std::size_t sgen = 0;
  std::size_t sspan_half = 0;
  bool span_ok = false;
  bool gen_ok = false;
};

struct SandwichReport {
  std::vector<SandwichRow> rows;
  std::size_t violations = 0;
  bool partial = false;
};

SandwichReport verify_sandwiches(const PartialSystem& sys, const PointSet& K, const Schedule& schedule,
                                 const SupOptions& opt = {});

struct ClopenCheck {
  bool equal = false;
  std::size_t ssep_closed = 0, ssep_clopen = 0;
  std::size_t sspan_closed = 0, sspan_clopen = 0;
  std::size_t sgen_closed = 0, sgen_clopen = 0;
  bool exhaustive = false;
};

// Suprema over all closed F versus unions of resolution cells; throws
// SystemError for euclidean systems.
ClopenCheck verify_clopen_supremum(const PartialSystem& sys, const PointSet& K, std::size_t n, double eps,
                                   std::size_t budget = kDefaultBudget);

// Least-squares slope of ys against xs.
double fit_slope(const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace drs
