#include "drsys/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

#include "drsys/core.hpp"
#include "drsys/graph_search.hpp"

namespace drs {

namespace {

// Points of one window with their first n iterates laid out contiguously.
class Cell {
 public:
  Cell(const PartialSystem& sys, PointSet members, std::size_t n)
      : sys_(sys), n_(n), pts_(std::move(members)), window_(sys.euclidean()) {
    traj_.resize(pts_.size() * n_);
    for (std::size_t a = 0; a < pts_.size(); ++a) {
      std::size_t x = pts_[a];
      for (std::size_t k = 0; k < n_; ++k) {
        traj_[a * n_ + k] = x;
        if (k + 1 < n_) x = sys_.next(x);
      }
    }
    if (window_)
      for (std::size_t p : pts_) x0_.push_back(sys_.point(p).coords()[0]);
  }

  std::size_t size() const { return pts_.size(); }
  const PointSet& points() const { return pts_; }

  // d_n(a, b), exiting early once it exceeds cap.
  double dn(std::size_t a, std::size_t b, double cap) const {
    double d = 0.0;
    for (std::size_t k = 0; k < n_ && d <= cap; ++k)
      d = std::max(d, sys_.distance(traj_[a * n_ + k], traj_[b * n_ + k]));
    return d;
  }

  bool close(std::size_t a, std::size_t b, double eps, bool strict) const {
    double d = dn(a, b, eps);
    return strict ? d < eps : d <= eps;
  }

  std::vector<std::vector<std::size_t>> graph(double eps, bool strict) const {
    std::vector<std::vector<std::size_t>> adj(size());
    for (std::size_t a = 0; a < size(); ++a)
      for (std::size_t b = a + 1; b < size(); ++b) {
        if (window_ && x0_[b] - x0_[a] > eps) break;
        if (close(a, b, eps, strict)) {
          adj[a].push_back(b);
          adj[b].push_back(a);
        }
      }
    return adj;
  }

  std::vector<std::size_t> greedy_separated(double eps) const {
    std::vector<std::size_t> chosen;
    for (std::size_t a = 0; a < size(); ++a) {
      bool ok = true;
      for (auto it = chosen.rbegin(); it != chosen.rend(); ++it) {
        if (window_ && x0_[a] - x0_[*it] > eps) break;
        if (close(a, *it, eps, false)) {
          ok = false;
          break;
        }
      }
      if (ok) chosen.push_back(a);
    }
    return chosen;
  }

  PointSet to_sample(const std::vector<std::size_t>& local) const {
    std::vector<std::size_t> out;
    for (std::size_t a : local) out.push_back(pts_[a]);
    return make_set(std::move(out));
  }

 private:
  const PartialSystem& sys_;
  std::size_t n_;
  PointSet pts_;
  bool window_;
  std::vector<std::size_t> traj_;
  std::vector<double> x0_;
};

std::vector<std::vector<std::size_t>> components(const std::vector<std::vector<std::size_t>>& adj) {
  std::vector<std::size_t> comp(adj.size(), static_cast<std::size_t>(-1));
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t s = 0; s < adj.size(); ++s) {
    if (comp[s] != static_cast<std::size_t>(-1)) continue;
    out.emplace_back();
    std::vector<std::size_t> stack{s};
    comp[s] = out.size() - 1;
    while (!stack.empty()) {
      std::size_t v = stack.back();
      stack.pop_back();
      out.back().push_back(v);
      for (std::size_t w : adj[v])
        if (comp[w] == static_cast<std::size_t>(-1)) {
          comp[w] = out.size() - 1;
          stack.push_back(w);
        }
    }
    std::sort(out.back().begin(), out.back().end());
  }
  return out;
}

std::vector<graph::Mask> local_masks(const std::vector<std::vector<std::size_t>>& adj,
                                     const std::vector<std::size_t>& comp) {
  std::map<std::size_t, std::size_t> where;
  for (std::size_t i = 0; i < comp.size(); ++i) where[comp[i]] = i;
  std::vector<graph::Mask> masks(comp.size(), 0);
  for (std::size_t i = 0; i < comp.size(); ++i)
    for (std::size_t w : adj[comp[i]]) masks[i] |= graph::Mask{1} << where.at(w);
  return masks;
}

enum class Problem { Independent, Dominating };

// Solves the problem per component; cliques contribute a single vertex.
std::vector<std::size_t> solve_exact(const std::vector<std::vector<std::size_t>>& adj, Problem problem,
                                     std::size_t budget) {
  std::vector<std::size_t> chosen;
  for (const auto& comp : components(adj)) {
    bool clique = std::all_of(comp.begin(), comp.end(),
                              [&](std::size_t v) { return adj[v].size() + 1 == comp.size(); });
    if (clique) {
      chosen.push_back(comp.front());
      continue;
    }
    if (comp.size() > std::min(budget, graph::kMaxExact)) {
      std::ostringstream os;
      os << "exact search refused: component of " << comp.size() << " points exceeds budget " << budget;
      throw BudgetExceeded(os.str());
    }
    auto masks = local_masks(adj, comp);
    auto local = problem == Problem::Independent ? graph::max_independent_set(masks)
                                                 : graph::min_dominating_set(masks);
    for (std::size_t i : local) chosen.push_back(comp[i]);
  }
  return chosen;
}

PointSet window_members(const SampleWindow& win) { return intersect(win.K, win.F); }

CountResult covering(const SampleWindow& win, const PartialSystem& sys, bool exact, std::size_t budget,
                     bool strict) {
  validate_window(win, sys);
  Cell cell(sys, window_members(win), win.n);
  if (cell.size() == 0) return {0, {}, true};
  auto adj = cell.graph(win.eps, strict);
  auto chosen = exact ? solve_exact(adj, Problem::Dominating, budget) : graph::greedy_dominating_set(adj);
  auto w = cell.to_sample(chosen);
  return {w.size(), w, exact};
}

// Exact optimum on the subgraph induced by `verts`.
std::size_t solve_induced(const std::vector<std::vector<std::size_t>>& adj, const std::vector<std::size_t>& verts,
                          Problem problem, std::size_t budget) {
  std::map<std::size_t, std::size_t> where;
  for (std::size_t i = 0; i < verts.size(); ++i) where[verts[i]] = i;
  std::vector<std::vector<std::size_t>> sub(verts.size());
  for (std::size_t i = 0; i < verts.size(); ++i)
    for (std::size_t w : adj[verts[i]])
      if (auto it = where.find(w); it != where.end()) sub[i].push_back(it->second);
  return solve_exact(sub, problem, budget).size();
}

// Max over F* minus up to `depth` points. Only the components touched by a
// removal are solved again.
std::size_t sup_covering(const PartialSystem& sys, const PointSet& K, std::size_t n, double eps,
                         const SupOptions& opt, bool strict) {
  auto win = make_window(sys, K, n, eps);
  Cell cell(sys, window_members(win), n);
  if (cell.size() == 0) return 0;
  const auto adj = cell.graph(eps, strict);
  const auto comps = components(adj);
  std::vector<std::size_t> comp_of(cell.size()), value(comps.size());
  std::vector<bool> clique(comps.size());
  std::size_t total = 0;
  for (std::size_t c = 0; c < comps.size(); ++c) {
    for (std::size_t v : comps[c]) comp_of[v] = c;
    clique[c] = std::all_of(comps[c].begin(), comps[c].end(),
                            [&](std::size_t v) { return adj[v].size() + 1 == comps[c].size(); });
    value[c] = solve_induced(adj, comps[c], Problem::Dominating, opt.budget);
    total += value[c];
  }
  std::size_t best = total;
  std::vector<std::size_t> removed;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    if (!removed.empty()) {
      std::map<std::size_t, std::vector<std::size_t>> touched;
      for (std::size_t v : removed) touched[comp_of[v]];
      std::size_t t = total;
      for (auto& [c, rest] : touched) {
        if (clique[c]) {
          const auto gone = static_cast<std::size_t>(
              std::count_if(removed.begin(), removed.end(), [&](std::size_t v) { return comp_of[v] == c; }));
          t = t - value[c] + (gone < comps[c].size() ? 1 : 0);
          continue;
        }
        for (std::size_t v : comps[c])
          if (std::find(removed.begin(), removed.end(), v) == removed.end()) rest.push_back(v);
        t = t - value[c] + (rest.empty() ? 0 : solve_induced(adj, rest, Problem::Dominating, opt.budget));
      }
      best = std::max(best, t);
    }
    if (removed.size() == opt.removal_budget) return;
    for (std::size_t v = from; v < cell.size(); ++v) {
      removed.push_back(v);
      rec(v + 1);
      removed.pop_back();
    }
  };
  rec(0);
  return best;
}

}  // namespace

SampleWindow make_window(const PartialSystem& sys, const PointSet& K, std::size_t n, double eps) {
  SampleWindow win{K, n, eps, full_domain(sys, n)};
  validate_window(win, sys);
  return win;
}

void validate_window(const SampleWindow& win, const PartialSystem& sys) {
  if (win.n < 1) throw SystemError("window horizon must be at least 1");
  if (!(win.eps > 0)) throw SystemError("window radius must be positive");
  for (std::size_t i : win.K)
    if (i >= sys.size()) throw SystemError("K is not a subset of the sample");
  for (std::size_t i : win.F)
    if (i >= sys.size() || defined_steps(sys, i, win.n) != win.n)
      throw SystemError("F is not contained in the domain of sigma^(n-1)");
}

CountResult max_separated(const SampleWindow& win, const PartialSystem& sys, bool exact, std::size_t budget) {
  validate_window(win, sys);
  Cell cell(sys, window_members(win), win.n);
  if (cell.size() == 0) return {0, {}, true};
  std::vector<std::size_t> chosen =
      exact ? solve_exact(cell.graph(win.eps, false), Problem::Independent, budget) : cell.greedy_separated(win.eps);
  auto w = cell.to_sample(chosen);
  return {w.size(), w, exact};
}

CountResult min_spanning(const SampleWindow& win, const PartialSystem& sys, bool exact, std::size_t budget) {
  return covering(win, sys, exact, budget, false);
}

CountResult min_generating(const SampleWindow& win, const PartialSystem& sys, bool exact, std::size_t budget) {
  return covering(win, sys, exact, budget, true);
}

std::size_t ssep(const PartialSystem& sys, const PointSet& K, std::size_t n, double eps, const SupOptions& opt) {
  return max_separated(make_window(sys, K, n, eps), sys, true, opt.budget).size;
}

std::size_t sspan(const PartialSystem& sys, const PointSet& K, std::size_t n, double eps, const SupOptions& opt) {
  return sup_covering(sys, K, n, eps, opt, false);
}

std::size_t sgen(const PartialSystem& sys, const PointSet& K, std::size_t n, double eps, const SupOptions& opt) {
  return sup_covering(sys, K, n, eps, opt, true);
}

Schedule make_schedule(std::size_t n_min, std::size_t n_max, const std::vector<double>& eps) {
  Schedule s;
  for (double e : eps)
    for (std::size_t n = n_min; n <= n_max; ++n) s.emplace_back(n, e);
  return s;
}

const CellCounts* EntropyReport::cell(std::size_t n, double eps) const {
  for (const auto& c : cells)
    if (c.n == n && c.eps == eps) return &c;
  return nullptr;
}

double fit_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  const double m = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / m;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / m;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return sxx == 0.0 ? 0.0 : sxy / sxx;
}

EntropyReport estimate_entropy(const PartialSystem& sys, const PointSet& K, const Schedule& schedule,
                               const EstimateOptions& opt) {
  if (schedule.empty()) throw SystemError("empty schedule");
  std::map<double, std::vector<std::size_t>> by_eps;
  for (auto [n, eps] : schedule) {
    if (n < 2) throw SystemError("schedule horizons must be at least 2");
    if (!(eps > 0)) throw SystemError("schedule radii must be positive");
    auto& ns = by_eps[eps];
    if (!ns.empty() && n <= ns.back()) throw SystemError("schedule horizons must increase per radius");
    ns.push_back(n);
  }
  for (const auto& [eps, ns] : by_eps)
    if (ns.size() < 3) throw SystemError("schedule too short for a fit: fewer than 3 horizons per radius");

  EntropyReport rep;
  rep.schedule = schedule;
  std::map<std::size_t, PointSet> members;
  std::map<std::pair<std::size_t, double>, CountResult> memo;
  auto count = [&](std::size_t n, double eps) -> const CountResult& {
    auto key = std::make_pair(n, eps);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    if (!members.count(n)) members[n] = intersect(K, full_domain(sys, n));
    SampleWindow win{K, n, eps, members[n]};
    CountResult r;
    if (opt.require_exact) {
      r = max_separated(win, sys, true, opt.budget);
    } else if (members[n].size() <= opt.exact_population_limit) {
      try {
        r = max_separated(win, sys, true, opt.budget);
      } catch (const BudgetExceeded&) {
        r = max_separated(win, sys, false);
      }
    } else {
      r = max_separated(win, sys, false);
    }
    return memo.emplace(key, std::move(r)).first->second;
  };

  bool any_greedy = false;
  for (auto& [eps, ns] : by_eps) {
    FitResult fit;
    fit.eps = eps;
    std::vector<CellCounts> row;
    for (std::size_t n : ns) {
      CellCounts c;
      c.n = n;
      c.eps = eps;
      const auto& mid = count(n, eps);
      c.population = members[n].size();
      c.ssep = mid.size;
      c.exact = mid.exact && count(n, eps / 2).exact && count(n, 2 * eps).exact;
      c.sspan_upper = mid.size;
      c.sgen_upper = count(n, eps / 2).size;
      c.sspan_lower = c.sgen_lower = count(n, 2 * eps).size;
      if (!row.empty() && row.back().n + 1 == n)
        c.saturated = c.ssep == row.back().ssep && 2 * row.back().ssep <= c.population;
      any_greedy = any_greedy || !c.exact;
      row.push_back(c);
    }
    std::vector<double> xs, ys;
    for (const auto& c : row)
      if (!c.saturated) {
        xs.push_back(static_cast<double>(c.n));
        ys.push_back(std::log(static_cast<double>(std::max<std::size_t>(c.ssep, 1))));
        fit.n_used.push_back(c.n);
      }
    if (xs.size() < 3) {
      fit.saturation_ignored = true;
      xs.clear();
      ys.clear();
      fit.n_used.clear();
      for (const auto& c : row) {
        xs.push_back(static_cast<double>(c.n));
        ys.push_back(std::log(static_cast<double>(std::max<std::size_t>(c.ssep, 1))));
        fit.n_used.push_back(c.n);
      }
    }
    fit.slope = fit_slope(xs, ys);
    fit.h = std::max(0.0, fit.slope);
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / static_cast<double>(ys.size());
    for (std::size_t i = 0; i < xs.size(); ++i) fit.residuals.push_back(ys[i] - (my + fit.slope * (xs[i] - mx)));
    rep.fits.push_back(fit);
    rep.cells.insert(rep.cells.end(), row.begin(), row.end());
  }
  rep.h_estimate = rep.fits.front().h;  // map is ordered, front is the smallest radius
  rep.method_notes.push_back(any_greedy ? "some counts are greedy lower bounds (maximal separated sets)"
                                        : "all counts exact");
  rep.method_notes.push_back("span and gen columns are the bounds implied by the sandwich inequalities");
  rep.method_notes.push_back("h_estimate is the clamped slope at the smallest radius; no extrapolation in eps");
  return rep;
}

SandwichReport verify_sandwiches(const PartialSystem& sys, const PointSet& K, const Schedule& schedule,
                                 const SupOptions& opt) {
  SandwichReport rep;
  for (auto [n, eps] : schedule) {
    SandwichRow r{n, eps};
    r.sspan = sspan(sys, K, n, eps, opt);
    r.sspan_half = sspan(sys, K, n, eps / 2, opt);
    r.sgen = sgen(sys, K, n, eps, opt);
    try {
      r.ssep = ssep(sys, K, n, eps, opt);
    } catch (const BudgetExceeded&) {
      r.ssep = max_separated(make_window(sys, K, n, eps), sys, false).size;
      rep.partial = true;
    }
    r.span_ok = r.sspan <= r.ssep && r.ssep <= r.sspan_half;
    r.gen_ok = r.sspan <= r.sgen && r.sgen <= r.sspan_half;
    if (!r.span_ok || !r.gen_ok) ++rep.violations;
    rep.rows.push_back(r);
  }
  return rep;
}

namespace {

struct Triple {
  std::size_t sep = 0, span = 0, gen = 0;
};

Triple sup_over(const PartialSystem& sys, const PointSet& K, std::size_t n, double eps,
                const std::vector<PointSet>& family, std::size_t budget) {
  Triple t;
  for (const auto& F : family) {
    SampleWindow w{K, n, eps, F};
    t.sep = std::max(t.sep, max_separated(w, sys, true, budget).size);
    t.span = std::max(t.span, min_spanning(w, sys, true, budget).size);
    t.gen = std::max(t.gen, min_generating(w, sys, true, budget).size);
  }
  return t;
}

// All unions of the given blocks when there are at most 12 of them, else the
// full union and the unions missing one block.
std::vector<PointSet> unions_of(const std::vector<PointSet>& blocks, bool& exhaustive) {
  std::vector<PointSet> out;
  exhaustive = blocks.size() <= 12;
  if (exhaustive) {
    for (std::size_t mask = 0; mask < (std::size_t{1} << blocks.size()); ++mask) {
      PointSet s;
      for (std::size_t b = 0; b < blocks.size(); ++b)
        if (mask >> b & 1) s = unite(s, blocks[b]);
      out.push_back(s);
    }
    return out;
  }
  PointSet all;
  for (const auto& b : blocks) all = unite(all, b);
  out.push_back(all);
  for (const auto& b : blocks) out.push_back(subtract(all, b));
  return out;
}

}  // namespace

ClopenCheck verify_clopen_supremum(const PartialSystem& sys, const PointSet& K, std::size_t n, double eps,
                                   std::size_t budget) {
  if (sys.kind() == SpaceKind::Euclidean)
    throw SystemError(sys.space_id() + ": euclidean spaces have no clopen basis");
  PointSet base = intersect(K, full_domain(sys, n));

  std::vector<PointSet> singletons;
  for (std::size_t p : base) singletons.push_back({p});
  ClopenCheck c;
  bool closed_exhaustive = false;
  auto closed = sup_over(sys, K, n, eps, unions_of(singletons, closed_exhaustive), budget);

  // cells: classes of points closer than the declared resolution
  std::vector<std::vector<std::size_t>> adj(base.size());
  for (std::size_t a = 0; a < base.size(); ++a)
    for (std::size_t b = a + 1; b < base.size(); ++b)
      if (sys.distance(base[a], base[b]) < sys.resolution()) {
        adj[a].push_back(b);
        adj[b].push_back(a);
      }
  std::vector<PointSet> cells;
  for (const auto& comp : components(adj)) {
    std::vector<std::size_t> m;
    for (std::size_t a : comp) m.push_back(base[a]);
    cells.push_back(make_set(std::move(m)));
  }
  bool clopen_exhaustive = false;
  auto clopen = sup_over(sys, K, n, eps, unions_of(cells, clopen_exhaustive), budget);

  c.ssep_closed = closed.sep;
  c.sspan_closed = closed.span;
  c.sgen_closed = closed.gen;
  c.ssep_clopen = clopen.sep;
  c.sspan_clopen = clopen.span;
  c.sgen_clopen = clopen.gen;
  c.exhaustive = closed_exhaustive && clopen_exhaustive;
  c.equal = closed.sep == clopen.sep && closed.span == clopen.span && closed.gen == clopen.gen;
  return c;
}

}  // namespace drs
