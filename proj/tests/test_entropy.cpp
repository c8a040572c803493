#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <bit>
#include <cmath>
#include <set>

#include "drsys/core.hpp"
#include "drsys/entropy.hpp"
#include "drsys/gallery.hpp"
#include "drsys/graph_search.hpp"
#include "generators.hpp"

using namespace drs;

namespace {

// Exhaustive oracles over subsets of K ∩ F (at most ~12 points).
struct Brute {
  const PartialSystem& sys;
  PointSet pts;
  std::size_t n;

  double d(std::size_t a, std::size_t b) const { return dn_distance(sys, pts[a], pts[b], n); }

  std::size_t max_separated(double eps) const {
    std::size_t best = 0;
    const std::size_t m = pts.size();
    for (std::uint32_t s = 0; s < (1u << m); ++s) {
      bool ok = true;
      for (std::size_t a = 0; a < m && ok; ++a)
        for (std::size_t b = a + 1; b < m && ok; ++b)
          if ((s >> a & 1) && (s >> b & 1) && !(d(a, b) > eps)) ok = false;
      if (ok) best = std::max<std::size_t>(best, std::popcount(s));
    }
    return best;
  }

  std::size_t min_cover(double eps, bool strict) const {
    const std::size_t m = pts.size();
    std::size_t best = m;
    for (std::uint32_t s = 1; s < (1u << m); ++s) {
      if (static_cast<std::size_t>(std::popcount(s)) >= best) continue;
      bool ok = true;
      for (std::size_t x = 0; x < m && ok; ++x) {
        bool hit = false;
        for (std::size_t y = 0; y < m && !hit; ++y)
          if (s >> y & 1) hit = strict ? d(x, y) < eps : d(x, y) <= eps;
        ok = hit;
      }
      if (ok) best = std::popcount(s);
    }
    return m == 0 ? 0 : best;
  }
};

std::size_t distinct_blocks(const PartialSystem& sys, std::size_t len) {
  std::set<otw::Word> blocks;
  for (std::size_t i = 0; i < sys.size(); ++i) blocks.insert(sys.point(i).element().head(len));
  return blocks.size();
}

bool separated(const PartialSystem& sys, const PointSet& w, std::size_t n, double eps) {
  for (std::size_t a = 0; a < w.size(); ++a)
    for (std::size_t b = a + 1; b < w.size(); ++b)
      if (!(dn_distance(sys, w[a], w[b], n) > eps)) return false;
  return true;
}

bool covers(const PartialSystem& sys, const PointSet& w, const PointSet& pts, std::size_t n, double eps, bool strict) {
  for (auto x : pts) {
    bool hit = false;
    for (auto y : w) hit = hit || (strict ? dn_distance(sys, x, y, n) < eps : dn_distance(sys, x, y, n) <= eps);
    if (!hit) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("exact counts match exhaustive subset search") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> eps_dist(0.02, 0.7);
  for (int t = 0; t < 150; ++t) {
    auto sys = gen::table(rng, gen::size_between(rng, 1, 11));
    auto K = gen::random_subset(rng, sys.size(), 0.8);
    const std::size_t n = gen::size_between(rng, 1, 4);
    const double eps = eps_dist(rng);
    auto win = make_window(sys, K, n, eps);
    Brute brute{sys, intersect(K, win.F), n};
    auto sep = max_separated(win, sys, true);
    auto span = min_spanning(win, sys, true);
    auto gen_ = min_generating(win, sys, true);
    CHECK(sep.exact);
    CHECK(sep.size == brute.max_separated(eps));
    CHECK(span.size == brute.min_cover(eps, false));
    CHECK(gen_.size == brute.min_cover(eps, true));
    CHECK(separated(sys, sep.witness, n, eps));
    CHECK(covers(sys, span.witness, brute.pts, n, eps, false));
    CHECK(covers(sys, gen_.witness, brute.pts, n, eps, true));
    CHECK(is_subset(sep.witness, brute.pts));
    // greedy bounds point the right way
    auto gsep = max_separated(win, sys, false);
    auto gspan = min_spanning(win, sys, false);
    if (gsep.exact) CHECK(gsep.size == sep.size);
    CHECK(gsep.size <= sep.size);
    CHECK(gspan.size >= span.size);
    CHECK(separated(sys, gsep.witness, n, eps));
  }
}

TEST_CASE("full shifts: counts equal the number of word blocks") {
  for (auto [id, a] : {std::pair<const char*, double>{"otw-full-shift", 2.0}, {"otw-full-shift-3", 3.0}}) {
    auto g = build_gallery(id);
    const auto K = g.system.all();
    for (std::size_t n = 1; n <= 5; ++n) {
      INFO(id << " n=" << n);
      const auto blocks = distinct_blocks(g.system, n);
      CHECK(blocks == static_cast<std::size_t>(std::lround(std::pow(a, static_cast<double>(n)))));
      CHECK(ssep(g.system, K, n, 0.5) == blocks);
      CHECK(sspan(g.system, K, n, 0.5) == blocks);
      CHECK(sgen(g.system, K, n, 0.5) == distinct_blocks(g.system, n + 1));
    }
  }
}

TEST_CASE("trivial windows") {
  auto g = build_gallery("cantor-times-3", 4);
  auto win = make_window(g.system, {3}, 2, 0.1);
  auto r = max_separated(win, g.system, true);
  CHECK(r.size == 1);
  CHECK(r.witness == PointSet{3});
  CHECK(min_spanning(win, g.system, true).size == 1);
  CHECK(min_generating(win, g.system, true).size == 1);
  auto all = make_window(g.system, g.system.all(), 3, 10.0);
  CHECK(max_separated(all, g.system, true).size == 1);
  CHECK(min_spanning(all, g.system, true).size == 1);
}

TEST_CASE("window validation") {
  auto g = build_gallery("half-domain-interval", 4);
  SampleWindow bad{g.system.all(), 3, 0.1, g.system.all()};
  CHECK_THROWS_AS(validate_window(bad, g.system), SystemError);
  bad.F = full_domain(g.system, 3);
  bad.eps = 0.0;
  CHECK_THROWS_AS(validate_window(bad, g.system), SystemError);
}

TEST_CASE("exact search refuses large components") {
  auto g = build_gallery("doubling-line", 8);
  auto win = make_window(g.system, g.system.all(), 2, 0.5);
  CHECK_THROWS_AS(max_separated(win, g.system, true, 40), BudgetExceeded);
  CHECK_NOTHROW(max_separated(win, g.system, false));
}

TEST_CASE("separated counts are monotone in F and attained at the largest F") {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 60; ++t) {
    auto sys = gen::table(rng, gen::size_between(rng, 1, 8));
    const std::size_t n = gen::size_between(rng, 1, 3);
    const double eps = 0.05 + 0.1 * static_cast<double>(gen::size_between(rng, 0, 5));
    const auto K = sys.all();
    const auto Fstar = full_domain(sys, n);
    const auto top = ssep(sys, K, n, eps);
    for (std::uint32_t s = 0; s < (1u << Fstar.size()); ++s) {
      PointSet F;
      for (std::size_t i = 0; i < Fstar.size(); ++i)
        if (s >> i & 1) F.push_back(Fstar[i]);
      SampleWindow win{K, n, eps, F};
      CHECK(max_separated(win, sys, true).size <= top);
    }
  }
}

TEST_CASE("half-domain interval: ssep is bounded by the number of eps-cells") {
  auto g = build_gallery("half-domain-interval", 8);
  for (std::size_t m : {4u, 8u, 16u})
    for (std::size_t n = 1; n <= 6; ++n) {
      const double eps = 1.0 / static_cast<double>(m);
      auto win = make_window(g.system, g.system.all(), n, eps);
      CHECK(max_separated(win, g.system, false).size <= m);
    }
}

TEST_CASE("n = 1 counts use the base metric") {
  auto g = build_gallery("cantor-times-3", 3);
  // separated points of the 8-point Cantor level at eps = 1/10
  Brute brute{g.system, g.system.all(), 1};
  CHECK(ssep(g.system, g.system.all(), 1, 0.1) == brute.max_separated(0.1));
}

TEST_CASE("schedule refusals") {
  auto g = build_gallery("cantor-times-3", 4);
  CHECK_THROWS_AS(estimate_entropy(g.system, g.K, {}), SystemError);
  CHECK_THROWS_AS(estimate_entropy(g.system, g.K, make_schedule(1, 4, {0.1})), SystemError);
  CHECK_THROWS_AS(estimate_entropy(g.system, g.K, make_schedule(2, 3, {0.1})), SystemError);
  CHECK_THROWS_AS(estimate_entropy(g.system, g.K, make_schedule(2, 5, {0.0})), SystemError);
  CHECK_NOTHROW(estimate_entropy(g.system, g.K, make_schedule(2, 4, {0.1})));
}

TEST_CASE("doubling line: estimate near log 2 and zero on Omega") {
  auto g = build_gallery("doubling-line");
  auto rep = estimate_entropy(g.system, g.K, g.schedule);
  CHECK(std::abs(rep.h_estimate - std::log(2.0)) <= 0.15);
  auto zero = g.system.require_index(Point::real(0.0));
  auto fixed = restrict(g.system, {zero});
  CHECK(estimate_entropy(fixed, fixed.all(), g.schedule).h_estimate == 0.0);
  for (const auto& c : rep.cells) {
    CHECK(c.sspan_upper == c.ssep);
    CHECK(c.sspan_lower <= c.ssep);
  }
}

TEST_CASE("report invariants: sandwich columns are ordered") {
  auto g = build_gallery("binary-clopen-mix");
  auto rep = estimate_entropy(g.system, g.K, g.schedule);
  CHECK(rep.h_estimate <= 0.05);
  for (const auto& c : rep.cells) {
    CHECK(c.sspan_lower <= c.sspan_upper);
    CHECK(c.sgen_lower <= c.sgen_upper);
    CHECK(c.population >= c.ssep);
  }
}

TEST_CASE("sandwich verification on small systems") {
  auto g = build_gallery("otw-full-shift", 6);
  auto rep = verify_sandwiches(g.system, g.system.all(), {{3, 0.5}});
  REQUIRE(rep.rows.size() == 1);
  CHECK(rep.rows[0].sspan == 8);
  CHECK(rep.rows[0].ssep == 8);
  CHECK(rep.rows[0].sspan_half == 16);
  CHECK(rep.violations == 0);
  std::mt19937_64 rng(9);
  for (int t = 0; t < 20; ++t) {
    auto sys = gen::table(rng, 10);
    auto r = verify_sandwiches(sys, sys.all(), make_schedule(1, 4, {0.05, 0.2, 0.45}));
    CHECK(r.violations == 0);
    CHECK_FALSE(r.partial);
  }
  auto one = gen::table(rng, 1);
  auto r1 = verify_sandwiches(one, one.all(), {{2, 0.3}});
  CHECK(r1.rows[0].sspan == 1);
  CHECK(r1.rows[0].ssep == 1);
  CHECK(r1.rows[0].sspan_half == 1);
}

TEST_CASE("clopen suprema agree with closed suprema") {
  auto cantor = build_gallery("cantor-times-3", 3);
  CHECK(verify_clopen_supremum(cantor.system, cantor.system.all(), 2, 0.2).equal);
  auto orbit = build_gallery("otw-orbit-of-123", 14);
  CHECK(verify_clopen_supremum(orbit.system, orbit.system.all(), 3, 0.1).equal);
  std::mt19937_64 rng(6);
  auto table = gen::table(rng, 6);
  auto chk = verify_clopen_supremum(table, table.all(), 2, 0.2);
  CHECK(chk.equal);
  CHECK(chk.exhaustive);
  auto line = build_gallery("half-domain-interval", 4);
  CHECK_THROWS_AS(verify_clopen_supremum(line.system, line.system.all(), 2, 0.2), SystemError);
}

TEST_CASE("least-squares slope") {
  CHECK(fit_slope({1, 2, 3, 4}, {1, 3, 5, 7}) == doctest::Approx(2.0));
  CHECK(fit_slope({1, 2, 3}, {4, 4, 4}) == 0.0);
}

TEST_CASE("graph search matches brute force") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 200; ++t) {
    const std::size_t m = gen::size_between(rng, 1, 14);
    std::vector<graph::Mask> adj(m, 0);
    std::bernoulli_distribution edge(0.3);
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = a + 1; b < m; ++b)
        if (edge(rng)) {
          adj[a] |= graph::Mask{1} << b;
          adj[b] |= graph::Mask{1} << a;
        }
    std::size_t best_ind = 0, best_dom = m;
    for (graph::Mask s = 0; s < (graph::Mask{1} << m); ++s) {
      bool ind = true;
      graph::Mask covered = s;
      for (std::size_t v = 0; v < m; ++v)
        if (s >> v & 1) {
          ind = ind && (adj[v] & s) == 0;
          covered |= adj[v];
        }
      const auto c = static_cast<std::size_t>(std::popcount(s));
      if (ind) best_ind = std::max(best_ind, c);
      if (covered == (graph::Mask{1} << m) - 1) best_dom = std::min(best_dom, c);
    }
    CHECK(graph::max_independent_set(adj).size() == best_ind);
    CHECK(graph::min_dominating_set(adj).size() == best_dom);
  }
}
