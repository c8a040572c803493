#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <set>

#include "drsys/core.hpp"
#include "drsys/gallery.hpp"
#include "drsys/otw.hpp"
#include "generators.hpp"

using namespace drs;
using otw::OtwElement;

TEST_CASE("periodic elements are stored in canonical form") {
  CHECK(OtwElement::periodic({}, {0, 1, 0, 1}) == OtwElement::periodic({}, {0, 1}));
  CHECK(OtwElement::periodic({1}, {0, 1}) == OtwElement::periodic({}, {1, 0}));
  CHECK(OtwElement::periodic({2, 0, 1}, {0, 1}).to_string() == "2 (0 1)^inf");
  CHECK(otw::minimal_period({1, 2, 1, 2, 1, 2}) == 2);
  CHECK(otw::minimal_period({1, 2, 1}) == 3);
}

TEST_CASE("listed affine tails absorb matching prefixes") {
  auto r = otw::GeneratorRule::affine(3, 1);
  CHECK(OtwElement::listed({1, 2}, r) == OtwElement::listed({}, otw::GeneratorRule::affine(1, 1)));
  CHECK(OtwElement::listed({}, otw::GeneratorRule::affine(1, 1), 4) == OtwElement::listed({}, otw::GeneratorRule::affine(5, 1)));
  auto x = OtwElement::listed({}, otw::GeneratorRule::affine(1, 1));
  CHECK(x.shift()->prepend(1) == x);
}

TEST_CASE("shift and prepend are inverse on random elements") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 300; ++t) {
    otw::Word pre(gen::size_between(rng, 0, 4)), per(gen::size_between(rng, 1, 4));
    for (auto& a : pre) a = static_cast<otw::Symbol>(gen::size_between(rng, 0, 2));
    for (auto& a : per) a = static_cast<otw::Symbol>(gen::size_between(rng, 0, 2));
    auto x = OtwElement::periodic(pre, per);
    auto a = static_cast<otw::Symbol>(gen::size_between(rng, 0, 2));
    CHECK(*x.prepend(a).shift() == x);
    for (std::size_t i = 0; i < 12; ++i) CHECK(x.prepend(a).symbol_at(i + 1) == x.symbol_at(i));
  }
}

TEST_CASE("point sets agree with std::set operations") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 200; ++t) {
    auto a = gen::random_subset(rng, 20), b = gen::random_subset(rng, 20);
    std::set<std::size_t> sa(a.begin(), a.end()), sb(b.begin(), b.end()), su, si, sd;
    std::set_union(sa.begin(), sa.end(), sb.begin(), sb.end(), std::inserter(su, su.end()));
    std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(), std::inserter(si, si.end()));
    std::set_difference(sa.begin(), sa.end(), sb.begin(), sb.end(), std::inserter(sd, sd.end()));
    CHECK(unite(a, b) == PointSet(su.begin(), su.end()));
    CHECK(intersect(a, b) == PointSet(si.begin(), si.end()));
    CHECK(subtract(a, b) == PointSet(sd.begin(), sd.end()));
    CHECK(is_subset(intersect(a, b), a));
  }
}

TEST_CASE("constructor rejects samples not closed under the map") {
  SystemSpec s;
  s.space_id = "open";
  s.kind = SpaceKind::Euclidean;
  s.sample = {Point::real(0.0), Point::real(0.5)};
  s.in_domain = [](const Point&) { return true; };
  s.apply = [](const Point& p) { return Point::real(2 * p.coords()[0]); };
  s.preimages = [](const Point& p) { return std::vector<Point>{Point::real(p.coords()[0] / 2)}; };
  CHECK_THROWS_AS(PartialSystem{s}, SystemError);
  s.truncate_at_sample_edge = true;
  PartialSystem ok(s);
  CHECK(ok.truncated() == PointSet{1});
}

TEST_CASE("constructor rejects inconsistent preimages") {
  SystemSpec s;
  s.space_id = "bad-pre";
  s.sample = {Point::real(0.0), Point::real(1.0)};
  s.in_domain = [](const Point&) { return true; };
  s.apply = [](const Point&) { return Point::real(0.0); };
  s.preimages = [](const Point& p) {
    return p.coords()[0] == 0.0 ? std::vector<Point>{Point::real(0.0)} : std::vector<Point>{};
  };
  CHECK_THROWS_AS(PartialSystem{s}, SystemError);
}

TEST_CASE("iterate and iteration domain on the half-domain interval") {
  auto g = build_gallery("half-domain-interval", 8);
  const auto& sys = g.system;
  CHECK(iterate(sys, Point::real(0.3), 1) == Point::real(0.6));
  CHECK_FALSE(iterate(sys, Point::real(0.3), 2).has_value());
  CHECK(iterate(sys, Point::real(0.3), 0) == Point::real(0.3));
  auto x = sys.require_index(Point::real(0.3125));
  CHECK(iteration_domain(sys, x, 3) == std::vector<std::size_t>{0, 1});
  CHECK(iteration_domain(sys, x, 1) == std::vector<std::size_t>{0});
  // Dom(sigma^n) = [0, 2^-n)
  for (std::size_t n = 1; n <= 6; ++n)
    for (std::size_t i = 0; i < sys.size(); ++i)
      CHECK(iterate(sys, i, n).has_value() == (sys.point(i).coords()[0] < std::ldexp(1.0, -static_cast<int>(n))));
}

TEST_CASE("dn distance values") {
  auto line = build_gallery("doubling-line", 6);
  CHECK(dn_distance(line.system, Point::real(0.1), Point::real(0.2), 2) == doctest::Approx(0.2));
  auto half = build_gallery("half-domain-interval", 8);
  CHECK(dn_distance(half.system, Point::real(0.3), Point::real(0.4), 3) == doctest::Approx(0.2));
  CHECK(dn_distance(half.system, Point::real(0.3), Point::real(0.3), 3) == 0.0);
}

TEST_CASE("full shift: every iterate is defined") {
  auto g = build_gallery("otw-full-shift", 6);
  for (std::size_t i = 0; i < g.system.size(); ++i)
    CHECK(iteration_domain(g.system, i, 5) == std::vector<std::size_t>{0, 1, 2, 3, 4});
}

TEST_CASE("dn distance is a pseudometric within one iteration class") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 60; ++t) {
    auto sys = gen::table(rng, gen::size_between(rng, 2, 9));
    const std::size_t n = gen::size_between(rng, 1, 4);
    const std::size_t m = sys.size();
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b) {
        CHECK(dn_distance(sys, a, b, n) == dn_distance(sys, b, a, n));
        CHECK(dn_distance(sys, a, b, n) >= sys.distance(a, b));
        for (std::size_t c = 0; c < m; ++c) {
          const auto s = defined_steps(sys, a, n);
          if (defined_steps(sys, b, n) != s || defined_steps(sys, c, n) != s) continue;
          CHECK(dn_distance(sys, a, c, n) <= dn_distance(sys, a, b, n) + dn_distance(sys, b, c, n) + 1e-12);
        }
      }
  }
}

TEST_CASE("iterate respects composition") {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 100; ++t) {
    auto sys = gen::table(rng, gen::size_between(rng, 1, 10), 0.15);
    for (std::size_t x = 0; x < sys.size(); ++x)
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
          if (auto whole = iterate(sys, x, i + j)) CHECK(iterate(sys, *iterate(sys, x, i), j) == whole);
  }
}

TEST_CASE("image sets") {
  auto g = build_gallery("half-domain-interval", 8);
  const auto& sys = g.system;
  PointSet U, expect;
  for (std::size_t i = 0; i < sys.size(); ++i) {
    const double x = sys.point(i).coords()[0];
    if (x < 1.0 / 16) U.push_back(i);
    // grid points of [0, 1/4) that are 4 times a point of U
    if (x < 1.0 / 4 && sys.index_of(Point::real(x / 4))) expect.push_back(i);
  }
  CHECK(image_set(sys, U, 2) == expect);
  for (std::size_t i : image_set(sys, U, 2)) CHECK(sys.point(i).coords()[0] < 0.25);
  CHECK(image_set(sys, {}, 3).empty());
  PointSet outside;
  for (std::size_t i = 0; i < sys.size(); ++i)
    if (!sys.in_domain(i)) outside.push_back(i);
  for (std::size_t n = 1; n < 4; ++n) CHECK(image_set(sys, outside, n).empty());
}

TEST_CASE("preimage of image") {
  auto g = build_gallery("half-domain-interval", 6);
  std::mt19937_64 rng(2);
  for (int t = 0; t < 20; ++t) {
    auto U = gen::random_subset(rng, g.system.size());
    CHECK(preimage_of_image(g.system, U, 3) == intersect(U, full_domain(g.system, 4)));
    CHECK(preimage_of_image(g.system, U, 0) == U);
  }
  // binary words of length <= 6 under the shift
  auto X = std::make_shared<otw::OtwSubshift>();
  X->first_symbol = 0;
  X->alphabet_bound = 1;
  X->infinite_alphabet = false;
  X->use_prefix_metric = true;
  std::vector<OtwElement> words{OtwElement::empty_word()};
  for (std::size_t len = 1; len <= 6; ++len)
    for (std::size_t bits = 0; bits < (std::size_t{1} << len); ++bits) {
      otw::Word w;
      for (std::size_t i = 0; i < len; ++i) w.push_back(static_cast<otw::Symbol>(bits >> i & 1));
      words.push_back(OtwElement::finite(w));
    }
  auto sys = otw::make_otw_system("words", X, words, true, true);
  auto cyl = [&](otw::Word alpha) {
    PointSet s;
    for (std::size_t i = 0; i < sys.size(); ++i)
      if (sys.point(i).element().length() == 6u && sys.point(i).element().head(2) == alpha) s.push_back(i);
    return s;
  };
  CHECK(preimage_of_image(sys, cyl({0, 1}), 1) == unite(cyl({0, 1}), cyl({1, 1})));
}

TEST_CASE("invariance of complementary sets") {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 200; ++t) {
    auto sys = gen::table(rng, gen::size_between(rng, 1, 10));
    auto Y = gen::random_subset(rng, sys.size());
    auto Z = subtract(sys.all(), Y);
    CHECK(check_invariance(sys, Y).sigma_invariant == check_invariance(sys, Z).sigma_inv_invariant);
  }
  auto g = build_gallery("otw-full-shift", 4);
  CHECK(check_invariance(g.system, g.system.all()).both());
}

TEST_CASE("the empty word is not preimage-invariant when length-one words are sampled") {
  auto g = build_gallery("otw-full-shift-inf");
  auto w = g.system.require_index(Point(OtwElement::empty_word()));
  auto inv = check_invariance(g.system, {w});
  CHECK(inv.sigma_invariant);
  CHECK_FALSE(inv.sigma_inv_invariant);
  REQUIRE(inv.backward_offender.has_value());
  CHECK(g.system.point(*inv.backward_offender).element().length() == std::optional<std::size_t>(1));
}

TEST_CASE("restriction") {
  auto line = build_gallery("doubling-line", 6);
  auto zero = line.system.require_index(Point::real(0.0));
  auto fixed = restrict(line.system, {zero});
  CHECK(fixed.size() == 1);
  CHECK(fixed.next(0) == 0);
  auto same = restrict(line.system, line.system.all());
  CHECK(same.size() == line.system.size());
  CHECK_THROWS_AS(restrict(line.system, {zero, zero + 1}), SystemError);

  auto p = build_gallery("otw-p-sequence");
  auto r = restrict(p.system, p.expected_omega);
  CHECK(r.size() == p.expected_omega.size());
}

TEST_CASE("closure in the sample") {
  auto g = build_gallery("half-domain-interval", 4);
  auto i = g.system.require_index(Point::real(0.5));
  CHECK(closure_in_sample(g.system, {i}).size() == 3);
  CHECK(closure_in_sample(g.system, {i}, 0.01) == PointSet{i});
}

TEST_CASE("metric axioms on small gallery systems") {
  for (const char* id : {"cantor-times-3", "otw-full-shift-3", "otw-orbit-of-123", "otw-p-sequence"}) {
    auto g = build_gallery(id, std::string(id) == "otw-full-shift-3" ? 3 : -1);
    auto m = check_metric_axioms(g.system);
    INFO(id << ": " << m.violation);
    CHECK(m.ok);
  }
}
