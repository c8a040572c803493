#include "drsys/gallery.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <set>

#include "drsys/core.hpp"
#include "drsys/otw.hpp"

namespace drs {

namespace {

using otw::GeneratorRule;
using otw::OtwElement;
using otw::OtwSubshift;
using otw::Word;

const double kSqrt3 = std::sqrt(3.0);

PointSet members_where(const PartialSystem& sys, const std::function<bool(const Point&)>& pred) {
  PointSet out;
  for (std::size_t i = 0; i < sys.size(); ++i)
    if (pred(sys.point(i))) out.push_back(i);
  return out;
}

GallerySystem finish(std::string id, std::string summary, int depth, PartialSystem sys,
                     const std::function<bool(const Point&)>& in_omega) {
  GallerySystem g{.id = std::move(id), .summary = std::move(summary), .depth = depth, .system = std::move(sys),
                  .expected_omega = {}, .expected_wandering = {}, .expected_entropy = {},
                  .entropy_tolerance = 0.0, .K = {}, .schedule = {}, .policy = {}};
  g.expected_omega = members_where(g.system, in_omega);
  g.expected_wandering = subtract(g.system.all(), g.expected_omega);
  g.K = g.system.all();
  return g;
}

bool is_zero(const Point& p) {
  for (double c : p.coords())
    if (c != 0.0) return false;
  return true;
}

GallerySystem doubling_line(int d) {
  const int layers = 8;
  const double step = std::ldexp(1.0, -d);
  const double reach = std::ldexp(1.0, layers - 1);
  SystemSpec s;
  s.space_id = "doubling-line";
  s.kind = SpaceKind::Euclidean;
  std::set<double> xs;
  const long long half = 1LL << d;
  for (int i = 0; i <= layers; ++i)
    for (long long j = -half; j <= half; ++j) xs.insert(std::ldexp(static_cast<double>(j), i - d));
  for (double x : xs) s.sample.push_back(Point::real(x));
  s.in_domain = [reach](const Point& p) { return std::abs(p.coords()[0]) <= reach; };
  s.apply = [](const Point& p) { return Point::real(2 * p.coords()[0]); };
  s.preimages = [](const Point& p) { return std::vector<Point>{Point::real(p.coords()[0] / 2)}; };
  s.dom_clopen = true;
  s.compact_space = false;
  s.resolution = step;
  auto g = finish("doubling-line", "x -> 2x on the real line, sampled on nested dyadic grids", d,
                  PartialSystem(std::move(s)), is_zero);
  g.K = members_where(g.system, [](const Point& p) { return std::abs(p.coords()[0]) <= 1.0; });
  g.expected_entropy = std::log(2.0);
  g.entropy_tolerance = 0.15;
  g.schedule = make_schedule(2, 8, {0.25, 0.125, 0.0625});
  return g;
}

GallerySystem half_domain(int d) {
  SystemSpec s;
  s.space_id = "half-domain-interval";
  s.kind = SpaceKind::Euclidean;
  const long long top = 1LL << d;
  for (long long j = 0; j <= top; ++j) s.sample.push_back(Point::real(std::ldexp(static_cast<double>(j), -d)));
  s.in_domain = [](const Point& p) { return p.coords()[0] < 0.5; };
  s.apply = [](const Point& p) { return Point::real(2 * p.coords()[0]); };
  s.preimages = [](const Point& p) {
    if (p.coords()[0] >= 1.0) return std::vector<Point>{};
    return std::vector<Point>{Point::real(p.coords()[0] / 2)};
  };
  s.dom_clopen = false;
  s.compact_space = true;
  s.resolution = std::ldexp(1.0, -d);
  auto g = finish("half-domain-interval", "x -> 2x on [0,1] with domain [0,1/2)", d, PartialSystem(std::move(s)),
                  is_zero);
  g.expected_entropy = 0.0;
  g.entropy_tolerance = 0.05;
  g.schedule = make_schedule(2, 8, {0.25, 0.125, 0.0625});
  return g;
}

GallerySystem cantor(int m) {
  const double scale = std::pow(3.0, m);
  auto value = [scale](long long num) { return Point::real(static_cast<double>(num) / scale); };
  auto numerator = [scale](const Point& p) { return std::llround(p.coords()[0] * scale); };
  SystemSpec s;
  s.space_id = "cantor-times-3";
  s.kind = SpaceKind::Cantor;
  for (long long mask = 0; mask < (1LL << m); ++mask) {
    long long num = 0;
    for (int i = 0; i < m; ++i) num = 3 * num + ((mask >> (m - 1 - i)) & 1) * 2;
    s.sample.push_back(value(num));
  }
  const long long third = static_cast<long long>(std::llround(scale / 3));
  s.in_domain = [numerator, third](const Point& p) { return numerator(p) < third; };
  s.apply = [numerator, value](const Point& p) { return value(3 * numerator(p)); };
  s.preimages = [numerator, value](const Point& p) {
    long long num = numerator(p);
    if (num % 3 != 0) return std::vector<Point>{};
    return std::vector<Point>{value(num / 3)};
  };
  s.dom_clopen = true;
  s.compact_space = true;
  s.resolution = 1.0 / scale;
  auto g = finish("cantor-times-3", "x -> 3x on the middle-thirds Cantor set, domain C ∩ [0,1/3]", m,
                  PartialSystem(std::move(s)), is_zero);
  g.expected_entropy = 0.0;
  g.entropy_tolerance = 0.05;
  g.schedule = make_schedule(2, 6, {1.0 / 3, 1.0 / 9, 1.0 / 27});
  return g;
}

GallerySystem sierpinski(int m) {
  const double scale = std::ldexp(1.0, m);
  // lattice (A, B) stands for A e1 + B e2 over 2^m, e1 = (1,0), e2 = (1/2, sqrt3/2)
  auto value = [scale](long long A, long long B) {
    return Point::plane((static_cast<double>(A) + static_cast<double>(B) / 2) / scale,
                        kSqrt3 / 2 * (static_cast<double>(B) / scale));
  };
  auto lattice = [scale](const Point& p) {
    long long B = std::llround(p.coords()[1] * scale * 2 / kSqrt3);
    long long A = std::llround(p.coords()[0] * scale - static_cast<double>(B) / 2);
    return std::make_pair(A, B);
  };
  std::set<std::pair<long long, long long>> level{{0, 0}, {1, 0}, {0, 1}};
  for (int k = 0; k < m; ++k) {
    std::set<std::pair<long long, long long>> nxt;
    const long long off = 1LL << k;
    for (auto [A, B] : level) {
      nxt.insert({A, B});
      nxt.insert({A + off, B});
      nxt.insert({A, B + off});
    }
    level = std::move(nxt);
  }
  SystemSpec s;
  s.space_id = "sierpinski-double";
  s.kind = SpaceKind::Sierpinski;
  for (auto [A, B] : level) s.sample.push_back(value(A, B));
  const long long half = 1LL << (m - 1);
  s.in_domain = [lattice, half](const Point& p) {
    auto [A, B] = lattice(p);
    return A + B <= half;
  };
  s.apply = [lattice, value](const Point& p) {
    auto [A, B] = lattice(p);
    return value(2 * A, 2 * B);
  };
  s.preimages = [lattice, value](const Point& p) {
    auto [A, B] = lattice(p);
    if (A % 2 || B % 2) return std::vector<Point>{};
    return std::vector<Point>{value(A / 2, B / 2)};
  };
  s.dom_clopen = false;
  s.compact_space = true;
  s.resolution = 1.0 / scale;
  auto g = finish("sierpinski-double", "x -> 2x on the Sierpinski gasket with domain f1(S)", m,
                  PartialSystem(std::move(s)), is_zero);
  g.schedule = make_schedule(2, 6, {0.25, 0.125, 0.0625});
  return g;
}

GallerySystem square(int gexp) {
  const int squarings = 6;
  SystemSpec s;
  s.space_id = "square-on-two-intervals";
  s.kind = SpaceKind::Euclidean;
  std::set<double> xs;
  const double step = std::ldexp(1.0, -gexp);
  const long long top = 1LL << gexp;
  for (long long j = -top; j <= top; ++j) {
    double x = std::ldexp(static_cast<double>(j), -gexp);
    if (x > -0.5 && x < 0.0) continue;
    for (int t = 0; t <= squarings; ++t) {
      if (x != 0.0 && std::abs(x) < step) break;
      xs.insert(x);
      x = x * x;
    }
  }
  for (double x : xs) s.sample.push_back(Point::real(x));
  s.in_domain = [](const Point&) { return true; };
  s.apply = [](const Point& p) { return Point::real(p.coords()[0] * p.coords()[0]); };
  s.preimages = [](const Point& p) {
    if (p.coords()[0] < 0.0) return std::vector<Point>{};
    double r = std::sqrt(p.coords()[0]);
    if (r == 0.0) return std::vector<Point>{Point::real(0.0)};
    return std::vector<Point>{Point::real(r), Point::real(-r)};
  };
  s.dom_clopen = true;
  s.compact_space = true;
  s.resolution = std::ldexp(1.0, -gexp);
  s.truncate_at_sample_edge = true;
  auto g = finish("square-on-two-intervals", "x -> x^2 on [-1,-1/2] ∪ [0,1]", gexp, PartialSystem(std::move(s)),
                  [](const Point& p) {
                    double x = p.coords()[0];
                    return x == -1.0 || x == 0.0 || x == 1.0;
                  });
  g.expected_entropy = 0.0;
  g.entropy_tolerance = 0.05;
  g.schedule = make_schedule(2, 8, {0.25, 0.125, 0.0625});
  return g;
}

GallerySystem full_shift(const std::string& id, int symbols, int L) {
  auto X = std::make_shared<OtwSubshift>();
  X->first_symbol = 0;
  X->alphabet_bound = symbols - 1;
  X->infinite_alphabet = false;
  X->use_prefix_metric = true;
  X->cylinder_depth = static_cast<std::size_t>(L);
  std::set<OtwElement> elems;
  std::function<void(Word&)> rec = [&](Word& w) {
    if (w.size() == static_cast<std::size_t>(L)) {
      elems.insert(OtwElement::periodic({}, w));
      return;
    }
    for (int a = 0; a < symbols; ++a) {
      w.push_back(a);
      rec(w);
      w.pop_back();
    }
  };
  Word w;
  rec(w);
  auto sys = otw::make_otw_system(id, X, {elems.begin(), elems.end()}, true, true);
  auto g = finish(id, "full shift on " + std::to_string(symbols) + " symbols, periodic points of period " +
                          std::to_string(L),
                  L, std::move(sys), [](const Point&) { return true; });
  g.expected_entropy = std::log(static_cast<double>(symbols));
  g.entropy_tolerance = 1e-9;
  g.schedule = make_schedule(1 + 1, std::min(5, L - 1), {0.5});
  return g;
}

GallerySystem full_shift_infinite(int amax) {
  auto X = std::make_shared<OtwSubshift>();
  X->first_symbol = 1;
  X->alphabet_bound = amax;
  X->infinite_alphabet = true;
  X->cylinder_depth = 4;
  OtwSubshift wide = *X;
  wide.alphabet_bound = amax + 2;
  auto elems = otw::enumerate_subshift(wide, {0, 2, 2});
  auto sys = otw::make_otw_system("otw-full-shift-inf", X, elems, false, true);
  auto g = finish("otw-full-shift-inf", "full shift over the natural numbers: short periodic and finite words",
                  amax, std::move(sys), [](const Point&) { return true; });
  g.schedule = make_schedule(2, 4, {0.25});
  return g;
}

GallerySystem orbit_of_123(int K) {
  auto X = std::make_shared<OtwSubshift>();
  X->first_symbol = 1;
  X->alphabet_bound = 12;
  X->infinite_alphabet = true;
  X->cylinder_depth = 8;
  X->catalog.push_back(GeneratorRule::affine(1, 1));
  std::vector<OtwElement> elems{OtwElement::empty_word()};
  for (int k = 0; k < K; ++k) elems.push_back(OtwElement::listed({}, GeneratorRule::affine(1, 1), k));
  auto sys = otw::make_otw_system("otw-orbit-of-123", X, elems, false, true);
  auto g = finish("otw-orbit-of-123", "orbit of 1 2 3 4 ... under the shift, together with w", K, std::move(sys),
                  [](const Point& p) { return p.element().is_empty_word(); });
  g.schedule = make_schedule(2, 6, {0.25, 0.125, 0.0625});
  return g;
}

GallerySystem labeled_graph(int M) {
  otw::LabeledGraph graph;
  graph.infinite_alphabet = true;
  auto v = [](int k) { return "v" + std::to_string(k); };
  auto d = [](int k) { return "d" + std::to_string(k); };
  for (int k = 1; k <= M; ++k) {
    graph.vertices.push_back(v(k));
    graph.vertices.push_back(d(k));
  }
  for (int k = 1; k <= M; ++k) {
    if (k < M) graph.edges.push_back({v(k), v(k + 1), k});
    graph.edges.push_back({v(k), d(k), k});
    graph.tails.push_back({d(k), GeneratorRule::affine(2 * k + 1, 1)});
  }
  graph.tails.push_back({v(M), GeneratorRule::affine(M, 1)});
  OtwSubshift base;
  base.first_symbol = 1;
  base.alphabet_bound = 12;
  base.cylinder_depth = 10;
  auto loaded = otw::load_labeled_graph(graph, {static_cast<std::size_t>(M + 1), 0, 13}, base);
  auto sys = otw::make_otw_system("otw-labeled-graph", loaded.subshift, loaded.elements, false, true);
  auto g = finish("otw-labeled-graph", "paths x_{i+1} = x_i + 1 with at most one jump x_{j+1} = 2 x_j + 1", M,
                  std::move(sys), [](const Point&) { return true; });
  g.schedule = make_schedule(2, 6, {0.25, 0.125, 0.0625});
  return g;
}

GallerySystem p_sequence(int L) {
  const int amax = 12;
  auto X = std::make_shared<OtwSubshift>();
  X->first_symbol = 0;
  X->alphabet_bound = amax;
  X->infinite_alphabet = true;
  X->cylinder_depth = static_cast<std::size_t>(L);
  const auto p = GeneratorRule::sparse_ones(1, 1);
  X->catalog.push_back(p);
  std::vector<OtwElement> elems{OtwElement::empty_word(), OtwElement::periodic({}, {0})};
  for (int n = 0; n < L; ++n) elems.push_back(OtwElement::listed({}, p, n));
  for (int n = 0; n <= L; ++n) {
    Word alpha(n, 0);
    alpha.push_back(1);
    elems.push_back(OtwElement::periodic(alpha, {0}));
  }
  for (int n = 0; n <= amax + 2; ++n) elems.push_back(OtwElement::listed({n}, p, 0));
  auto sys = otw::make_otw_system("otw-p-sequence", X, elems, false, true);
  auto g = finish("otw-p-sequence", "orbit of p = 1 0 1 0^2 1 0^3 ..., the points n p, 0^n 1 0^inf, 0^inf and w",
                  L, std::move(sys), [](const Point& q) { return q.element().is_periodic(); });
  g.schedule = make_schedule(2, 6, {0.25, 0.125, 0.0625});
  return g;
}

std::size_t leading_zeros(const OtwElement& x) {
  std::size_t j = 0;
  while (x.symbol_at(j) == 0 && j < 4096) ++j;
  return j;
}

GallerySystem binary_clopen_mix(int depth) {
  auto X = std::make_shared<OtwSubshift>();
  X->first_symbol = 0;
  X->alphabet_bound = 1;
  X->infinite_alphabet = false;
  X->use_prefix_metric = true;
  const OtwElement zero = OtwElement::periodic({}, {0});
  SystemSpec s;
  s.space_id = "binary-clopen-mix";
  s.kind = SpaceKind::Cantor;
  s.sample.emplace_back(zero);
  for (long long mask = 1; mask < (1LL << depth); ++mask) {
    Word w;
    for (int i = 0; i < depth; ++i) w.push_back((mask >> i) & 1);
    while (w.back() == 0) w.pop_back();
    s.sample.emplace_back(OtwElement::periodic(w, {0}));
  }
  s.metric = [](const Point& a, const Point& b) { return otw::prefix_metric(a.element(), b.element()); };
  s.in_domain = [](const Point& p) { return p.element().symbol_at(0) == 0; };
  s.apply = [zero](const Point& p) {
    const auto& x = p.element();
    if (x == zero) return p;
    std::size_t j = leading_zeros(x);
    if (j % 2 == 1) return Point(x.prepend(0).prepend(0));
    return Point(*x.shift()->shift());
  };
  s.preimages = [zero](const Point& p) {
    const auto& x = p.element();
    if (x == zero) return std::vector<Point>{p};
    std::size_t j = leading_zeros(x);
    if (j % 2 == 0) return std::vector<Point>{Point(x.prepend(0).prepend(0))};
    if (j >= 3) return std::vector<Point>{Point(*x.shift()->shift())};
    return std::vector<Point>{};
  };
  s.dom_clopen = true;
  s.compact_space = true;
  s.resolution = std::ldexp(1.0, -depth);
  s.truncate_at_sample_edge = true;
  s.subshift = X;
  auto g = finish("binary-clopen-mix", "{0,1}^N with domain [0]: 0^{2n+1}1y -> 0^{2n+3}1y, 0^{2n}1y -> 0^{2n-2}1y",
                  depth, PartialSystem(std::move(s)), [zero](const Point& q) { return q.element() == zero; });
  g.expected_entropy = 0.0;
  g.entropy_tolerance = 0.05;
  g.schedule = make_schedule(2, 8, {0.25, 0.125, 0.0625});
  return g;
}

}  // namespace

const std::vector<CatalogEntry>& gallery_catalog() {
  static const std::vector<CatalogEntry> c{
      {"doubling-line", "x -> 2x on the real line (dyadic depth)", 12, 4, 14},
      {"half-domain-interval", "x -> 2x on [0,1] with domain [0,1/2) (dyadic depth)", 12, 4, 14},
      {"cantor-times-3", "x -> 3x on the Cantor set (triadic depth)", 8, 2, 10},
      {"sierpinski-double", "x -> 2x on the Sierpinski gasket (address depth)", 8, 1, 9},
      {"square-on-two-intervals", "x -> x^2 on [-1,-1/2] ∪ [0,1] (seed grid exponent)", 10, 3, 12},
      {"otw-full-shift", "full shift on 2 symbols (period length)", 10, 2, 12},
      {"otw-full-shift-3", "full shift on 3 symbols (period length)", 6, 2, 7},
      {"otw-full-shift-inf", "full shift over N (alphabet bound)", 12, 2, 16},
      {"otw-orbit-of-123", "orbit of 1 2 3 ... plus w (orbit length)", 24, 14, 60},
      {"otw-labeled-graph", "labeled-graph subshift with one doubling jump (graph size)", 11, 3, 16},
      {"otw-p-sequence", "orbit of 1 0 1 0^2 1 ... with rational companions (word length)", 10, 4, 14},
      {"binary-clopen-mix", "mixed shift/prepend map on {0,1}^N (truncation depth)", 10, 2, 14},
  };
  return c;
}

GallerySystem build_gallery(const std::string& id, int depth) {
  const CatalogEntry* entry = nullptr;
  for (const auto& e : gallery_catalog())
    if (e.id == id) entry = &e;
  if (!entry) throw SystemError("unknown gallery system '" + id + "'");
  if (depth < 0) depth = entry->default_depth;
  if (depth < entry->min_depth || depth > entry->max_depth)
    throw SystemError(id + ": depth " + std::to_string(depth) + " outside [" + std::to_string(entry->min_depth) +
                      ", " + std::to_string(entry->max_depth) + "]");
  if (id == "doubling-line") return doubling_line(depth);
  if (id == "half-domain-interval") return half_domain(depth);
  if (id == "cantor-times-3") return cantor(depth);
  if (id == "sierpinski-double") return sierpinski(depth);
  if (id == "square-on-two-intervals") return square(depth);
  if (id == "otw-full-shift") return full_shift(id, 2, depth);
  if (id == "otw-full-shift-3") return full_shift(id, 3, depth);
  if (id == "otw-full-shift-inf") return full_shift_infinite(depth);
  if (id == "otw-orbit-of-123") return orbit_of_123(depth);
  if (id == "otw-labeled-graph") return labeled_graph(depth);
  if (id == "otw-p-sequence") return p_sequence(depth);
  return binary_clopen_mix(depth);
}

}  // namespace drs
