#include "drsys/otw.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace drs::otw {

namespace {

constexpr std::size_t kSearchLimit = 4096;

// Index from which the sequence is periodic, and that period; finite words
// are padded with the infinity symbol (period 1).
struct Shape {
  std::size_t start;
  std::size_t period;
};

std::optional<Shape> shape_of(const OtwElement& x) {
  if (const auto* f = x.as_finite()) return Shape{f->symbols.size(), 1};
  if (const auto* p = x.as_periodic()) return Shape{p->prefix.size(), p->period.size()};
  return std::nullopt;
}

double rho(std::optional<Symbol> s, Symbol first) {
  if (!s) return 0.0;
  if (*s < first) throw std::invalid_argument("symbol below the first alphabet symbol");
  return 1.0 / static_cast<double>(*s - first + 1);
}

std::optional<std::size_t> first_difference(const OtwElement& x, const OtwElement& y, std::size_t limit) {
  for (std::size_t i = 0; i < limit; ++i)
    if (x.symbol_at(i) != y.symbol_at(i)) return i;
  return std::nullopt;
}

std::size_t comparison_horizon(const OtwElement& x, const OtwElement& y) {
  auto sx = shape_of(x), sy = shape_of(y);
  if (!sx || !sy) return kSearchLimit;
  std::size_t p = std::lcm(sx->period, sy->period);
  return std::min(kSearchLimit, std::max(sx->start, sy->start) + p);
}

}  // namespace

std::optional<OtwElement> shift(const OtwElement& x) { return x.shift(); }

double otw_metric(const OtwElement& x, const OtwElement& y, Symbol first_symbol) {
  if (x == y) return 0.0;
  auto term = [&](std::size_t i) {
    return std::ldexp(std::abs(rho(x.symbol_at(i), first_symbol) - rho(y.symbol_at(i), first_symbol)),
                      -static_cast<int>(i + 1));
  };
  auto sx = shape_of(x), sy = shape_of(y);
  if (sx && sy) {
    const std::size_t start = std::max(sx->start, sy->start);
    const std::size_t period = std::lcm(sx->period, sy->period);
    if (start + period <= kSearchLimit) {
      double head = 0.0, block = 0.0;
      for (std::size_t i = 0; i < start; ++i) head += term(i);
      for (std::size_t j = 0; j < period; ++j) block += term(start + j);
      return head + block / (1.0 - std::ldexp(1.0, -static_cast<int>(period)));
    }
  }
  auto f = first_difference(x, y, kSearchLimit).value_or(kSearchLimit);
  double d = 0.0;
  for (std::size_t i = f; i < f + 80; ++i) d += term(i);
  return d > 0.0 ? d : std::ldexp(1.0, -static_cast<int>(kSearchLimit));
}

double prefix_metric(const OtwElement& x, const OtwElement& y) {
  if (x == y) return 0.0;
  std::size_t h = comparison_horizon(x, y);
  auto f = first_difference(x, y, h).value_or(h);
  return std::ldexp(1.0, -static_cast<int>(f));
}

bool is_rational(const OtwElement& x) {
  if (x.is_finite()) throw std::invalid_argument("rationality is defined for infinite sequences only");
  return x.is_periodic();
}

bool Cylinder::contains(const OtwElement& y) const {
  for (std::size_t i = 0; i < alpha.size(); ++i)
    if (y.symbol_at(i) != alpha[i]) return false;
  auto next = y.symbol_at(alpha.size());
  return !next || std::find(excluded.begin(), excluded.end(), *next) == excluded.end();
}

std::string Cylinder::to_string() const {
  std::ostringstream os;
  os << "Z(" << word_to_string(alpha) << " | not {" << word_to_string(excluded) << "})";
  return os.str();
}

std::vector<Symbol> OtwSubshift::alphabet() const {
  std::vector<Symbol> out;
  for (Symbol a = first_symbol; a <= alphabet_bound; ++a) out.push_back(a);
  return out;
}

bool OtwSubshift::allows(const OtwElement& x, std::size_t horizon) const {
  if (forbidden.empty()) return true;
  std::size_t longest = 0;
  for (const auto& f : forbidden) longest = std::max(longest, f.size());
  std::size_t h = horizon;
  if (auto s = shape_of(x)) h = s->start + s->period * (longest + 1) + longest;
  Word w = x.head(h);
  for (const auto& f : forbidden)
    if (!f.empty() && std::search(w.begin(), w.end(), f.begin(), f.end()) != w.end()) return false;
  return true;
}

double OtwSubshift::distance(const OtwElement& x, const OtwElement& y) const {
  return use_prefix_metric ? prefix_metric(x, y) : otw_metric(x, y, first_symbol);
}

std::vector<Cylinder> neighbourhood_cylinders(const OtwSubshift& X, const OtwElement& x) {
  std::vector<Cylinder> out;
  std::size_t top = std::min(X.cylinder_depth, x.length().value_or(X.cylinder_depth));
  const auto alphabet = X.alphabet();
  for (std::size_t l = 0; l <= top; ++l) {
    Cylinder c{x.head(l), {}};
    auto next = x.symbol_at(l);
    for (Symbol a : alphabet)
      if (!next || a != *next) c.excluded.push_back(a);
    out.push_back(std::move(c));
  }
  return out;
}

namespace {

const OtwSubshift& subshift_of(const PartialSystem& sys) {
  if (!sys.subshift()) throw SystemError(sys.space_id() + ": symbolic rules need a subshift description");
  return *sys.subshift();
}

}  // namespace

std::optional<SymbolicVerdict> symbolic_nonwandering(const PartialSystem& sys, std::size_t i) {
  const auto& X = subshift_of(sys);
  const auto& x = sys.point(i).element();
  if (!x.is_finite() && is_rational(x)) return SymbolicVerdict{true, SymbolicRule::Rational, {}};
  for (const auto& c : neighbourhood_cylinders(X, x)) {
    bool found = false;
    for (std::size_t j = 0; j < sys.size() && !found; ++j) {
      const auto& y = sys.point(j).element();
      found = y.is_periodic() && c.contains(y);
    }
    if (!found) return std::nullopt;
  }
  return SymbolicVerdict{true, SymbolicRule::RationalDensity, {}};
}

std::optional<SymbolicVerdict> symbolic_isolated_irrational(const PartialSystem& sys, std::size_t i) {
  const auto& X = subshift_of(sys);
  const auto& x = sys.point(i).element();
  if (x.is_finite() || is_rational(x)) return std::nullopt;
  for (const auto& c : neighbourhood_cylinders(X, x)) {
    bool alone = true;
    for (std::size_t j = 0; j < sys.size() && alone; ++j)
      if (j != i && c.contains(sys.point(j).element())) alone = false;
    if (alone) return SymbolicVerdict{false, SymbolicRule::IsolatedIrrational, c};
  }
  return std::nullopt;
}

std::optional<SymbolicVerdict> classify_symbolic(const PartialSystem& sys, std::size_t i,
                                                 std::optional<bool> empty_word_status) {
  if (auto v = symbolic_nonwandering(sys, i)) return v;
  if (auto v = symbolic_isolated_irrational(sys, i)) return v;
  const auto& x = sys.point(i).element();
  if (x.is_finite() && !x.is_empty_word() && empty_word_status)
    return SymbolicVerdict{*empty_word_status, SymbolicRule::EmptyWord, {}};
  return std::nullopt;
}

PartialSystem make_otw_system(const std::string& id, std::shared_ptr<const OtwSubshift> X,
                              const std::vector<OtwElement>& elements, bool dom_clopen, bool compact_space) {
  auto symbols = std::make_shared<std::vector<Symbol>>(X->alphabet());
  for (const auto& e : elements)
    if (auto s = e.symbol_at(0)) symbols->push_back(*s);
  std::sort(symbols->begin(), symbols->end());
  symbols->erase(std::unique(symbols->begin(), symbols->end()), symbols->end());

  SystemSpec spec;
  spec.space_id = id;
  spec.kind = SpaceKind::Otw;
  spec.metric = [X](const Point& a, const Point& b) { return X->distance(a.element(), b.element()); };
  spec.in_domain = [](const Point& p) { return !p.element().is_empty_word(); };
  spec.apply = [](const Point& p) { return Point(*p.element().shift()); };
  spec.preimages = [symbols](const Point& p) {
    std::vector<Point> out;
    for (Symbol a : *symbols) out.emplace_back(p.element().prepend(a));
    return out;
  };
  for (const auto& e : elements) spec.sample.emplace_back(e);
  spec.dom_clopen = dom_clopen;
  spec.compact_space = compact_space;
  spec.resolution = 0.0;
  spec.truncate_at_sample_edge = true;
  spec.subshift = std::move(X);
  return PartialSystem(std::move(spec));
}

namespace {

void all_words(const std::vector<Symbol>& alphabet, std::size_t len, const std::function<void(const Word&)>& f) {
  Word w(len);
  std::function<void(std::size_t)> rec = [&](std::size_t pos) {
    if (pos == len) {
      f(w);
      return;
    }
    for (Symbol a : alphabet) {
      w[pos] = a;
      rec(pos + 1);
    }
  };
  rec(0);
}

}  // namespace

std::vector<OtwElement> enumerate_subshift(const OtwSubshift& X, const EnumerationBounds& bounds) {
  std::set<OtwElement> out;
  const auto alphabet = X.alphabet();
  for (std::size_t c = 1; c <= bounds.max_period; ++c)
    all_words(alphabet, c, [&](const Word& beta) {
      for (std::size_t p = 0; p <= bounds.max_prefix; ++p)
        all_words(alphabet, p, [&](const Word& alpha) {
          auto e = OtwElement::periodic(alpha, beta);
          if (X.allows(e)) out.insert(e);
        });
    });
  if (X.infinite_alphabet)
    for (std::size_t len = 0; len <= bounds.max_finite_length; ++len)
      all_words(alphabet, len, [&](const Word& w) {
        auto e = OtwElement::finite(w);
        if (X.allows(e)) out.insert(e);
      });
  return {out.begin(), out.end()};
}

LabeledSubshift load_labeled_graph(const LabeledGraph& g, const GraphTruncation& t, OtwSubshift base) {
  std::map<std::string, std::size_t> vid;
  for (const auto& v : g.vertices)
    if (!vid.emplace(v, vid.size()).second) throw SystemError("labeled graph: duplicate vertex '" + v + "'");
  std::vector<std::vector<std::pair<std::size_t, Symbol>>> out_edges(vid.size());
  std::vector<std::vector<GeneratorRule>> tails(vid.size());
  for (const auto& e : g.edges) {
    auto s = vid.find(e.src), d = vid.find(e.dst);
    if (s == vid.end() || d == vid.end()) {
      std::ostringstream os;
      os << "labeled graph: edge " << e.src << " -> " << e.dst << " (label " << e.label
         << ") uses an unknown vertex";
      throw SystemError(os.str());
    }
    out_edges[s->second].emplace_back(d->second, e.label);
  }
  for (const auto& tl : g.tails) {
    auto s = vid.find(tl.vertex);
    if (s == vid.end()) throw SystemError("labeled graph: tail at unknown vertex '" + tl.vertex + "'");
    tails[s->second].push_back(tl.rule);
  }

  std::set<OtwElement> found;
  // closed walks u -> ... -> u of length <= max_cycle, as label words
  auto cycles_at = [&](std::size_t u) {
    std::vector<Word> cyc;
    Word labels;
    std::function<void(std::size_t)> rec = [&](std::size_t v) {
      if (labels.size() == t.max_cycle) return;
      for (auto [w, a] : out_edges[v]) {
        labels.push_back(a);
        if (w == u) cyc.push_back(labels);
        rec(w);
        labels.pop_back();
      }
    };
    rec(u);
    return cyc;
  };
  std::vector<std::vector<Word>> cycles(vid.size());
  for (std::size_t u = 0; u < vid.size(); ++u) cycles[u] = cycles_at(u);

  Word path;
  std::function<void(std::size_t)> walk = [&](std::size_t v) {
    for (const auto& rule : tails[v]) found.insert(OtwElement::listed(path, rule, 0));
    for (const auto& c : cycles[v]) found.insert(OtwElement::periodic(path, c));
    if (path.size() == t.max_prefix) return;
    for (auto [w, a] : out_edges[v]) {
      path.push_back(a);
      walk(w);
      path.pop_back();
    }
  };
  for (std::size_t v = 0; v < vid.size(); ++v) walk(v);
  for (const auto& tl : g.tails)
    for (std::size_t o = 1; o <= t.tail_offsets; ++o) found.insert(OtwElement::listed({}, tl.rule, o));

  if (g.infinite_alphabet || found.empty()) found.insert(OtwElement::empty_word());
  LabeledSubshift r;
  base.infinite_alphabet = g.infinite_alphabet;
  for (const auto& tl : g.tails) base.catalog.push_back(tl.rule);
  r.subshift = std::make_shared<OtwSubshift>(std::move(base));
  r.elements.assign(found.begin(), found.end());
  return r;
}

}  // namespace drs::otw
