#include "drsys/suites.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "drsys/core.hpp"
#include "drsys/entropy.hpp"
#include "drsys/wandering.hpp"

namespace drs {

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

PointSet transfer(const PartialSystem& from, const PartialSystem& to, const PointSet& S) {
  std::vector<std::size_t> out;
  for (auto i : S)
    if (auto j = to.index_of(from.point(i))) out.push_back(*j);
  return make_set(std::move(out));
}

double restricted_entropy(const GallerySystem& g, const PointSet& Y) {
  auto sub = restrict(g.system, Y);
  return estimate_entropy(sub, transfer(g.system, sub, g.K), g.schedule).h_estimate;
}

using Mask = std::uint32_t;

Mask to_mask(const PointSet& S) {
  Mask m = 0;
  for (auto i : S) m |= Mask{1} << i;
  return m;
}

}  // namespace

PartialSystem random_table(std::mt19937_64& rng, std::size_t max_points, double undefined_rate) {
  std::uniform_int_distribution<std::size_t> size_dist(1, max_points);
  const std::size_t m = size_dist(rng);
  std::set<int> used;
  std::uniform_int_distribution<int> coord(0, 255);
  while (used.size() < m) used.insert(coord(rng));
  std::vector<double> xs;
  for (int c : used) xs.push_back(c / 256.0);
  std::shuffle(xs.begin(), xs.end(), rng);
  std::bernoulli_distribution undefined(undefined_rate);
  std::uniform_int_distribution<std::size_t> target(0, m - 1);
  std::vector<std::optional<std::size_t>> map(m);
  for (auto& e : map)
    if (!undefined(rng)) e = target(rng);
  return table_system("random-table", xs, map);
}

std::vector<CheckRow> suite_sandwich(std::size_t systems, std::size_t draws, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> n_dist(1, 4);
  std::uniform_real_distribution<double> eps_dist(0.01, 0.6);
  std::size_t span_bad = 0, gen_bad = 0, cells = 0;
  std::string first;
  for (std::size_t s = 0; s < systems; ++s) {
    auto sys = random_table(rng, 12);
    for (std::size_t d = 0; d < draws; ++d) {
      const std::size_t n = n_dist(rng);
      const double eps = eps_dist(rng);
      const auto K = sys.all();
      const auto sep = ssep(sys, K, n, eps);
      const auto span = sspan(sys, K, n, eps);
      const auto span_half = sspan(sys, K, n, eps / 2);
      const auto gen = sgen(sys, K, n, eps);
      ++cells;
      const bool span_ok = span <= sep && sep <= span_half;
      const bool gen_ok = span <= gen && gen <= span_half;
      span_bad += !span_ok;
      gen_bad += !gen_ok;
      if ((!span_ok || !gen_ok) && first.empty())
        first = "system " + std::to_string(s) + " n=" + std::to_string(n) + " eps=" + fmt(eps) + ": span " +
                std::to_string(span) + " sep " + std::to_string(sep) + " gen " + std::to_string(gen) +
                " span(eps/2) " + std::to_string(span_half);
    }
  }
  const std::string tail = " over " + std::to_string(cells) + " cells" + (first.empty() ? "" : "; first: " + first);
  return {{"sandwich", "sspan <= ssep <= sspan(eps/2)", span_bad == 0, std::to_string(span_bad) + " violations" + tail},
          {"sandwich", "sspan <= sgen <= sspan(eps/2)", gen_bad == 0, std::to_string(gen_bad) + " violations" + tail}};
}

std::vector<CheckRow> suite_preimage_identities(std::size_t maps, std::size_t max_points, int k_range, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::size_t bad[5] = {0, 0, 0, 0, 0};
  std::size_t injective_maps = 0;
  for (std::size_t s = 0; s < maps; ++s) {
    auto sys = random_table(rng, max_points);
    const std::size_t m = sys.size();
    injective_maps += sys.injective();
    // brute-force images and domains as bitmasks
    const int depth = k_range + 1;
    std::vector<std::vector<int>> orbit(m, std::vector<int>(depth + 1, -1));
    for (std::size_t i = 0; i < m; ++i) {
      orbit[i][0] = static_cast<int>(i);
      for (int t = 1; t <= depth && orbit[i][t - 1] >= 0; ++t)
        orbit[i][t] = sys.in_domain(orbit[i][t - 1]) ? static_cast<int>(sys.next(orbit[i][t - 1])) : -1;
    }
    auto dom = [&](int k) {
      Mask r = 0;
      for (std::size_t i = 0; i < m; ++i)
        if (orbit[i][k] >= 0) r |= Mask{1} << i;
      return r;
    };
    auto img = [&](Mask U, int k) {
      Mask r = 0;
      for (std::size_t i = 0; i < m; ++i)
        if ((U >> i & 1) && orbit[i][k] >= 0) r |= Mask{1} << orbit[i][k];
      return r;
    };
    auto pre = [&](Mask V, int k) {
      Mask r = 0;
      for (std::size_t i = 0; i < m; ++i)
        if (orbit[i][k] >= 0 && (V >> orbit[i][k] & 1)) r |= Mask{1} << i;
      return r;
    };
    const Mask dom1 = dom(1);
    for (Mask U = 0; U < (Mask{1} << m); ++U) {
      PointSet Uset;
      for (std::size_t i = 0; i < m; ++i)
        if (U >> i & 1) Uset.push_back(i);
      for (int k = -k_range; k <= k_range; ++k) {
        const Mask got = to_mask(preimage_of_image(sys, Uset, k));
        const Mask oracle = k >= 0 ? pre(img(U, k), k) : img(pre(U, -k), -k);
        // item 1
        bool ok1 = got == oracle;
        if (k <= 0) ok1 = ok1 && got == (U & img(~Mask{0}, -k));
        if (k >= 1) ok1 = ok1 && (got & ~dom(k)) == 0;
        ok1 = ok1 && (got & ~(dom1 | U)) == 0;
        bad[0] += !ok1;
        // item 2
        bool ok2 = true;
        for (int n = 1; n <= k_range; ++n) {
          const Mask hit = img(U, n) & got;
          ok2 = ok2 && (hit & ~(dom1 | U)) == 0;
          if ((U & ~dom1) == 0) ok2 = ok2 && (hit & ~dom1) == 0;
        }
        bad[1] += !ok2;
        if (sys.injective()) {
          if (k >= 0) bad[2] += got != (U & dom(k));
          bad[3] += (got & ~U) != 0;
        }
      }
    }
  }
  auto row = [&](int item, const std::string& name) {
    return CheckRow{"preimage-identities", name, bad[item] == 0,
                    std::to_string(bad[item]) + " violations over " + std::to_string(maps) + " maps (" +
                        std::to_string(injective_maps) + " injective)"};
  };
  return {row(0, "item 1: k<=0 gives U ∩ Im, k>=1 stays in Dom(sigma^k)"),
          row(1, "item 2: sigma^n(U) ∩ preimage-of-image ⊆ Dom ∪ U"),
          row(2, "item 3: injective, k>=0 gives U ∩ Dom(sigma^k)"),
          row(3, "item 4: injective, contained in U")};
}

std::vector<CheckRow> suite_invariance(const GallerySystem& g) {
  auto part = partition_omega(g.system, g.policy);
  auto rep = verify_omega_properties(g.system, part.omega, part.wandering);
  std::string detail;
  for (const auto& f : rep.failures) detail += (detail.empty() ? "" : "; ") + f;
  const std::string sizes = "|Omega|=" + std::to_string(part.omega.size()) +
                            " |W|=" + std::to_string(part.wandering.size()) +
                            " unknown=" + std::to_string(part.unknown.size());
  return {{"invariance", g.id + ": Omega invariant", rep.omega_invariant, sizes},
          {"invariance", g.id + ": W invariant", rep.wandering_invariant, detail},
          {"invariance", g.id + ": closure(W) invariant", rep.wandering_closure_invariant, detail},
          {"invariance", g.id + ": Omega ⊆ closure(Dom)", rep.omega_in_domain_closure, detail}};
}

std::vector<CheckRow> suite_max_decomposition(const GallerySystem& g, double tol, DecompositionValues* values) {
  auto part = partition_omega(g.system, g.policy);
  if (!part.unknown.empty())
    return {{"max-decomposition", g.id, false,
             "refused: " + std::to_string(part.unknown.size()) + " unknown verdicts"}};
  DecompositionValues v;
  try {
    v.full = estimate_entropy(g.system, g.K, g.schedule).h_estimate;
    v.omega = restricted_entropy(g, part.omega);
    auto wc = closure_in_sample(g.system, part.wandering);
    v.wandering_closure = wc.empty() ? 0.0 : restricted_entropy(g, wc);
  } catch (const SystemError& e) {
    return {{"max-decomposition", g.id, false, e.what()}};
  }
  if (values) *values = v;
  const double gap = std::abs(v.full - std::max(v.omega, v.wandering_closure));
  return {{"max-decomposition", g.id + ": h = max(h_Omega, h_closure(W))", gap <= tol,
           "h=" + fmt(v.full) + " h_Omega=" + fmt(v.omega) + " h_closure(W)=" + fmt(v.wandering_closure) +
               " gap=" + fmt(gap) + " tol=" + fmt(tol)}};
}

std::vector<CheckRow> suite_concentration(const GallerySystem& g, double tol, DecompositionValues* values) {
  auto part = partition_omega(g.system, g.policy);
  if (!part.unknown.empty())
    return {{"concentration", g.id, false, "refused: " + std::to_string(part.unknown.size()) + " unknown verdicts"}};
  DecompositionValues v;
  try {
    v.full = estimate_entropy(g.system, g.K, g.schedule).h_estimate;
    v.omega = restricted_entropy(g, part.omega);
  } catch (const SystemError& e) {
    return {{"concentration", g.id, false, e.what()}};
  }
  if (values) *values = v;
  const std::string detail = "h=" + fmt(v.full) + " h_Omega=" + fmt(v.omega);
  if (g.system.compact_space() && g.system.dom_clopen()) {
    const double gap = std::abs(v.full - v.omega);
    return {{"concentration", g.id + ": h = h_Omega", gap <= tol, detail + " gap=" + fmt(gap) + " tol=" + fmt(tol)}};
  }
  const bool breaks = v.full >= 0.5 && v.omega == 0.0;
  return {{"concentration", g.id + ": equality fails without compactness", breaks, detail}};
}

std::vector<CheckRow> suite_balls(const GallerySystem& g, std::size_t points, std::uint64_t seed) {
  const auto& sys = g.system;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, sys.size() - 1);
  std::uniform_int_distribution<std::size_t> n_dist(1, 5);
  std::vector<double> radii{0.5, 0.25, 0.125, 0.0625};
  std::uniform_int_distribution<std::size_t> r_dist(0, radii.size() - 1);
  std::size_t checked = 0, bad = 0, skipped = 0;
  std::string first;
  for (std::size_t t = 0; t < points; ++t) {
    const std::size_t x = pick(rng);
    const std::size_t n = n_dist(rng);
    const double eps = radii[r_dist(rng)];
    if (!iterate(sys, x, n - 1)) {
      ++skipped;
      continue;
    }
    auto b = dynamical_ball(sys, x, n, eps);
    ++checked;
    const bool ok = b.B_members == b.U_members && is_subset(b.B_members, full_domain(sys, n));
    if (!ok) {
      ++bad;
      if (first.empty()) first = "; first at " + sys.point(x).to_string() + " n=" + std::to_string(n);
    }
  }
  std::vector<CheckRow> rows{{"balls", g.id + ": B = U on Dom(sigma^{n-1})", bad == 0,
                              std::to_string(checked) + " checked, " + std::to_string(skipped) +
                                  " outside Dom(sigma^{n-1}), " + std::to_string(bad) + " mismatches" + first}};
  if (auto w = sys.index_of(Point(otw::OtwElement::empty_word()))) {
    std::size_t wrong = 0;
    for (std::size_t n = 2; n <= 5; ++n)
      for (double eps : radii) wrong += dynamical_ball(sys, *w, n, eps).B_members != PointSet{*w};
    rows.push_back({"balls", g.id + ": B(w,n,eps) = {w}", wrong == 0, std::to_string(wrong) + " mismatches"});
  }
  return rows;
}

}  // namespace drs
