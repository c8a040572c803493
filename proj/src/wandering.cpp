#include "drsys/wandering.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "drsys/core.hpp"
#include "drsys/otw.hpp"

namespace drs {

std::string status_name(Status s) {
  switch (s) {
    case Status::Nonwandering: return "nonwandering";
    case Status::Wandering: return "wandering";
    case Status::Unknown: return "unknown";
  }
  return "unknown";
}

std::string reason_name(Reason r) {
  switch (r) {
    case Reason::None: return "none";
    case Reason::SweepWitness: return "sweep-witness";
    case Reason::MergingOrbit: return "merging-orbit";
    case Reason::Rational: return "rational";
    case Reason::RationalDensity: return "rational-density";
    case Reason::Propagated: return "propagated";
    case Reason::IsolatedIrrational: return "isolated-irrational";
    case Reason::EmptyWord: return "empty-word";
    case Reason::InjectiveSeparation: return "injective-separation";
    case Reason::FiniteExhaustion: return "finite-exhaustion";
  }
  return "none";
}

namespace {

bool symbolic(const PartialSystem& sys) { return sys.kind() == SpaceKind::Otw && sys.subshift() != nullptr; }

// back_depth[y]: largest j <= cap with y ∈ sigma^j(sample).
std::vector<std::size_t> back_depths(const PartialSystem& sys, std::size_t cap) {
  std::vector<std::size_t> d(sys.size(), 0);
  for (std::size_t round = 0; round < cap; ++round) {
    std::vector<std::size_t> nd(sys.size(), 0);
    for (std::size_t y = 0; y < sys.size(); ++y)
      for (std::size_t p : sys.preimages(y)) nd[y] = std::max(nd[y], std::min(cap, d[p] + 1));
    if (nd == d) break;
    d = std::move(nd);
  }
  return d;
}

class Sweeper {
 public:
  Sweeper(const PartialSystem& sys, const WanderingPolicy& policy)
      : sys_(sys), policy_(policy), depth_(back_depths(sys, policy.k_max)) {}

  std::optional<Witness> find(const PointSet& U) const {
    std::vector<PointSet> forward(policy_.n_max + 1);
    forward[0] = U;
    for (std::size_t n = 1; n <= policy_.n_max; ++n) forward[n] = image_set(sys_, forward[n - 1], 1);
    std::vector<std::pair<int, PointSet>> back;
    const int K = static_cast<int>(policy_.k_max);
    for (int step = 0; step <= 2 * K; ++step) {
      int k = step % 2 == 0 ? step / 2 : -(step + 1) / 2;
      PointSet p;
      if (k <= 0) {
        for (std::size_t u : U)
          if (depth_[u] >= static_cast<std::size_t>(-k)) p.push_back(u);
      } else {
        p = preimage_of_image(sys_, U, k);
      }
      back.emplace_back(k, std::move(p));
    }
    for (std::size_t n = 1; n <= policy_.n_max; ++n) {
      if (forward[n].empty()) break;
      for (const auto& [k, p] : back) {
        auto hit = intersect(forward[n], p);
        if (!hit.empty()) return Witness{U, n, k, hit.front()};
      }
    }
    return std::nullopt;
  }

 private:
  const PartialSystem& sys_;
  const WanderingPolicy& policy_;
  std::vector<std::size_t> depth_;
};

std::optional<Reason> certify_wandering(const PartialSystem& sys, const PointSet& U) {
  if (sys.injective() && forward_disjoint(sys, U)) return Reason::InjectiveSeparation;
  if (wanders_exhaustively(sys, U)) return Reason::FiniteExhaustion;
  return std::nullopt;
}

}  // namespace

PointSet ball(const PartialSystem& sys, std::size_t i, double r) {
  PointSet out;
  if (sys.euclidean()) {
    const double x0 = sys.point(i).coords()[0];
    std::size_t lo = i;
    while (lo > 0 && x0 - sys.point(lo - 1).coords()[0] < r) --lo;
    for (std::size_t j = lo; j < sys.size() && sys.point(j).coords()[0] - x0 < r; ++j)
      if (sys.distance(i, j) < r) out.push_back(j);
    return out;
  }
  for (std::size_t j = 0; j < sys.size(); ++j)
    if (sys.distance(i, j) < r) out.push_back(j);
  return out;
}

std::vector<PointSet> neighbourhoods(const PartialSystem& sys, std::size_t i, const WanderingPolicy& policy) {
  std::vector<PointSet> out;
  if (symbolic(sys)) {
    for (const auto& c : otw::neighbourhood_cylinders(*sys.subshift(), sys.point(i).element())) {
      PointSet m;
      for (std::size_t j = 0; j < sys.size(); ++j)
        if (c.contains(sys.point(j).element())) m.push_back(j);
      out.push_back(std::move(m));
    }
    return out;
  }
  std::vector<double> radii = policy.radii;
  if (radii.empty()) radii = {4 * sys.resolution(), 0.5 * sys.resolution()};
  std::sort(radii.rbegin(), radii.rend());
  for (double r : radii)
    if (r > 0) out.push_back(ball(sys, i, r));
  if (out.empty()) out.push_back({i});
  return out;
}

bool check_witness(const PartialSystem& sys, std::size_t center, const Witness& w) {
  if (!contains(w.U, center) || w.n < 1) return false;
  return contains(image_set(sys, w.U, w.n), w.z) && contains(preimage_of_image(sys, w.U, w.k), w.z);
}

std::optional<Witness> eventually_merging_rule(const PartialSystem& sys, std::size_t i, std::size_t horizon) {
  std::vector<std::size_t> orbit{i};
  for (std::size_t m = 1; m <= horizon; ++m) {
    if (!sys.in_domain(orbit.back())) return std::nullopt;
    std::size_t x = sys.next(orbit.back());
    auto it = std::find(orbit.begin(), orbit.end(), x);
    if (it != orbit.end()) {
      std::size_t n = static_cast<std::size_t>(it - orbit.begin());
      // sigma^r(x) ∈ sigma^r(U) ∩ sigma^{-n}(sigma^n(U)) for every U ∋ x
      std::size_t r = m - n;
      return Witness{{i}, r, static_cast<int>(n), r < orbit.size() ? orbit[r] : x};
    }
    orbit.push_back(x);
  }
  return std::nullopt;
}

bool forward_disjoint(const PartialSystem& sys, const PointSet& U) {
  std::set<PointSet> seen;
  PointSet s = U;
  for (std::size_t step = 0; step <= sys.size(); ++step) {
    s = image_set(sys, s, 1);
    if (s.empty()) return true;
    if (!intersect(s, U).empty()) return false;
    if (!seen.insert(s).second) return true;
  }
  return true;
}

bool wanders_exhaustively(const PartialSystem& sys, const PointSet& U) {
  // R: all forward images; the k <= 0 terms are subsets of U
  PointSet reach, s = U;
  std::set<PointSet> seen;
  while (true) {
    s = image_set(sys, s, 1);
    if (s.empty() || !seen.insert(s).second) break;
    reach = unite(reach, s);
  }
  if (!intersect(reach, U).empty()) return false;
  // M: points whose orbit merges with an orbit from U
  const std::size_t cap = std::min<std::size_t>(2 * sys.size(), 256);
  PointSet a = U;
  for (std::size_t k = 1; k <= cap; ++k) {
    a = image_set(sys, a, 1);
    if (a.empty()) break;
    PointSet m = a;
    for (std::size_t j = 0; j < k && !m.empty(); ++j) m = preimage_set(sys, m);
    if (!intersect(reach, m).empty()) return false;
  }
  return true;
}

WanderingVerdict test_wandering_witness(const PartialSystem& sys, std::size_t i, const WanderingPolicy& policy) {
  Sweeper sweeper(sys, policy);
  WanderingVerdict v;
  v.point = i;
  v.n_max = policy.n_max;
  v.k_max = policy.k_max;
  auto family = neighbourhoods(sys, i, policy);
  std::optional<Witness> last;
  bool all = true;
  for (const auto& U : family) {
    auto w = sweeper.find(U);
    if (!w) {
      all = false;
      break;
    }
    last = w;
  }
  if (all) {
    v.status = Status::Nonwandering;
    v.reason = Reason::SweepWitness;
    v.witness = last;
    return v;
  }
  if (symbolic(sys))
    if (auto s = otw::symbolic_isolated_irrational(sys, i)) {
      v.status = Status::Wandering;
      v.reason = Reason::IsolatedIrrational;
      return v;
    }
  for (auto it = family.rbegin(); it != family.rend(); ++it)
    if (auto r = certify_wandering(sys, *it)) {
      v.status = Status::Wandering;
      v.reason = *r;
      v.neighbourhood = *it;
      return v;
    }
  return v;
}

Partition partition_omega(const PartialSystem& sys, const WanderingPolicy& policy) {
  const std::size_t N = sys.size();
  std::vector<WanderingVerdict> vs(N);
  for (std::size_t i = 0; i < N; ++i) {
    vs[i].point = i;
    vs[i].n_max = policy.n_max;
    vs[i].k_max = policy.k_max;
  }
  auto mark_omega = [&](std::size_t i, Reason r) {
    vs[i].status = Status::Nonwandering;
    vs[i].reason = r;
  };
  const bool sym = symbolic(sys);

  // positive rules: symbolic, merging orbits, witness sweeps
  Sweeper sweeper(sys, policy);
  for (std::size_t i = 0; i < N; ++i) {
    if (sym)
      if (auto s = otw::symbolic_nonwandering(sys, i)) {
        mark_omega(i, s->rule == otw::SymbolicRule::Rational ? Reason::Rational : Reason::RationalDensity);
        continue;
      }
    if (auto w = eventually_merging_rule(sys, i, policy.merge_horizon)) {
      mark_omega(i, Reason::MergingOrbit);
      vs[i].witness = w;
      continue;
    }
    std::optional<Witness> last;
    bool all = true;
    for (const auto& U : neighbourhoods(sys, i, policy)) {
      auto w = sweeper.find(U);
      if (!w) {
        all = false;
        break;
      }
      last = w;
    }
    if (all) {
      mark_omega(i, Reason::SweepWitness);
      vs[i].witness = last;
    }
  }

  // the nonwandering set is invariant in both directions
  std::deque<std::size_t> queue;
  for (std::size_t i = 0; i < N; ++i)
    if (vs[i].status == Status::Nonwandering) queue.push_back(i);
  while (!queue.empty()) {
    std::size_t y = queue.front();
    queue.pop_front();
    std::vector<std::size_t> next(sys.preimages(y).begin(), sys.preimages(y).end());
    if (sys.in_domain(y)) next.push_back(sys.next(y));
    for (std::size_t z : next)
      if (vs[z].status != Status::Nonwandering) {
        mark_omega(z, Reason::Propagated);
        vs[z].via = y;
        queue.push_back(z);
      }
  }

  std::optional<std::size_t> w_index;
  if (sym) w_index = sys.index_of(Point(otw::OtwElement::empty_word()));
  auto finite_word = [&](std::size_t i) {
    return sym && sys.point(i).element().is_finite() && !sys.point(i).element().is_empty_word();
  };
  auto inherit = [&](Status s) {
    for (std::size_t i = 0; i < N; ++i)
      if (finite_word(i) && vs[i].status == Status::Unknown) {
        vs[i].status = s;
        vs[i].reason = Reason::EmptyWord;
        vs[i].via = w_index;
      }
  };
  if (w_index && vs[*w_index].status == Status::Nonwandering) inherit(Status::Nonwandering);

  // wandering certificates for what is left
  for (std::size_t i = 0; i < N; ++i) {
    if (vs[i].status != Status::Unknown || finite_word(i)) continue;
    if (sym && otw::symbolic_isolated_irrational(sys, i)) {
      vs[i].status = Status::Wandering;
      vs[i].reason = Reason::IsolatedIrrational;
      continue;
    }
    auto family = neighbourhoods(sys, i, policy);
    for (auto it = family.rbegin(); it != family.rend(); ++it)
      if (auto r = certify_wandering(sys, *it)) {
        vs[i].status = Status::Wandering;
        vs[i].reason = *r;
        vs[i].neighbourhood = *it;
        break;
      }
  }
  if (w_index && vs[*w_index].status == Status::Wandering) inherit(Status::Wandering);

  Partition p;
  for (std::size_t i = 0; i < N; ++i) {
    if (vs[i].status == Status::Nonwandering)
      p.omega.push_back(i);
    else if (vs[i].status == Status::Wandering)
      p.wandering.push_back(i);
    else
      p.unknown.push_back(i);
  }
  p.verdicts = std::move(vs);
  return p;
}

OmegaReport verify_omega_properties(const PartialSystem& sys, const PointSet& omega, const PointSet& wandering) {
  OmegaReport r;
  auto check = [&](const PointSet& s, const std::string& name) {
    auto inv = check_invariance(sys, s);
    if (!inv.sigma_invariant)
      r.failures.push_back(name + ": sigma maps " + sys.point(*inv.forward_offender).to_string() + " outside");
    if (!inv.sigma_inv_invariant)
      r.failures.push_back(name + ": preimage " + sys.point(*inv.backward_offender).to_string() + " outside");
    return inv.both();
  };
  r.omega_invariant = check(omega, "omega");
  r.wandering_invariant = check(wandering, "wandering");
  r.wandering_closure_invariant = check(closure_in_sample(sys, wandering), "closure of wandering");
  // truncated points lie in the true domain; on infinite alphabets the domain
  // approaches w only through symbols beyond the enumerated bound
  double step = sys.resolution();
  if (step == 0.0 && sys.subshift() && sys.subshift()->infinite_alphabet)
    step = 1.0 / static_cast<double>(sys.subshift()->alphabet_bound - sys.subshift()->first_symbol + 1);
  auto dom_closure = closure_in_sample(sys, unite(sys.domain(), sys.truncated()), step);
  r.omega_in_domain_closure = is_subset(omega, dom_closure);
  if (!r.omega_in_domain_closure)
    for (std::size_t x : subtract(omega, dom_closure))
      r.failures.push_back("omega point " + sys.point(x).to_string() + " is far from the domain");
  return r;
}

DynamicalBall dynamical_ball(const PartialSystem& sys, std::size_t i, std::size_t n, double eps) {
  DynamicalBall b{i, n, eps, {}, {}};
  const std::size_t t = defined_steps(sys, i, n);
  std::vector<std::size_t> orbit{i};
  for (std::size_t k = 1; k < t; ++k) orbit.push_back(sys.next(orbit.back()));
  for (std::size_t y : ball(sys, i, eps)) {
    bool in_u = true;
    std::size_t z = y;
    for (std::size_t k = 0; k < t && in_u; ++k) {
      if (k > 0) {
        if (!sys.in_domain(z)) {
          in_u = false;
          break;
        }
        z = sys.next(z);
      }
      in_u = sys.distance(z, orbit[k]) < eps;
    }
    if (in_u) b.U_members.push_back(y);
    if (defined_steps(sys, y, n) == t && dn_distance(sys, y, i, n) < eps &&
        (t == n || !contains(sys.truncated(), *iterate(sys, y, t - 1))))
      b.B_members.push_back(y);
  }
  return b;
}

}  // namespace drs
