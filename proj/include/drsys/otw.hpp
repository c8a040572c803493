#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "drsys/otw_element.hpp"
#include "drsys/system.hpp"

namespace drs::otw {

std::optional<OtwElement> shift(const OtwElement& x);

// sum_{i>=1} 2^-i |rho(x_i) - rho(y_i)| with rho(a) = 1/(a - first_symbol + 1)
// and rho(infinity) = 0.
double otw_metric(const OtwElement& x, const OtwElement& y, Symbol first_symbol = 1);

// 2^-i where i is the first index at which the sequences differ.
double prefix_metric(const OtwElement& x, const OtwElement& y);

// Precondition: x is infinite (throws std::invalid_argument otherwise).
bool is_rational(const OtwElement& x);

struct Cylinder {
  Word alpha;
  std::vector<Symbol> excluded;
  bool contains(const OtwElement& y) const;
  std::string to_string() const;
};

struct OtwSubshift {
  Symbol first_symbol = 1;
  Symbol alphabet_bound = 12;  // A_max: symbols above it are not enumerated
  bool infinite_alphabet = true;
  std::vector<Word> forbidden;
  std::vector<GeneratorRule> catalog;
  std::size_t cylinder_depth = 8;  // L
  bool infinite_extension_checked = false;
  bool use_prefix_metric = false;

  std::vector<Symbol> alphabet() const;
  // No forbidden block among the first `horizon` symbols (whole word when
  // finite or eventually periodic).
  bool allows(const OtwElement& x, std::size_t horizon = 256) const;
  double distance(const OtwElement& x, const OtwElement& y) const;
};

// Cylinders Z(x_1..x_l, F) for l = 0..min(L, |x|) with F the enumerated
// alphabet minus x_{l+1}: the smallest truncated neighbourhoods of x.
std::vector<Cylinder> neighbourhood_cylinders(const OtwSubshift& X, const OtwElement& x);

enum class SymbolicRule { Rational = 1, RationalDensity = 2, IsolatedIrrational = 3, EmptyWord = 4 };

struct SymbolicVerdict {
  bool nonwandering = false;
  SymbolicRule rule = SymbolicRule::Rational;
  std::optional<Cylinder> cylinder;  // isolating or rational-bearing cylinder
};

// Rational points and points with rationals in every neighbourhood cylinder.
std::optional<SymbolicVerdict> symbolic_nonwandering(const PartialSystem& sys, std::size_t i);
// Irrational points isolated by one of their neighbourhood cylinders.
std::optional<SymbolicVerdict> symbolic_isolated_irrational(const PartialSystem& sys, std::size_t i);

// The two above, then finite words inherit `empty_word_status` (the verdict on w) if known.
std::optional<SymbolicVerdict> classify_symbolic(const PartialSystem& sys, std::size_t i,
                                                 std::optional<bool> empty_word_status = {});

// Builds the shift map on a finite set of elements of X. Elements whose shift
// leaves the set are treated as the edge of the truncation.
PartialSystem make_otw_system(const std::string& id, std::shared_ptr<const OtwSubshift> X,
                              const std::vector<OtwElement>& elements, bool dom_clopen, bool compact_space);

struct EnumerationBounds {
  std::size_t max_prefix = 2;
  std::size_t max_period = 3;
  std::size_t max_finite_length = 2;  // infinite alphabets only
};

// Eventually periodic elements (and, over an infinite alphabet, finite words
// and w) avoiding the forbidden words, over the enumerated alphabet.
std::vector<OtwElement> enumerate_subshift(const OtwSubshift& X, const EnumerationBounds& bounds);

struct LabeledGraph {
  struct Edge {
    std::string src;
    std::string dst;
    Symbol label = 0;
  };
  struct Tail {
    std::string vertex;
    GeneratorRule rule;
  };
  std::vector<std::string> vertices;
  std::vector<Edge> edges;
  std::vector<Tail> tails;  // an infinite path leaving `vertex` with labels rule(0), rule(1), ...
  bool infinite_alphabet = true;
};

struct GraphTruncation {
  std::size_t max_prefix = 12;   // edges walked before a cycle or tail
  std::size_t max_cycle = 4;
  std::size_t tail_offsets = 0;  // suffixes of every tail also listed
};

struct LabeledSubshift {
  std::shared_ptr<OtwSubshift> subshift;
  std::vector<OtwElement> elements;
};

// Label sequences of infinite paths (lassos and tails); w is included when the
// alphabet is infinite or no infinite path exists.
LabeledSubshift load_labeled_graph(const LabeledGraph& g, const GraphTruncation& t, OtwSubshift base = {});

}  // namespace drs::otw
