#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace drs::otw {

using Symbol = std::int64_t;
using Word = std::vector<Symbol>;

// Closed-form rule for an irrational sequence: the symbol at every index is
// computable, so elements built from it stay finitely described.
struct GeneratorRule {
  enum class Kind : std::uint8_t {
    Affine,      // start + step * i, step != 0
    SparseOnes,  // 1 0^g 1 0^(g+inc) 1 0^(g+2inc) ...
  };
  Kind kind = Kind::Affine;
  Symbol a = 1;  // Affine: start; SparseOnes: first gap
  Symbol b = 1;  // Affine: step;  SparseOnes: gap increment

  static GeneratorRule affine(Symbol start, Symbol step);
  static GeneratorRule sparse_ones(Symbol first_gap, Symbol increment);

  Symbol at(std::size_t i) const;
  std::string describe() const;

  auto operator<=>(const GeneratorRule&) const = default;
};

// An element of Sigma_A: a finite word (including the empty word w), an
// eventually periodic sequence alpha beta^inf, or prefix . rule[offset..].
// All factories return canonical forms so equality is structural.
class OtwElement {
 public:
  struct Finite {
    Word symbols;
    auto operator<=>(const Finite&) const = default;
  };
  struct Periodic {
    Word prefix;
    Word period;
    auto operator<=>(const Periodic&) const = default;
  };
  struct Listed {
    Word prefix;
    GeneratorRule rule;
    std::size_t offset = 0;
    auto operator<=>(const Listed&) const = default;
  };

  OtwElement();  // the empty word w

  static OtwElement empty_word() { return OtwElement(); }
  static OtwElement finite(Word symbols);
  static OtwElement periodic(Word prefix, Word period);
  static OtwElement listed(Word prefix, GeneratorRule rule, std::size_t offset = 0);

  bool is_finite() const { return std::holds_alternative<Finite>(rep_); }
  bool is_empty_word() const;
  bool is_periodic() const { return std::holds_alternative<Periodic>(rep_); }
  bool is_listed() const { return std::holds_alternative<Listed>(rep_); }

  // Number of symbols for finite words; nullopt for infinite sequences.
  std::optional<std::size_t> length() const;

  // Symbol at 0-based index i; nullopt stands for the padding symbol "infinity".
  std::optional<Symbol> symbol_at(std::size_t i) const;

  // First n symbols (stops early at the end of a finite word).
  Word head(std::size_t n) const;

  // Drops the first symbol; absent for w.
  std::optional<OtwElement> shift() const;

  OtwElement prepend(Symbol a) const;

  const Finite* as_finite() const { return std::get_if<Finite>(&rep_); }
  const Periodic* as_periodic() const { return std::get_if<Periodic>(&rep_); }
  const Listed* as_listed() const { return std::get_if<Listed>(&rep_); }

  std::string to_string() const;

  friend bool operator==(const OtwElement&, const OtwElement&) = default;
  friend std::strong_ordering operator<=>(const OtwElement& x, const OtwElement& y);

 private:
  using Rep = std::variant<Finite, Periodic, Listed>;
  explicit OtwElement(Rep rep) : rep_(std::move(rep)) {}
  Rep rep_;
};

// Length of the shortest period of `word` read cyclically-free (classic
// failure-function period). Returns word.size() when the word is primitive.
std::size_t minimal_period(const Word& word);

std::string word_to_string(const Word& w);

}  // namespace drs::otw
