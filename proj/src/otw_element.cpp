#include "drsys/otw_element.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace drs::otw {

GeneratorRule GeneratorRule::affine(Symbol start, Symbol step) {
  if (step == 0) throw std::invalid_argument("affine generator needs a nonzero step");
  return {Kind::Affine, start, step};
}

GeneratorRule GeneratorRule::sparse_ones(Symbol first_gap, Symbol increment) {
  if (first_gap < 0 || increment < 1)
    throw std::invalid_argument("sparse-ones generator needs gap >= 0 and increment >= 1");
  return {Kind::SparseOnes, first_gap, increment};
}

Symbol GeneratorRule::at(std::size_t i) const {
  if (kind == Kind::Affine) return a + b * static_cast<Symbol>(i);
  // ones at 0, 1+g, 2+2g+inc, ...
  std::size_t pos = 0;
  Symbol gap = a;
  while (pos < i) {
    pos += 1 + static_cast<std::size_t>(gap);
    gap += b;
  }
  return pos == i ? 1 : 0;
}

std::string GeneratorRule::describe() const {
  std::ostringstream os;
  if (kind == Kind::Affine)
    os << "affine(" << a << "," << b << ")";
  else
    os << "sparse_ones(" << a << "," << b << ")";
  return os.str();
}

std::size_t minimal_period(const Word& word) {
  const std::size_t n = word.size();
  if (n == 0) return 0;
  std::vector<std::size_t> fail(n, 0);
  for (std::size_t i = 1, k = 0; i < n; ++i) {
    while (k > 0 && word[i] != word[k]) k = fail[k - 1];
    if (word[i] == word[k]) ++k;
    fail[i] = k;
  }
  const std::size_t p = n - fail[n - 1];
  return n % p == 0 ? p : n;
}

std::string word_to_string(const Word& w) {
  std::ostringstream os;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) os << ' ';
    os << w[i];
  }
  return os.str();
}

OtwElement::OtwElement() : rep_(Finite{}) {}

OtwElement OtwElement::finite(Word symbols) { return OtwElement(Finite{std::move(symbols)}); }

OtwElement OtwElement::periodic(Word prefix, Word period) {
  if (period.empty()) throw std::invalid_argument("periodic element needs a nonempty period");
  period.resize(minimal_period(period));
  while (!prefix.empty() && prefix.back() == period.back()) {
    std::rotate(period.rbegin(), period.rbegin() + 1, period.rend());
    prefix.pop_back();
  }
  return OtwElement(Periodic{std::move(prefix), std::move(period)});
}

OtwElement OtwElement::listed(Word prefix, GeneratorRule rule, std::size_t offset) {
  if (rule.kind == GeneratorRule::Kind::Affine) {
    // an affine tail is determined by its first symbol, so fold the offset in
    rule.a += rule.b * static_cast<Symbol>(offset);
    offset = 0;
    while (!prefix.empty() && prefix.back() == rule.a - rule.b) {
      rule.a -= rule.b;
      prefix.pop_back();
    }
    return OtwElement(Listed{std::move(prefix), rule, 0});
  }
  while (!prefix.empty() && offset > 0 && prefix.back() == rule.at(offset - 1)) {
    prefix.pop_back();
    --offset;
  }
  return OtwElement(Listed{std::move(prefix), rule, offset});
}

bool OtwElement::is_empty_word() const {
  const auto* f = as_finite();
  return f != nullptr && f->symbols.empty();
}

std::optional<std::size_t> OtwElement::length() const {
  if (const auto* f = as_finite()) return f->symbols.size();
  return std::nullopt;
}

std::optional<Symbol> OtwElement::symbol_at(std::size_t i) const {
  return std::visit(
      [i](const auto& r) -> std::optional<Symbol> {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, Finite>) {
          if (i < r.symbols.size()) return r.symbols[i];
          return std::nullopt;
        } else if constexpr (std::is_same_v<T, Periodic>) {
          if (i < r.prefix.size()) return r.prefix[i];
          return r.period[(i - r.prefix.size()) % r.period.size()];
        } else {
          if (i < r.prefix.size()) return r.prefix[i];
          return r.rule.at(r.offset + (i - r.prefix.size()));
        }
      },
      rep_);
}

Word OtwElement::head(std::size_t n) const {
  Word out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto s = symbol_at(i);
    if (!s) break;
    out.push_back(*s);
  }
  return out;
}

std::optional<OtwElement> OtwElement::shift() const {
  if (const auto* f = as_finite()) {
    if (f->symbols.empty()) return std::nullopt;
    return finite(Word(f->symbols.begin() + 1, f->symbols.end()));
  }
  if (const auto* p = as_periodic()) {
    if (!p->prefix.empty()) return periodic(Word(p->prefix.begin() + 1, p->prefix.end()), p->period);
    Word rotated = p->period;
    std::rotate(rotated.begin(), rotated.begin() + 1, rotated.end());
    return periodic({}, std::move(rotated));
  }
  const auto& l = *as_listed();
  if (!l.prefix.empty()) return listed(Word(l.prefix.begin() + 1, l.prefix.end()), l.rule, l.offset);
  return listed({}, l.rule, l.offset + 1);
}

OtwElement OtwElement::prepend(Symbol a) const {
  return std::visit(
      [a](const auto& r) -> OtwElement {
        using T = std::decay_t<decltype(r)>;
        Word prefix;
        if constexpr (std::is_same_v<T, Finite>) {
          prefix.push_back(a);
          prefix.insert(prefix.end(), r.symbols.begin(), r.symbols.end());
          return finite(std::move(prefix));
        } else {
          prefix.push_back(a);
          prefix.insert(prefix.end(), r.prefix.begin(), r.prefix.end());
          if constexpr (std::is_same_v<T, Periodic>)
            return periodic(std::move(prefix), r.period);
          else
            return listed(std::move(prefix), r.rule, r.offset);
        }
      },
      rep_);
}

std::string OtwElement::to_string() const {
  if (is_empty_word()) return "w";
  if (const auto* f = as_finite()) return "<" + word_to_string(f->symbols) + ">";
  std::ostringstream os;
  if (const auto* p = as_periodic()) {
    if (!p->prefix.empty()) os << word_to_string(p->prefix) << ' ';
    os << '(' << word_to_string(p->period) << ")^inf";
    return os.str();
  }
  const auto& l = *as_listed();
  if (!l.prefix.empty()) os << word_to_string(l.prefix) << ' ';
  os << l.rule.describe() << '@' << l.offset;
  return os.str();
}

std::strong_ordering operator<=>(const OtwElement& x, const OtwElement& y) {
  if (auto c = x.rep_.index() <=> y.rep_.index(); c != 0) return c;
  if (const auto* fx = x.as_finite()) {
    const auto* fy = y.as_finite();
    if (auto c = fx->symbols.size() <=> fy->symbols.size(); c != 0) return c;
    return fx->symbols <=> fy->symbols;
  }
  if (const auto* px = x.as_periodic()) {
    const auto* py = y.as_periodic();
    if (auto c = px->prefix.size() + px->period.size() <=> py->prefix.size() + py->period.size(); c != 0)
      return c;
    if (auto c = px->prefix <=> py->prefix; c != 0) return c;
    return px->period <=> py->period;
  }
  const auto* lx = x.as_listed();
  const auto* ly = y.as_listed();
  if (auto c = lx->rule <=> ly->rule; c != 0) return c;
  if (auto c = lx->offset <=> ly->offset; c != 0) return c;
  if (auto c = lx->prefix.size() <=> ly->prefix.size(); c != 0) return c;
  return lx->prefix <=> ly->prefix;
}

}  // namespace drs::otw
