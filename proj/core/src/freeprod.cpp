#include "sc/freeprod.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace sc {

int FactorFamily::index_of(const std::string& name) const {
  for (int i = 0; i < count(); ++i)
    if (factors[i].name == name) return i;
  return -1;
}

int FactorFamily::require(const std::string& name) const {
  int i = index_of(name);
  if (i < 0) throw ValidationError("unknown factor '" + name + "'");
  return i;
}

void FactorFamily::validate() const {
  if (factors.empty()) throw ValidationError("factor family is empty");
  std::set<std::string> names;
  for (const GroupTable& g : factors) {
    g.validate();
    if (g.order() < 2)
      throw ValidationError("factor " + g.name + " is trivial");
    if (!names.insert(g.name).second)
      throw ValidationError("duplicate factor id " + g.name);
  }
}

FamilyPtr make_family(std::vector<GroupTable> factors) {
  auto fam = std::make_shared<FactorFamily>();
  fam->factors = std::move(factors);
  fam->validate();
  return fam;
}

bool same_family(const Word& a, const Word& b) { return a.family == b.family; }

void require_same_family(const Word& a, const Word& b) {
  if (!same_family(a, b))
    throw ValidationError("words belong to different factor families");
}

Word normalize(FamilyPtr family, std::span<const Letter> raw) {
  const FactorFamily& fam = *family;
  std::vector<Letter> st;
  st.reserve(raw.size());
  for (Letter l : raw) {
    if (l.factor >= fam.count())
      throw ValidationError("letter references unknown factor index " +
                            std::to_string(l.factor));
    const GroupTable& g = fam.factor(l.factor);
    if (l.elem >= g.order())
      throw ValidationError("letter references unknown element of " + g.name);
    if (l.elem == 0) continue;
    if (!st.empty() && st.back().factor == l.factor) {
      elem_t m = g.prod(st.back().elem, l.elem);
      if (m == 0)
        st.pop_back();
      else
        st.back().elem = m;
    } else {
      st.push_back(l);
    }
  }
  return Word{std::move(family), std::move(st)};
}

Word make_word(FamilyPtr family, std::initializer_list<Letter> raw) {
  return normalize(std::move(family),
                   std::span<const Letter>(raw.begin(), raw.size()));
}

Word multiply(const Word& u, const Word& v) {
  require_same_family(u, v);
  std::vector<Letter> raw;
  raw.reserve(u.length() + v.length());
  raw.insert(raw.end(), u.letters.begin(), u.letters.end());
  raw.insert(raw.end(), v.letters.begin(), v.letters.end());
  return normalize(u.family, raw);
}

Word invert(const Word& u) {
  std::vector<Letter> out;
  out.reserve(u.length());
  for (auto it = u.letters.rbegin(); it != u.letters.rend(); ++it)
    out.push_back({it->factor, u.family->factor(it->factor).inverse(it->elem)});
  return Word{u.family, std::move(out)};
}

Word word_pow(const Word& u, long k) {
  if (k < 0) return word_pow(invert(u), -k);
  std::vector<Letter> raw;
  raw.reserve(u.length() * static_cast<std::size_t>(k));
  for (long i = 0; i < k; ++i)
    raw.insert(raw.end(), u.letters.begin(), u.letters.end());
  return normalize(u.family, raw);
}

bool is_reduced(const FactorFamily& fam, std::span<const Letter> letters) {
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (letters[i].elem == 0) return false;
    if (letters[i].factor >= fam.count()) return false;
    if (i + 1 < letters.size() && letters[i].factor == letters[i + 1].factor)
      return false;
  }
  return true;
}

bool is_weakly_cyclically_reduced(const Word& u) {
  if (u.length() <= 1) return true;
  const Letter first = u.letters.front();
  const Letter last = u.letters.back();
  if (first.factor != last.factor) return true;
  return u.family->factor(first.factor).prod(last.elem, first.elem) != 0;
}

std::pair<Word, Word> weakly_cyclic_reduce(const Word& u) {
  Word v = u;
  Word conj{u.family, {}};
  while (v.length() >= 2) {
    const Letter first = v.letters.front();
    const Letter last = v.letters.back();
    if (first.factor != last.factor) break;
    const GroupTable& g = v.family->factor(first.factor);
    if (g.prod(last.elem, first.elem) != 0) break;
    // v = g1 m g1^-1; conjugating by g1^-1 strips both ends.
    Word step{v.family, {Letter{first.factor, g.inverse(first.elem)}}};
    conj = multiply(step, conj);
    v.letters.erase(v.letters.begin());
    v.letters.pop_back();
  }
  return {std::move(v), std::move(conj)};
}

// --- word literals ---

namespace {

elem_t elem_pow(const GroupTable& g, elem_t x, long k) {
  long ord = g.elem_order(x);
  long kk = ((k % ord) + ord) % ord;
  elem_t out = 0;
  for (long i = 0; i < kk; ++i) out = g.prod(out, x);
  return out;
}

bool parse_long(const std::string& s, long& out) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (std::size_t j = i; j < s.size(); ++j)
    if (!std::isdigit(static_cast<unsigned char>(s[j]))) return false;
  out = std::stol(s);
  return true;
}

std::vector<Letter> invert_raw(const FactorFamily& fam,
                               const std::vector<Letter>& raw) {
  std::vector<Letter> out;
  out.reserve(raw.size());
  for (auto it = raw.rbegin(); it != raw.rend(); ++it)
    out.push_back({it->factor, fam.factor(it->factor).inverse(it->elem)});
  return out;
}

std::vector<Letter> repeat_raw(const FactorFamily& fam,
                               const std::vector<Letter>& raw, long k) {
  std::vector<Letter> base = k < 0 ? invert_raw(fam, raw) : raw;
  if (k < 0) k = -k;
  std::vector<Letter> out;
  out.reserve(base.size() * static_cast<std::size_t>(k));
  for (long i = 0; i < k; ++i)
    out.insert(out.end(), base.begin(), base.end());
  return out;
}

}  // namespace

Word parse_word_literal(FamilyPtr family, const std::string& text) {
  const FactorFamily& fam = *family;
  std::vector<std::vector<Letter>> stack(1);
  std::size_t i = 0;
  const std::size_t n = text.size();

  auto err = [&](const std::string& msg, std::size_t pos) -> ParseError {
    return ParseError(msg + " in word literal", 1, static_cast<int>(pos + 1));
  };

  auto read_exponent = [&](long& k) {
    k = 1;
    if (i < n && text[i] == '^') {
      std::size_t j = ++i;
      if (j < n && (text[j] == '-' || text[j] == '+')) ++j;
      while (j < n && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      if (!parse_long(text.substr(i, j - i), k))
        throw err("bad exponent", i);
      i = j;
    }
  };

  while (i < n) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '(') {
      stack.emplace_back();
      ++i;
      continue;
    }
    if (c == ')') {
      if (stack.size() < 2) throw err("unmatched ')'", i);
      ++i;
      long k = 0;
      read_exponent(k);
      std::vector<Letter> group = std::move(stack.back());
      stack.pop_back();
      std::vector<Letter> expanded = repeat_raw(fam, group, k);
      stack.back().insert(stack.back().end(), expanded.begin(),
                          expanded.end());
      continue;
    }
    // A factor.elem token; element names may contain balanced parentheses.
    std::size_t start = i;
    int depth = 0;
    while (i < n) {
      char t = text[i];
      if (std::isspace(static_cast<unsigned char>(t))) break;
      if (t == '(') {
        ++depth;
      } else if (t == ')') {
        if (depth == 0) break;  // closes an enclosing group
        --depth;
      }
      ++i;
    }
    if (depth != 0) throw err("unbalanced parentheses in token", start);
    std::string tok = text.substr(start, i - start);
    auto dot = tok.find('.');
    if (dot == std::string::npos || dot == 0)
      throw err("expected factor.elem, got '" + tok + "'", start);
    int fidx = fam.index_of(tok.substr(0, dot));
    if (fidx < 0) throw err("unknown factor '" + tok.substr(0, dot) + "'",
                            start);
    const GroupTable& g = fam.factor(fidx);
    std::string rest = tok.substr(dot + 1);
    // Prefer the name^exponent split when the base name resolves.
    std::string ename = rest;
    long k = 1;
    auto caret = rest.rfind('^');
    if (caret != std::string::npos && caret > 0) {
      long kk;
      if (parse_long(rest.substr(caret + 1), kk) &&
          g.index_of(rest.substr(0, caret))) {
        ename = rest.substr(0, caret);
        k = kk;
      }
    }
    auto eidx = g.index_of(ename);
    if (!eidx)
      throw err("unknown element '" + rest + "' of factor " + g.name, start);
    stack.back().push_back({static_cast<std::uint16_t>(fidx),
                            elem_pow(g, *eidx, k)});
  }
  if (stack.size() != 1) throw err("unmatched '('", n ? n - 1 : 0);
  return normalize(std::move(family), stack.front());
}

std::string letter_token(const FactorFamily& fam, Letter l) {
  return fam.factor(l.factor).name + "." + fam.factor(l.factor).elements[l.elem];
}

std::string to_literal(const Word& w) {
  std::string out;
  for (std::size_t i = 0; i < w.letters.size(); ++i) {
    if (i) out += ' ';
    out += letter_token(*w.family, w.letters[i]);
  }
  return out;
}

}  // namespace sc
