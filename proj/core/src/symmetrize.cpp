#include "sc/symmetrize.hpp"

#include <algorithm>

namespace sc {

std::size_t least_rotation_index(const std::vector<std::uint32_t>& ids) {
  const std::size_t n = ids.size();
  if (n <= 1) return 0;
  std::size_t i = 0, j = 1, k = 0;
  while (i < n && j < n && k < n) {
    std::uint32_t a = ids[(i + k) % n];
    std::uint32_t b = ids[(j + k) % n];
    if (a == b) {
      ++k;
      continue;
    }
    if (a > b)
      i = i + k + 1;
    else
      j = j + k + 1;
    if (i == j) ++j;
    k = 0;
  }
  return std::min(i, j);
}

std::size_t primitive_period(const std::vector<std::uint32_t>& ids) {
  const std::size_t n = ids.size();
  for (std::size_t p = 1; p <= n; ++p) {
    if (n % p != 0) continue;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i)
      if (ids[i] != ids[(i + p) % n]) ok = false;
    if (ok) return p;
  }
  return n;
}

namespace {

std::vector<std::uint32_t> to_ids(const std::vector<Letter>& letters) {
  std::vector<std::uint32_t> ids;
  ids.reserve(letters.size());
  for (Letter l : letters) ids.push_back(letter_id(l));
  return ids;
}

// Builds the class of one weakly cyclically reduced word of length >= 2.
CyclicClass build_class(const FactorFamily& fam, const Word& w,
                        ClosureMode mode, SeedRef ref) {
  CyclicClass out;
  out.refs.push_back(ref);

  std::vector<Letter> cyc = w.letters;
  long seed_split = -1;  // position of the merged letter, if the seed splits
  const Letter first = cyc.front();
  const Letter last = cyc.back();
  if (first.factor == last.factor) {
    const GroupTable& g = fam.factor(first.factor);
    elem_t merged = g.prod(last.elem, first.elem);
    // Non-cancelling by weak cyclic reducedness.
    cyc.pop_back();
    cyc.front().elem = merged;
    seed_split = 0;
  }

  std::vector<std::uint32_t> ids = to_ids(cyc);
  std::size_t rot = least_rotation_index(ids);
  std::rotate(cyc.begin(), cyc.begin() + rot, cyc.end());
  const std::size_t m = cyc.size();
  out.letters = cyc;
  out.period = static_cast<std::uint32_t>(primitive_period(to_ids(cyc)));

  auto add_split = [&](std::size_t q) {
    q %= out.period;
    auto& sp = out.split_positions;
    if (std::find(sp.begin(), sp.end(), q) == sp.end()) sp.push_back(q);
  };
  if (seed_split >= 0) add_split((seed_split + m - rot) % m);
  if (mode == ClosureMode::full_conjugates) {
    for (std::size_t q = 0; q < out.period; ++q)
      if (fam.factor(cyc[q].factor).order() >= 3) add_split(q);
  }
  std::sort(out.split_positions.begin(), out.split_positions.end());
  return out;
}

CyclicClass build_single_letter_class(const FactorFamily& fam, Letter l,
                                      ClosureMode, SeedRef ref) {
  CyclicClass out;
  out.refs.push_back(ref);
  const GroupTable& g = fam.factor(l.factor);
  auto cls = conjugacy_class(g, l.elem);
  out.letters = {Letter{l.factor, cls.front()}};
  out.period = 1;
  return out;
}

void merge_class(std::vector<CyclicClass>& classes, CyclicClass&& c) {
  for (CyclicClass& existing : classes) {
    if (existing.letters != c.letters) continue;
    for (std::uint32_t q : c.split_positions) {
      auto& sp = existing.split_positions;
      if (std::find(sp.begin(), sp.end(), q) == sp.end()) sp.push_back(q);
    }
    std::sort(existing.split_positions.begin(),
              existing.split_positions.end());
    existing.refs.insert(existing.refs.end(), c.refs.begin(), c.refs.end());
    return;
  }
  classes.push_back(std::move(c));
}

}  // namespace

std::vector<CyclicClass> classes_for_words(const FactorFamily& fam,
                                           const std::vector<Word>& words,
                                           ClosureMode mode) {
  std::vector<CyclicClass> classes;
  for (std::size_t i = 0; i < words.size(); ++i) {
    const Word& w = words[i];
    if (w.empty()) throw ValidationError("empty word has no cyclic class");
    SeedRef ref{static_cast<int>(i), false};
    CyclicClass c = w.length() == 1
                        ? build_single_letter_class(fam, w.letters[0], mode, ref)
                        : build_class(fam, w, mode, ref);
    merge_class(classes, std::move(c));
  }
  return classes;
}

SymmetrizedSet symmetrized_closure(FamilyPtr family, std::vector<Word> seeds,
                                   ClosureMode mode) {
  SymmetrizedSet set;
  set.family = family;
  set.mode = mode;
  for (Word& s : seeds) {
    if (s.family != family)
      throw ValidationError("seed from a different factor family");
    Word reduced = weakly_cyclic_reduce(s).first;
    if (reduced.empty())
      throw ValidationError("seed reduces to the empty word");
    set.seeds.push_back(std::move(reduced));
  }
  for (std::size_t i = 0; i < set.seeds.size(); ++i) {
    for (bool inverted : {false, true}) {
      Word w = inverted ? invert(set.seeds[i]) : set.seeds[i];
      SeedRef ref{static_cast<int>(i), inverted};
      CyclicClass c =
          w.length() == 1
              ? build_single_letter_class(*family, w.letters[0], mode, ref)
              : build_class(*family, w, mode, ref);
      merge_class(set.classes, std::move(c));
    }
  }
  return set;
}

Word rotation_word(const SymmetrizedSet& set, const CyclicClass& c,
                   std::size_t offset) {
  const std::size_t m = c.cyclic_length();
  std::vector<Letter> out;
  out.reserve(m);
  for (std::size_t i = 0; i < m; ++i) out.push_back(c.letters[(offset + i) % m]);
  return Word{set.family, std::move(out)};
}

Word split_word(const SymmetrizedSet& set, const CyclicClass& c,
                std::size_t position, elem_t conjugator) {
  const std::size_t m = c.cyclic_length();
  const Letter base = c.letters[position];
  const GroupTable& g = set.family->factor(base.factor);
  if (conjugator == 0 || conjugator == g.inverse(base.elem))
    throw ValidationError("invalid split conjugator");
  std::vector<Letter> out;
  out.reserve(m + 1);
  out.push_back({base.factor, g.prod(conjugator, base.elem)});
  for (std::size_t i = 1; i < m; ++i)
    out.push_back(c.letters[(position + i) % m]);
  out.push_back({base.factor, g.inverse(conjugator)});
  return Word{set.family, std::move(out)};
}

std::vector<Word> materialize(const SymmetrizedSet& set) {
  std::vector<Word> out;
  for (const CyclicClass& c : set.classes) {
    if (c.cyclic_length() == 1) {
      const Letter l = c.letters[0];
      for (elem_t e : conjugacy_class(set.family->factor(l.factor), l.elem))
        out.push_back(Word{set.family, {Letter{l.factor, e}}});
      continue;
    }
    for (std::size_t s = 0; s < c.period; ++s)
      out.push_back(rotation_word(set, c, s));
    for (std::uint32_t q : c.split_positions) {
      const Letter base = c.letters[q];
      const GroupTable& g = set.family->factor(base.factor);
      for (elem_t e = 1; e < g.order(); ++e) {
        if (e == g.inverse(base.elem)) continue;
        out.push_back(split_word(set, c, q, e));
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::size_t member_count(const SymmetrizedSet& set) {
  std::size_t n = 0;
  for (const CyclicClass& c : set.classes) {
    if (c.cyclic_length() == 1) {
      const Letter l = c.letters[0];
      n += conjugacy_class(set.family->factor(l.factor), l.elem).size();
      continue;
    }
    n += c.period;
    for (std::uint32_t q : c.split_positions)
      n += set.family->factor(c.letters[q].factor).order() - 2;
  }
  return n;
}

std::size_t total_cyclic_letters(const SymmetrizedSet& set) {
  std::size_t n = 0;
  for (const CyclicClass& c : set.classes) n += c.cyclic_length();
  return n;
}

bool contains(const SymmetrizedSet& set, const Word& w) {
  if (w.family != set.family)
    throw ValidationError("word from a different factor family");
  if (w.empty()) return false;
  if (!is_weakly_cyclically_reduced(w)) return false;
  const FactorFamily& fam = *set.family;

  if (w.length() == 1) {
    const Letter l = w.letters[0];
    for (const CyclicClass& c : set.classes) {
      if (c.cyclic_length() != 1 || c.letters[0].factor != l.factor) continue;
      auto cls = conjugacy_class(fam.factor(l.factor), c.letters[0].elem);
      if (std::binary_search(cls.begin(), cls.end(), l.elem)) return true;
    }
    return false;
  }

  const Letter first = w.letters.front();
  const Letter last = w.letters.back();
  std::vector<Letter> cyc = w.letters;
  long split_at = -1;
  if (first.factor == last.factor) {
    const GroupTable& g = fam.factor(first.factor);
    cyc.pop_back();
    cyc.front().elem = g.prod(last.elem, first.elem);
    split_at = 0;
  }
  std::vector<std::uint32_t> ids = to_ids(cyc);
  std::size_t rot = least_rotation_index(ids);
  std::rotate(cyc.begin(), cyc.begin() + rot, cyc.end());
  for (const CyclicClass& c : set.classes) {
    if (c.letters != cyc) continue;
    if (split_at < 0) return true;
    std::size_t q = ((split_at + cyc.size() - rot) % cyc.size()) % c.period;
    return std::find(c.split_positions.begin(), c.split_positions.end(), q) !=
           c.split_positions.end();
  }
  return false;
}

}  // namespace sc
