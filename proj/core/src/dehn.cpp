#include "sc/dehn.hpp"

#include <algorithm>
#include <set>

namespace sc {

namespace {

std::string class_label_of(const Presentation& pres, int cls) {
  const SeedRef& r = pres.symmetrized.classes[cls].refs.front();
  std::string base = r.seed < static_cast<int>(pres.seeds.size())
                         ? pres.seeds[r.seed].label()
                         : "r" + std::to_string(r.seed);
  return r.inverted ? base + "^-1" : base;
}

struct Match {
  int pos = -1;        // start in the current word
  int cls = -1;        // class index
  int offset = 0;      // rotation offset within the class
  int len = 0;
};

}  // namespace

DehnSolver::DehnSolver(Presentation pres, VerificationParams params)
    : pres_(std::move(pres)) {
  if (Rational{1, 6} < params.lambda)
    throw ValidationError(
        "Dehn's algorithm needs a metric certificate at lambda <= 1/6");
  cert_ = verify_metric(pres_.symmetrized, params, pres_.labels());
  if (!cert_.pass)
    throw VerificationError(
        "presentation fails C'(" + params.lambda.str() +
        "); Dehn's algorithm refuses to run (worst ratio " +
        cert_.worst_ratio.str() + " at " + cert_.worst_relator + ")");
}

std::pair<Word, ReductionTrace> DehnSolver::reduce(const Word& w) const {
  if (w.family != pres_.family)
    throw ValidationError("word from a different factor family");
  const FactorFamily& fam = *pres_.family;
  ReductionTrace trace;
  trace.initial = w;
  Word cur = w;

  auto record = [&](TraceStep step) {
    step.result_len = static_cast<long>(cur.length());
    trace.steps.push_back(std::move(step));
  };

  for (;;) {
    // cyclic reduction: cancel or merge the boundary letters
    while (cur.length() >= 2) {
      const Letter first = cur.letters.front();
      const Letter last = cur.letters.back();
      if (first.factor != last.factor) break;
      const GroupTable& g = fam.factor(first.factor);
      elem_t m = g.prod(last.elem, first.elem);
      if (m == 0) {
        cur.letters.erase(cur.letters.begin());
        cur.letters.pop_back();
        record({TraceStep::Kind::cyclic_cancel, 0, -1, 0, 0, 0, ""});
      } else {
        cur.letters.pop_back();
        cur.letters.front().elem = m;
        record({TraceStep::Kind::cyclic_merge, 0, -1, 0, 0, 0, ""});
      }
    }
    if (cur.empty()) break;

    // search the cyclic word for a subword matching more than half of a
    // closure relator; leftmost position, then longest, then least member
    const int len = static_cast<int>(cur.length());
    Match best;
    for (int pos = 0; pos < len && best.pos < 0; ++pos) {
      for (std::size_t ci = 0; ci < pres_.symmetrized.classes.size(); ++ci) {
        const CyclicClass& c = pres_.symmetrized.classes[ci];
        const int m = static_cast<int>(c.cyclic_length());
        if (m < 2) continue;
        const int threshold = m / 2 + 1;
        for (int o = 0; o < static_cast<int>(c.period); ++o) {
          int k = 0;
          const int cap = std::min(len, m);
          while (k < cap &&
                 cur.letters[(pos + k) % len] == c.letters[(o + k) % m])
            ++k;
          if (k < threshold) continue;
          bool wins = false;
          if (best.pos < 0 || k > best.len) {
            wins = true;
          } else if (k == best.len) {
            // lexicographically least relator member, then least identity
            const CyclicClass& bc = pres_.symmetrized.classes[best.cls];
            for (int q = 0; q < m; ++q) {
              Letter cand = c.letters[(o + q) % m];
              Letter inc =
                  bc.letters[(best.offset + q) %
                             static_cast<int>(bc.cyclic_length())];
              if (cand != inc) {
                wins = cand < inc;
                break;
              }
            }
          }
          if (wins) best = {pos, static_cast<int>(ci), o, k};
        }
      }
    }
    if (best.pos < 0) break;

    // rotate so the match sits at the front, then substitute the inverse of
    // the relator remainder
    std::rotate(cur.letters.begin(), cur.letters.begin() + best.pos,
                cur.letters.end());
    const CyclicClass& c = pres_.symmetrized.classes[best.cls];
    const int m = static_cast<int>(c.cyclic_length());
    std::vector<Letter> q;
    q.reserve(m - best.len);
    for (int i = best.len; i < m; ++i)
      q.push_back(c.letters[(best.offset + i) % m]);
    Word q_word{pres_.family, std::move(q)};
    Word rest{pres_.family,
              std::vector<Letter>(cur.letters.begin() + best.len,
                                  cur.letters.end())};
    Word next = multiply(invert(q_word), rest);
    if (next.length() >= cur.length())
      throw VerificationError("internal: Dehn step failed to shorten");
    TraceStep step;
    step.kind = TraceStep::Kind::relator_sub;
    step.rotation = best.pos;
    step.class_index = best.cls;
    step.class_offset = best.offset;
    step.match_len = best.len;
    step.relator = class_label_of(pres_, best.cls);
    cur = std::move(next);
    record(std::move(step));
  }
  trace.final_word = cur;
  return {cur, trace};
}

bool DehnSolver::is_trivial(const Word& w) const {
  return reduce(w).first.empty();
}

EmbeddingReport DehnSolver::check_factor_embedding() const {
  EmbeddingReport rep;
  rep.pass = true;
  const FactorFamily& fam = *pres_.family;
  for (int f = 0; f < fam.count(); ++f) {
    const GroupTable& g = fam.factor(f);
    for (elem_t e = 1; e < g.order(); ++e) {
      Word w{pres_.family, {Letter{static_cast<std::uint16_t>(f), e}}};
      bool ok = !is_trivial(w);
      if (!ok) rep.pass = false;
      rep.rows.push_back({g.name, g.elements[e], ok});
    }
  }
  return rep;
}

GenerationReport DehnSolver::check_generation(
    const std::vector<int>& targets) const {
  GenerationReport rep;
  const FactorFamily& fam = *pres_.family;
  std::vector<bool> covered(fam.count(), false);
  for (int t : targets) {
    if (t < 0 || t >= fam.count())
      throw ValidationError("generation check: unknown target factor");
    covered[t] = true;
  }
  std::set<Letter> expressed;
  auto factor_covered = [&](int f) {
    if (covered[f]) return true;
    for (elem_t e : pres_.factor_gens.at(f))
      if (!expressed.count(Letter{static_cast<std::uint16_t>(f), e}))
        return false;
    return true;
  };

  bool progress = true;
  while (progress) {
    progress = false;
    for (int f = 0; f < fam.count(); ++f)
      if (!covered[f] && factor_covered(f)) {
        covered[f] = true;
        progress = true;
      }
    for (const TaggedRelator& r : pres_.seeds) {
      if (r.word.empty()) continue;
      const Letter g = r.word.letters.back();
      if (covered[g.factor]) continue;
      const auto& gens = pres_.factor_gens.at(g.factor);
      if (std::find(gens.begin(), gens.end(), g.elem) == gens.end()) continue;
      if (expressed.count(g)) continue;
      int occurrences = 0;
      for (const Letter& l : r.word.letters)
        if (l == g) ++occurrences;
      if (occurrences != 1) continue;
      bool prefix_ok = true;
      for (std::size_t i = 0; i + 1 < r.word.length(); ++i)
        if (!covered[r.word.letters[i].factor]) prefix_ok = false;
      if (!prefix_ok) continue;

      Word prefix{pres_.family,
                  std::vector<Letter>(r.word.letters.begin(),
                                      r.word.letters.end() - 1)};
      Word expression = invert(prefix);
      Word g_word{pres_.family, {g}};
      bool verified = is_trivial(multiply(expression, invert(g_word)));
      rep.rows.push_back({letter_token(fam, g), r.label(),
                          static_cast<long>(expression.length()), verified});
      expressed.insert(g);
      progress = true;
    }
  }
  rep.pass = true;
  for (int f = 0; f < fam.count(); ++f) {
    if (covered[f]) continue;
    rep.pass = false;
    for (elem_t e : pres_.factor_gens.at(f)) {
      Letter l{static_cast<std::uint16_t>(f), e};
      if (!expressed.count(l)) rep.unexpressed.push_back(letter_token(fam, l));
    }
  }
  for (const GenerationRow& row : rep.rows)
    if (!row.verified) rep.pass = false;
  return rep;
}

Word replay_trace(const Presentation& pres, const ReductionTrace& trace) {
  const FactorFamily& fam = *pres.family;
  Word cur = trace.initial;
  for (const TraceStep& step : trace.steps) {
    switch (step.kind) {
      case TraceStep::Kind::cyclic_cancel: {
        if (cur.length() < 2) throw ValidationError("trace replay: underflow");
        cur.letters.erase(cur.letters.begin());
        cur.letters.pop_back();
        break;
      }
      case TraceStep::Kind::cyclic_merge: {
        const Letter first = cur.letters.front();
        const Letter last = cur.letters.back();
        const GroupTable& g = fam.factor(first.factor);
        cur.letters.pop_back();
        cur.letters.front().elem = g.prod(last.elem, first.elem);
        break;
      }
      case TraceStep::Kind::relator_sub: {
        std::rotate(cur.letters.begin(), cur.letters.begin() + step.rotation,
                    cur.letters.end());
        const CyclicClass& c = pres.symmetrized.classes.at(step.class_index);
        const int m = static_cast<int>(c.cyclic_length());
        for (int i = 0; i < step.match_len; ++i)
          if (cur.letters.at(i) != c.letters[(step.class_offset + i) % m])
            throw ValidationError("trace replay: match mismatch");
        std::vector<Letter> q;
        for (int i = step.match_len; i < m; ++i)
          q.push_back(c.letters[(step.class_offset + i) % m]);
        Word q_word{pres.family, std::move(q)};
        Word rest{pres.family,
                  std::vector<Letter>(cur.letters.begin() + step.match_len,
                                      cur.letters.end())};
        cur = multiply(invert(q_word), rest);
        break;
      }
    }
    if (static_cast<long>(cur.length()) != step.result_len)
      throw ValidationError("trace replay: length mismatch");
  }
  return cur;
}

std::string render_trace(const ReductionTrace& trace) {
  std::string out;
  out += "initial (" + std::to_string(trace.initial.length()) + "): " +
         to_literal(trace.initial) + "\n";
  for (const TraceStep& s : trace.steps) {
    switch (s.kind) {
      case TraceStep::Kind::cyclic_cancel:
        out += "cyclic-cancel -> " + std::to_string(s.result_len) + "\n";
        break;
      case TraceStep::Kind::cyclic_merge:
        out += "cyclic-merge -> " + std::to_string(s.result_len) + "\n";
        break;
      case TraceStep::Kind::relator_sub:
        out += "offset " + std::to_string(s.rotation) + " relator " +
               s.relator + " rot " + std::to_string(s.class_offset) +
               " matched " + std::to_string(s.match_len) + " -> " +
               std::to_string(s.result_len) + "\n";
        break;
    }
  }
  out += "final (" + std::to_string(trace.final_word.length()) + "): " +
         (trace.final_word.empty() ? "1" : to_literal(trace.final_word)) +
         "\n";
  return out;
}

NormalClosureOracle::NormalClosureOracle(const Presentation& pres, int max_len,
                                         std::size_t max_closure_letters) {
  const SymmetrizedSet& set = pres.symmetrized;
  if (total_cyclic_letters(set) > max_closure_letters)
    throw ValidationError("oracle: presentation exceeds the toy-scale bound");
  const FactorFamily& fam = *pres.family;

  // all reduced words up to max_len as conjugators
  std::vector<Word> conjugators{Word{pres.family, {}}};
  std::size_t frontier_begin = 0;
  for (int l = 1; l <= max_len; ++l) {
    std::size_t frontier_end = conjugators.size();
    for (std::size_t i = frontier_begin; i < frontier_end; ++i) {
      for (int f = 0; f < fam.count(); ++f) {
        if (!conjugators[i].letters.empty() &&
            conjugators[i].letters.back().factor == f)
          continue;
        for (elem_t e = 1; e < fam.factor(f).order(); ++e) {
          Word w = conjugators[i];
          w.letters.push_back({static_cast<std::uint16_t>(f), e});
          conjugators.push_back(std::move(w));
          if (conjugators.size() > 2000000)
            throw ValidationError("oracle: conjugator enumeration too large");
        }
      }
    }
    frontier_begin = frontier_end;
  }

  std::vector<Word> members = materialize(set);
  std::set<std::vector<Letter>> gen_set;
  for (const Word& r : members)
    for (const Word& x : conjugators) {
      Word g = multiply(multiply(x, r), invert(x));
      gen_set.insert(g.letters);
    }
  std::vector<Word> generators;
  for (const auto& letters : gen_set)
    generators.push_back(Word{pres.family, letters});

  std::set<std::vector<Letter>> reached;
  std::vector<Word> queue{Word{pres.family, {}}};
  reached.insert({});
  while (!queue.empty()) {
    Word u = std::move(queue.back());
    queue.pop_back();
    for (const Word& g : generators) {
      Word v = multiply(u, g);
      if (static_cast<int>(v.length()) > max_len) continue;
      if (reached.insert(v.letters).second) queue.push_back(v);
    }
  }
  for (const auto& letters : reached)
    reached_.push_back(Word{pres.family, letters});
  std::sort(reached_.begin(), reached_.end());
}

OracleVerdict NormalClosureOracle::is_trivial(const Word& w) const {
  if (std::binary_search(reached_.begin(), reached_.end(), w))
    return OracleVerdict::trivial;
  return OracleVerdict::unknown;
}

OracleVerdict oracle_is_trivial(const Presentation& pres, const Word& w,
                                int max_len) {
  NormalClosureOracle oracle(pres, max_len);
  return oracle.is_trivial(w);
}

}  // namespace sc
