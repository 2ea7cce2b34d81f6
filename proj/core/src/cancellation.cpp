#include "sc/cancellation.hpp"

#include <algorithm>
#include <atomic>
#include <optional>
#include <thread>

namespace sc {

namespace {

// ---------------------------------------------------------------------------
// Scan-side view of a cyclic class.

struct ScanClass {
  const CyclicClass* cls = nullptr;
  int idx = 0;
  int m = 0;  // cyclic length
  int p = 0;  // primitive period
  std::vector<std::uint32_t> ids2;  // letters doubled, as packed ids
  std::vector<std::uint8_t> split;  // size m; 1 at split positions
  bool single() const { return m == 1; }
  Letter letter(std::size_t i) const { return cls->letters[i % m]; }
};

ScanClass make_scan_class(const CyclicClass& c, int idx) {
  ScanClass s;
  s.cls = &c;
  s.idx = idx;
  s.m = static_cast<int>(c.cyclic_length());
  s.p = static_cast<int>(c.period);
  s.ids2.reserve(2 * s.m);
  for (int r = 0; r < 2; ++r)
    for (int i = 0; i < s.m; ++i) s.ids2.push_back(letter_id(c.letters[i]));
  s.split.assign(s.m, 0);
  for (std::uint32_t q : c.split_positions)
    for (int i = static_cast<int>(q); i < s.m; i += s.p) s.split[i] = 1;
  return s;
}

// Identity of one closure member: (class, rot|split, offset, conjugator).
// Orders identically however a scan enumerates members, which keeps witness
// tie-breaking reproducible across the fast and materialized paths.
struct MemberId {
  int cls = -1;
  int kind = 0;  // 0 rotation, 1 split
  int offset = 0;
  int conj = 0;
  friend auto operator<=>(const MemberId&, const MemberId&) = default;
};

enum Channel { kRotA = 0, kSplitA = 1, kRotB = 2, kSplitB = 3 };

// Best piece seen for one channel of one class pair. Cell-form slots rebuild
// their canonical witness from the class letters; explicit slots (fallback,
// materialized path) carry the piece directly.
struct Slot {
  int len = 0;
  bool explicit_cell = false;
  std::uint32_t s = 0, t = 0;  // cell form: anchor pair
  bool exact = false;          // first letters equal at the anchor
  bool sa = false, sb = false;
  std::vector<Letter> piece;  // explicit form only
  MemberId side, partner;
};

struct PairRec {
  int a = -1, b = -1;  // class indices, a <= b
  Slot ch[4];
};

struct ScanContext {
  const SymmetrizedSet* set = nullptr;
  const FactorFamily* fam = nullptr;
  std::vector<ScanClass> sc;
  Rational lambda{1, 6};
  bool early_exit = false;
  std::atomic<bool> abort{false};

  ScanContext() = default;
  ScanContext(const ScanContext&) = delete;
};

void init_context(ScanContext& cx, const SymmetrizedSet& set,
                  const VerificationParams& params) {
  if (set.classes.empty()) throw ValidationError("empty closure");
  cx.set = &set;
  cx.fam = set.family.get();
  cx.lambda = params.lambda;
  cx.early_exit = params.early_exit;
  for (std::size_t i = 0; i < set.classes.size(); ++i)
    cx.sc.push_back(make_scan_class(set.classes[i], static_cast<int>(i)));
}

bool violates(const Rational& lambda, long piece, long relator) {
  // |p| < lambda * |r| fails
  return static_cast<__int128>(piece) * lambda.den >=
         static_cast<__int128>(lambda.num) * relator;
}

// --- canonical witness pieces ----------------------------------------------

Letter least_nonidentity(std::uint16_t factor) { return {factor, 1}; }

// Least valid first letter of a channel's piece at a cell. Pieces of length
// one may start with any nonidentity letter of the shared factor; longer
// pieces start with the realizing member's first letter, which split members
// widen to the whole factor.
Letter cell_first(const ScanContext& cx, const ScanClass& A,
                  const ScanClass& B, const Slot& c, Channel ch, int len) {
  const Letter x = A.letter(c.s);
  const Letter y = B.letter(c.t);
  const std::uint16_t f = x.factor;
  if (len == 1) return least_nonidentity(f);
  auto least_excluding = [&](elem_t e1, elem_t e2) -> std::optional<Letter> {
    const GroupTable& g = cx.fam->factor(f);
    elem_t e = 1;
    while (e < g.order() && (e == e1 || e == e2)) ++e;
    if (e >= g.order()) return std::nullopt;
    return Letter{f, e};
  };
  if (c.exact) {
    if (ch == kRotA || ch == kRotB) return x;
    auto o = least_excluding(x.elem, x.elem);
    return o ? *o : x;
  }
  switch (ch) {
    case kRotA:
      return x;
    case kRotB:
      return y;
    case kSplitA: {
      Letter best = y;
      if (c.sb)
        if (auto o = least_excluding(x.elem, y.elem)) best = std::min(best, *o);
      return best;
    }
    case kSplitB: {
      Letter best = x;
      if (c.sa)
        if (auto o = least_excluding(x.elem, y.elem)) best = std::min(best, *o);
      return best;
    }
  }
  return x;
}

// Interior letters are the exact common run (read off side A); the last
// letter is the least nonidentity element of the factor at the break, which
// is the lexicographically least among the valid fractional endings.
Letter cell_piece_letter(const ScanContext& cx, const ScanClass& A,
                         const ScanClass& B, const Slot& c, Channel ch,
                         int len, int k) {
  if (k == 0) return cell_first(cx, A, B, c, ch, len);
  if (k == len - 1) return least_nonidentity(A.letter(c.s + len - 1).factor);
  return A.letter(c.s + k);
}

Letter slot_piece_letter(const ScanContext& cx, const PairRec& pr,
                         const Slot& sl, Channel ch, int k) {
  if (sl.explicit_cell) return sl.piece[k];
  return cell_piece_letter(cx, cx.sc[pr.a], cx.sc[pr.b], sl, ch, sl.len, k);
}

std::vector<Letter> slot_piece(const ScanContext& cx, const PairRec& pr,
                               const Slot& sl, Channel ch) {
  std::vector<Letter> out;
  out.reserve(sl.len);
  for (int k = 0; k < sl.len; ++k)
    out.push_back(slot_piece_letter(cx, pr, sl, ch, k));
  return out;
}

elem_t least_conjugator(const GroupTable& g, elem_t base) {
  elem_t c = 1;
  while (c < g.order() && c == g.inverse(base)) ++c;
  return c;
}

// Members realizing a cell slot on its two sides, in (side, partner) order.
std::pair<MemberId, MemberId> cell_members(const ScanContext& cx,
                                           const PairRec& pr, const Slot& c,
                                           Channel ch, int len) {
  const ScanClass& A = cx.sc[pr.a];
  const ScanClass& B = cx.sc[pr.b];
  const Letter x = A.letter(c.s);
  const Letter y = B.letter(c.t);
  const GroupTable& g = cx.fam->factor(x.factor);
  const int sa_off = static_cast<int>(c.s % A.p);
  const int sb_off = static_cast<int>(c.t % B.p);
  if (len == 1) {
    // A one-letter piece prefixes any member starting in the shared factor;
    // the least realizing pair uses rotations, or the least split variant on
    // the split channels.
    MemberId rot_a{pr.a, 0, sa_off, 0};
    MemberId rot_b{pr.b, 0, sb_off, 0};
    switch (ch) {
      case kRotA: return {rot_a, rot_b};
      case kRotB: return {rot_b, rot_a};
      case kSplitA:
        return {{pr.a, 1, sa_off, least_conjugator(g, x.elem)}, rot_b};
      case kSplitB:
        return {{pr.b, 1, sb_off, least_conjugator(g, y.elem)}, rot_a};
    }
  }
  const Letter f = cell_first(cx, A, B, c, ch, len);
  MemberId ma = f == x ? MemberId{pr.a, 0, sa_off, 0}
                       : MemberId{pr.a, 1, sa_off,
                                  g.prod(f.elem, g.inverse(x.elem))};
  MemberId mb = f == y ? MemberId{pr.b, 0, sb_off, 0}
                       : MemberId{pr.b, 1, sb_off,
                                  g.prod(f.elem, g.inverse(y.elem))};
  if (ch == kRotA || ch == kSplitA) return {ma, mb};
  return {mb, ma};
}

bool candidate_wins(const ScanContext& cx, const PairRec& pr, const Slot& inc,
                    const Slot& cand, Channel ch) {
  for (int k = 0; k < cand.len; ++k) {
    Letter a = slot_piece_letter(cx, pr, cand, ch, k);
    Letter b = slot_piece_letter(cx, pr, inc, ch, k);
    if (a != b) return a < b;
  }
  if (cand.side != inc.side) return cand.side < inc.side;
  return cand.partner < inc.partner;
}

void update_slot(ScanContext& cx, PairRec& pr, Channel ch, Slot cand) {
  Slot& sl = pr.ch[ch];
  if (!cand.explicit_cell) {
    auto [s, p] = cell_members(cx, pr, cand, ch, cand.len);
    cand.side = s;
    cand.partner = p;
  }
  if (cand.len == sl.len && !candidate_wins(cx, pr, sl, cand, ch)) return;
  sl = std::move(cand);
  if (cx.early_exit) {
    const ScanClass& side_cls =
        (ch == kRotA || ch == kSplitA) ? cx.sc[pr.a] : cx.sc[pr.b];
    long mlen = side_cls.m + ((ch == kSplitA || ch == kSplitB) ? 1 : 0);
    if (violates(cx.lambda, sl.len, mlen))
      cx.abort.store(true, std::memory_order_relaxed);
  }
}

inline void attribute(ScanContext& cx, PairRec& pr, Channel ch, int len,
                      std::uint32_t s, std::uint32_t t, bool exact, bool sa,
                      bool sb) {
  if (len < pr.ch[ch].len) return;  // hot path
  Slot cand;
  cand.len = len;
  cand.s = s;
  cand.t = t;
  cand.exact = exact;
  cand.sa = sa;
  cand.sb = sb;
  update_slot(cx, pr, ch, std::move(cand));
}

void attribute_explicit(ScanContext& cx, PairRec& pr, Channel ch, int len,
                        std::vector<Letter> piece, MemberId side,
                        MemberId partner) {
  if (len < pr.ch[ch].len) return;
  Slot cand;
  cand.len = len;
  cand.explicit_cell = true;
  cand.piece = std::move(piece);
  cand.side = side;
  cand.partner = partner;
  update_slot(cx, pr, ch, std::move(cand));
}

// --- exact fallback for near-total overlaps --------------------------------

int lcsp_len(const std::vector<Letter>& w1, const std::vector<Letter>& w2) {
  const std::size_t minlen = std::min(w1.size(), w2.size());
  std::size_t L = 0;
  while (L < minlen && w1[L] == w2[L]) ++L;
  if (L == minlen) return static_cast<int>(minlen);
  if (w1[L].factor == w2[L].factor) return static_cast<int>(L) + 1;
  return static_cast<int>(L);
}

std::vector<Letter> canonical_piece_from_pair(const std::vector<Letter>& w1,
                                              int len) {
  std::vector<Letter> out(w1.begin(), w1.begin() + (len - 1));
  out.push_back(least_nonidentity(w1[len - 1].factor));
  return out;
}

// Explicit member-fan enumeration at one anchor pair; exact whatever the
// wrap-around letters do. Triggered only when the interior run hits the cap.
void fallback_cell(ScanContext& cx, PairRec& pr, std::uint32_t s,
                   std::uint32_t t) {
  const ScanClass& A = cx.sc[pr.a];
  const ScanClass& B = cx.sc[pr.b];
  const Letter x = A.letter(s);
  const Letter y = B.letter(t);
  const GroupTable& g = cx.fam->factor(x.factor);
  struct Variant {
    std::vector<Letter> w;
    MemberId id;
    bool split;
  };
  auto variant_at = [&](const ScanClass& C, int cls_idx, std::uint32_t pos,
                        Letter base, elem_t f) -> std::optional<Variant> {
    if (f == base.elem) {
      Word w = rotation_word(*cx.set, *C.cls, pos);
      return Variant{std::move(w.letters),
                     {cls_idx, 0, static_cast<int>(pos % C.p), 0}, false};
    }
    if (!C.split[pos]) return std::nullopt;
    elem_t c = g.prod(f, g.inverse(base.elem));
    Word w = split_word(*cx.set, *C.cls, pos % C.p, c);
    return Variant{std::move(w.letters),
                   {cls_idx, 1, static_cast<int>(pos % C.p), c}, true};
  };
  for (elem_t f = 1; f < g.order(); ++f) {
    auto va = variant_at(A, pr.a, s, x, f);
    auto vb = variant_at(B, pr.b, t, y, f);
    if (!va || !vb) continue;
    if (va->w == vb->w) continue;
    int L = lcsp_len(va->w, vb->w);
    if (L == 0) continue;
    auto piece = canonical_piece_from_pair(va->w, L);
    attribute_explicit(cx, pr, va->split ? kSplitA : kRotA, L, piece, va->id,
                       vb->id);
    attribute_explicit(cx, pr, vb->split ? kSplitB : kRotB, L,
                       std::move(piece), vb->id, va->id);
  }
}

// --- the pairwise rotation scan --------------------------------------------

void process_cell(ScanContext& cx, PairRec& pr, const ScanClass& A,
                  const ScanClass& B, std::uint32_t s, std::uint32_t t, int E,
                  int cap) {
  const std::uint32_t idA = A.ids2[s];
  const std::uint32_t idB = B.ids2[t];
  if ((idA ^ idB) >> 16) return;  // different factors
  const bool sa = A.split[s] != 0;
  const bool sb = B.split[t] != 0;
  const bool exact = idA == idB;
  // split members always admit a one-letter piece against the rotation on
  // the other side
  if (sa) attribute(cx, pr, kSplitA, 1, s, t, exact, sa, sb);
  if (sb) attribute(cx, pr, kSplitB, 1, s, t, exact, sa, sb);
  if (exact) {
    if (E >= cap) {
      fallback_cell(cx, pr, s, t);
      return;
    }
    const bool fr = (A.ids2[s + 1 + E] >> 16) == (B.ids2[t + 1 + E] >> 16);
    const int L = 1 + E + (fr ? 1 : 0);
    attribute(cx, pr, kRotA, L, s, t, true, sa, sb);
    attribute(cx, pr, kRotB, L, s, t, true, sa, sb);
    if (sa && sb) {
      attribute(cx, pr, kSplitA, L, s, t, true, sa, sb);
      attribute(cx, pr, kSplitB, L, s, t, true, sa, sb);
    }
    return;
  }
  // Same factor, different letters: rotations share only a one-letter piece;
  // split members extend it along the common interior.
  attribute(cx, pr, kRotA, 1, s, t, false, sa, sb);
  attribute(cx, pr, kRotB, 1, s, t, false, sa, sb);
  if (sa || sb) {
    if (E >= cap) {
      fallback_cell(cx, pr, s, t);
      return;
    }
    const bool fr = (A.ids2[s + 1 + E] >> 16) == (B.ids2[t + 1 + E] >> 16);
    const int L = 1 + E + (fr ? 1 : 0);
    if (sb) {
      attribute(cx, pr, kRotA, L, s, t, false, sa, sb);
      attribute(cx, pr, kSplitB, L, s, t, false, sa, sb);
    }
    if (sa) {
      attribute(cx, pr, kRotB, L, s, t, false, sa, sb);
      attribute(cx, pr, kSplitA, L, s, t, false, sa, sb);
    }
  }
}

int run_at(const ScanClass& A, const ScanClass& B, std::uint32_t s,
           std::uint32_t t, int cap) {
  int E = 0;
  while (E < cap && A.ids2[(s + 1 + E) % A.m] == B.ids2[(t + 1 + E) % B.m]) ++E;
  return E;
}

void scan_single_pair(ScanContext& cx, PairRec& pr) {
  const ScanClass& A = cx.sc[pr.a];
  const ScanClass& B = cx.sc[pr.b];
  const bool same = pr.a == pr.b;
  if (A.single() && B.single()) {
    if (A.letter(0).factor != B.letter(0).factor) return;
    const std::uint16_t f = A.letter(0).factor;
    std::vector<Letter> piece{least_nonidentity(f)};
    if (same) {
      auto cls = conjugacy_class(cx.fam->factor(f), A.letter(0).elem);
      if (cls.size() < 2) return;
      attribute_explicit(cx, pr, kRotA, 1, piece, {pr.a, 0, cls[0], 0},
                         {pr.b, 0, cls[1], 0});
      attribute_explicit(cx, pr, kRotB, 1, piece, {pr.b, 0, cls[1], 0},
                         {pr.a, 0, cls[0], 0});
      return;
    }
    attribute_explicit(cx, pr, kRotA, 1, piece,
                       {pr.a, 0, A.letter(0).elem, 0},
                       {pr.b, 0, B.letter(0).elem, 0});
    attribute_explicit(cx, pr, kRotB, 1, piece,
                       {pr.b, 0, B.letter(0).elem, 0},
                       {pr.a, 0, A.letter(0).elem, 0});
    return;
  }
  // single vs multi-letter class
  const bool a_single = A.single();
  const ScanClass& S = a_single ? A : B;
  const ScanClass& M = a_single ? B : A;
  const int s_cls = a_single ? pr.a : pr.b;
  const int m_cls = a_single ? pr.b : pr.a;
  const Channel rot_s = a_single ? kRotA : kRotB;
  const Channel rot_m = a_single ? kRotB : kRotA;
  const Channel split_m = a_single ? kSplitB : kSplitA;
  const Letter sl = S.letter(0);
  for (int t = 0; t < M.p; ++t) {
    const Letter ml = M.letter(t);
    if (ml.factor != sl.factor) continue;
    std::vector<Letter> piece{least_nonidentity(sl.factor)};
    MemberId ms{s_cls, 0, sl.elem, 0};
    MemberId mm{m_cls, 0, t, 0};
    attribute_explicit(cx, pr, rot_s, 1, piece, ms, mm);
    attribute_explicit(cx, pr, rot_m, 1, piece, mm, ms);
    if (M.split[t]) {
      const GroupTable& g = cx.fam->factor(ml.factor);
      elem_t c = 1;
      while (c < g.order() && c == g.inverse(ml.elem)) ++c;
      if (c < g.order())
        attribute_explicit(cx, pr, split_m, 1, piece, {m_cls, 1, t, c}, ms);
    }
  }
}

void scan_pair(ScanContext& cx, PairRec& pr) {
  const ScanClass& A = cx.sc[pr.a];
  const ScanClass& B = cx.sc[pr.b];
  const bool same = pr.a == pr.b;
  if (A.single() || B.single()) {
    scan_single_pair(cx, pr);
    return;
  }
  const int cap = std::min(A.m, B.m) - 1;

  // Pieces between a rotation and its own split variants at one anchor.
  if (same) {
    for (std::uint32_t q = 0; q < static_cast<std::uint32_t>(A.p); ++q) {
      if (!A.split[q]) continue;
      const Letter base = A.letter(q);
      const GroupTable& g = cx.fam->factor(base.factor);
      elem_t c = 1;
      while (c < g.order() && c == g.inverse(base.elem)) ++c;
      if (c >= g.order()) continue;
      std::vector<Letter> piece{least_nonidentity(base.factor)};
      MemberId rot{pr.a, 0, static_cast<int>(q), 0};
      MemberId spl{pr.a, 1, static_cast<int>(q), c};
      attribute_explicit(cx, pr, kRotA, 1, piece, rot, spl);
      attribute_explicit(cx, pr, kSplitA, 1, piece, spl, rot);
      attribute_explicit(cx, pr, kRotB, 1, piece, rot, spl);
      attribute_explicit(cx, pr, kSplitB, 1, piece, spl, rot);
    }
  }

  if (A.p == A.m && B.p == B.m) {
    // Diagonal sweep with a saturating run carry; the first m_A steps warm
    // the carry up across the wrap.
    for (int d = same ? 1 : 0; d < B.m; ++d) {
      if (cx.abort.load(std::memory_order_relaxed)) return;
      int carry = 0;
      int t = static_cast<int>((2 * A.m - 1 + d) % B.m);
      for (int s = 2 * A.m - 1; s >= 0; --s) {
        if (s < A.m) process_cell(cx, pr, A, B, s, t, carry, cap);
        carry = (A.ids2[s] == B.ids2[t]) ? std::min(carry + 1, cap + 1) : 0;
        t = (t == 0) ? B.m - 1 : t - 1;
      }
    }
  } else {
    for (int s = 0; s < A.p; ++s)
      for (int t = 0; t < B.p; ++t) {
        if (same && s == t) continue;
        process_cell(cx, pr, A, B, s, t, run_at(A, B, s, t, cap), cap);
      }
  }
}

// --- report assembly --------------------------------------------------------

std::string class_label(const SymmetrizedSet& set,
                        const std::vector<std::string>& labels, int cls) {
  const SeedRef& r = set.classes[cls].refs.front();
  std::string base = r.seed < static_cast<int>(labels.size())
                         ? labels[r.seed]
                         : "r" + std::to_string(r.seed);
  return r.inverted ? base + "^-1" : base;
}

Word member_word_of(const SymmetrizedSet& set, const MemberId& id) {
  const CyclicClass& c = set.classes[id.cls];
  if (c.cyclic_length() == 1)
    return Word{set.family,
                {Letter{c.letters[0].factor, static_cast<elem_t>(id.offset)}}};
  if (id.kind == 0) return rotation_word(set, c, id.offset);
  return split_word(set, c, id.offset, static_cast<elem_t>(id.conj));
}

struct ChannelView {
  int pair = -1;
  Channel ch = kRotA;
  int cls = -1;
  long piece_len = 0;
  long member_len = 0;
  Rational ratio{0, 1};
};

PieceReport assemble(const ScanContext& cx, const VerificationParams& params,
                     const std::vector<std::string>& labels,
                     const std::vector<PairRec>& recs, const char* path) {
  const SymmetrizedSet& set = *cx.set;
  PieceReport rep;
  rep.path = path;
  rep.lambda = params.lambda;
  rep.min_relator_length = params.effective_min_length();
  rep.class_count = set.classes.size();
  rep.member_count = member_count(set);
  rep.early_exited = cx.abort.load();

  for (std::size_t c = 0; c < set.classes.size(); ++c) {
    long len = static_cast<long>(set.classes[c].cyclic_length());
    if (len < rep.min_relator_length)
      rep.gate_failures.push_back(
          {class_label(set, labels, static_cast<int>(c)), len});
  }
  rep.length_gate_ok = rep.gate_failures.empty();

  std::vector<ChannelView> channels;
  for (std::size_t i = 0; i < recs.size(); ++i) {
    const PairRec& pr = recs[i];
    for (int ch = 0; ch < 4; ++ch) {
      if (pr.a == pr.b && (ch == kRotB || ch == kSplitB))
        continue;  // mirror of the A-side channels
      const Slot& sl = pr.ch[ch];
      if (sl.len == 0) continue;
      ChannelView v;
      v.pair = static_cast<int>(i);
      v.ch = static_cast<Channel>(ch);
      v.cls = (ch == kRotA || ch == kSplitA) ? pr.a : pr.b;
      v.piece_len = sl.len;
      v.member_len = static_cast<long>(cx.sc[v.cls].m) +
                     ((ch == kSplitA || ch == kSplitB) ? 1 : 0);
      v.ratio = ratio(v.piece_len, v.member_len);
      channels.push_back(v);
    }
  }

  auto piece_of = [&](const ChannelView& v) {
    return slot_piece(cx, recs[v.pair], recs[v.pair].ch[v.ch], v.ch);
  };
  auto partner_of = [&](const ChannelView& v) {
    const PairRec& pr = recs[v.pair];
    return (v.ch == kRotA || v.ch == kSplitA) ? pr.b : pr.a;
  };
  auto better = [&](const ChannelView& x, const ChannelView& y) {
    if (!(x.ratio == y.ratio)) return y.ratio < x.ratio;
    auto px = piece_of(x), py = piece_of(y);
    if (px != py) return px < py;
    const Slot& sx = recs[x.pair].ch[x.ch];
    const Slot& sy = recs[y.pair].ch[y.ch];
    if (sx.side != sy.side) return sx.side < sy.side;
    return sx.partner < sy.partner;
  };

  for (std::size_t si = 0; si < set.seeds.size(); ++si) {
    ReportRow row;
    row.label =
        si < labels.size() ? labels[si] : "r" + std::to_string(si);
    row.relator_len = static_cast<long>(set.seeds[si].length());
    const ChannelView* best = nullptr;
    for (const ChannelView& v : channels) {
      bool mine = false;
      for (const SeedRef& r : set.classes[v.cls].refs)
        if (r.seed == static_cast<int>(si)) mine = true;
      if (!mine) continue;
      if (!best || better(v, *best)) best = &v;
    }
    if (best) {
      row.piece_len = best->piece_len;
      row.member_len = best->member_len;
      row.ratio = best->ratio;
      row.ok = !violates(params.lambda, best->piece_len, best->member_len);
      row.partner = class_label(set, labels, partner_of(*best));
      row.piece_literal = to_literal(Word{set.family, piece_of(*best)});
    }
    rep.rows.push_back(std::move(row));
  }

  std::vector<const ChannelView*> viol;
  for (const ChannelView& v : channels)
    if (violates(params.lambda, v.piece_len, v.member_len)) viol.push_back(&v);
  std::sort(viol.begin(), viol.end(),
            [&](const ChannelView* x, const ChannelView* y) {
              if (x == y) return false;
              return better(*x, *y);
            });
  for (const ChannelView* v : viol) {
    ViolationRow row;
    row.relator = class_label(set, labels, v->cls);
    row.partner = class_label(set, labels, partner_of(*v));
    row.piece_len = v->piece_len;
    row.member_len = v->member_len;
    row.ratio = v->ratio;
    row.piece_literal = to_literal(Word{set.family, piece_of(*v)});
    rep.violations.push_back(std::move(row));
  }

  for (const ChannelView& v : channels)
    rep.max_piece_len = std::max(rep.max_piece_len, v.piece_len);

  const ChannelView* worst = nullptr;
  for (const ChannelView& v : channels)
    if (!worst || better(v, *worst)) worst = &v;
  if (worst) {
    const Slot& sl = recs[worst->pair].ch[worst->ch];
    rep.worst_ratio = worst->ratio;
    rep.worst_piece_len = worst->piece_len;
    rep.worst_member_len = worst->member_len;
    rep.worst_relator = class_label(set, labels, worst->cls);
    rep.worst_partner = class_label(set, labels, partner_of(*worst));
    rep.witness_piece = to_literal(Word{set.family, piece_of(*worst)});
    rep.witness_relator_word = to_literal(member_word_of(set, sl.side));
    rep.witness_partner_word = to_literal(member_word_of(set, sl.partner));
  }

  rep.pass = rep.length_gate_ok && rep.violations.empty();
  return rep;
}

std::vector<PairRec> make_pairs(int k) {
  std::vector<PairRec> recs;
  recs.reserve(static_cast<std::size_t>(k) * (k + 1) / 2);
  for (int a = 0; a < k; ++a)
    for (int b = a; b < k; ++b) {
      PairRec pr;
      pr.a = a;
      pr.b = b;
      recs.push_back(std::move(pr));
    }
  return recs;
}

void run_scan(ScanContext& cx, std::vector<PairRec>& recs, int jobs) {
  if (jobs <= 1) {
    for (PairRec& pr : recs) {
      if (cx.abort.load(std::memory_order_relaxed)) break;
      scan_pair(cx, pr);
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= recs.size()) return;
      if (cx.abort.load(std::memory_order_relaxed)) return;
      scan_pair(cx, recs[i]);
    }
  };
  std::vector<std::thread> pool;
  for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

}  // namespace

PieceReport verify_metric(const SymmetrizedSet& set,
                          const VerificationParams& params,
                          const std::vector<std::string>& labels) {
  ScanContext cx;
  init_context(cx, set, params);
  std::vector<PairRec> recs = make_pairs(static_cast<int>(cx.sc.size()));
  run_scan(cx, recs, params.jobs);
  return assemble(cx, params, labels, recs, "rotation-scan");
}

PieceReport verify_metric_materialized(const SymmetrizedSet& set,
                                       const VerificationParams& params,
                                       const std::vector<std::string>& labels,
                                       std::size_t max_cyclic_letters) {
  if (total_cyclic_letters(set) > max_cyclic_letters)
    throw ValidationError(
        "closure too large for the materialized path (total cyclic letters " +
        std::to_string(total_cyclic_letters(set)) + " > " +
        std::to_string(max_cyclic_letters) + ")");
  ScanContext cx;
  init_context(cx, set, params);

  struct Member {
    std::vector<Letter> w;
    MemberId id;
    bool split;
  };
  std::vector<Member> members;
  for (std::size_t ci = 0; ci < set.classes.size(); ++ci) {
    const CyclicClass& c = set.classes[ci];
    if (c.cyclic_length() == 1) {
      const Letter l = c.letters[0];
      for (elem_t e : conjugacy_class(set.family->factor(l.factor), l.elem))
        members.push_back(
            {{Letter{l.factor, e}}, {static_cast<int>(ci), 0, e, 0}, false});
      continue;
    }
    for (std::uint32_t s = 0; s < c.period; ++s)
      members.push_back({rotation_word(set, c, s).letters,
                         {static_cast<int>(ci), 0, static_cast<int>(s), 0},
                         false});
    for (std::uint32_t q : c.split_positions) {
      const Letter base = c.letters[q];
      const GroupTable& g = set.family->factor(base.factor);
      for (elem_t e = 1; e < g.order(); ++e) {
        if (e == g.inverse(base.elem)) continue;
        members.push_back({split_word(set, c, q, e).letters,
                           {static_cast<int>(ci), 1, static_cast<int>(q), e},
                           true});
      }
    }
  }

  const int k = static_cast<int>(cx.sc.size());
  std::vector<PairRec> recs = make_pairs(k);
  auto rec_of = [&](int a, int b) -> PairRec& {
    if (a > b) std::swap(a, b);
    return recs[static_cast<std::size_t>(a) * (2 * k - a - 1) / 2 + b];
  };

  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      const Member& mi = members[i];
      const Member& mj = members[j];
      int L = lcsp_len(mi.w, mj.w);
      if (L == 0) continue;
      auto piece = canonical_piece_from_pair(mi.w, L);
      const Member& ma = mi.id.cls <= mj.id.cls ? mi : mj;
      const Member& mb = mi.id.cls <= mj.id.cls ? mj : mi;
      PairRec& pr = rec_of(mi.id.cls, mj.id.cls);
      attribute_explicit(cx, pr, ma.split ? kSplitA : kRotA, L, piece, ma.id,
                         mb.id);
      attribute_explicit(cx, pr, mb.split ? kSplitB : kRotB, L, piece, mb.id,
                         ma.id);
      if (ma.id.cls == mb.id.cls) {
        // intra-class pairs feed both orientations so the A-side channels
        // mirror the B-side ones exactly
        attribute_explicit(cx, pr, mb.split ? kSplitA : kRotA, L, piece,
                           mb.id, ma.id);
        attribute_explicit(cx, pr, ma.split ? kSplitB : kRotB, L,
                           std::move(piece), ma.id, mb.id);
      }
    }
  return assemble(cx, params, labels, recs, "materialized");
}

std::string report_signature(const PieceReport& r) {
  std::string out;
  auto add = [&](const std::string& s) {
    out += s;
    out += '\n';
  };
  add(r.pass ? "pass" : "fail");
  add(r.lambda.str());
  add(std::to_string(r.min_relator_length));
  add(r.length_gate_ok ? "gate-ok" : "gate-fail");
  for (const GateRow& g : r.gate_failures)
    add(g.relator + " " + std::to_string(g.len));
  add(r.worst_ratio.str() + " " + std::to_string(r.worst_piece_len) + "/" +
      std::to_string(r.worst_member_len) + " max_piece=" +
      std::to_string(r.max_piece_len) + " " + r.worst_relator + " | " +
      r.worst_partner);
  add(r.witness_piece);
  add(r.witness_relator_word);
  add(r.witness_partner_word);
  for (const ReportRow& row : r.rows)
    add(row.label + " len=" + std::to_string(row.relator_len) +
        " piece=" + std::to_string(row.piece_len) +
        " member=" + std::to_string(row.member_len) +
        " ratio=" + row.ratio.str() + (row.ok ? " ok" : " VIOLATION") +
        " partner=" + row.partner + " piece_word=" + row.piece_literal);
  for (const ViolationRow& v : r.violations)
    add("violation " + v.relator + " vs " + v.partner + " piece=" +
        std::to_string(v.piece_len) + "/" + std::to_string(v.member_len) +
        " ratio=" + v.ratio.str() + " word=" + v.piece_literal);
  return out;
}

std::optional<Piece> max_common_piece(const Word& r1, const Word& r2,
                                      ClosureMode mode) {
  require_same_family(r1, r2);
  if (r1 == r2) throw ValidationError("max_common_piece: identical relators");
  if (r1.empty() || r2.empty())
    throw ValidationError("max_common_piece: empty relator");

  Word w1 = weakly_cyclic_reduce(r1).first;
  Word w2 = weakly_cyclic_reduce(r2).first;
  SymmetrizedSet set;
  set.family = r1.family;
  set.mode = mode;
  set.seeds = {w1, w2};
  set.classes = classes_for_words(*r1.family, {w1, w2}, mode);

  VerificationParams params;
  ScanContext cx;
  init_context(cx, set, params);
  PairRec pr;
  pr.a = 0;
  pr.b = cx.sc.size() > 1 ? 1 : 0;
  scan_pair(cx, pr);

  int best_ch = -1;
  for (int ch = 0; ch < 4; ++ch) {
    if (pr.ch[ch].len == 0) continue;
    if (best_ch < 0 || pr.ch[ch].len > pr.ch[best_ch].len) best_ch = ch;
  }
  if (best_ch < 0) return std::nullopt;
  const Slot& sl = pr.ch[best_ch];

  Piece out;
  out.word =
      Word{set.family, slot_piece(cx, pr, sl, static_cast<Channel>(best_ch))};
  bool side_is_a = best_ch == kRotA || best_ch == kSplitA;
  bool r1_class_is_a = false;
  for (const SeedRef& r : set.classes[pr.a].refs)
    if (r.seed == 0) r1_class_is_a = true;
  Word ws = member_word_of(set, sl.side);
  Word wp = member_word_of(set, sl.partner);
  if (side_is_a == r1_class_is_a) {
    out.relator_1 = std::move(ws);
    out.relator_2 = std::move(wp);
  } else {
    out.relator_1 = std::move(wp);
    out.relator_2 = std::move(ws);
  }
  auto tail_divides = [&](const Word& rel) {
    if (out.word.empty() || rel.length() < out.word.length()) return true;
    return !std::equal(out.word.letters.begin(), out.word.letters.end(),
                       rel.letters.begin());
  };
  out.split_tail = tail_divides(out.relator_1) || tail_divides(out.relator_2);
  return out;
}

}  // namespace sc
