#include "sc/construct.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace sc {

std::string tag_name(RelTag t) {
  switch (t) {
    case RelTag::u: return "u";
    case RelTag::v: return "v";
    case RelTag::w_a: return "w_a";
    case RelTag::w_b: return "w_b";
    case RelTag::pow_a: return "pow_a";
    case RelTag::pow_b: return "pow_b";
    case RelTag::u_ij: return "u_ij";
    case RelTag::w_a_B: return "w_a_B";
    case RelTag::w_bj_B: return "w_bj_B";
    case RelTag::generic: return "r";
  }
  return "r";
}

std::optional<RelTag> tag_from_name(const std::string& s) {
  for (RelTag t : {RelTag::u, RelTag::v, RelTag::w_a, RelTag::w_b,
                   RelTag::pow_a, RelTag::pow_b, RelTag::u_ij, RelTag::w_a_B,
                   RelTag::w_bj_B, RelTag::generic})
    if (tag_name(t) == s) return t;
  return std::nullopt;
}

std::string TaggedRelator::label() const {
  std::string out = tag_name(tag);
  for (int idx : {i, j, k})
    if (idx >= 0) out += " " + std::to_string(idx);
  return out;
}

std::vector<std::string> Presentation::labels() const {
  std::vector<std::string> out;
  out.reserve(seeds.size());
  for (const TaggedRelator& r : seeds) out.push_back(r.label());
  return out;
}

void FamilyMemberSpec::validate_basic(int index) const {
  group.validate();
  host.validate();
  Homomorphism hom{group, host.group, embedding};
  HomReport rep = validate_homomorphism(hom);
  if (!rep.is_hom || !rep.is_injective)
    throw ValidationError("member " + std::to_string(index) + " (" +
                          group.name + "): embedding into " + host.group.name +
                          " is not an injective homomorphism (" + rep.detail +
                          ")");
  if (h == 0 || h >= group.order())
    throw ValidationError("member " + std::to_string(index) +
                          ": h must be a nontrivial element");
  if (h_bar) {
    if (*h_bar == 0 || *h_bar >= group.order() || *h_bar == h)
      throw ValidationError("member " + std::to_string(index) +
                            ": h_bar must be nontrivial and distinct from h");
  }
}

namespace {

// (p q)^hi (p q_sep) (p q)^{hi-1} (p q_sep) ... (p q_sep) (p q)^{lo} terminal
Word chain_word(FamilyPtr fam, Letter p, Letter q, Letter q_sep, long hi,
                long lo, Letter terminal) {
  std::vector<Letter> raw;
  raw.reserve(static_cast<std::size_t>(2 * (hi + lo) * (hi - lo + 1) / 2 + 8));
  for (long k = hi; k >= lo; --k) {
    for (long r = 0; r < k; ++r) {
      raw.push_back(p);
      raw.push_back(q);
    }
    if (k > lo) {
      raw.push_back(p);
      raw.push_back(q_sep);
    }
  }
  raw.push_back(terminal);
  Word w = normalize(fam, raw);
  if (w.length() != raw.size())
    throw ValidationError("relator collapsed during normalization");
  return w;
}

Word power_word(FamilyPtr fam, Letter x, Letter y, long n) {
  std::vector<Letter> raw;
  raw.reserve(2 * n);
  for (long r = 0; r < n; ++r) {
    raw.push_back(x);
    raw.push_back(y);
  }
  Word w = normalize(fam, raw);
  if (w.length() != raw.size())
    throw ValidationError("relator collapsed during normalization");
  return w;
}

GroupTable renamed(GroupTable g, const std::string& name) {
  g.name = name;
  return g;
}

void check_n(const ConstructionParams& params) {
  if (params.n < 1) throw ValidationError("n must be positive");
  if (params.require_coprime6 && std::gcd(params.n, 6) != 1)
    throw ValidationError("n must be relatively prime to 6 (got n = " +
                          std::to_string(params.n) + ")");
}

Presentation finish(FamilyPtr fam, std::vector<TaggedRelator> seeds,
                    const ConstructionParams& params, char theorem,
                    std::vector<std::vector<elem_t>> factor_gens) {
  Presentation pres;
  pres.family = fam;
  pres.seeds = std::move(seeds);
  pres.n = params.n;
  pres.theorem = theorem;
  pres.closure = params.closure;
  pres.factor_gens = std::move(factor_gens);
  std::vector<Word> words;
  words.reserve(pres.seeds.size());
  for (const TaggedRelator& r : pres.seeds) words.push_back(r.word);
  pres.symmetrized = symmetrized_closure(fam, std::move(words), params.closure);
  return pres;
}

}  // namespace

Presentation build_theorem_a(const std::vector<FamilyMemberSpec>& members,
                             const ConstructionParams& params) {
  if (members.size() < 2)
    throw ValidationError("the family needs at least 2 members");
  check_n(params);
  bool has_big = false;
  for (std::size_t i = 0; i < members.size(); ++i) {
    members[i].validate_basic(static_cast<int>(i));
    if (members[i].group.order() >= 3) has_big = true;
    if (i > 0 && members[i].group.order() == 2)
      throw ValidationError(
          "an order-2 member group must sit at index 0 and appear once "
          "(member " +
          std::to_string(i) + " violates the indexing convention)");
    if (i > 0 && !members[i].h_bar)
      throw ValidationError("member " + std::to_string(i) +
                            " requires a pair of distinct nontrivial elements "
                            "(h and h_bar)");
  }
  if (!has_big)
    throw ValidationError("some member must have at least 3 elements");

  std::vector<GroupTable> factors;
  factors.push_back(cyclic_group_named("A", 2, "a"));
  factors.push_back(cyclic_group_named("B", 3, "b"));
  for (std::size_t i = 0; i < members.size(); ++i)
    factors.push_back(renamed(members[i].host.group, "S" + std::to_string(i)));
  FamilyPtr fam = make_family(std::move(factors));

  const Letter a{0, 1};
  const Letter b{1, 1};
  const Letter b_inv{1, 2};
  auto s_letter = [&](int i) {
    return Letter{static_cast<std::uint16_t>(2 + i), members[i].host.gen_s};
  };
  auto t_letter = [&](int i) {
    return Letter{static_cast<std::uint16_t>(2 + i), members[i].host.gen_t};
  };
  auto h_letter = [&](int i) {
    return Letter{static_cast<std::uint16_t>(2 + i),
                  members[i].embedded(members[i].h)};
  };
  auto hbar_letter = [&](int i) {
    return Letter{static_cast<std::uint16_t>(2 + i),
                  members[i].embedded(*members[i].h_bar)};
  };

  const long n = params.n;
  const int count = static_cast<int>(members.size());
  std::vector<TaggedRelator> seeds;
  for (int i = 0; i < count; ++i)
    seeds.push_back({RelTag::u, i, -1, -1,
                     chain_word(fam, a, b, b_inv, (2 * i + 1) * n + n,
                                (2 * i + 1) * n + 1, s_letter(i))});
  for (int i = 0; i < count; ++i)
    seeds.push_back({RelTag::v, i, -1, -1,
                     chain_word(fam, a, b, b_inv, (2 * i + 2) * n + n,
                                (2 * i + 2) * n + 1, t_letter(i))});
  for (int i = 0; i < count; ++i)
    for (int j = i + 1; j < count; ++j)
      seeds.push_back({RelTag::w_a, i, j, -1,
                       chain_word(fam, h_letter(i), h_letter(j),
                                  hbar_letter(j), n, 1, a)});
  for (int i = 0; i < count; ++i)
    for (int j = i + 1; j < count; ++j)
      seeds.push_back({RelTag::w_b, i, j, -1,
                       chain_word(fam, h_letter(i), h_letter(j),
                                  hbar_letter(j), 2 * n, n + 1, b)});
  for (int i = 0; i < count; ++i)
    seeds.push_back({RelTag::pow_a, i, -1, -1,
                     power_word(fam, h_letter(i), a, n)});
  for (int i = 0; i < count; ++i)
    seeds.push_back({RelTag::pow_b, i, -1, -1,
                     power_word(fam, h_letter(i), b, n)});

  for (const TaggedRelator& r : seeds) {
    long want = predicted_length(r.tag, n, r.i);
    if (static_cast<long>(r.word.length()) != want)
      throw ValidationError("internal: relator " + r.label() +
                            " has length " + std::to_string(r.word.length()) +
                            ", expected " + std::to_string(want));
  }

  std::vector<std::vector<elem_t>> gens;
  gens.push_back({1});  // A
  gens.push_back({1});  // B
  for (int i = 0; i < count; ++i) {
    std::vector<elem_t> g{members[i].host.gen_s};
    if (members[i].host.gen_t != members[i].host.gen_s)
      g.push_back(members[i].host.gen_t);
    gens.push_back(std::move(g));
  }
  return finish(fam, std::move(seeds), params, 'a', std::move(gens));
}

Presentation build_theorem_b(const TheoremBSpec& spec,
                             const ConstructionParams& params) {
  const auto& members = spec.family;
  if (members.size() < 2)
    throw ValidationError("the family needs at least 2 members");
  check_n(params);
  const int count = static_cast<int>(members.size());
  const int t = spec.j_trunc;
  if (t < 1) throw ValidationError("the J truncation must be nonempty");
  const int j_total = spec.j_total > 0 ? spec.j_total : t;
  if (j_total < count * t)
    throw ValidationError(
        "alpha cannot be injective: need at least |I| * |J_trunc| = " +
        std::to_string(count * t) + " order-3 factors, have " +
        std::to_string(j_total));
  auto alpha = [&](int i, int j) { return i * t + j; };

  // lambda-members are the ones of maximal order
  int max_order = 0;
  for (const auto& m : members) max_order = std::max(max_order, m.group.order());
  auto is_max = [&](int i) { return members[i].group.order() == max_order; };

  for (int i = 0; i < count; ++i) {
    members[i].validate_basic(i);
    if (static_cast<int>(members[i].host_gens_j.size()) < t)
      throw ValidationError("member " + std::to_string(i) +
                            ": needs a host generating system of size >= " +
                            std::to_string(t));
    for (elem_t s : members[i].host_gens_j)
      if (s >= members[i].host.group.order())
        throw ValidationError("member " + std::to_string(i) +
                              ": host generator out of range");
    std::vector<elem_t> gens(members[i].host_gens_j.begin(),
                             members[i].host_gens_j.begin() + t);
    if (static_cast<int>(subgroup_generated(members[i].host.group, gens)
                             .size()) != members[i].host.group.order())
      throw ValidationError("member " + std::to_string(i) +
                            ": host generating system does not generate");
    if (is_max(i)) {
      if (!members[i].h_bar)
        throw ValidationError("member " + std::to_string(i) +
                              " requires a pair of distinct nontrivial "
                              "elements (h and h_bar)");
      if (static_cast<int>(members[i].h_j.size()) < t ||
          static_cast<int>(members[i].h_bar_j.size()) < t)
        throw ValidationError("member " + std::to_string(i) +
                              ": needs h_j and h_bar_j choices for the "
                              "truncation");
      std::set<elem_t> chosen{members[i].h, *members[i].h_bar};
      for (int j = 0; j < t; ++j) {
        for (elem_t e : {members[i].h_j[j], members[i].h_bar_j[j]}) {
          if (e == 0 || e >= members[i].group.order())
            throw ValidationError("member " + std::to_string(i) +
                                  ": chosen element out of range");
          if (!chosen.insert(e).second)
            throw ValidationError(
                "member " + std::to_string(i) +
                ": the chosen elements h, h_bar, h_j, h_bar_j must be "
                "pairwise distinct");
        }
      }
    }
  }

  // the pair set L
  std::vector<std::pair<int, int>> L = spec.pairs_L;
  if (L.empty()) {
    for (int i = 0; i < count; ++i)
      for (int j = 0; j < count; ++j) {
        if (i == j || !is_max(j)) continue;
        if (!is_max(i) || i < j) L.push_back({i, j});
      }
    std::sort(L.begin(), L.end());
  } else {
    std::set<std::pair<int, int>> have(L.begin(), L.end());
    for (int i = 0; i < count; ++i)
      for (int j = 0; j < count; ++j) {
        if (i == j) continue;
        bool want_ij = is_max(j) && (!is_max(i) || is_max(i));
        if (!is_max(j)) continue;
        bool has_ij = have.count({i, j});
        bool has_ji = have.count({j, i});
        if (!is_max(i)) {
          if (!has_ij)
            throw ValidationError("pair set L must contain (" +
                                  std::to_string(i) + "," + std::to_string(j) +
                                  ")");
        } else if (i < j) {
          if (has_ij == has_ji)
            throw ValidationError(
                "pair set L must contain exactly one orientation of (" +
                std::to_string(i) + "," + std::to_string(j) + ")");
        }
        (void)want_ij;
      }
  }
  if (L.empty()) throw ValidationError("pair set L is empty");

  std::vector<GroupTable> factors;
  factors.push_back(cyclic_group_named("A", 2, "a"));
  for (int j = 0; j < j_total; ++j)
    factors.push_back(cyclic_group_named("B" + std::to_string(j), 3, "b"));
  for (int i = 0; i < count; ++i)
    factors.push_back(renamed(members[i].host.group, "S" + std::to_string(i)));
  FamilyPtr fam = make_family(std::move(factors));

  const Letter a{0, 1};
  auto b_letter = [&](int j) {
    return Letter{static_cast<std::uint16_t>(1 + j), 1};
  };
  auto b_inv_letter = [&](int j) {
    return Letter{static_cast<std::uint16_t>(1 + j), 2};
  };
  auto s_factor = [&](int i) {
    return static_cast<std::uint16_t>(1 + j_total + i);
  };
  auto sj_letter = [&](int i, int j) {
    return Letter{s_factor(i), members[i].host_gens_j[j]};
  };
  auto h_letter = [&](int i) {
    return Letter{s_factor(i), members[i].embedded(members[i].h)};
  };
  auto hbar_letter = [&](int i) {
    return Letter{s_factor(i), members[i].embedded(*members[i].h_bar)};
  };
  auto hj_letter = [&](int i, int j) {
    return Letter{s_factor(i), members[i].embedded(members[i].h_j[j])};
  };
  auto hbarj_letter = [&](int i, int j) {
    return Letter{s_factor(i), members[i].embedded(members[i].h_bar_j[j])};
  };

  const long n = params.n;
  std::vector<TaggedRelator> seeds;
  for (int i = 0; i < count; ++i)
    for (int j = 0; j < t; ++j)
      seeds.push_back({RelTag::u_ij, i, j, -1,
                       chain_word(fam, a, b_letter(alpha(i, j)),
                                  b_inv_letter(alpha(i, j)), n, 1,
                                  sj_letter(i, j))});
  for (auto [i, ip] : L)
    seeds.push_back({RelTag::w_a_B, i, ip, -1,
                     chain_word(fam, h_letter(i), h_letter(ip),
                                hbar_letter(ip), n, 1, a)});
  for (auto [i, ip] : L)
    for (int j = 0; j < t; ++j)
      seeds.push_back({RelTag::w_bj_B, i, ip, j,
                       chain_word(fam, h_letter(i), hj_letter(ip, j),
                                  hbarj_letter(ip, j), n, 1, b_letter(j))});
  for (int i = 0; i < count; ++i)
    seeds.push_back(
        {RelTag::pow_a, i, -1, -1, power_word(fam, h_letter(i), a, n)});
  for (int i = 0; i < count; ++i)
    for (int j = 0; j < t; ++j)
      seeds.push_back({RelTag::pow_b, i, j, -1,
                       power_word(fam, h_letter(i), b_letter(j), n)});

  for (const TaggedRelator& r : seeds) {
    long want = predicted_length(r.tag, n, r.i);
    if (static_cast<long>(r.word.length()) != want)
      throw ValidationError("internal: relator " + r.label() +
                            " has length " + std::to_string(r.word.length()) +
                            ", expected " + std::to_string(want));
  }

  std::vector<std::vector<elem_t>> gens;
  gens.push_back({1});
  for (int j = 0; j < j_total; ++j) gens.push_back({1});
  for (int i = 0; i < count; ++i) {
    std::vector<elem_t> g;
    for (int j = 0; j < t; ++j) {
      elem_t s = members[i].host_gens_j[j];
      if (std::find(g.begin(), g.end(), s) == g.end()) g.push_back(s);
    }
    gens.push_back(std::move(g));
  }
  return finish(fam, std::move(seeds), params, 'b', std::move(gens));
}

CorollarySkeleton corollary_a_family(const GroupTable& g, int max_order) {
  if (max_order < 3) throw ValidationError("max_order must be at least 3");
  CorollarySkeleton out;
  out.groups.push_back(cyclic_group(2));
  out.groups.push_back(g);
  out.c2_collision = g.order() == 2;
  for (int i = 3; i <= max_order; ++i) {
    out.groups.push_back(cyclic_group(i));
    out.groups.push_back(cyclic_group(i));
  }
  return out;
}

long predicted_length(RelTag tag, long n, long i) {
  switch (tag) {
    case RelTag::u: return 4 * n * n * i + 3 * n * n + 3 * n - 1;
    case RelTag::v: return 4 * n * n * i + 5 * n * n + 3 * n - 1;
    case RelTag::w_a: return n * n + 3 * n - 1;
    case RelTag::w_b: return 3 * n * n + 3 * n - 1;
    case RelTag::pow_a:
    case RelTag::pow_b: return 2 * n;
    case RelTag::u_ij:
    case RelTag::w_a_B:
    case RelTag::w_bj_B: return n * n + 3 * n - 1;
    case RelTag::generic: return -1;
  }
  return -1;
}

std::vector<LengthRow> predicted_lengths(const Presentation& pres) {
  std::vector<LengthRow> rows;
  for (const TaggedRelator& r : pres.seeds) {
    LengthRow row;
    row.label = r.label();
    row.predicted = predicted_length(r.tag, pres.n, r.i);
    row.measured = static_cast<long>(r.word.length());
    rows.push_back(std::move(row));
  }
  return rows;
}

int find_min_n(const std::vector<FamilyMemberSpec>& members,
               const VerificationParams& vparams, bool coprime6, int max_n) {
  for (int n = 1; n <= max_n; ++n) {
    if (coprime6 && std::gcd(n, 6) != 1) continue;
    ConstructionParams cp;
    cp.n = n;
    cp.require_coprime6 = false;
    Presentation pres = build_theorem_a(members, cp);
    VerificationParams vp = vparams;
    vp.early_exit = true;
    PieceReport rep = verify_metric(pres.symmetrized, vp, pres.labels());
    if (rep.pass) return n;
  }
  throw VerificationError("no admissible n in range 1.." +
                          std::to_string(max_n));
}

std::vector<std::pair<int, Rational>> ratio_scan(const Presentation& pres,
                                                 const PieceReport& report,
                                                 RelTag tag, int lo, int hi) {
  std::vector<std::pair<int, Rational>> out;
  for (int i = lo; i <= hi; ++i) {
    std::optional<Rational> best;
    for (std::size_t si = 0; si < pres.seeds.size(); ++si) {
      const TaggedRelator& r = pres.seeds[si];
      if (r.tag != tag || r.i != i) continue;
      const ReportRow& row = report.rows.at(si);
      if (!best || *best < row.ratio) best = row.ratio;
    }
    if (best) out.push_back({i, *best});
  }
  if (out.empty())
    throw ValidationError("ratio_scan: no relators match family '" +
                          tag_name(tag) + "' in the index range");
  return out;
}

std::vector<std::pair<int, Rational>> ratio_scan(const Presentation& pres,
                                                 RelTag tag, int lo, int hi,
                                                 const VerificationParams& p) {
  PieceReport rep = verify_metric(pres.symmetrized, p, pres.labels());
  return ratio_scan(pres, rep, tag, lo, hi);
}

FamilyMemberSpec default_member(const GroupTable& group) {
  FamilyMemberSpec m;
  m.group = group;
  GroupTable a5 = alternating_group(5);
  auto [s, t] = first_generating_pair(a5);
  m.host = SimpleFactorSpec{a5, s, t};
  m.host_gens_j = {s, t};
  // first-fit embedding: map the generator of a cyclic group to the first
  // element of matching order, extend multiplicatively
  m.embedding.assign(group.order(), 0);
  if (group.order() > 1) {
    int need = group.elem_order(1);
    elem_t img = 0;
    for (elem_t e = 1; e < a5.order(); ++e)
      if (a5.elem_order(e) == need) {
        img = e;
        break;
      }
    if (img == 0)
      throw ValidationError("no element of order " + std::to_string(need) +
                            " in " + a5.name);
    elem_t cur = 0;
    elem_t src = 0;
    // group must be cyclic for the default map
    std::vector<elem_t> gens{1};
    if (static_cast<int>(subgroup_generated(group, gens).size()) !=
        group.order())
      throw ValidationError("default_member needs a cyclic group or an "
                            "explicit embedding");
    for (int k = 1; k < group.order(); ++k) {
      src = group.prod(src, 1);
      cur = a5.prod(cur, img);
      m.embedding[src] = cur;
    }
  }
  m.h = group.order() > 1 ? 1 : 0;
  if (group.order() > 2) m.h_bar = group.inverse(1);
  if (group.order() > 6) {
    // enough room for per-index choices in uniform-family builds
    for (elem_t e = 2; e < group.order() && m.h_j.size() < 4; ++e) {
      if (e == m.h || (m.h_bar && e == *m.h_bar)) continue;
      if (m.h_j.size() <= m.h_bar_j.size())
        m.h_j.push_back(e);
      else
        m.h_bar_j.push_back(e);
    }
  }
  return m;
}

}  // namespace sc
