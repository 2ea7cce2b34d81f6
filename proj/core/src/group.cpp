#include "sc/group.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <set>

namespace sc {

elem_t GroupTable::require(const std::string& elem_name) const {
  auto idx = index_of(elem_name);
  if (!idx)
    throw ValidationError("group " + name + " has no element named '" +
                          elem_name + "'");
  return *idx;
}

void GroupTable::validate() const {
  const int n = order();
  if (n < 1) throw ValidationError("group " + name + " is empty");
  if (n > kMaxOrder)
    throw ValidationError("group " + name + " exceeds the order cap " +
                          std::to_string(kMaxOrder));
  if (mul.size() != static_cast<std::size_t>(n) * n ||
      inv.size() != static_cast<std::size_t>(n))
    throw ValidationError("group " + name + " has a malformed table");
  for (elem_t v : mul)
    if (v >= n) throw ValidationError("group " + name + ": table entry out of range");
  {
    std::set<std::string> seen(elements.begin(), elements.end());
    if (seen.size() != elements.size())
      throw ValidationError("group " + name + " has duplicate element names");
  }
  for (int a = 0; a < n; ++a) {
    if (prod(0, a) != a || prod(a, 0) != a)
      throw ValidationError("group " + name +
                            ": element 0 is not a two-sided identity");
    if (prod(a, inv[a]) != 0 || prod(inv[a], a) != 0)
      throw ValidationError("group " + name + ": bad inverse for " +
                            elements[a]);
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (prod(prod(a, b), c) != prod(a, prod(b, c)))
          throw ValidationError("group " + name + ": not associative at (" +
                                elements[a] + "," + elements[b] + "," +
                                elements[c] + ")");
}

GroupTable cyclic_group_named(const std::string& name, int m,
                              const std::string& gen_letter) {
  if (m < 1) throw ValidationError("cyclic group order must be positive");
  if (m > GroupTable::kMaxOrder)
    throw ValidationError("cyclic group order exceeds the cap");
  GroupTable g;
  g.name = name;
  g.elements.reserve(m);
  for (int i = 0; i < m; ++i) {
    if (i == 0)
      g.elements.push_back("e");
    else if (i == 1)
      g.elements.push_back(gen_letter);
    else
      g.elements.push_back(gen_letter + "^" + std::to_string(i));
  }
  g.mul.resize(static_cast<std::size_t>(m) * m);
  g.inv.resize(m);
  for (int a = 0; a < m; ++a) {
    g.inv[a] = static_cast<elem_t>((m - a) % m);
    for (int b = 0; b < m; ++b)
      g.mul[a * m + b] = static_cast<elem_t>((a + b) % m);
  }
  return g;
}

GroupTable cyclic_group(int m) {
  return cyclic_group_named("C" + std::to_string(m), m, "g");
}

namespace {

using Perm = std::array<int, 6>;

std::string cycle_name(const Perm& p, int k) {
  std::string out;
  std::array<bool, 6> done{};
  for (int i = 0; i < k; ++i) {
    if (done[i] || p[i] == i) continue;
    out += '(';
    int j = i;
    do {
      done[j] = true;
      out += static_cast<char>('1' + j);
      j = p[j];
    } while (j != i);
    out += ')';
  }
  return out.empty() ? "e" : out;
}

bool is_even(Perm p, int k) {
  int swaps = 0;
  for (int i = 0; i < k; ++i)
    while (p[i] != i) {
      std::swap(p[i], p[p[i]]);
      ++swaps;
    }
  return swaps % 2 == 0;
}

}  // namespace

GroupTable alternating_group(int k) {
  if (k < 3 || k > 6)
    throw ValidationError("alternating group size must be in 3..6");
  std::vector<Perm> perms;
  Perm p{};
  std::iota(p.begin(), p.end(), 0);
  // Lexicographic enumeration puts the identity first.
  do {
    if (is_even(p, k)) perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.begin() + k));

  const int n = static_cast<int>(perms.size());
  GroupTable g;
  g.name = "A" + std::to_string(k);
  g.elements.reserve(n);
  for (const Perm& q : perms) g.elements.push_back(cycle_name(q, k));

  auto find = [&](const Perm& q) {
    for (int i = 0; i < n; ++i)
      if (std::equal(perms[i].begin(), perms[i].begin() + k, q.begin()))
        return static_cast<elem_t>(i);
    throw ValidationError("permutation lookup failed");
  };

  g.mul.resize(static_cast<std::size_t>(n) * n);
  g.inv.resize(n);
  for (int a = 0; a < n; ++a) {
    Perm ia{};
    for (int i = 0; i < k; ++i) ia[perms[a][i]] = i;
    for (int i = k; i < 6; ++i) ia[i] = i;
    g.inv[a] = find(ia);
    for (int b = 0; b < n; ++b) {
      Perm ab{};
      // (a*b)(x) = a(b(x)): apply b first, then a.
      for (int i = 0; i < k; ++i) ab[i] = perms[a][perms[b][i]];
      for (int i = k; i < 6; ++i) ab[i] = i;
      g.mul[a * n + b] = find(ab);
    }
  }
  return g;
}

std::vector<elem_t> subgroup_generated(const GroupTable& g,
                                       const std::vector<elem_t>& gens) {
  if (gens.empty()) throw ValidationError("subgroup_generated: no generators");
  const int n = g.order();
  for (elem_t x : gens)
    if (x >= n) throw ValidationError("subgroup_generated: unknown element");
  std::vector<bool> in(n, false);
  std::vector<elem_t> members;
  std::vector<elem_t> todo;
  auto add = [&](elem_t x) {
    if (!in[x]) {
      in[x] = true;
      members.push_back(x);
      todo.push_back(x);
    }
  };
  add(0);
  for (elem_t x : gens) add(x);
  while (!todo.empty()) {
    elem_t x = todo.back();
    todo.pop_back();
    add(g.inverse(x));
    // Iterate over a snapshot: products with everything found so far.
    for (std::size_t i = 0; i < members.size(); ++i) {
      add(g.prod(x, members[i]));
      add(g.prod(members[i], x));
    }
  }
  std::sort(members.begin(), members.end());
  return members;
}

std::vector<elem_t> conjugacy_class(const GroupTable& g, elem_t x) {
  const int n = g.order();
  std::vector<bool> in(n, false);
  std::vector<elem_t> out;
  for (int y = 0; y < n; ++y) {
    elem_t c = g.prod(g.prod(static_cast<elem_t>(y), x),
                      g.inverse(static_cast<elem_t>(y)));
    if (!in[c]) {
      in[c] = true;
      out.push_back(c);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<elem_t> normal_closure(const GroupTable& g, elem_t x) {
  std::vector<elem_t> gens = conjugacy_class(g, x);
  // Conjugation-closed generating set: the subgroup closure is itself normal.
  std::vector<elem_t> sub = subgroup_generated(g, gens);
  // Close conjugates of newly found elements until stable.
  for (;;) {
    std::vector<elem_t> next = sub;
    std::vector<bool> in(g.order(), false);
    for (elem_t e : sub) in[e] = true;
    bool grew = false;
    for (elem_t e : sub)
      for (elem_t c : conjugacy_class(g, e))
        if (!in[c]) {
          in[c] = true;
          next.push_back(c);
          grew = true;
        }
    if (!grew) return sub;
    sub = subgroup_generated(g, next);
  }
}

bool is_simple(const GroupTable& g) {
  const int n = g.order();
  if (n <= 1) return false;
  for (elem_t x = 1; x < n; ++x)
    if (static_cast<int>(normal_closure(g, x).size()) != n) return false;
  return true;
}

HomReport validate_homomorphism(const Homomorphism& h) {
  HomReport rep;
  const int ns = h.source.order();
  if (static_cast<int>(h.image.size()) != ns)
    throw ValidationError("homomorphism image map has wrong size");
  for (elem_t v : h.image)
    if (v >= h.target.order())
      throw ValidationError("homomorphism image out of range");
  if (h.image[0] != 0) {
    rep.detail = "identity does not map to identity";
    return rep;
  }
  for (elem_t a = 0; a < ns; ++a)
    for (elem_t b = 0; b < ns; ++b)
      if (h.image[h.source.prod(a, b)] !=
          h.target.prod(h.image[a], h.image[b])) {
        rep.detail = "image(" + h.source.elements[a] + "*" +
                     h.source.elements[b] + ") mismatch";
        return rep;
      }
  rep.is_hom = true;
  std::set<elem_t> distinct(h.image.begin(), h.image.end());
  rep.is_injective = static_cast<int>(distinct.size()) == ns;
  if (!rep.is_injective) rep.detail = "image set smaller than source";
  return rep;
}

void SimpleFactorSpec::validate() const {
  if (gen_s >= group.order() || gen_t >= group.order())
    throw ValidationError("host " + group.name + ": generator out of range");
  if (!is_simple(group))
    throw ValidationError("host not simple: " + group.name);
  auto sub = subgroup_generated(group, {gen_s, gen_t});
  if (static_cast<int>(sub.size()) != group.order())
    throw ValidationError("host " + group.name +
                          " is not generated by the designated pair <" +
                          group.elements[gen_s] + ", " +
                          group.elements[gen_t] + ">");
}

std::pair<elem_t, elem_t> first_generating_pair(const GroupTable& g) {
  const int n = g.order();
  for (elem_t s = 1; s < n; ++s)
    for (elem_t t = static_cast<elem_t>(s + 1); t < n; ++t)
      if (static_cast<int>(subgroup_generated(g, {s, t}).size()) == n)
        return {s, t};
  throw ValidationError("group " + g.name + " is not 2-generated");
}

}  // namespace sc
