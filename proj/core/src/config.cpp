#include "sc/config.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace sc {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write " + path);
  out << content;
}

const GroupTable& ProjectConfig::group(const std::string& name) const {
  for (const GroupTable& g : groups)
    if (g.name == name) return g;
  throw ValidationError("unknown group '" + name + "'");
}

namespace {

// Splits a line into tokens on whitespace and commas; '->' is its own token.
std::vector<std::string> tokens_of(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  auto flush = [&]() {
    if (!cur.empty()) {
      out.push_back(cur);
      cur.clear();
    }
  };
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (c == '#') break;
    if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
      flush();
      continue;
    }
    if (c == '-' && i + 1 < line.size() && line[i + 1] == '>') {
      flush();
      out.push_back("->");
      ++i;
      continue;
    }
    cur += c;
  }
  flush();
  return out;
}

struct LineReader {
  std::vector<std::vector<std::string>> lines;  // token lists
  std::vector<int> numbers;                     // 1-based line numbers

  explicit LineReader(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int no = 0;
    while (std::getline(in, line)) {
      ++no;
      auto toks = tokens_of(line);
      if (toks.empty()) continue;
      lines.push_back(std::move(toks));
      numbers.push_back(no);
    }
  }
};

int parse_int(const std::string& s, int line) {
  try {
    std::size_t used = 0;
    int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError("expected an integer, got '" + s + "'", line, 1);
  }
}

ClosureMode parse_mode(const std::string& s, int line) {
  if (s == "rotations") return ClosureMode::rotations;
  if (s == "full") return ClosureMode::full_conjugates;
  throw ParseError("closure must be 'rotations' or 'full'", line, 1);
}

const char* mode_name(ClosureMode m) {
  return m == ClosureMode::rotations ? "rotations" : "full";
}

// group body: either a builder directive or elements + table rows
GroupTable parse_group(LineReader& r, std::size_t& i, const std::string& name) {
  const int decl_line = r.numbers[i - 1];
  if (i >= r.lines.size())
    throw ParseError("group " + name + " has no body", decl_line, 1);
  const auto& first = r.lines[i];
  const int line = r.numbers[i];
  if (first[0] == "cyclic") {
    if (first.size() != 2) throw ParseError("cyclic takes one argument", line, 1);
    ++i;
    GroupTable g = cyclic_group(parse_int(first[1], line));
    g.name = name;
    return g;
  }
  if (first[0] == "alternating") {
    if (first.size() != 2)
      throw ParseError("alternating takes one argument", line, 1);
    ++i;
    GroupTable g = alternating_group(parse_int(first[1], line));
    g.name = name;
    return g;
  }
  if (first[0] != "elements")
    throw ParseError("expected cyclic/alternating/elements in group " + name,
                     line, 1);
  GroupTable g;
  g.name = name;
  g.elements.assign(first.begin() + 1, first.end());
  ++i;
  if (i >= r.lines.size() || r.lines[i][0] != "table")
    throw ParseError("expected a table after the element list", line, 1);
  ++i;
  const int order = static_cast<int>(g.elements.size());
  g.mul.resize(static_cast<std::size_t>(order) * order);
  for (int row = 0; row < order; ++row, ++i) {
    if (i >= r.lines.size())
      throw ParseError("table for " + name + " is truncated", line, 1);
    const auto& toks = r.lines[i];
    if (static_cast<int>(toks.size()) != order)
      throw ParseError("table row has " + std::to_string(toks.size()) +
                           " entries, expected " + std::to_string(order),
                       r.numbers[i], 1);
    for (int col = 0; col < order; ++col)
      g.mul[row * order + col] = g.require(toks[col]);
  }
  g.inv.resize(order);
  for (int a = 0; a < order; ++a) {
    bool found = false;
    for (int b = 0; b < order; ++b)
      if (g.mul[a * order + b] == 0 && g.mul[b * order + a] == 0) {
        g.inv[a] = static_cast<elem_t>(b);
        found = true;
      }
    if (!found)
      throw ParseError("element " + g.elements[a] + " of " + name +
                           " has no inverse",
                       decl_line, 1);
  }
  return g;
}

}  // namespace

ProjectConfig parse_config(const std::string& text) {
  LineReader r(text);
  ProjectConfig cfg;
  std::map<int, FamilyMemberSpec> members;
  std::map<int, int> member_lines;

  std::size_t i = 0;
  while (i < r.lines.size()) {
    const auto& toks = r.lines[i];
    const int line = r.numbers[i];
    if (toks[0] == "group") {
      if (toks.size() != 2) throw ParseError("group takes a name", line, 1);
      ++i;
      cfg.groups.push_back(parse_group(r, i, toks[1]));
      cfg.groups.back().validate();
      continue;
    }
    if (toks[0] == "member") {
      if (toks.size() != 2) throw ParseError("member takes an index", line, 1);
      int idx = parse_int(toks[1], line);
      FamilyMemberSpec m;
      std::string group_name, host_name;
      std::vector<std::string> gens, gens_j, h_j, hbar_j;
      std::string h_name, hbar_name;
      std::vector<std::pair<std::string, std::string>> embed_pairs;
      ++i;
      while (i < r.lines.size()) {
        const auto& t = r.lines[i];
        const int l = r.numbers[i];
        if (t[0] == "group" && t.size() == 2 && !group_name.empty()) break;
        if (t[0] == "member" || t[0] == "params") break;
        if (t[0] == "group") {
          group_name = t.at(1);
        } else if (t[0] == "host") {
          host_name = t.at(1);
        } else if (t[0] == "gens") {
          gens.assign(t.begin() + 1, t.end());
        } else if (t[0] == "gens_j") {
          gens_j.assign(t.begin() + 1, t.end());
        } else if (t[0] == "h") {
          h_name = t.at(1);
        } else if (t[0] == "hbar") {
          hbar_name = t.at(1);
        } else if (t[0] == "h_j") {
          h_j.assign(t.begin() + 1, t.end());
        } else if (t[0] == "hbar_j") {
          hbar_j.assign(t.begin() + 1, t.end());
        } else if (t[0] == "embed") {
          for (std::size_t k = 1; k + 2 < t.size() + 1; k += 3) {
            if (k + 2 > t.size() || t[k + 1] != "->")
              throw ParseError("embed expects 'src -> dst' pairs", l, 1);
            embed_pairs.push_back({t[k], t[k + 2]});
          }
        } else {
          throw ParseError("unknown member field '" + t[0] + "'", l, 1);
        }
        ++i;
      }
      if (group_name.empty() || host_name.empty())
        throw ParseError("member " + std::to_string(idx) +
                             " needs group and host",
                         line, 1);
      m.group = cfg.group(group_name);
      GroupTable host = cfg.group(host_name);
      if (gens.size() == 2) {
        m.host = SimpleFactorSpec{host, host.require(gens[0]),
                                  host.require(gens[1])};
      } else if (gens.empty() && !gens_j.empty()) {
        m.host = SimpleFactorSpec{host, host.require(gens_j[0]),
                                  host.require(gens_j.size() > 1 ? gens_j[1]
                                                                 : gens_j[0])};
      } else if (gens.empty()) {
        auto [s, t2] = first_generating_pair(host);
        m.host = SimpleFactorSpec{host, s, t2};
      } else {
        throw ParseError("gens takes exactly two element names", line, 1);
      }
      for (const std::string& s : gens_j)
        m.host_gens_j.push_back(m.host.group.require(s));
      if (m.host_gens_j.empty())
        m.host_gens_j = {m.host.gen_s, m.host.gen_t};
      m.embedding.assign(m.group.order(), 0);
      std::vector<bool> seen(m.group.order(), false);
      for (auto& [src, dst] : embed_pairs) {
        elem_t se = m.group.require(src);
        m.embedding[se] = m.host.group.require(dst);
        seen[se] = true;
      }
      for (int e = 0; e < m.group.order(); ++e)
        if (!seen[e] && e != 0)
          throw ParseError("member " + std::to_string(idx) +
                               ": embed must map every element of " +
                               m.group.name,
                           line, 1);
      if (h_name.empty())
        throw ParseError("member " + std::to_string(idx) + " needs h", line, 1);
      m.h = m.group.require(h_name);
      if (!hbar_name.empty()) m.h_bar = m.group.require(hbar_name);
      for (const std::string& s : h_j) m.h_j.push_back(m.group.require(s));
      for (const std::string& s : hbar_j)
        m.h_bar_j.push_back(m.group.require(s));
      members[idx] = std::move(m);
      member_lines[idx] = line;
      continue;
    }
    if (toks[0] == "params") {
      ++i;
      while (i < r.lines.size()) {
        const auto& t = r.lines[i];
        const int l = r.numbers[i];
        if (t[0] == "group" || t[0] == "member") break;
        if (t[0] == "theorem") {
          if (t.at(1) != "a" && t.at(1) != "b")
            throw ParseError("theorem must be a or b", l, 1);
          cfg.theorem = t[1][0];
        } else if (t[0] == "n") {
          cfg.n = parse_int(t.at(1), l);
        } else if (t[0] == "lambda") {
          cfg.lambda = Rational::parse(t.at(1));
        } else if (t[0] == "closure") {
          cfg.closure = parse_mode(t.at(1), l);
        } else if (t[0] == "j_trunc") {
          cfg.j_trunc = parse_int(t.at(1), l);
        } else if (t[0] == "j_total") {
          cfg.j_total = parse_int(t.at(1), l);
        } else if (t[0] == "pair") {
          cfg.pairs_L.push_back(
              {parse_int(t.at(1), l), parse_int(t.at(2), l)});
        } else {
          throw ParseError("unknown parameter '" + t[0] + "'", l, 1);
        }
        ++i;
      }
      continue;
    }
    throw ParseError("unexpected '" + toks[0] + "'", line, 1);
  }

  int expected = 0;
  for (auto& [idx, m] : members) {
    if (idx != expected)
      throw ParseError("member indices must be consecutive from 0 (got " +
                           std::to_string(idx) + ")",
                       member_lines[idx], 1);
    ++expected;
    cfg.members.push_back(std::move(m));
  }
  return cfg;
}

ProjectConfig load_config(const std::string& path) {
  return parse_config(read_file(path));
}

Presentation build_from_config(const ProjectConfig& cfg,
                               const ConstructionParams& params) {
  if (cfg.theorem == 'a') return build_theorem_a(cfg.members, params);
  TheoremBSpec spec;
  spec.family = cfg.members;
  spec.j_trunc = cfg.j_trunc;
  spec.j_total = cfg.j_total;
  spec.pairs_L = cfg.pairs_L;
  return build_theorem_b(spec, params);
}

// --- presentation files -----------------------------------------------------

std::string emit_presentation(const Presentation& pres) {
  std::ostringstream out;
  out << "presentation\n";
  out << "  theorem " << pres.theorem << "\n";
  out << "  n " << pres.n << "\n";
  out << "  closure " << mode_name(pres.closure) << "\n";
  out << "\n";
  const FactorFamily& fam = *pres.family;
  for (int f = 0; f < fam.count(); ++f) {
    const GroupTable& g = fam.factor(f);
    out << "factor " << g.name << "\n";
    out << "  gens";
    for (elem_t e : pres.factor_gens.at(f)) out << " " << g.elements[e];
    out << "\n";
    out << "  elements";
    for (const std::string& e : g.elements) out << " " << e;
    out << "\n";
    out << "  table\n";
    for (int a = 0; a < g.order(); ++a) {
      out << "   ";
      for (int b = 0; b < g.order(); ++b)
        out << " " << g.elements[g.prod(static_cast<elem_t>(a),
                                        static_cast<elem_t>(b))];
      out << "\n";
    }
    out << "\n";
  }
  for (const TaggedRelator& r : pres.seeds) {
    out << "relator " << r.label() << "\n";
    std::string line = " ";
    for (const Letter& l : r.word.letters) {
      std::string tok = letter_token(fam, l);
      if (line.size() + tok.size() + 1 > 96) {
        out << line << "\n";
        line = " ";
      }
      line += " " + tok;
    }
    if (line != " ") out << line << "\n";
  }
  return out.str();
}

Presentation parse_presentation(const std::string& text) {
  LineReader r(text);
  std::size_t i = 0;
  if (r.lines.empty() || r.lines[0][0] != "presentation")
    throw ParseError("not a presentation file", r.lines.empty() ? 1 : r.numbers[0], 1);
  ++i;
  char theorem = 'r';
  int n = 0;
  ClosureMode mode = ClosureMode::rotations;
  while (i < r.lines.size() && r.lines[i][0] != "factor") {
    const auto& t = r.lines[i];
    const int l = r.numbers[i];
    if (t[0] == "theorem")
      theorem = t.at(1)[0];
    else if (t[0] == "n")
      n = parse_int(t.at(1), l);
    else if (t[0] == "closure")
      mode = parse_mode(t.at(1), l);
    else
      throw ParseError("unknown header field '" + t[0] + "'", l, 1);
    ++i;
  }

  std::vector<GroupTable> factors;
  std::vector<std::vector<std::string>> gens_names;
  while (i < r.lines.size() && r.lines[i][0] == "factor") {
    const std::string name = r.lines[i].at(1);
    ++i;
    if (i >= r.lines.size() || r.lines[i][0] != "gens")
      throw ParseError("factor " + name + " needs a gens line",
                       r.numbers[i - 1], 1);
    gens_names.push_back(
        std::vector<std::string>(r.lines[i].begin() + 1, r.lines[i].end()));
    ++i;
    factors.push_back(parse_group(r, i, name));
    factors.back().validate();
  }
  if (factors.empty()) throw ParseError("presentation has no factors", 1, 1);
  FamilyPtr fam = make_family(factors);

  Presentation pres;
  pres.family = fam;
  pres.theorem = theorem;
  pres.n = n;
  pres.closure = mode;
  for (int f = 0; f < fam->count(); ++f) {
    std::vector<elem_t> g;
    for (const std::string& e : gens_names[f])
      g.push_back(fam->factor(f).require(e));
    pres.factor_gens.push_back(std::move(g));
  }

  while (i < r.lines.size()) {
    const auto& t = r.lines[i];
    const int l = r.numbers[i];
    if (t[0] != "relator")
      throw ParseError("expected a relator, got '" + t[0] + "'", l, 1);
    TaggedRelator rel;
    auto tag = tag_from_name(t.at(1));
    if (!tag) throw ParseError("unknown relator tag '" + t[1] + "'", l, 1);
    rel.tag = *tag;
    if (t.size() > 2) rel.i = parse_int(t[2], l);
    if (t.size() > 3) rel.j = parse_int(t[3], l);
    if (t.size() > 4) rel.k = parse_int(t[4], l);
    ++i;
    std::string literal;
    while (i < r.lines.size() && r.lines[i][0] != "relator") {
      for (const std::string& tok : r.lines[i]) literal += tok + " ";
      ++i;
    }
    try {
      rel.word = parse_word_literal(fam, literal);
    } catch (const ParseError& e) {
      throw ParseError(std::string(e.what()), l, 1);
    }
    if (rel.word.empty())
      throw ParseError("relator " + rel.label() + " is empty", l, 1);
    pres.seeds.push_back(std::move(rel));
  }
  if (pres.seeds.empty()) throw ParseError("presentation has no relators", 1, 1);

  std::vector<Word> words;
  for (const TaggedRelator& rel : pres.seeds) words.push_back(rel.word);
  pres.symmetrized = symmetrized_closure(fam, std::move(words), mode);
  return pres;
}

Presentation load_presentation(const std::string& path) {
  return parse_presentation(read_file(path));
}

void save_presentation(const Presentation& pres, const std::string& path) {
  write_file(path, emit_presentation(pres));
}

}  // namespace sc
