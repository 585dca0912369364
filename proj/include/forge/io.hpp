#ifndef FORGE_IO_HPP
#define FORGE_IO_HPP

#include <array>
#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "forge/chain.hpp"
#include "forge/fincat.hpp"

namespace forge {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::vector<std::string> tokens(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  std::string t;
  while (is >> t) out.push_back(t);
  return out;
}

inline bool strip_comment_blank(std::string& line) {
  auto h = line.find('#');
  if (h != std::string::npos) line = line.substr(0, h);
  for (char c : line)
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  return true;
}

} // namespace detail

// ---------- structure files ----------
//
//   signature: E/2 meet/2 zero/0
//   size: 3
//   rel E: (0,1) (1,0)
//   fun meet: 0 0 0 0 1 1 0 1 2
//   con zero: 0
//
// Symbol kinds come from the body sections; every declared symbol needs
// exactly one body line, and function tables must be complete.

inline std::string serialize_structure(const FinStructure& s) {
  std::ostringstream os;
  os << "signature:";
  const auto& sig = *s.sig();
  for (const auto& r : sig.relations()) os << " " << r.name << "/" << r.arity;
  for (const auto& f : sig.functions()) os << " " << f.name << "/" << f.arity;
  for (const auto& c : sig.constants()) os << " " << c << "/0";
  os << "\n";
  os << "size: " << s.size() << "\n";
  for (std::size_t r = 0; r < sig.relations().size(); ++r) {
    os << "rel " << sig.relations()[r].name << ":";
    for (const Tuple& t : s.rel(static_cast<int>(r))) {
      os << " (";
      for (std::size_t i = 0; i < t.size(); ++i) os << (i ? "," : "") << t[i];
      os << ")";
    }
    os << "\n";
  }
  for (std::size_t f = 0; f < sig.functions().size(); ++f) {
    os << "fun " << sig.functions()[f].name << ":";
    for (int v : s.fun(static_cast<int>(f))) os << " " << v;
    os << "\n";
  }
  for (std::size_t c = 0; c < sig.constants().size(); ++c)
    os << "con " << sig.constants()[c] << ": " << s.constant(static_cast<int>(c)) << "\n";
  return os.str();
}

inline FinStructure parse_structure(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  std::vector<std::pair<std::string, int>> declared;
  int size = -1;
  std::map<std::string, std::string> body_kind;
  std::map<std::string, std::string> body_payload;
  bool have_sig = false;
  while (std::getline(is, line)) {
    if (detail::strip_comment_blank(line)) continue;
    std::istringstream ls(line);
    std::string kw;
    ls >> kw;
    if (kw == "signature:") {
      if (have_sig) throw ParseError("structure: duplicate signature line");
      have_sig = true;
      std::string sym;
      while (ls >> sym) {
        auto slash = sym.rfind('/');
        if (slash == std::string::npos)
          throw ParseError("structure: symbol '" + sym + "' lacks /arity");
        std::string name = sym.substr(0, slash);
        int arity;
        try {
          arity = std::stoi(sym.substr(slash + 1));
        } catch (...) {
          throw ParseError("structure: bad arity in '" + sym + "'");
        }
        declared.push_back({name, arity});
      }
    } else if (kw == "size:") {
      if (!(ls >> size) || size < 0) throw ParseError("structure: bad size line");
    } else if (kw == "rel" || kw == "fun" || kw == "con") {
      std::string name;
      ls >> name;
      if (name.empty() || name.back() != ':')
        throw ParseError("structure: expected 'name:' after '" + kw + "'");
      name.pop_back();
      if (body_kind.count(name)) throw ParseError("structure: duplicate body for '" + name + "'");
      body_kind[name] = kw;
      std::string rest;
      std::getline(ls, rest);
      body_payload[name] = rest;
    } else {
      throw ParseError("structure: unknown line '" + line + "'");
    }
  }
  if (!have_sig) throw ParseError("structure: missing signature line");
  if (size < 0) throw ParseError("structure: missing size line");
  std::vector<Signature::Symbol> rels, funs;
  std::vector<std::string> cons;
  for (auto& [name, arity] : declared) {
    auto it = body_kind.find(name);
    if (it == body_kind.end())
      throw ParseError("structure: declared symbol '" + name + "' has no body line");
    if (it->second == "rel") rels.push_back({name, arity});
    else if (it->second == "fun") funs.push_back({name, arity});
    else {
      if (arity != 0) throw ParseError("structure: constant '" + name + "' must have arity 0");
      cons.push_back(name);
    }
  }
  for (auto& [name, kind] : body_kind) {
    bool found = false;
    for (auto& [dn, da] : declared)
      if (dn == name) found = true;
    if (!found) throw ParseError("structure: body for undeclared symbol '" + name + "'");
    (void)kind;
  }
  SigPtr sig = make_signature(rels, funs, cons);
  std::vector<std::vector<Tuple>> rel_data(rels.size());
  std::vector<std::vector<int>> fun_data(funs.size());
  std::vector<int> con_data(cons.size());
  for (std::size_t r = 0; r < rels.size(); ++r) {
    std::string payload = body_payload[rels[r].name];
    std::istringstream ps(payload);
    std::string tup;
    while (ps >> tup) {
      if (tup.front() != '(' || tup.back() != ')')
        throw ParseError("structure: bad tuple '" + tup + "'");
      Tuple t;
      std::string inner = tup.substr(1, tup.size() - 2);
      if (!inner.empty()) {
        std::istringstream ts(inner);
        std::string num;
        while (std::getline(ts, num, ',')) {
          try {
            t.push_back(std::stoi(num));
          } catch (...) {
            throw ParseError("structure: bad tuple entry '" + num + "'");
          }
        }
      }
      if (static_cast<int>(t.size()) != rels[r].arity)
        throw ParseError("structure: tuple arity mismatch for '" + rels[r].name + "'");
      rel_data[r].push_back(std::move(t));
    }
  }
  for (std::size_t f = 0; f < funs.size(); ++f) {
    std::istringstream ps(body_payload[funs[f].name]);
    int v;
    while (ps >> v) fun_data[f].push_back(v);
    std::size_t want = 1;
    for (int i = 0; i < funs[f].arity; ++i) want *= static_cast<std::size_t>(size);
    if (fun_data[f].size() != want)
      throw ParseError("structure: partial function table for '" + funs[f].name + "' (" +
                       std::to_string(fun_data[f].size()) + " of " + std::to_string(want) +
                       " values)");
  }
  for (std::size_t c = 0; c < cons.size(); ++c) {
    std::istringstream ps(body_payload[cons[c]]);
    if (!(ps >> con_data[c]))
      throw ParseError("structure: missing value for constant '" + cons[c] + "'");
  }
  try {
    return FinStructure(sig, size, std::move(rel_data), std::move(fun_data),
                        std::move(con_data));
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("structure: ") + e.what());
  }
}

inline FinStructure load_structure(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw IoError("cannot open " + p.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_structure(buf.str());
}

inline void save_structure(const std::filesystem::path& p, const FinStructure& s) {
  std::ofstream out(p);
  if (!out) throw IoError("cannot write " + p.string());
  out << serialize_structure(s);
}

// ---------- category files ----------
//
//   objects: a b c
//   morphisms: f: a -> b
//   morphisms: g: b -> c
//   morphisms: h: a -> c
//   compose: g.f = h
//
// Identities are implicit; the composition of every composable pair of
// declared morphisms must be given.

inline FinCategory parse_category(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  std::vector<std::string> objects;
  struct RawMor {
    std::string name, dom, cod;
  };
  std::vector<RawMor> raw;
  std::vector<std::array<std::string, 3>> raw_compose;
  while (std::getline(is, line)) {
    if (detail::strip_comment_blank(line)) continue;
    std::istringstream ls(line);
    std::string kw;
    ls >> kw;
    if (kw == "objects:") {
      std::string o;
      while (ls >> o) objects.push_back(o);
    } else if (kw == "morphisms:" || kw == "morphism:") {
      std::string name, dom, arrow, cod;
      ls >> name >> dom >> arrow >> cod;
      if (name.empty() || name.back() != ':' || arrow != "->")
        throw ParseError("category: bad morphism line '" + line + "'");
      name.pop_back();
      raw.push_back({name, dom, cod});
    } else if (kw == "compose:") {
      std::string expr, eq, res;
      ls >> expr >> eq >> res;
      if (eq != "=" || expr.find('.') == std::string::npos)
        throw ParseError("category: bad compose line '" + line + "'");
      auto dot = expr.find('.');
      raw_compose.push_back({expr.substr(0, dot), expr.substr(dot + 1), res});
    } else {
      throw ParseError("category: unknown line '" + line + "'");
    }
  }
  FinCategory C;
  C.objects = objects;
  auto obj_index = [&](const std::string& o) {
    for (std::size_t i = 0; i < objects.size(); ++i)
      if (objects[i] == o) return static_cast<int>(i);
    throw ParseError("category: unknown object '" + o + "'");
  };
  // identities first come implicitly, one per object
  C.identity.resize(objects.size());
  for (std::size_t o = 0; o < objects.size(); ++o) {
    C.identity[o] = static_cast<int>(C.morphisms.size());
    C.morphisms.push_back({"id_" + objects[o], static_cast<int>(o), static_cast<int>(o)});
  }
  std::map<std::string, int> mor_index;
  for (std::size_t o = 0; o < objects.size(); ++o)
    mor_index["id_" + objects[o]] = C.identity[o];
  for (const auto& m : raw) {
    if (mor_index.count(m.name)) throw ParseError("category: duplicate morphism '" + m.name + "'");
    mor_index[m.name] = static_cast<int>(C.morphisms.size());
    C.morphisms.push_back({m.name, obj_index(m.dom), obj_index(m.cod)});
  }
  int nm = static_cast<int>(C.morphisms.size());
  C.compose_table.assign(nm, std::vector<int>(nm, -1));
  // identity composites
  for (int f = 0; f < nm; ++f) {
    C.compose_table[C.identity[C.morphisms[f].dom]][f] = f;
    C.compose_table[f][C.identity[C.morphisms[f].cod]] = f;
  }
  for (const auto& [gname, fname, hname] : raw_compose) {
    auto need = [&](const std::string& n) {
      auto it = mor_index.find(n);
      if (it == mor_index.end()) throw ParseError("category: unknown morphism '" + n + "'");
      return it->second;
    };
    int g = need(gname), f = need(fname), h = need(hname);
    if (C.morphisms[f].cod != C.morphisms[g].dom)
      throw ParseError("category: compose line for non-composable pair " + gname + "." + fname);
    if (C.compose_table[f][g] != -1 && C.compose_table[f][g] != h)
      throw ParseError("category: contradictory compose lines for " + gname + "." + fname);
    C.compose_table[f][g] = h;
  }
  // reject partial tables
  for (int f = 0; f < nm; ++f)
    for (int g = 0; g < nm; ++g)
      if (C.morphisms[f].cod == C.morphisms[g].dom && C.compose_table[f][g] == -1)
        throw ParseError("category: missing composite " + C.morphisms[g].name + "." +
                         C.morphisms[f].name);
  try {
    C.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("category: ") + e.what());
  }
  return C;
}

inline FinCategory load_category(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw IoError("cannot open " + p.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_category(buf.str());
}

// ---------- chain run directories ----------

inline void save_chain(const std::filesystem::path& dir, const ChainSeq& S) {
  std::filesystem::create_directories(dir);
  std::ofstream manifest(dir / "manifest.txt");
  if (!manifest) throw IoError("cannot write " + (dir / "manifest.txt").string());
  manifest << "age: " << S.age_name << "\n";
  manifest << "stages: " << S.stages.size() << "\n";
  manifest << "seed: " << S.seed << "\n";
  manifest << "realize-cap: " << S.realize_cap << "\n";
  manifest << "ext-stage-cap: " << S.ext_stage_cap << "\n";
  for (std::size_t i = 0; i < S.stages.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "stage_%03zu.struct", i);
    save_structure(dir / name, *S.stages[i]);
  }
  std::ofstream steps(dir / "steps.txt");
  for (const auto& st : S.steps) {
    for (std::size_t i = 0; i < st.map().size(); ++i) steps << (i ? " " : "") << st.map()[i];
    steps << "\n";
  }
  std::ofstream log(dir / "log.txt");
  for (const auto& e : S.log)
    log << "step " << e.step << " pos " << e.scan_position << " " << e.kind << ": "
        << e.detail << "\n";
}

inline ChainSeq load_chain(const std::filesystem::path& dir) {
  ChainSeq S;
  std::ifstream manifest(dir / "manifest.txt");
  if (!manifest) throw IoError("cannot open " + (dir / "manifest.txt").string());
  std::string line;
  std::size_t stages = 0;
  while (std::getline(manifest, line)) {
    auto t = detail::tokens(line);
    if (t.size() < 2) continue;
    if (t[0] == "age:") S.age_name = t[1];
    else if (t[0] == "stages:") stages = std::stoul(t[1]);
    else if (t[0] == "seed:") S.seed = static_cast<unsigned>(std::stoul(t[1]));
    else if (t[0] == "realize-cap:") S.realize_cap = std::stoi(t[1]);
    else if (t[0] == "ext-stage-cap:") S.ext_stage_cap = std::stoi(t[1]);
  }
  for (std::size_t i = 0; i < stages; ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "stage_%03zu.struct", i);
    S.stages.push_back(share(load_structure(dir / name)));
  }
  std::ifstream steps(dir / "steps.txt");
  std::size_t idx = 0;
  while (std::getline(steps, line)) {
    if (line.empty() && idx + 1 >= stages) break;
    std::istringstream ls(line);
    std::vector<int> m;
    int v;
    while (ls >> v) m.push_back(v);
    if (idx + 1 >= stages) throw ParseError("chain: more steps than stages");
    Embedding e(S.stages[idx], S.stages[idx + 1], std::move(m));
    if (!e.valid()) throw ParseError("chain: step " + std::to_string(idx) + " invalid");
    S.steps.push_back(std::move(e));
    ++idx;
  }
  if (idx + 1 != stages && stages > 0)
    throw ParseError("chain: step count does not match stage count");
  return S;
}

} // namespace forge

#endif
