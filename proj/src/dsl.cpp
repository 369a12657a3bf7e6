#include "rswork/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "rswork/error.hpp"

namespace rswork::dsl {

namespace {

enum class Tok { name, punct, end };

struct Token {
  Tok kind;
  std::string text;
  bool quoted = false;
  Loc loc;
};

bool name_char(unsigned char c) {
  return std::isalnum(c) || c == '_' || c == '.' || c == '\'' || c >= 0x80;
}

class Lexer {
 public:
  Lexer(const std::string& src, const std::string& file) : _s(src), _file(file) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip();
      Loc at{_line, _col};
      if (_i >= _s.size()) {
        out.push_back({Tok::end, "", false, at});
        return out;
      }
      char c = _s[_i];
      if (c == '"') {
        out.push_back({Tok::name, quoted(), true, at});
      } else if (c == '-' && _i + 1 < _s.size() && _s[_i + 1] == '>') {
        advance();
        advance();
        out.push_back({Tok::punct, "->", false, at});
      } else if (std::string_view("{};:,=").find(c) != std::string_view::npos) {
        advance();
        out.push_back({Tok::punct, std::string(1, c), false, at});
      } else if (name_char(static_cast<unsigned char>(c))) {
        std::string t;
        while (_i < _s.size() && name_char(static_cast<unsigned char>(_s[_i]))) {
          t += _s[_i];
          advance();
        }
        out.push_back({Tok::name, t, false, at});
      } else {
        throw ParseError(ErrorCode::parse, _file, _line, _col,
                         "unexpected character '" + std::string(1, c) + "'");
      }
    }
  }

 private:
  void advance() {
    if (_s[_i] == '\n') {
      ++_line;
      _col = 1;
    } else if ((static_cast<unsigned char>(_s[_i]) & 0xC0) != 0x80) {
      ++_col;
    }
    ++_i;
  }
  void skip() {
    while (_i < _s.size()) {
      if (std::isspace(static_cast<unsigned char>(_s[_i]))) {
        advance();
      } else if (_s[_i] == '#') {
        while (_i < _s.size() && _s[_i] != '\n') advance();
      } else {
        break;
      }
    }
  }
  std::string quoted() {
    std::size_t line = _line, col = _col;
    advance();
    std::string t;
    while (true) {
      if (_i >= _s.size() || _s[_i] == '\n')
        throw ParseError(ErrorCode::parse, _file, line, col, "unterminated quoted name");
      char c = _s[_i];
      advance();
      if (c == '"') return t;
      if (c == '\\' && _i < _s.size()) {
        c = _s[_i];
        advance();
      }
      t += c;
    }
  }

  const std::string& _s;
  const std::string& _file;
  std::size_t _i = 0, _line = 1, _col = 1;
};

class Parser {
 public:
  Parser(std::vector<Token> toks, std::string file) : _t(std::move(toks)), _file(std::move(file)) {}

  Workspace run() {
    Workspace ws;
    ws.file = _file;
    while (peek().kind != Tok::end) {
      const Token& kw = keyword();
      if (kw.text == "semigroup")
        ws.semigroups.push_back(semigroup());
      else if (kw.text == "graph")
        ws.graphs.push_back(graph());
      else if (kw.text == "category")
        ws.categories.push_back(category());
      else if (kw.text == "action")
        ws.actions.push_back(action());
      else if (kw.text == "covering")
        ws.coverings.push_back(covering());
      else
        fail(kw.loc, "expected a block keyword, found '" + kw.text + "'");
    }
    resolve(ws);
    return ws;
  }

 private:
  [[noreturn]] void fail(Loc at, const std::string& msg, ErrorCode code = ErrorCode::parse) const {
    throw ParseError(code, _file, at.line, at.column, msg);
  }
  [[noreturn]] void semantic(Loc at, const std::string& msg) const {
    fail(at, msg, ErrorCode::semantic);
  }

  const Token& peek(std::size_t k = 0) const { return _t[std::min(_p + k, _t.size() - 1)]; }
  const Token& next() {
    const Token& t = peek();
    if (t.kind != Tok::end) ++_p;
    return t;
  }
  bool at_punct(const char* p) const { return peek().kind == Tok::punct && peek().text == p; }
  bool at_keyword(const char* k) const {
    return peek().kind == Tok::name && !peek().quoted && peek().text == k;
  }
  void expect(const char* p) {
    if (!at_punct(p)) fail(peek().loc, std::string("expected '") + p + "'" + found());
    next();
  }
  void expect_keyword(const char* k) {
    if (!at_keyword(k)) fail(peek().loc, std::string("expected '") + k + "'" + found());
    next();
  }
  std::string found() const {
    if (peek().kind == Tok::end) return ", found end of input";
    return ", found '" + peek().text + "'";
  }
  const Token& keyword() {
    if (peek().kind != Tok::name || peek().quoted) fail(peek().loc, "expected a keyword" + found());
    return next();
  }
  Name name() {
    if (peek().kind != Tok::name) fail(peek().loc, "expected a name" + found());
    const Token& t = next();
    return {t.text, t.loc};
  }

  // NAME ("," NAME)*, possibly empty before the terminator.
  std::vector<Name> names(const char* terminator) {
    std::vector<Name> out;
    if (at_punct(terminator)) return out;
    out.push_back(name());
    while (at_punct(",")) {
      next();
      out.push_back(name());
    }
    return out;
  }
  Mapping mapping() {
    Name a = name();
    expect("->");
    return {a, name()};
  }
  std::vector<Mapping> mappings() {
    std::vector<Mapping> out;
    if (at_punct(";")) return out;
    out.push_back(mapping());
    while (at_punct(",")) {
      next();
      out.push_back(mapping());
    }
    return out;
  }
  EdgeDecl edge() {
    EdgeDecl e;
    e.name = name();
    expect(":");
    e.from = name();
    expect("->");
    e.to = name();
    return e;
  }
  std::vector<EdgeDecl> edges() {
    std::vector<EdgeDecl> out;
    if (at_punct(";")) return out;
    out.push_back(edge());
    while (at_punct(",")) {
      next();
      out.push_back(edge());
    }
    return out;
  }

  void unique(const std::vector<Name>& v, const std::string& what) const {
    std::set<std::string> seen;
    for (const auto& n : v)
      if (!seen.insert(n.text).second) semantic(n.loc, "duplicate " + what + " '" + n.text + "'");
  }
  static std::map<std::string, std::size_t> index(const std::vector<Name>& v) {
    std::map<std::string, std::size_t> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.emplace(v[i].text, i);
    return out;
  }
  void known(const std::map<std::string, std::size_t>& idx, const Name& n,
             const std::string& what) const {
    if (!idx.count(n.text)) semantic(n.loc, "unknown " + what + " '" + n.text + "'");
  }

  SemigroupDecl semigroup() {
    SemigroupDecl d;
    d.name = name();
    expect("{");
    Loc table_loc = d.name.loc;
    bool has_elements = false, has_table = false, has_projections = false;
    while (!at_punct("}")) {
      const Token& kw = keyword();
      expect(":");
      if (kw.text == "elements") {
        d.elements = names(";");
        has_elements = true;
      } else if (kw.text == "table") {
        table_loc = kw.loc;
        has_table = true;
        while (!at_punct(";")) {
          d.row_locs.push_back(peek().loc);
          std::vector<Name> row;
          while (peek().kind == Tok::name) row.push_back(name());
          if (row.empty()) fail(peek().loc, "expected a table row" + found());
          d.table.push_back(std::move(row));
          if (at_punct(",")) next();
          else if (!at_punct(";")) fail(peek().loc, "expected ',' or ';' after a table row" + found());
        }
      } else if (kw.text == "projections") {
        d.projections = names(";");
        has_projections = true;
      } else if (kw.text == "lambda") {
        d.lambda = mappings();
      } else if (kw.text == "rho") {
        d.rho = mappings();
      } else {
        fail(kw.loc, "unknown semigroup field '" + kw.text + "'");
      }
      expect(";");
    }
    Loc close = peek().loc;
    next();
    if (!has_elements) semantic(close, "semigroup " + d.name.text + " has no elements");
    if (!has_table) semantic(close, "semigroup " + d.name.text + " has no table");
    if (!has_projections) semantic(close, "semigroup " + d.name.text + " has no projections");
    unique(d.elements, "element");
    auto idx = index(d.elements);
    const std::size_t n = d.elements.size();
    for (std::size_t i = 0; i < d.table.size(); ++i) {
      if (d.table[i].size() != n)
        semantic(d.row_locs[i], "table row has " + std::to_string(d.table[i].size()) +
                                    " entries, expected " + std::to_string(n));
      for (const auto& e : d.table[i]) known(idx, e, "element");
    }
    if (d.table.size() != n)
      semantic(table_loc, "table has " + std::to_string(d.table.size()) + " rows, expected " +
                              std::to_string(n));
    unique(d.projections, "projection");
    for (const auto& e : d.projections) known(idx, e, "element");
    for (auto* maps : {&d.lambda, &d.rho}) {
      if (!*maps) continue;
      std::vector<Name> lhs;
      for (const auto& [a, b] : **maps) {
        known(idx, a, "element");
        known(idx, b, "element");
        lhs.push_back(a);
      }
      unique(lhs, "map entry for");
      if (lhs.size() != n) semantic(d.name.loc, "lambda and rho must list every element");
    }
    return d;
  }

  GraphDecl graph() {
    GraphDecl d;
    d.name = name();
    expect("{");
    while (!at_punct("}")) {
      const Token& kw = keyword();
      expect(":");
      if (kw.text == "vertices")
        d.vertices = names(";");
      else if (kw.text == "edges")
        d.edges = edges();
      else
        fail(kw.loc, "unknown graph field '" + kw.text + "'");
      expect(";");
    }
    next();
    unique(d.vertices, "vertex");
    auto idx = index(d.vertices);
    std::vector<Name> en;
    for (const auto& e : d.edges) {
      known(idx, e.from, "vertex");
      known(idx, e.to, "vertex");
      en.push_back(e.name);
    }
    unique(en, "edge");
    return d;
  }

  CategoryDecl category() {
    CategoryDecl d;
    d.name = name();
    expect("{");
    while (!at_punct("}")) {
      const Token& kw = keyword();
      if (kw.text == "compose") {
        CompositionDecl c;
        c.g = name();
        c.f = name();
        expect("=");
        c.h = name();
        d.compositions.push_back(c);
      } else if (kw.text == "overflow") {
        Name a = name();
        d.overflow.emplace_back(a, name());
      } else {
        expect(":");
        if (kw.text == "objects")
          d.objects = names(";");
        else if (kw.text == "units")
          d.units = mappings();
        else if (kw.text == "morphisms")
          d.morphisms = edges();
        else
          fail(kw.loc, "unknown category field '" + kw.text + "'");
      }
      expect(";");
    }
    next();
    unique(d.objects, "object");
    auto objs = index(d.objects);
    std::vector<Name> mors;
    std::set<std::string> has_unit;
    for (const auto& [o, u] : d.units) {
      known(objs, o, "object");
      if (!has_unit.insert(o.text).second) semantic(o.loc, "second unit for " + o.text);
      mors.push_back(u);
    }
    for (const auto& o : d.objects)
      if (!has_unit.count(o.text)) mors.push_back({"1_" + o.text, o.loc});
    for (const auto& m : d.morphisms) {
      known(objs, m.from, "object");
      known(objs, m.to, "object");
      mors.push_back(m.name);
    }
    unique(mors, "morphism");
    auto midx = index(mors);
    for (const auto& c : d.compositions)
      for (const auto* n : {&c.g, &c.f, &c.h}) known(midx, *n, "morphism");
    for (const auto& [a, b] : d.overflow) {
      known(midx, a, "morphism");
      known(midx, b, "morphism");
    }
    return d;
  }

  ActionDecl action() {
    ActionDecl d;
    d.name = name();
    expect_keyword("on");
    d.semigroup = name();
    expect_keyword("over");
    expect("{");
    d.points = names("}");
    expect("}");
    expect("{");
    while (!at_punct("}")) {
      if (at_keyword("domain")) {
        next();
        Name e = name();
        expect(":");
        expect("{");
        auto pts = names("}");
        expect("}");
        d.domains.emplace_back(e, std::move(pts));
      } else {
        Name s = name();
        expect(":");
        d.maps.emplace_back(s, mappings());
      }
      expect(";");
    }
    next();
    unique(d.points, "point");
    auto idx = index(d.points);
    for (const auto& [s, maps] : d.maps)
      for (const auto& [p, q] : maps) {
        known(idx, p, "point");
        known(idx, q, "point");
      }
    for (const auto& [e, pts] : d.domains)
      for (const auto& p : pts) known(idx, p, "point");
    return d;
  }

  CoveringDecl covering() {
    CoveringDecl d;
    d.name = name();
    expect_keyword("from");
    d.source = name();
    expect_keyword("to");
    d.target = name();
    expect("{");
    while (!at_punct("}")) {
      const Token& kw = keyword();
      expect(":");
      if (kw.text == "objects") {
        d.objects = mappings();
      } else if (kw.text == "morphisms") {
        if (!at_punct(";")) {
          while (true) {
            Name a = name();
            expect("->");
            expect("{");
            auto img = names("}");
            expect("}");
            d.morphisms.emplace_back(a, std::move(img));
            if (!at_punct(",")) break;
            next();
          }
        }
      } else {
        fail(kw.loc, "unknown covering field '" + kw.text + "'");
      }
      expect(";");
    }
    next();
    return d;
  }

  template <class D>
  void unique_blocks(const std::vector<D>& v, const std::string& kind) const {
    std::vector<Name> n;
    for (const auto& d : v) n.push_back(d.name);
    unique(n, kind);
  }

  void resolve(const Workspace& ws) const {
    unique_blocks(ws.semigroups, "semigroup");
    unique_blocks(ws.graphs, "graph");
    unique_blocks(ws.categories, "category");
    unique_blocks(ws.actions, "action");
    unique_blocks(ws.coverings, "covering");
    for (const auto& a : ws.actions) {
      auto it = std::find_if(ws.semigroups.begin(), ws.semigroups.end(),
                             [&](const auto& s) { return s.name.text == a.semigroup.text; });
      if (it == ws.semigroups.end()) semantic(a.semigroup.loc, "unknown semigroup '" + a.semigroup.text + "'");
      auto idx = index(it->elements);
      std::vector<Name> listed;
      for (const auto& [s, maps] : a.maps) {
        known(idx, s, "element");
        listed.push_back(s);
      }
      for (const auto& [e, pts] : a.domains) {
        known(idx, e, "element");
        listed.push_back(e);
      }
      unique(listed, "action entry for");
    }
    for (const auto& c : ws.coverings) {
      auto find = [&](const Name& n) -> const CategoryDecl& {
        for (const auto& d : ws.categories)
          if (d.name.text == n.text) return d;
        semantic(n.loc, "unknown category '" + n.text + "'");
      };
      const auto& C = find(c.source);
      const auto& D = find(c.target);
      auto mors = [](const CategoryDecl& d) {
        std::set<std::string> out;
        for (const auto& [o, u] : d.units) out.insert(u.text);
        std::set<std::string> with_unit;
        for (const auto& [o, u] : d.units) with_unit.insert(o.text);
        for (const auto& o : d.objects)
          if (!with_unit.count(o.text)) out.insert("1_" + o.text);
        for (const auto& m : d.morphisms) out.insert(m.name.text);
        return out;
      };
      auto cm = mors(C), dm = mors(D);
      auto co = index(C.objects), dob = index(D.objects);
      for (const auto& [x, u] : c.objects) {
        known(co, x, "object");
        known(dob, u, "object");
      }
      for (const auto& [a, img] : c.morphisms) {
        if (!cm.count(a.text)) semantic(a.loc, "unknown morphism '" + a.text + "'");
        for (const auto& b : img)
          if (!dm.count(b.text)) semantic(b.loc, "unknown morphism '" + b.text + "'");
      }
    }
  }

  std::vector<Token> _t;
  std::string _file;
  std::size_t _p = 0;
};

const std::set<std::string>& keywords() {
  static const std::set<std::string> k{
      "semigroup", "graph", "category", "action", "covering", "elements", "table",
      "projections", "lambda", "rho", "vertices", "edges", "objects", "units", "morphisms",
      "compose", "overflow", "on", "over", "domain", "from", "to"};
  return k;
}

std::string q(const std::string& s) {
  bool plain = !s.empty() && !keywords().count(s) &&
               std::all_of(s.begin(), s.end(), [](char c) { return name_char(static_cast<unsigned char>(c)); });
  if (plain) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string join(const std::vector<Name>& v, const char* sep = ", ") {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += q(v[i].text);
  }
  return out;
}

std::string join(const std::vector<Mapping>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += q(v[i].first.text) + " -> " + q(v[i].second.text);
  }
  return out;
}

std::string join(const std::vector<EdgeDecl>& v, const std::string& indent) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",\n" + indent;
    out += q(v[i].name.text) + ": " + q(v[i].from.text) + " -> " + q(v[i].to.text);
  }
  return out;
}

Name nm(const std::string& s) { return {s, {}}; }

template <class D>
const D& pick(const std::vector<D>& v, const std::string& name, const std::string& kind,
              const std::string& file) {
  if (v.empty()) throw ValidationError(file + ": no " + kind + " block");
  if (name.empty()) return v.front();
  for (const auto& d : v)
    if (d.name.text == name) return d;
  throw ValidationError(file + ": no " + kind + " named '" + name + "'");
}

}  // namespace

const SemigroupDecl& Workspace::semigroup(const std::string& name) const {
  return pick(semigroups, name, "semigroup", file);
}
const GraphDecl& Workspace::graph(const std::string& name) const {
  return pick(graphs, name, "graph", file);
}
const CategoryDecl& Workspace::category(const std::string& name) const {
  return pick(categories, name, "category", file);
}
const ActionDecl& Workspace::action(const std::string& name) const {
  return pick(actions, name, "action", file);
}
const CoveringDecl& Workspace::covering(const std::string& name) const {
  return pick(coverings, name, "covering", file);
}

Workspace parse(const std::string& source, const std::string& file) {
  return Parser(Lexer(source, file).run(), file).run();
}

Workspace load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path);
}

std::string pretty(const Workspace& ws) {
  std::ostringstream os;
  bool first = true;
  auto gap = [&] {
    if (!first) os << "\n";
    first = false;
  };
  for (const auto& d : ws.semigroups) {
    gap();
    os << "semigroup " << q(d.name.text) << " {\n";
    os << "  elements: " << join(d.elements) << ";\n";
    os << "  table:";
    for (std::size_t i = 0; i < d.table.size(); ++i)
      os << (i ? ",\n        " : " ") << join(d.table[i], " ");
    os << ";\n";
    os << "  projections: " << join(d.projections) << ";\n";
    if (d.lambda) os << "  lambda: " << join(*d.lambda) << ";\n";
    if (d.rho) os << "  rho: " << join(*d.rho) << ";\n";
    os << "}\n";
  }
  for (const auto& d : ws.graphs) {
    gap();
    os << "graph " << q(d.name.text) << " {\n";
    os << "  vertices: " << join(d.vertices) << ";\n";
    os << "  edges: " << join(d.edges, "         ") << ";\n";
    os << "}\n";
  }
  for (const auto& d : ws.categories) {
    gap();
    os << "category " << q(d.name.text) << " {\n";
    os << "  objects: " << join(d.objects) << ";\n";
    if (!d.units.empty()) os << "  units: " << join(d.units) << ";\n";
    os << "  morphisms: " << join(d.morphisms, "             ") << ";\n";
    for (const auto& c : d.compositions)
      os << "  compose " << q(c.g.text) << " " << q(c.f.text) << " = " << q(c.h.text) << ";\n";
    for (const auto& [a, b] : d.overflow) os << "  overflow " << q(a.text) << " " << q(b.text) << ";\n";
    os << "}\n";
  }
  for (const auto& d : ws.actions) {
    gap();
    os << "action " << q(d.name.text) << " on " << q(d.semigroup.text) << " over {"
       << join(d.points) << "} {\n";
    for (const auto& [s, maps] : d.maps) os << "  " << q(s.text) << ": " << join(maps) << ";\n";
    for (const auto& [e, pts] : d.domains)
      os << "  domain " << q(e.text) << ": {" << join(pts) << "};\n";
    os << "}\n";
  }
  for (const auto& d : ws.coverings) {
    gap();
    os << "covering " << q(d.name.text) << " from " << q(d.source.text) << " to "
       << q(d.target.text) << " {\n";
    os << "  objects: " << join(d.objects) << ";\n";
    os << "  morphisms: ";
    for (std::size_t i = 0; i < d.morphisms.size(); ++i)
      os << (i ? ",\n             " : "") << q(d.morphisms[i].first.text) << " -> {"
         << join(d.morphisms[i].second) << "}";
    os << ";\n}\n";
  }
  return os.str();
}

FinRS build(const SemigroupDecl& d) {
  std::map<std::string, Elem> idx;
  std::vector<std::string> names;
  for (const auto& e : d.elements) {
    idx.emplace(e.text, Elem(names.size()));
    names.push_back(e.text);
  }
  const std::size_t n = names.size();
  std::vector<Elem> table;
  for (const auto& row : d.table)
    for (const auto& e : row) table.push_back(idx.at(e.text));
  std::vector<Elem> proj;
  for (const auto& e : d.projections) proj.push_back(idx.at(e.text));
  auto maps = [&](const std::optional<std::vector<Mapping>>& m) -> std::optional<std::vector<Elem>> {
    if (!m) return std::nullopt;
    std::vector<Elem> out(n);
    for (const auto& [a, b] : *m) out[idx.at(a.text)] = idx.at(b.text);
    return out;
  };
  return FinRS(n, std::move(table), std::move(proj), maps(d.lambda), maps(d.rho), names);
}

Graph build(const GraphDecl& d) {
  Graph G;
  std::map<std::string, std::uint32_t> idx;
  for (const auto& v : d.vertices) {
    idx.emplace(v.text, std::uint32_t(G.vertices.size()));
    G.vertices.push_back(v.text);
  }
  for (const auto& e : d.edges) G.edges.push_back({e.name.text, idx.at(e.from.text), idx.at(e.to.text)});
  return G;
}

FinCat build(const CategoryDecl& d) {
  FinCat::Builder b;
  std::map<std::string, Obj> objs;
  std::map<std::string, Mor> mors;
  for (const auto& o : d.objects) objs[o.text] = b.add_object(o.text);
  std::map<std::string, std::string> unit_name;
  for (const auto& [o, u] : d.units) unit_name[o.text] = u.text;
  for (const auto& o : d.objects) {
    auto it = unit_name.find(o.text);
    std::string u = it == unit_name.end() ? "1_" + o.text : it->second;
    mors[u] = b.add_unit(objs[o.text], u);
  }
  for (const auto& m : d.morphisms)
    mors[m.name.text] = b.add_morphism(m.name.text, objs.at(m.from.text), objs.at(m.to.text));
  for (const auto& c : d.compositions)
    b.set_composition(mors.at(c.g.text), mors.at(c.f.text), mors.at(c.h.text));
  for (const auto& [x, y] : d.overflow) b.add_overflow(mors.at(x.text), mors.at(y.text));
  return b.build();
}

EtaleAction build(const ActionDecl& d, const FinRS& S) {
  EtaleAction A;
  std::map<std::string, Point> idx;
  for (const auto& p : d.points) {
    idx.emplace(p.text, Point(A.point_names.size()));
    A.point_names.push_back(p.text);
  }
  A.theta.assign(S.size(), PartialMap(A.carrier()));
  auto elem = [&](const Name& n) {
    auto s = S.find(n.text);
    if (!s) throw ParseError(ErrorCode::semantic, "<action>", n.loc.line, n.loc.column,
                             "unknown element '" + n.text + "'");
    return *s;
  };
  for (const auto& [s, maps] : d.maps) {
    auto& th = A.theta[elem(s)];
    for (const auto& [p, q] : maps) th.set(idx.at(p.text), idx.at(q.text));
  }
  for (const auto& [e, pts] : d.domains) {
    auto& th = A.theta[elem(e)];
    for (const auto& p : pts) th.set(idx.at(p.text), idx.at(p.text));
  }
  return A;
}

CoveringMorphism build(const CoveringDecl& d, std::shared_ptr<const FinCat> source,
                       std::shared_ptr<const FinCat> target) {
  CoveringMorphism phi{source, target, {}, {}};
  phi.objects.assign(source->num_objects(), Obj(0));
  phi.morphisms.assign(source->num_morphisms(), {});
  std::vector<bool> seen(source->num_objects(), false);
  auto bad = [](const Name& n, const std::string& msg) {
    return ParseError(ErrorCode::semantic, "<covering>", n.loc.line, n.loc.column, msg);
  };
  for (const auto& [x, u] : d.objects) {
    auto a = source->find_object(x.text);
    auto b = target->find_object(u.text);
    if (!a) throw bad(x, "unknown object '" + x.text + "'");
    if (!b) throw bad(u, "unknown object '" + u.text + "'");
    phi.objects[*a] = *b;
    seen[*a] = true;
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end())
    throw bad(d.name, "covering " + d.name.text + " must map every object");
  for (const auto& [a, img] : d.morphisms) {
    auto x = source->find_morphism(a.text);
    if (!x) throw bad(a, "unknown morphism '" + a.text + "'");
    for (const auto& bn : img) {
      auto y = target->find_morphism(bn.text);
      if (!y) throw bad(bn, "unknown morphism '" + bn.text + "'");
      phi.morphisms[*x].push_back(*y);
    }
    std::sort(phi.morphisms[*x].begin(), phi.morphisms[*x].end());
    phi.morphisms[*x].erase(std::unique(phi.morphisms[*x].begin(), phi.morphisms[*x].end()),
                            phi.morphisms[*x].end());
  }
  return phi;
}

SemigroupDecl declare(const FinRS& S, const std::string& name, bool with_maps) {
  SemigroupDecl d;
  d.name = nm(name);
  const std::size_t n = S.size();
  for (Elem s = 0; s < n; ++s) d.elements.push_back(nm(S.name(s)));
  for (Elem s = 0; s < n; ++s) {
    std::vector<Name> row;
    for (Elem t = 0; t < n; ++t) row.push_back(nm(S.name(S.mul(s, t))));
    d.table.push_back(std::move(row));
    d.row_locs.push_back({});
  }
  for (Elem e : S.projections()) d.projections.push_back(nm(S.name(e)));
  if (with_maps) {
    d.lambda.emplace();
    d.rho.emplace();
    for (Elem s = 0; s < n; ++s) {
      d.lambda->emplace_back(nm(S.name(s)), nm(S.name(S.lambda(s))));
      d.rho->emplace_back(nm(S.name(s)), nm(S.name(S.rho(s))));
    }
  }
  return d;
}

GraphDecl declare(const Graph& G, const std::string& name) {
  GraphDecl d;
  d.name = nm(name);
  for (const auto& v : G.vertices) d.vertices.push_back(nm(v));
  for (const auto& e : G.edges)
    d.edges.push_back({nm(e.name), nm(G.vertices[e.source]), nm(G.vertices[e.target])});
  return d;
}

CategoryDecl declare(const FinCat& C, const std::string& name) {
  CategoryDecl d;
  d.name = nm(name);
  for (Obj u = 0; u < C.num_objects(); ++u) {
    d.objects.push_back(nm(C.object_name(u)));
    const auto& un = C.morphism_name(C.unit(u));
    if (un != "1_" + C.object_name(u)) d.units.emplace_back(nm(C.object_name(u)), nm(un));
  }
  for (Mor x = 0; x < C.num_morphisms(); ++x)
    if (!C.is_unit(x))
      d.morphisms.push_back(
          {nm(C.morphism_name(x)), nm(C.object_name(C.d(x))), nm(C.object_name(C.r(x)))});
  for (Mor a = 0; a < C.num_morphisms(); ++a) {
    if (C.is_unit(a)) continue;
    for (Mor b : C.with_range(C.d(a))) {
      if (C.is_unit(b)) continue;
      if (auto ab = C.compose(a, b))
        d.compositions.push_back(
            {nm(C.morphism_name(a)), nm(C.morphism_name(b)), nm(C.morphism_name(*ab))});
    }
  }
  for (const auto& [a, b] : C.overflow())
    d.overflow.emplace_back(nm(C.morphism_name(a)), nm(C.morphism_name(b)));
  return d;
}

ActionDecl declare(const EtaleAction& theta, const FinRS& S, const std::string& name,
                   const std::string& semigroup) {
  ActionDecl d;
  d.name = nm(name);
  d.semigroup = nm(semigroup);
  for (const auto& p : theta.point_names) d.points.push_back(nm(p));
  for (Elem s = 0; s < S.size(); ++s) {
    const auto& th = theta.theta[s];
    if (S.is_projection(s) && th.is_identity_on_domain()) {
      std::vector<Name> pts;
      for (Point x : th.domain()) pts.push_back(nm(theta.point_names[x]));
      d.domains.emplace_back(nm(S.name(s)), std::move(pts));
      continue;
    }
    std::vector<Mapping> maps;
    for (Point x : th.domain())
      maps.emplace_back(nm(theta.point_names[x]), nm(theta.point_names[th.at(x)]));
    d.maps.emplace_back(nm(S.name(s)), std::move(maps));
  }
  return d;
}

CoveringDecl declare(const CoveringMorphism& phi, const std::string& name,
                     const std::string& source, const std::string& target) {
  CoveringDecl d;
  d.name = nm(name);
  d.source = nm(source);
  d.target = nm(target);
  const FinCat& C = *phi.source;
  const FinCat& D = *phi.target;
  for (Obj x = 0; x < C.num_objects(); ++x)
    d.objects.emplace_back(nm(C.object_name(x)), nm(D.object_name(phi.objects[x])));
  for (Mor a = 0; a < C.num_morphisms(); ++a) {
    std::vector<Name> img;
    for (Mor b : phi.morphisms[a]) img.push_back(nm(D.morphism_name(b)));
    d.morphisms.emplace_back(nm(C.morphism_name(a)), std::move(img));
  }
  return d;
}

}  // namespace rswork::dsl
