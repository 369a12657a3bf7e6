#include "rswork/cat.hpp"

#include <algorithm>
#include <map>

#include "rswork/error.hpp"

namespace rswork {

std::optional<Mor> FinCat::compose(Mor a, Mor b) const {
  auto it = _comp.find(key(a, b));
  if (it == _comp.end()) return std::nullopt;
  return it->second;
}

bool FinCat::overflows(Mor a, Mor b) const { return _overflow_set.count(key(a, b)) > 0; }

std::optional<Mor> FinCat::find_morphism(const std::string& name) const {
  auto it = std::find(_morphism_names.begin(), _morphism_names.end(), name);
  if (it == _morphism_names.end()) return std::nullopt;
  return Mor(it - _morphism_names.begin());
}

std::optional<Obj> FinCat::find_object(const std::string& name) const {
  auto it = std::find(_object_names.begin(), _object_names.end(), name);
  if (it == _object_names.end()) return std::nullopt;
  return Obj(it - _object_names.begin());
}

void FinCat::override_composition(Mor a, Mor b, Mor c) {
  _comp[key(a, b)] = c;
  index();
}

void FinCat::index() {
  const std::size_t n = _d.size();
  _factor.assign(n, {});
  for (const auto& [k, c] : _comp) _factor[c].emplace_back(Mor(k >> 32), Mor(k & 0xffffffffu));
  for (auto& f : _factor) std::sort(f.begin(), f.end());
  _with_d.assign(_object_names.size(), {});
  _with_r.assign(_object_names.size(), {});
  for (Mor x = 0; x < n; ++x) {
    _with_d[_d[x]].push_back(x);
    _with_r[_r[x]].push_back(x);
  }
}

Obj FinCat::Builder::add_object(const std::string& name) {
  _cat._object_names.push_back(name);
  _units.emplace_back();
  return Obj(_cat._object_names.size() - 1);
}

Mor FinCat::Builder::add_morphism(const std::string& name, Obj d, Obj r) {
  if (d >= _cat._object_names.size() || r >= _cat._object_names.size())
    throw StructuralError("morphism " + name + " has an unknown end");
  _cat._morphism_names.push_back(name);
  _cat._d.push_back(d);
  _cat._r.push_back(r);
  return Mor(_cat._d.size() - 1);
}

Mor FinCat::Builder::add_unit(Obj u, const std::string& name) {
  Mor x = add_morphism(name, u, u);
  _units[u] = x;
  return x;
}

void FinCat::Builder::set_composition(Mor a, Mor b, Mor c) {
  const std::size_t n = _cat._d.size();
  if (a >= n || b >= n || c >= n) throw StructuralError("composition refers to an unknown morphism");
  _cat._comp[key(a, b)] = c;
}

void FinCat::Builder::add_overflow(Mor a, Mor b) {
  if (_cat._overflow_set.emplace(key(a, b), true).second) _cat._overflow.emplace_back(a, b);
}

FinCat FinCat::Builder::build() {
  FinCat& C = _cat;
  for (Obj u = 0; u < C._object_names.size(); ++u) {
    if (!_units[u]) throw StructuralError("object " + C._object_names[u] + " has no unit");
    C._unit.push_back(*_units[u]);
  }
  for (Mor x = 0; x < C._d.size(); ++x) {
    C._comp.emplace(key(C._unit[C._r[x]], x), x);
    C._comp.emplace(key(x, C._unit[C._d[x]]), x);
  }
  std::sort(C._overflow.begin(), C._overflow.end());
  C.index();
  return std::move(C);
}

CategoryReport validate_category(const FinCat& C) {
  CategoryReport rep;
  auto fail = [&](const std::string& law, std::vector<Mor> w) {
    rep.ok = false;
    for (const auto& v : rep.violations)
      if (v.law == law) return;
    rep.violations.push_back({law, std::move(w)});
  };
  const std::size_t n = C.num_morphisms();
  for (Obj u = 0; u < C.num_objects(); ++u) {
    Mor e = C.unit(u);
    if (C.d(e) != u || C.r(e) != u) fail("unit_ends", {e});
  }
  for (Mor a = 0; a < n; ++a) {
    if (C.compose(C.unit(C.r(a)), a) != a) fail("left_unit", {a});
    if (C.compose(a, C.unit(C.d(a))) != a) fail("right_unit", {a});
    for (Mor b = 0; b < n; ++b) {
      auto ab = C.compose(a, b);
      bool over = C.overflows(a, b);
      if (ab && over) fail("overflow_and_defined", {a, b});
      if (C.composable(a, b) != (ab.has_value() || over)) fail("composition_domain", {a, b});
      if (ab && (C.d(*ab) != C.d(b) || C.r(*ab) != C.r(a))) fail("composite_ends", {a, b});
    }
  }
  for (Mor a = 0; a < n; ++a)
    for (Mor b : C.with_range(C.d(a))) {
      auto ab = C.compose(a, b);
      for (Mor c : C.with_range(C.d(b))) {
        auto bc = C.compose(b, c);
        std::optional<Mor> left, right;
        if (ab) left = C.compose(*ab, c);
        if (bc) right = C.compose(a, *bc);
        if (!left || !right) {
          ++rep.skipped_triples;
          continue;
        }
        if (*left != *right) fail("associativity", {a, b, c});
      }
    }
  return rep;
}

bool is_bisection(const FinCat& C, const Bisection& U) {
  std::vector<bool> dd(C.num_objects(), false), rr(C.num_objects(), false);
  for (Mor x : U) {
    if (x >= C.num_morphisms() || dd[C.d(x)] || rr[C.r(x)]) return false;
    dd[C.d(x)] = rr[C.r(x)] = true;
  }
  return true;
}

std::vector<Bisection> enumerate_bisections(const FinCat& C) {
  const std::size_t n = C.num_morphisms();
  enforce_guard("bisection enumeration |C1|", n, kBisectionGuard);
  std::vector<Bisection> out;
  std::vector<bool> dd(C.num_objects(), false), rr(C.num_objects(), false);
  Bisection cur;
  auto rec = [&](auto&& self, Mor x) -> void {
    if (x == n) {
      out.push_back(cur);
      return;
    }
    self(self, x + 1);
    if (!dd[C.d(x)] && !rr[C.r(x)]) {
      dd[C.d(x)] = rr[C.r(x)] = true;
      cur.push_back(x);
      self(self, x + 1);
      cur.pop_back();
      dd[C.d(x)] = rr[C.r(x)] = false;
    }
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end(), [](const Bisection& a, const Bisection& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

Bisection bisection_product(const FinCat& C, const Bisection& U, const Bisection& V) {
  Bisection out;
  for (Mor x : U)
    for (Mor y : V) {
      if (!C.composable(x, y)) continue;
      auto xy = C.compose(x, y);
      if (!xy) {
        throw TruncationError("product " + C.morphism_name(x) + " " + C.morphism_name(y) +
                              " leaves the window");
      }
      out.push_back(*xy);
    }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<Elem> BisSemigroup::find(const Bisection& U) const {
  auto it = std::find(bisections.begin(), bisections.end(), U);
  if (it == bisections.end()) return std::nullopt;
  return Elem(it - bisections.begin());
}

namespace {

std::string bisection_name(const FinCat& C, const Bisection& U) {
  std::string out = "{";
  for (std::size_t i = 0; i < U.size(); ++i) out += (i ? "," : "") + C.morphism_name(U[i]);
  return out + "}";
}

}  // namespace

BisSemigroup bis_semigroup(const FinCat& C) {
  if (C.truncated())
    throw TruncationError("Bis of a truncated category is not closed under products");
  auto bis = enumerate_bisections(C);
  enforce_guard("number of bisections", bis.size(), kSemigroupGuard);
  const std::size_t n = bis.size();
  std::map<Bisection, Elem> where;
  for (Elem i = 0; i < n; ++i) where[bis[i]] = i;
  auto lookup = [&](const Bisection& U) {
    auto it = where.find(U);
    if (it == where.end()) throw InternalError("product of bisections is not a bisection");
    return it->second;
  };
  std::vector<Elem> table(n * n), lambda(n), rho(n), projections;
  std::vector<std::string> names;
  for (Elem i = 0; i < n; ++i) {
    names.push_back(bisection_name(C, bis[i]));
    bool in_units = std::all_of(bis[i].begin(), bis[i].end(), [&](Mor x) { return C.is_unit(x); });
    if (in_units) projections.push_back(i);
    Bisection dU, rU;
    for (Mor x : bis[i]) {
      dU.push_back(C.unit(C.d(x)));
      rU.push_back(C.unit(C.r(x)));
    }
    std::sort(dU.begin(), dU.end());
    std::sort(rU.begin(), rU.end());
    lambda[i] = lookup(dU);
    rho[i] = lookup(rU);
    for (Elem j = 0; j < n; ++j) table[i * n + j] = lookup(bisection_product(C, bis[i], bis[j]));
  }
  return BisSemigroup{bis, FinRS(n, std::move(table), std::move(projections), std::move(lambda),
                                 std::move(rho), std::move(names))};
}

namespace {

CancellationReport cancellation(const FinCat& C, bool left) {
  CancellationReport rep;
  const std::size_t n = C.num_morphisms();
  std::vector<std::optional<Mor>> seen(n);
  for (Mor x = 0; x < n && rep.holds; ++x) {
    std::fill(seen.begin(), seen.end(), std::nullopt);
    const auto& others = left ? C.with_range(C.d(x)) : C.with_source(C.r(x));
    for (Mor y : others) {
      auto p = left ? C.compose(x, y) : C.compose(y, x);
      if (!p) {
        ++rep.skipped_pairs;
        continue;
      }
      if (seen[*p]) {
        rep.holds = false;
        rep.witness = std::array<Mor, 3>{x, *seen[*p], y};
        break;
      }
      seen[*p] = y;
    }
  }
  return rep;
}

}  // namespace

CancellationReport is_left_cancellative(const FinCat& C) { return cancellation(C, true); }
CancellationReport is_right_cancellative(const FinCat& C) { return cancellation(C, false); }
bool is_cancellative(const FinCat& C) {
  return is_left_cancellative(C).holds && is_right_cancellative(C).holds;
}

std::optional<std::vector<Mor>> groupoid_inverses(const FinCat& C) {
  std::vector<Mor> inv(C.num_morphisms());
  for (Mor x = 0; x < C.num_morphisms(); ++x) {
    std::optional<Mor> found;
    for (Mor y : C.with_source(C.r(x))) {
      if (C.r(y) != C.d(x)) continue;
      if (C.compose(x, y) == C.unit(C.r(x)) && C.compose(y, x) == C.unit(C.d(x))) {
        found = y;
        break;
      }
    }
    if (!found) return std::nullopt;
    inv[x] = *found;
  }
  return inv;
}

bool is_groupoid(const FinCat& C) { return groupoid_inverses(C).has_value(); }

FinCat graph_category(const Graph& G, std::size_t N) {
  FinCat::Builder b;
  for (const auto& v : G.vertices) b.add_object(v);
  for (Obj v = 0; v < G.vertices.size(); ++v) b.add_unit(v, G.vertices[v]);
  for (const auto& e : G.edges)
    if (e.source >= G.vertices.size() || e.target >= G.vertices.size())
      throw StructuralError("edge " + e.name + " has an unknown end");
  std::vector<std::vector<std::uint32_t>> paths;
  std::map<std::vector<std::uint32_t>, Mor> where;
  auto add_path = [&](std::vector<std::uint32_t> p) {
    std::string name;
    for (std::size_t i = 0; i < p.size(); ++i) name += (i ? "." : "") + G.edges[p[i]].name;
    Mor m = b.add_morphism(name, G.edges[p.back()].source, G.edges[p.front()].target);
    where[p] = m;
    paths.push_back(std::move(p));
  };
  std::size_t level_begin = 0;
  for (std::uint32_t e = 0; e < G.edges.size() && N >= 1; ++e) add_path({e});
  for (std::size_t len = 2; len <= N; ++len) {
    std::size_t level_end = paths.size();
    for (std::size_t i = level_begin; i < level_end; ++i)
      for (std::uint32_t e = 0; e < G.edges.size(); ++e)
        if (G.edges[paths[i].back()].source == G.edges[e].target) {
          auto p = paths[i];
          p.push_back(e);
          add_path(std::move(p));
        }
    level_begin = level_end;
    enforce_guard("truncated path category size", b.num_morphisms(), 1000000);
  }
  const std::size_t offset = G.vertices.size();
  for (std::size_t i = 0; i < paths.size(); ++i)
    for (std::size_t j = 0; j < paths.size(); ++j) {
      const auto& p = paths[i];
      const auto& q = paths[j];
      if (G.edges[p.back()].source != G.edges[q.front()].target) continue;
      Mor a = Mor(offset + i), c = Mor(offset + j);
      if (p.size() + q.size() > N) {
        b.add_overflow(a, c);
        continue;
      }
      auto pq = p;
      pq.insert(pq.end(), q.begin(), q.end());
      b.set_composition(a, c, where.at(pq));
    }
  return b.build();
}

FinCat transformation_category(const std::vector<std::string>& points,
                               const std::vector<std::uint32_t>& f, std::size_t N) {
  const std::size_t m = points.size();
  if (f.size() != m) throw StructuralError("transformation needs one image per point");
  for (auto y : f)
    if (y >= m) throw StructuralError("transformation image out of range");
  FinCat::Builder b;
  for (const auto& p : points) b.add_object(p);
  // index (n, x) -> morphism
  std::vector<std::vector<Mor>> at(N + 1, std::vector<Mor>(m));
  for (std::uint32_t x = 0; x < m; ++x) at[0][x] = b.add_unit(x, "(" + points[x] + ",0," + points[x] + ")");
  std::vector<std::uint32_t> cur(m);
  for (std::uint32_t x = 0; x < m; ++x) cur[x] = x;
  std::vector<std::vector<std::uint32_t>> image(N + 1);
  image[0] = cur;
  for (std::size_t k = 1; k <= N; ++k) {
    for (std::uint32_t x = 0; x < m; ++x) cur[x] = f[cur[x]];
    image[k] = cur;
    for (std::uint32_t x = 0; x < m; ++x)
      at[k][x] = b.add_morphism(
          "(" + points[cur[x]] + "," + std::to_string(k) + "," + points[x] + ")", x, cur[x]);
  }
  for (std::size_t k = 0; k <= N; ++k)
    for (std::uint32_t x = 0; x < m; ++x)
      for (std::size_t l = 0; l <= N; ++l) {
        if (k == 0 || l == 0) continue;  // unit laws are filled in by build()
        // (z, l, y)(y, k, x) with y = f^k(x)
        Mor left = at[l][image[k][x]], right = at[k][x];
        if (k + l > N)
          b.add_overflow(left, right);
        else
          b.set_composition(left, right, at[k + l][x]);
      }
  return b.build();
}

FinCat category_of_semigroup(const FinRS& S) {
  S.require_restriction("category_of_semigroup");
  FinCat::Builder b;
  const auto& E = S.projections();
  std::vector<Obj> obj_of(S.size(), 0);
  for (Obj i = 0; i < E.size(); ++i) {
    b.add_object(S.name(E[i]));
    obj_of[E[i]] = i;
  }
  for (Elem s = 0; s < S.size(); ++s) {
    Obj d = obj_of[S.lambda(s)], r = obj_of[S.rho(s)];
    if (S.is_projection(s))
      b.add_unit(obj_of[s], S.name(s));
    else
      b.add_morphism(S.name(s), d, r);
  }
  for (Elem s = 0; s < S.size(); ++s)
    for (Elem t = 0; t < S.size(); ++t)
      if (S.lambda(s) == S.rho(t)) b.set_composition(s, t, S.mul(s, t));
  return b.build();
}

FinCat multiplicative_window(std::size_t K) {
  if (K < 1) throw StructuralError("the window must contain 1");
  FinCat::Builder b;
  b.add_object("*");
  b.add_morphism("0", 0, 0);
  b.add_unit(0, "1");
  for (std::size_t k = 2; k <= K; ++k) b.add_morphism(std::to_string(k), 0, 0);
  for (std::size_t x = 0; x <= K; ++x)
    for (std::size_t y = 0; y <= K; ++y) {
      if (x == 1 || y == 1) continue;
      if (x * y <= K)
        b.set_composition(Mor(x), Mor(y), Mor(x * y));
      else
        b.add_overflow(Mor(x), Mor(y));
    }
  return b.build();
}

}  // namespace rswork
