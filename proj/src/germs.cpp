#include "rswork/germs.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace rswork {

ActionReport validate_action(const FinRS& S, const EtaleAction& theta) {
  ActionReport rep;
  auto fail = [&](const std::string& what, std::vector<std::uint32_t> w) {
    if (!rep.ok) return;
    rep.ok = false;
    rep.failed = what;
    rep.witness = std::move(w);
  };
  const std::size_t n = S.size(), m = theta.carrier();
  if (theta.theta.size() != n) {
    fail("one_map_per_element", {});
    return rep;
  }
  for (Elem s = 0; s < n; ++s)
    if (theta.theta[s].carrier() != m) {
      fail("carrier_mismatch", {s});
      return rep;
    }
  for (Elem s = 0; s < n; ++s) {
    const auto& th = theta.theta[s];
    if (!th.injective()) fail("injective", {s});
    if (S.is_projection(s) && !th.is_identity_on_domain()) fail("projection_identity", {s});
    if (th.domain() != theta.theta[S.lambda(s)].domain()) fail("domain_is_D_lambda", {s});
    if (th.image() != theta.theta[S.rho(s)].domain()) fail("range_is_D_rho", {s});
  }
  for (Elem s = 0; s < n && rep.ok; ++s)
    for (Elem t = 0; t < n && rep.ok; ++t)
      if (compose(theta.theta[s], theta.theta[t]) != theta.theta[S.mul(s, t)])
        fail("multiplicative", {s, t});
  std::vector<bool> covered(m, false);
  for (Elem e : S.projections())
    for (Point x : theta.domain(e)) covered[x] = true;
  for (Point x = 0; x < m; ++x)
    if (!covered[x]) fail("domains_cover", {x});
  return rep;
}

std::optional<Elem> germ_witness(const FinRS& S, const EtaleAction& theta, Elem s, Elem t,
                                 Point x) {
  for (Elem f : S.projections())
    if (theta.theta[f].defined(x) && S.mul(s, f) == S.mul(t, f)) return f;
  return std::nullopt;
}

std::optional<Mor> GermTable::class_of(Elem s, Point x) const {
  if (s >= _class.size() || x >= _class[s].size()) return std::nullopt;
  return _class[s][x];
}

std::vector<Mor> GermTable::theta_set(Elem s) const {
  std::vector<Mor> out;
  for (const auto& c : _class.at(s))
    if (c) out.push_back(*c);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

GermTable germ_category(const FinRS& S, const EtaleAction& theta) {
  auto check = validate_action(S, theta);
  if (!check.ok) throw ValidationError("action fails " + check.failed);
  const std::size_t n = S.size(), m = theta.carrier();

  std::vector<std::vector<std::size_t>> id(n, std::vector<std::size_t>(m, SIZE_MAX));
  std::vector<Germ> germs;
  for (Elem s = 0; s < n; ++s)
    for (Point x : theta.domain(S.lambda(s))) {
      id[s][x] = germs.size();
      germs.push_back({s, x});
    }
  UnionFind uf(germs.size());
  std::vector<std::size_t> bucket(n);
  for (Point x = 0; x < m; ++x) {
    for (Elem f : S.projections()) {
      if (!theta.theta[f].defined(x)) continue;
      std::fill(bucket.begin(), bucket.end(), SIZE_MAX);
      for (Elem s = 0; s < n; ++s) {
        if (id[s][x] == SIZE_MAX) continue;
        Elem sf = S.mul(s, f);
        if (bucket[sf] == SIZE_MAX)
          bucket[sf] = id[s][x];
        else
          uf.unite(bucket[sf], id[s][x]);
      }
    }
  }

  std::map<std::size_t, std::vector<Germ>> by_root;
  for (std::size_t i = 0; i < germs.size(); ++i) by_root[uf.find(i)].push_back(germs[i]);
  GermTable G;
  for (auto& [root, members] : by_root) {
    std::sort(members.begin(), members.end());
    G._members.push_back(std::move(members));
  }
  std::sort(G._members.begin(), G._members.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  G._class.assign(n, std::vector<std::optional<Mor>>(m));
  for (Mor c = 0; c < G._members.size(); ++c)
    for (const Germ& g : G._members[c]) G._class[g.s][g.x] = c;

  for (const auto& members : G._members)
    for (std::size_t i = 0; i < members.size(); ++i)
      for (std::size_t j = i + 1; j < members.size(); ++j)
        if (!germ_witness(S, theta, members[i].s, members[j].s, members[i].x))
          throw InternalError("germ relation is not transitive at (" + S.name(members[i].s) +
                              ", " + S.name(members[j].s) + ")");

  std::vector<std::optional<Mor>> unit(m);
  for (Point x = 0; x < m; ++x)
    for (Elem e : S.projections()) {
      if (!theta.theta[e].defined(x)) continue;
      Mor c = *G._class[e][x];
      if (unit[x] && *unit[x] != c)
        throw InternalError("unit germ depends on the projection at " + theta.point_names[x]);
      unit[x] = c;
    }

  FinCat::Builder b;
  for (const auto& p : theta.point_names) b.add_object(p);
  for (Mor c = 0; c < G._members.size(); ++c) {
    const Germ& g = G._members[c].front();
    std::string name = "[" + S.name(g.s) + "," + theta.point_names[g.x] + "]";
    if (unit[g.x] == c)
      b.add_unit(g.x, name);
    else
      b.add_morphism(name, g.x, theta.theta[g.s].at(g.x));
  }
  for (Mor a = 0; a < G._members.size(); ++a) {
    for (Mor c = 0; c < G._members.size(); ++c) {
      const Germ& ga = G._members[a].front();
      const Germ& gc = G._members[c].front();
      if (theta.theta[gc.s].at(gc.x) != ga.x) continue;
      Mor prod = *G._class[S.mul(ga.s, gc.s)][gc.x];
      for (const Germ& x : G._members[a])
        for (const Germ& y : G._members[c])
          if (*G._class[S.mul(x.s, y.s)][y.x] != prod)
            throw InternalError("germ product depends on representatives");
      b.set_composition(a, c, prod);
    }
  }
  G._cat = std::make_shared<const FinCat>(b.build());
  return G;
}

STildeReport s_tilde(const FinRS& S, const CanonicalAction& can, const GermTable& G) {
  STildeReport rep;
  const FinCat& C = G.category();
  const std::size_t n = S.size();
  for (Elem s = 0; s < n; ++s) {
    auto c = G.class_of(s, can.principal(S.lambda(s)));
    if (!c) throw InternalError("principal character outside D_lambda(s)");
    rep.psi.push_back(*c);
  }
  std::vector<bool> in_image(G.num_classes(), false);
  for (Mor c : rep.psi) {
    if (in_image[c]) rep.injective = false;
    in_image[c] = true;
  }
  std::vector<bool> principal(can.characters.size(), false);
  for (Elem e : S.projections()) principal[can.principal(e)] = true;
  for (Mor c = 0; c < G.num_classes(); ++c) {
    bool pre = principal[C.d(c)] && principal[C.r(c)];
    if (pre != in_image[c]) rep.is_full_preimage = false;
    if (!in_image[c]) rep.equals_whole = false;
  }
  for (Mor c = 0; c < G.num_classes(); ++c) {
    if (!in_image[c]) continue;
    for (Mor y : C.with_source(C.r(c))) {
      auto yc = C.compose(y, c);
      if (principal[C.r(y)] && yc && !in_image[*yc]) rep.closed_under_left = false;
    }
  }
  for (Elem s = 0; s < n; ++s) {
    if (S.is_projection(s) && !C.is_unit(rep.psi[s])) rep.functor_iso = false;
    for (Elem t = 0; t < n; ++t) {
      bool composable = C.composable(rep.psi[s], rep.psi[t]);
      if (composable != (S.lambda(s) == S.rho(t))) rep.functor_iso = false;
      if (composable && C.compose(rep.psi[s], rep.psi[t]) != rep.psi[S.mul(s, t)])
        rep.functor_iso = false;
    }
    for (Elem e : S.projections()) {
      if (!S.leq_projection(e, S.lambda(s))) continue;
      Elem se = S.mul(s, e);
      if (G.class_of(s, can.principal(e)) != G.class_of(se, can.principal(S.lambda(se))))
        rep.restriction_identity = false;
    }
  }
  rep.functor_iso = rep.functor_iso && rep.injective;
  return rep;
}

STildeReport s_tilde(const FinRS& S) {
  auto can = canonical_action(S);
  auto G = germ_category(S, can.action);
  return s_tilde(S, can, G);
}

AmpleCancellativeReport check_ample_cancellative(const FinRS& S, const EtaleAction& theta) {
  AmpleCancellativeReport rep;
  rep.left_ample = classify_ample(S).left;
  auto G = germ_category(S, theta);
  auto canc = is_left_cancellative(G.category());
  rep.left_cancellative = canc.holds;
  rep.witness = canc.witness;
  rep.consistent = !rep.left_ample || rep.left_cancellative;
  return rep;
}

AmpleCancellativeReport check_ample_cancellative(const FinRS& S) {
  auto can = canonical_action(S);
  auto rep = check_ample_cancellative(S, can.action);
  rep.consistent = rep.left_ample == rep.left_cancellative;
  return rep;
}

EtaleAction bisection_action(const FinCat& D, const BisSemigroup& bis) {
  EtaleAction act;
  act.point_names = D.object_names();
  for (const auto& U : bis.bisections) {
    PartialMap th(D.num_objects());
    for (Mor x : U) th.set(D.d(x), D.r(x));
    act.theta.push_back(std::move(th));
  }
  return act;
}

ReconstructionReport bis_germ_reconstruction(const FinCat& D) {
  enforce_guard("reconstruction |D1|", D.num_morphisms(), kReconstructionGuard);
  auto bis = bis_semigroup(D);
  auto act = bisection_action(D, bis);
  auto G = germ_category(bis.S, act);
  const FinCat& C = G.category();
  ReconstructionReport rep;
  rep.bisections = bis.bisections.size();
  rep.germ_morphisms = C.num_morphisms();

  auto phi_of = [&](const Germ& g) -> std::optional<Mor> {
    for (Mor x : bis.bisections[g.s])
      if (D.d(x) == g.x) return x;
    return std::nullopt;
  };
  std::vector<Mor> phi(C.num_morphisms());
  bool well_defined = true;
  for (Mor c = 0; c < C.num_morphisms(); ++c) {
    auto v = phi_of(G.representative(c));
    if (!v) throw InternalError("germ point outside d(U)");
    phi[c] = *v;
    for (const Germ& g : G.members(c)) well_defined = well_defined && phi_of(g) == v;
  }
  std::vector<bool> hit(D.num_morphisms(), false);
  bool injective = true;
  for (Mor c = 0; c < C.num_morphisms(); ++c) {
    if (hit[phi[c]]) injective = false;
    hit[phi[c]] = true;
  }
  rep.bijective = well_defined && injective &&
                  std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
  rep.preserves_ends = true;
  for (Mor c = 0; c < C.num_morphisms(); ++c)
    rep.preserves_ends = rep.preserves_ends && D.d(phi[c]) == C.d(c) && D.r(phi[c]) == C.r(c);
  rep.preserves_units = true;
  for (Obj u = 0; u < C.num_objects(); ++u)
    rep.preserves_units = rep.preserves_units && phi[C.unit(u)] == D.unit(u);
  rep.preserves_composition = true;
  for (Mor a = 0; a < C.num_morphisms(); ++a)
    for (Mor b : C.with_range(C.d(a))) {
      auto ab = C.compose(a, b);
      rep.preserves_composition =
          rep.preserves_composition && ab && D.compose(phi[a], phi[b]) == phi[*ab];
    }
  return rep;
}

}  // namespace rswork
