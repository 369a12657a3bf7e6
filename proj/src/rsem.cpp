#include "rswork/rsem.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "rswork/error.hpp"

namespace rswork {

std::string to_string(Classification c) {
  switch (c) {
    case Classification::restriction: return "restriction";
    case Classification::ehresmann: return "ehresmann";
    case Classification::left_restriction: return "left_restriction";
    case Classification::none: return "none";
  }
  return "none";
}

bool AxiomReport::ehresmann() const {
  return pass[0] && pass[1] && pass[2] && pass[3] && pass[4] && pass[5];
}

bool AxiomReport::left_restriction() const { return pass[0] && pass[2] && pass[4] && pass[6]; }

namespace {

std::string elem_label(const std::vector<std::string>& names, Elem s) {
  return names.empty() ? std::to_string(s) : names[s];
}

std::string tuple_label(const std::vector<std::string>& names, std::initializer_list<Elem> xs) {
  std::string out = "(";
  bool first = true;
  for (Elem x : xs) {
    if (!first) out += ", ";
    first = false;
    out += elem_label(names, x);
  }
  return out + ")";
}

Elem minimum_fixer(std::size_t n, const std::vector<Elem>& table,
                   const std::vector<Elem>& projections, Elem s, bool right) {
  auto mul = [&](Elem a, Elem b) { return table[std::size_t(a) * n + b]; };
  std::vector<Elem> fixers;
  for (Elem f : projections)
    if ((right ? mul(s, f) : mul(f, s)) == s) fixers.push_back(f);
  if (fixers.empty()) {
    throw NotRestrictionError("no projection f with " + std::string(right ? "sf = s" : "fs = s") +
                              " for s = " + std::to_string(s));
  }
  for (Elem m : fixers) {
    bool below_all = true;
    for (Elem f : fixers)
      if (mul(m, f) != m) {
        below_all = false;
        break;
      }
    if (below_all) return m;
  }
  // No minimum: report two minimal fixers, which are then incomparable.
  std::vector<Elem> minimal;
  for (Elem m : fixers) {
    bool is_min = true;
    for (Elem f : fixers)
      if (f != m && mul(f, m) == f) {
        is_min = false;
        break;
      }
    if (is_min) minimal.push_back(m);
  }
  Elem a = minimal.size() > 0 ? minimal[0] : fixers[0];
  Elem b = minimal.size() > 1 ? minimal[1] : fixers[1];
  throw NotRestrictionError(std::string(right ? "lambda" : "rho") + " undefined at " +
                            std::to_string(s) + ": incomparable fixers " + std::to_string(a) +
                            " and " + std::to_string(b));
}

AxiomReport evaluate_axioms(const FinRS& S) {
  AxiomReport rep;
  rep.pass.fill(true);
  const std::size_t n = S.size();
  auto fail = [&](int axiom, std::vector<Elem> tuple) {
    if (!rep.pass[axiom - 1]) return;
    rep.pass[axiom - 1] = false;
    rep.witnesses.push_back({axiom, std::move(tuple)});
  };
  for (Elem f : S.projections()) {
    if (S.lambda(f) != f) fail(1, {f});
    if (S.rho(f) != f) fail(2, {f});
  }
  for (Elem s = 0; s < n; ++s) {
    if (S.mul(s, S.lambda(s)) != s) fail(3, {s});
    if (S.mul(S.rho(s), s) != s) fail(4, {s});
  }
  for (Elem s = 0; s < n; ++s) {
    for (Elem t = 0; t < n; ++t) {
      Elem st = S.mul(s, t);
      if (S.lambda(st) != S.lambda(S.mul(S.lambda(s), t))) fail(5, {s, t});
      if (S.rho(st) != S.rho(S.mul(s, S.rho(t)))) fail(6, {s, t});
    }
  }
  for (Elem s = 0; s < n; ++s) {
    for (Elem f : S.projections()) {
      Elem fs = S.mul(f, s);
      if (fs != S.mul(s, S.lambda(fs))) fail(7, {f, s});
      Elem sf = S.mul(s, f);
      if (sf != S.mul(S.rho(sf), s)) fail(8, {s, f});
    }
  }
  std::sort(rep.witnesses.begin(), rep.witnesses.end(),
            [](const AxiomWitness& a, const AxiomWitness& b) { return a.axiom < b.axiom; });
  bool all = std::all_of(rep.pass.begin(), rep.pass.end(), [](bool b) { return b; });
  if (all) {
    rep.classification = Classification::restriction;
  } else if (rep.ehresmann()) {
    rep.classification = Classification::ehresmann;
  } else if (rep.left_restriction()) {
    rep.classification = Classification::left_restriction;
  }
  return rep;
}

}  // namespace

StructureMaps derive_structure_maps(std::size_t n, const std::vector<Elem>& table,
                                    const std::vector<Elem>& projections) {
  StructureMaps maps;
  maps.lambda.resize(n);
  maps.rho.resize(n);
  for (Elem s = 0; s < n; ++s) {
    maps.lambda[s] = minimum_fixer(n, table, projections, s, true);
    maps.rho[s] = minimum_fixer(n, table, projections, s, false);
  }
  return maps;
}

FinRS::FinRS(std::size_t n, std::vector<Elem> table, std::vector<Elem> projections,
             std::optional<std::vector<Elem>> lambda, std::optional<std::vector<Elem>> rho,
             std::vector<std::string> names)
    : _n(n), _table(std::move(table)), _projections(std::move(projections)), _names(std::move(names)) {
  enforce_guard("semigroup size", n, kSemigroupGuard);
  if (n == 0) throw StructuralError("empty semigroup");
  if (_table.size() != n * n) throw StructuralError("Cayley table must have n*n entries");
  for (Elem v : _table)
    if (v >= n) throw StructuralError("Cayley table entry out of range");
  if (_names.empty()) {
    for (Elem s = 0; s < n; ++s) _names.push_back(std::to_string(s));
  }
  if (_names.size() != n) throw StructuralError("need one name per element");
  {
    std::set<std::string> seen(_names.begin(), _names.end());
    if (seen.size() != n) throw StructuralError("element names must be distinct");
  }
  if (_projections.empty()) throw StructuralError("no projections given");
  _is_projection.assign(n, false);
  for (Elem e : _projections) {
    if (e >= n) throw StructuralError("projection out of range");
    if (_is_projection[e]) throw StructuralError("duplicate projection " + _names[e]);
    _is_projection[e] = true;
  }
  std::sort(_projections.begin(), _projections.end());

  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) {
      Elem ab = mul(a, b);
      for (Elem c = 0; c < n; ++c) {
        if (mul(ab, c) != mul(a, mul(b, c))) {
          throw StructuralError("table is not associative at " +
                                tuple_label(_names, {a, b, c}));
        }
      }
    }
  for (Elem e : _projections) {
    if (mul(e, e) != e) throw StructuralError("projection " + _names[e] + " is not idempotent");
    for (Elem f : _projections) {
      if (mul(e, f) != mul(f, e))
        throw StructuralError("projections " + _names[e] + " and " + _names[f] + " do not commute");
      if (!_is_projection[mul(e, f)])
        throw StructuralError("projections not closed under product at " +
                              tuple_label(_names, {e, f}));
    }
  }

  std::optional<StructureMaps> derived;
  std::string derive_failure;
  try {
    derived = derive_structure_maps(n, _table, _projections);
  } catch (const NotRestrictionError& e) {
    derive_failure = e.what();
  }
  _maps_supplied = lambda.has_value() || rho.has_value();
  if (!_maps_supplied && !derived) throw NotRestrictionError(derive_failure);
  if (lambda.has_value() != rho.has_value())
    throw StructuralError("lambda and rho must be supplied together");
  if (lambda) {
    if (lambda->size() != n || rho->size() != n)
      throw StructuralError("lambda/rho must have one entry per element");
    for (Elem s = 0; s < n; ++s) {
      if ((*lambda)[s] >= n || !_is_projection[(*lambda)[s]])
        throw StructuralError("lambda(" + _names[s] + ") is not a projection");
      if ((*rho)[s] >= n || !_is_projection[(*rho)[s]])
        throw StructuralError("rho(" + _names[s] + ") is not a projection");
    }
    _lambda = std::move(*lambda);
    _rho = std::move(*rho);
    _maps_match_derived = derived && derived->lambda == _lambda && derived->rho == _rho;
  } else {
    _lambda = derived->lambda;
    _rho = derived->rho;
  }

  for (Elem z = 0; z < n && !_zero; ++z) {
    bool ok = true;
    for (Elem s = 0; s < n && ok; ++s) ok = mul(z, s) == z && mul(s, z) == z;
    if (ok) _zero = z;
  }
  _axioms = evaluate_axioms(*this);
}

std::optional<Elem> FinRS::find(const std::string& name) const {
  for (Elem s = 0; s < _n; ++s)
    if (_names[s] == name) return s;
  return std::nullopt;
}

void FinRS::require_restriction(const std::string& op) const {
  if (!is_restriction()) {
    std::string detail;
    for (const auto& w : _axioms.witnesses) detail += " P" + std::to_string(w.axiom);
    throw NotRestrictionError(op + " needs a restriction semigroup; failing axioms:" + detail);
  }
}

AxiomReport validate_axioms(const FinRS& S) { return evaluate_axioms(S); }

bool natural_leq(const FinRS& S, Elem s, Elem t) {
  bool right_factor = false;
  bool left_factor = false;
  for (Elem f : S.projections()) {
    right_factor = right_factor || S.mul(t, f) == s;
    left_factor = left_factor || S.mul(f, t) == s;
  }
  bool via_rho = S.mul(S.rho(s), t) == s;
  bool via_lambda = S.mul(t, S.lambda(s)) == s;
  if (right_factor != left_factor || left_factor != via_rho || via_rho != via_lambda) {
    throw InternalError("natural order characterizations disagree at (" + S.name(s) + ", " +
                        S.name(t) + ")");
  }
  return via_lambda;
}

AmpleReport classify_ample(const FinRS& S) {
  AmpleReport rep;
  const std::size_t n = S.size();
  std::vector<Elem> first(n);
  // Left: for fixed s, t -> st must determine lambda(s)t.
  for (Elem s = 0; s < n && rep.left; ++s) {
    std::fill(first.begin(), first.end(), PartialMap::undefined);
    Elem l = S.lambda(s);
    for (Elem t = 0; t < n; ++t) {
      Elem st = S.mul(s, t);
      if (first[st] == PartialMap::undefined) {
        first[st] = t;
      } else if (S.mul(l, t) != S.mul(l, first[st])) {
        rep.left = false;
        rep.left_witness = std::array<Elem, 3>{s, first[st], t};
        break;
      }
    }
  }
  for (Elem s = 0; s < n && rep.right; ++s) {
    std::fill(first.begin(), first.end(), PartialMap::undefined);
    Elem r = S.rho(s);
    for (Elem t = 0; t < n; ++t) {
      Elem ts = S.mul(t, s);
      if (first[ts] == PartialMap::undefined) {
        first[ts] = t;
      } else if (S.mul(t, r) != S.mul(first[ts], r)) {
        rep.right = false;
        rep.right_witness = std::array<Elem, 3>{s, first[ts], t};
        break;
      }
    }
  }
  return rep;
}

std::optional<std::vector<Elem>> is_inverse(const FinRS& S) {
  const std::size_t n = S.size();
  for (Elem s = 0; s < n; ++s) {
    if ((S.mul(s, s) == s) != S.is_projection(s)) return std::nullopt;
  }
  std::vector<Elem> star(n);
  for (Elem s = 0; s < n; ++s) {
    std::optional<Elem> found;
    for (Elem x = 0; x < n; ++x) {
      if (S.mul(S.mul(s, x), s) == s && S.mul(S.mul(x, s), x) == x) {
        if (found) return std::nullopt;
        found = x;
      }
    }
    if (!found) return std::nullopt;
    Elem x = *found;
    if (S.mul(x, s) != S.lambda(s) || S.mul(s, x) != S.rho(s)) return std::nullopt;
    star[s] = x;
  }
  return star;
}

WagnerPrestonReport wagner_preston_embed(const FinRS& S) {
  if (!S.axioms().left_restriction())
    throw NotRestrictionError("Wagner-Preston embedding needs the left restriction axioms");
  const std::size_t n = S.size();
  WagnerPrestonReport rep;
  rep.phi.reserve(n);
  for (Elem s = 0; s < n; ++s) {
    PartialMap phi(n);
    Elem l = S.lambda(s);
    for (Elem t = 0; t < n; ++t) {
      bool in_b = S.mul(l, t) == t;
      if (S.is_restriction() && in_b != S.leq_projection(S.rho(t), l)) {
        throw InternalError("B_s characterizations disagree at (" + S.name(s) + ", " +
                            S.name(t) + ")");
      }
      if (in_b) phi.set(t, S.mul(s, t));
    }
    if (!phi.injective()) {
      rep.all_bijective = false;
      if (!rep.non_injective_witness) rep.non_injective_witness = s;
    }
    rep.phi.push_back(std::move(phi));
  }
  for (Elem s = 0; s < n; ++s)
    for (Elem u = 0; u < n; ++u)
      if (compose(rep.phi[s], rep.phi[u]) != rep.phi[S.mul(s, u)])
        throw InternalError("phi_s phi_u != phi_su at (" + S.name(s) + ", " + S.name(u) + ")");
  for (Elem s = 0; s < n; ++s)
    for (Elem u = s + 1; u < n; ++u)
      if (rep.phi[s] == rep.phi[u]) {
        rep.injective = false;
        throw InternalError("phi is not injective: " + S.name(s) + " and " + S.name(u));
      }
  if (classify_ample(S).left && !rep.all_bijective)
    throw InternalError("left ample semigroup with a non-injective phi_s");
  return rep;
}

RegularityReport check_regularity_window(const FinRS& S) {
  S.require_restriction("check_regularity_window");
  const std::size_t n = S.size();
  RegularityReport rep;
  for (Elem s = 0; s < n && rep.coincide; ++s) {
    std::vector<bool> in_c(n, false);
    for (Elem t = 0; t < n; ++t)
      if (S.leq_projection(S.rho(t), S.lambda(s))) in_c[S.mul(s, t)] = true;
    for (Elem y = 0; y < n; ++y) {
      if (in_c[y] != S.leq_projection(S.rho(y), S.rho(s))) {
        rep.coincide = false;
        rep.mismatch = std::make_pair(s, y);
        break;
      }
    }
  }
  if (rep.coincide) {
    std::vector<Elem> inv(n);
    for (Elem s = 0; s < n; ++s) {
      std::optional<Elem> found;
      for (Elem t = 0; t < n && !found; ++t)
        if (S.leq_projection(S.rho(t), S.lambda(s)) && S.mul(s, t) == S.rho(s)) found = t;
      if (!found) throw InternalError("rho(s) in C_s but no preimage for s = " + S.name(s));
      Elem x = *found;
      if (S.mul(S.mul(s, x), s) != s || S.mul(S.mul(x, s), x) != x)
        throw InternalError("exhibited element is not an inverse of " + S.name(s));
      inv[s] = x;
    }
    rep.inverses = std::move(inv);
  }
  rep.projection_inverses_exist = true;
  for (Elem s = 0; s < n && rep.projection_inverses_exist; ++s) {
    bool ok = false;
    for (Elem x = 0; x < n && !ok; ++x)
      ok = S.mul(S.mul(s, x), s) == s && S.mul(S.mul(x, s), x) == x && S.is_projection(S.mul(s, x));
    rep.projection_inverses_exist = ok;
  }
  if (rep.projection_inverses_exist && !rep.coincide)
    throw InternalError("inverses with ss* in E exist but C_s differs from the rho-window");
  return rep;
}

IdentityReport verify_identities(const FinRS& S) {
  const std::size_t n = S.size();
  IdentityReport rep;
  auto fail = [&](const std::string& which, std::vector<Elem> w) {
    if (!rep.pass) return;
    rep.pass = false;
    rep.failed = which;
    rep.witness = std::move(w);
  };
  auto leq_e = [&](Elem e, Elem f) { return S.leq_projection(e, f); };
  // Natural order by definition only, so that a corrupted lambda cannot hide.
  std::vector<bool> leq(n * n, false);
  for (Elem t = 0; t < n; ++t)
    for (Elem f : S.projections()) leq[std::size_t(S.mul(t, f)) * n + t] = true;
  auto le = [&](Elem s, Elem t) { return bool(leq[std::size_t(s) * n + t]); };

  for (Elem s = 0; s < n && rep.pass; ++s)
    for (Elem t = 0; t < n && rep.pass; ++t) {
      Elem st = S.mul(s, t);
      if (leq_e(S.rho(t), S.lambda(s)) != (S.lambda(st) == S.lambda(t)))
        fail("domain_of_composite", {s, t});
      if (!leq_e(S.lambda(st), S.lambda(t))) fail("R6", {s, t});
      if (!leq_e(S.rho(st), S.rho(s))) fail("R7", {s, t});
      for (Elem y = 0; y < n && rep.pass; ++y) {
        bool lhs = leq_e(S.rho(y), S.lambda(st));
        bool rhs = leq_e(S.rho(y), S.lambda(t)) && leq_e(S.rho(S.mul(t, y)), S.lambda(s));
        if (lhs != rhs) fail("composable_window", {s, t, y});
      }
    }
  for (Elem s = 0; s < n && rep.pass; ++s)
    for (Elem f : S.projections()) {
      if (!le(S.mul(s, f), s)) fail("R1", {s, f});
      if (!le(S.mul(f, s), s)) fail("R2", {f, s});
    }
  for (Elem s = 0; s < n && rep.pass; ++s)
    for (Elem t = 0; t < n && rep.pass; ++t) {
      if (!le(s, t)) continue;
      if (!leq_e(S.lambda(s), S.lambda(t)) || !leq_e(S.rho(s), S.rho(t))) fail("R3", {s, t});
      if (S.lambda(s) == S.lambda(t) && s != t) fail("R4", {s, t});
      if (S.rho(s) == S.rho(t) && s != t) fail("R5", {s, t});
    }
  return rep;
}

}  // namespace rswork
