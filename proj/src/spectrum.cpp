#include "rswork/spectrum.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>

#include "rswork/error.hpp"

namespace rswork {

Semilattice::Semilattice(const FinRS& S) : _k(S.projections().size()), _elements(S.projections()) {
  if (_k > 64) throw SizeError("semilattices are limited to 64 projections");
  _meet.resize(_k * _k);
  for (std::uint32_t a = 0; a < _k; ++a) {
    _names.push_back(S.name(_elements[a]));
    for (std::uint32_t b = 0; b < _k; ++b) {
      auto idx = index_of(S.mul(_elements[a], _elements[b]));
      _meet[a * _k + b] = *idx;
    }
  }
  for (std::uint32_t z = 0; z < _k && !_zero; ++z) {
    bool ok = true;
    for (std::uint32_t a = 0; a < _k && ok; ++a) ok = meet(z, a) == z;
    if (ok) _zero = z;
  }
}

Semilattice::Semilattice(std::vector<std::string> names, std::vector<std::uint32_t> meet)
    : _k(names.size()), _meet(std::move(meet)), _names(std::move(names)) {
  if (_k == 0) throw StructuralError("empty semilattice");
  if (_k > 64) throw SizeError("semilattices are limited to 64 elements");
  if (_meet.size() != _k * _k) throw StructuralError("meet table must be k*k");
  for (std::uint32_t v : _meet)
    if (v >= _k) throw StructuralError("meet table entry out of range");
  for (std::uint32_t a = 0; a < _k; ++a) {
    _elements.push_back(a);
    if (this->meet(a, a) != a) throw StructuralError("meet is not idempotent");
    for (std::uint32_t b = 0; b < _k; ++b) {
      if (this->meet(a, b) != this->meet(b, a)) throw StructuralError("meet is not commutative");
      for (std::uint32_t c = 0; c < _k; ++c)
        if (this->meet(this->meet(a, b), c) != this->meet(a, this->meet(b, c)))
          throw StructuralError("meet is not associative");
    }
  }
  for (std::uint32_t z = 0; z < _k && !_zero; ++z) {
    bool ok = true;
    for (std::uint32_t a = 0; a < _k && ok; ++a) ok = this->meet(z, a) == z;
    if (ok) _zero = z;
  }
}

std::optional<std::uint32_t> Semilattice::index_of(Elem e) const {
  auto it = std::lower_bound(_elements.begin(), _elements.end(), e);
  if (it == _elements.end() || *it != e) return std::nullopt;
  return std::uint32_t(it - _elements.begin());
}

std::string bitstring(const Semilattice& E, Character phi) {
  std::string out;
  for (std::uint32_t i = 0; i < E.size(); ++i) out += phi(i) ? '1' : '0';
  return out;
}

std::uint32_t support_meet(const Semilattice& E, Character phi) {
  std::optional<std::uint32_t> m;
  for (std::uint32_t i = 0; i < E.size(); ++i)
    if (phi(i)) m = m ? E.meet(*m, i) : i;
  if (!m) throw ValidationError("zero map is not a character");
  return *m;
}

std::string label(const Semilattice& E, Character phi) {
  auto m = support_meet(E, phi);
  if (principal_character(E, m) == phi) return "ς_" + E.name(m);
  return "φ_" + bitstring(E, phi);
}

Character principal_character(const Semilattice& E, std::uint32_t e) {
  Character c;
  for (std::uint32_t f = 0; f < E.size(); ++f)
    if (E.leq(e, f)) c.bits |= std::uint64_t(1) << f;
  return c;
}

namespace {

void sort_characters(const Semilattice& E, std::vector<Character>& chars) {
  std::sort(chars.begin(), chars.end(), [&](Character a, Character b) {
    auto ma = support_meet(E, a), mb = support_meet(E, b);
    if (ma != mb) return ma < mb;
    return a.bits < b.bits;
  });
}

}  // namespace

std::vector<Character> brute_force_characters(const Semilattice& E) {
  const std::size_t k = E.size();
  enforce_guard("brute force character search |E|", k, kBruteForceCrossCheck);
  std::vector<Character> out;
  for (std::uint64_t bits = 1; bits < (std::uint64_t(1) << k); ++bits) {
    Character phi{bits};
    bool ok = true;
    for (std::uint32_t a = 0; a < k && ok; ++a)
      for (std::uint32_t b = 0; b < k && ok; ++b) ok = phi(E.meet(a, b)) == (phi(a) && phi(b));
    if (ok) out.push_back(phi);
  }
  sort_characters(E, out);
  return out;
}

std::vector<Character> enumerate_characters(const Semilattice& E) {
  const std::size_t k = E.size();
  enforce_guard("character enumeration |E|", k, kCharacterGuard);
  // Larger elements first, so up-sets and meets are decided in time.
  std::vector<std::uint32_t> order(k);
  std::iota(order.begin(), order.end(), 0u);
  std::vector<std::size_t> below(k, 0);
  for (std::uint32_t a = 0; a < k; ++a)
    for (std::uint32_t b = 0; b < k; ++b)
      if (E.leq(b, a)) ++below[a];
  std::stable_sort(order.begin(), order.end(),
                   [&](std::uint32_t a, std::uint32_t b) { return below[a] > below[b]; });

  std::vector<Character> out;
  std::uint64_t in = 0, out_set = 0;
  auto dfs = [&](auto&& self, std::size_t pos) -> void {
    if (pos == k) {
      if (in != 0) out.push_back(Character{in});
      return;
    }
    std::uint32_t e = order[pos];
    bool forced_in = false, forced_out = false;
    for (std::size_t i = 0; i < pos && !forced_in; ++i)
      for (std::size_t j = i; j < pos && !forced_in; ++j) {
        std::uint32_t x = order[i], y = order[j];
        forced_in = (in >> x & 1u) && (in >> y & 1u) && E.meet(x, y) == e;
      }
    for (std::size_t i = 0; i < pos && !forced_out; ++i) {
      std::uint32_t f = order[i];
      forced_out = (out_set >> f & 1u) && E.leq(e, f);
    }
    const std::uint64_t bit = std::uint64_t(1) << e;
    if (!forced_out) {
      in |= bit;
      self(self, pos + 1);
      in &= ~bit;
    }
    if (!forced_in) {
      out_set |= bit;
      self(self, pos + 1);
      out_set &= ~bit;
    }
  };
  dfs(dfs, 0);
  sort_characters(E, out);
  if (k <= kBruteForceCrossCheck && out != brute_force_characters(E))
    throw InternalError("filter enumeration disagrees with brute force");
  return out;
}

std::optional<Point> CanonicalAction::index_of(Character phi) const {
  auto it = std::find(characters.begin(), characters.end(), phi);
  if (it == characters.end()) return std::nullopt;
  return Point(it - characters.begin());
}

Point CanonicalAction::principal(Elem e) const {
  auto i = E.index_of(e);
  if (!i) throw ValidationError("not a projection");
  auto p = index_of(principal_character(E, *i));
  if (!p) throw InternalError("principal character missing from the spectrum");
  return *p;
}

CanonicalAction canonical_action(const FinRS& S) {
  S.require_restriction("canonical_action");
  Semilattice E(S);
  auto chars = enumerate_characters(E);
  CanonicalAction can{E, chars, {}, {}};
  const std::size_t m = chars.size();
  std::map<std::uint64_t, Point> where;
  for (Point i = 0; i < m; ++i) {
    where[chars[i].bits] = i;
    can.action.point_names.push_back(label(E, chars[i]));
  }
  auto lookup = [&](Character c) {
    auto it = where.find(c.bits);
    if (it == where.end()) throw InternalError("image of a character is not a character");
    return it->second;
  };
  auto eidx = [&](Elem e) { return *E.index_of(e); };
  const std::size_t n = S.size();
  for (Elem s = 0; s < n; ++s) {
    PartialMap theta(m), zeta(m);
    for (Point p = 0; p < m; ++p) {
      Character phi = chars[p];
      if (phi(eidx(S.lambda(s)))) {
        Character img;
        for (std::uint32_t f = 0; f < E.size(); ++f)
          if (phi(eidx(S.lambda(S.mul(E.element(f), s))))) img.bits |= std::uint64_t(1) << f;
        theta.set(p, lookup(img));
      }
      if (phi(eidx(S.rho(s)))) {
        Character img;
        for (std::uint32_t f = 0; f < E.size(); ++f)
          if (phi(eidx(S.rho(S.mul(s, E.element(f)))))) img.bits |= std::uint64_t(1) << f;
        zeta.set(p, lookup(img));
      }
    }
    can.action.theta.push_back(std::move(theta));
    can.zeta.push_back(std::move(zeta));
  }
  for (Elem s = 0; s < n; ++s) {
    const auto& th = can.action.theta[s];
    const auto& ze = can.zeta[s];
    if (th.image() != ze.domain() || ze.image() != th.domain())
      throw InternalError("theta_s does not map D_lambda(s) onto D_rho(s) at " + S.name(s));
    if (compose(ze, th) != PartialMap::identity_on(m, th.domain()) ||
        compose(th, ze) != PartialMap::identity_on(m, ze.domain()))
      throw InternalError("zeta_s is not inverse to theta_s at " + S.name(s));
    if (S.is_projection(s) && th != PartialMap::identity_on(m, th.domain()))
      throw InternalError("theta_e is not the identity at " + S.name(s));
    if (th.at(can.principal(S.lambda(s))) != can.principal(S.rho(s)))
      throw InternalError("theta_s does not send the principal character at lambda(s) to rho(s)");
    for (Elem t = 0; t < n; ++t)
      if (compose(th, can.action.theta[t]) != can.action.theta[S.mul(s, t)])
        throw InternalError("theta is not multiplicative at (" + S.name(s) + ", " + S.name(t) +
                            ")");
  }
  return can;
}

bool is_cover(const Semilattice& E, const std::vector<std::uint32_t>& Z, std::uint32_t x) {
  auto zero = E.zero();
  if (!zero) throw UnsupportedError("covers need a zero in E");
  for (auto z : Z)
    if (!E.leq(z, x)) throw ValidationError("cover element " + E.name(z) + " is not below x");
  for (std::uint32_t y = 0; y < E.size(); ++y) {
    if (y == *zero || !E.leq(y, x)) continue;
    bool hit = std::any_of(Z.begin(), Z.end(), [&](auto z) { return E.meet(z, y) != *zero; });
    if (!hit) return false;
  }
  return true;
}

std::vector<Elem> push_cover(const FinRS& S, const std::vector<Elem>& Z, Elem x, Elem s) {
  Semilattice E(S);
  auto idx = [&](Elem e) {
    auto i = E.index_of(e);
    if (!i) throw ValidationError(S.name(e) + " is not a projection");
    return *i;
  };
  std::vector<std::uint32_t> zi;
  for (Elem z : Z) zi.push_back(idx(z));
  if (!is_cover(E, zi, idx(x))) throw ValidationError("Z is not a cover of x");
  std::vector<Elem> out;
  std::vector<std::uint32_t> oi;
  for (Elem z : Z) {
    Elem w = S.lambda(S.mul(z, s));
    out.push_back(w);
    oi.push_back(idx(w));
  }
  if (!is_cover(E, oi, idx(S.lambda(S.mul(x, s)))))
    throw InternalError("pushed family does not cover lambda(xs)");
  return out;
}

TightReport tight_spectrum(const Semilattice& E) {
  auto zero = E.zero();
  if (!zero) throw UnsupportedError("tight spectrum needs 0 in E");
  auto all = enumerate_characters(E);
  std::vector<Character> candidates;
  for (auto phi : all)
    if (!phi(*zero)) candidates.push_back(phi);
  std::vector<bool> tight(candidates.size(), true);
  for (std::uint32_t x = 0; x < E.size(); ++x) {
    std::vector<std::uint32_t> down;
    for (std::uint32_t y = 0; y < E.size(); ++y)
      if (E.leq(y, x)) down.push_back(y);
    enforce_guard("|x down| in tight spectrum", down.size(), kCoverGuard);
    std::erase(down, *zero);
    const std::size_t d = down.size();
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << d); ++mask) {
      std::vector<std::uint32_t> Z;
      for (std::size_t i = 0; i < d; ++i)
        if (mask >> i & 1u) Z.push_back(down[i]);
      if (!is_cover(E, Z, x)) continue;
      for (std::size_t c = 0; c < candidates.size(); ++c) {
        if (!tight[c] || !candidates[c](x)) continue;
        bool hit = std::any_of(Z.begin(), Z.end(), [&](auto z) { return candidates[c](z); });
        if (!hit) tight[c] = false;
      }
    }
  }
  TightReport rep;
  for (std::size_t c = 0; c < candidates.size(); ++c)
    if (tight[c]) rep.tight.push_back(candidates[c]);
  return rep;
}

TightReport tight_spectrum(const FinRS& S) {
  if (!S.zero_is_projection()) throw UnsupportedError("tight spectrum needs 0 in E");
  auto can = canonical_action(S);
  auto rep = tight_spectrum(can.E);
  for (Elem s = 0; s < S.size(); ++s) {
    for (auto phi : rep.tight) {
      Point p = *can.index_of(phi);
      if (!can.action.theta[s].defined(p)) continue;
      Character img = can.characters[can.action.theta[s].at(p)];
      if (std::find(rep.tight.begin(), rep.tight.end(), img) == rep.tight.end())
        throw InternalError("tight spectrum is not invariant under theta_" + S.name(s));
    }
  }
  rep.invariance_checked = true;
  return rep;
}

}  // namespace rswork
