#include "rswork/conv.hpp"

#include <algorithm>
#include <map>

namespace rswork {

template <class Scalar>
ConvElement<Scalar> convolve(const ConvElement<Scalar>& f, const ConvElement<Scalar>& g) {
  f.same_parent(g);
  const FinCat& C = f.category();
  for (const auto& [x, y] : C.overflow()) {
    if (!ScalarTraits<Scalar>::is_zero(f[x]) && !ScalarTraits<Scalar>::is_zero(g[y]))
      throw TruncationError("product " + C.morphism_name(x) + " * " + C.morphism_name(y) +
                            " leaves the truncation window");
  }
  ConvElement<Scalar> h(f.category_ptr());
  for (Mor z = 0; z < C.num_morphisms(); ++z) {
    Scalar acc(0);
    for (const auto& [x, y] : C.factorizations(z)) acc += f[x] * g[y];
    h[z] = acc;
  }
  return h;
}

template <class Scalar>
ConvElement<Scalar> involution(const ConvElement<Scalar>& f) {
  auto inv = groupoid_inverses(f.category());
  if (!inv) throw UnsupportedError("involution needs a groupoid");
  ConvElement<Scalar> g(f.category_ptr());
  for (Mor x = 0; x < f.category().num_morphisms(); ++x)
    g[x] = ScalarTraits<Scalar>::conj(f[(*inv)[x]]);
  return g;
}

template <class Scalar>
double sup_norm(const ConvElement<Scalar>& f) {
  double m = 0;
  for (Mor x = 0; x < f.coeffs().size(); ++x)
    m = std::max(m, std::abs(ScalarTraits<Scalar>::to_complex(f[x])));
  return m;
}

template <class Scalar>
bool supported_on_bisection(const ConvElement<Scalar>& f) {
  return is_bisection(f.category(), f.support());
}

template <class Scalar>
void CrossedElement<Scalar>::add(Elem s, const Vector<Scalar>& a) {
  auto it = terms.find(s);
  if (it == terms.end()) {
    it = terms.emplace(s, a).first;
  } else {
    it->second += a;
  }
  bool zero = true;
  for (Eigen::Index i = 0; i < it->second.size() && zero; ++i)
    zero = ScalarTraits<Scalar>::is_zero(it->second[i]);
  if (zero) terms.erase(it);
}

template <class Scalar>
CrossedElement<Scalar> crossed_term(const AlgebraAction& alpha, Elem s, const Vector<Scalar>& a) {
  if (!alpha.supported_in(a, alpha.semigroup().rho(s)))
    throw ValidationError("coefficient of d_s must be supported in D_rho(s)");
  CrossedElement<Scalar> x;
  x.add(s, a);
  return x;
}

template <class Scalar>
CrossedElement<Scalar> crossed_multiply(const AlgebraAction& alpha, const CrossedElement<Scalar>& a,
                                        const CrossedElement<Scalar>& b) {
  const FinRS& S = alpha.semigroup();
  CrossedElement<Scalar> out;
  for (const auto& [s, as] : a.terms) {
    Vector<Scalar> pulled = alpha.apply_inverse(s, as);
    for (const auto& [t, bt] : b.terms) {
      Vector<Scalar> prod = pulled.cwiseProduct(bt);
      Vector<Scalar> pushed = alpha.apply(s, prod);
      Elem st = S.mul(s, t);
      if (!alpha.supported_in(pushed, S.rho(st)))
        throw InternalError("crossed product coefficient leaves D_rho(st)");
      out.add(st, pushed);
    }
  }
  return out;
}

template <class Scalar>
Vector<Scalar> semigroup_multiply(const FinRS& S, const Vector<Scalar>& x, const Vector<Scalar>& y) {
  Vector<Scalar> z = Vector<Scalar>::Zero(Eigen::Index(S.size()));
  for (Elem s = 0; s < S.size(); ++s) {
    if (ScalarTraits<Scalar>::is_zero(x[s])) continue;
    for (Elem t = 0; t < S.size(); ++t)
      if (!ScalarTraits<Scalar>::is_zero(y[t])) z[S.mul(s, t)] += x[s] * y[t];
  }
  return z;
}

template <class Scalar>
CrossedElement<Scalar> psi(const AlgebraAction& alpha, const Vector<Scalar>& x) {
  const FinRS& S = alpha.semigroup();
  CrossedElement<Scalar> out;
  for (Elem s = 0; s < S.size(); ++s) {
    if (ScalarTraits<Scalar>::is_zero(x[s])) continue;
    Vector<Scalar> a = alpha.indicator<Scalar>(S.rho(s)) * x[s];
    out.add(s, a);
  }
  return out;
}

bool CoveringReport::ok() const {
  return std::all_of(pass.begin(), pass.end(), [](bool b) { return b; }) && units_to_units;
}

std::vector<Mor> hat(const CoveringMorphism& phi, const std::vector<Mor>& A) {
  std::vector<Mor> out;
  for (Mor z = 0; z < phi.morphisms.size(); ++z) {
    const auto& img = phi.morphisms[z];
    bool meets = std::any_of(img.begin(), img.end(), [&](Mor x) {
      return std::binary_search(A.begin(), A.end(), x);
    });
    if (meets) out.push_back(z);
  }
  return out;
}

CoveringReport validate_covering(const CoveringMorphism& phi) {
  const FinCat& C = *phi.source;
  const FinCat& D = *phi.target;
  if (phi.objects.size() != C.num_objects() || phi.morphisms.size() != C.num_morphisms())
    throw ValidationError("covering morphism must be defined on every object and morphism");
  CoveringReport rep;
  auto fail = [&](int m, std::vector<std::uint32_t> w) {
    if (!rep.pass[m - 1]) return;
    rep.pass[m - 1] = false;
    rep.witness[m - 1] = std::move(w);
  };
  auto in = [](const std::vector<Mor>& v, Mor x) { return std::binary_search(v.begin(), v.end(), x); };
  for (Obj v = 0; v < C.num_objects(); ++v)
    if (!in(phi.morphisms[C.unit(v)], D.unit(phi.objects[v]))) fail(1, {v});
  for (Mor a = 0; a < C.num_morphisms(); ++a)
    for (Mor b : phi.morphisms[a])
      if (D.d(b) != phi.objects[C.d(a)] || D.r(b) != phi.objects[C.r(a)]) fail(2, {a, b});
  for (Mor a = 0; a < C.num_morphisms(); ++a)
    for (Mor b : C.with_range(C.d(a))) {
      auto ab = C.compose(a, b);
      if (!ab) continue;
      for (Mor c : phi.morphisms[a])
        for (Mor d : phi.morphisms[b]) {
          auto cd = D.compose(c, d);
          if (!cd || !in(phi.morphisms[*ab], *cd)) fail(3, {a, b, c, d});
        }
    }
  for (Mor a = 0; a < C.num_morphisms(); ++a)
    for (Mor b = a + 1; b < C.num_morphisms(); ++b) {
      if (C.d(a) != C.d(b) && C.r(a) != C.r(b)) continue;
      for (Mor x : phi.morphisms[a])
        if (in(phi.morphisms[b], x)) fail(4, {a, b, x});
    }
  for (Obj v = 0; v < C.num_objects(); ++v)
    for (Mor x = 0; x < D.num_morphisms(); ++x) {
      if (D.d(x) == phi.objects[v]) {
        const auto& cands = C.with_source(v);
        if (!std::any_of(cands.begin(), cands.end(), [&](Mor a) { return in(phi.morphisms[a], x); }))
          fail(5, {v, x});
      }
      if (D.r(x) == phi.objects[v]) {
        const auto& cands = C.with_range(v);
        if (!std::any_of(cands.begin(), cands.end(), [&](Mor a) { return in(phi.morphisms[a], x); }))
          fail(5, {v, x});
      }
    }
  for (const auto& A : enumerate_bisections(D))
    if (!is_bisection(C, hat(phi, A))) fail(6, A);
  std::vector<Mor> units_d, units_c;
  for (Obj u = 0; u < D.num_objects(); ++u) units_d.push_back(D.unit(u));
  for (Obj u = 0; u < C.num_objects(); ++u) units_c.push_back(C.unit(u));
  std::sort(units_d.begin(), units_d.end());
  std::sort(units_c.begin(), units_c.end());
  rep.units_to_units = hat(phi, units_d) == units_c;
  return rep;
}

template <class Scalar>
ConvElement<Scalar> covering_transfer(const CoveringMorphism& phi, const ConvElement<Scalar>& f) {
  if (f.category_ptr() != phi.target)
    throw ValidationError("transfer expects an element over the target category");
  ConvElement<Scalar> g(phi.source);
  for (Mor z = 0; z < phi.morphisms.size(); ++z) {
    Scalar acc(0);
    for (Mor x : phi.morphisms[z]) acc += f[x];
    g[z] = acc;
  }
  return g;
}

CoveringMorphism compose(const CoveringMorphism& psi, const CoveringMorphism& phi) {
  if (phi.target != psi.source) throw ValidationError("covering morphisms are not composable");
  CoveringMorphism out{phi.source, psi.target, {}, {}};
  for (Obj v : phi.objects) out.objects.push_back(psi.objects[v]);
  for (const auto& img : phi.morphisms) {
    std::vector<Mor> u;
    for (Mor x : img) u.insert(u.end(), psi.morphisms[x].begin(), psi.morphisms[x].end());
    std::sort(u.begin(), u.end());
    u.erase(std::unique(u.begin(), u.end()), u.end());
    out.morphisms.push_back(std::move(u));
  }
  return out;
}

CoveringMorphism identity_covering(std::shared_ptr<const FinCat> C) {
  CoveringMorphism out{C, C, {}, {}};
  for (Obj u = 0; u < C->num_objects(); ++u) out.objects.push_back(u);
  for (Mor x = 0; x < C->num_morphisms(); ++x) out.morphisms.push_back({x});
  return out;
}

std::vector<DisjointBlock> disjointify(const std::vector<std::vector<std::uint32_t>>& family) {
  std::map<std::uint32_t, std::vector<std::size_t>> signature;
  for (std::size_t i = 0; i < family.size(); ++i)
    for (auto x : family[i]) {
      auto& sig = signature[x];
      if (sig.empty() || sig.back() != i) sig.push_back(i);
    }
  std::map<std::vector<std::size_t>, std::vector<std::uint32_t>> blocks;
  for (const auto& [x, sig] : signature) blocks[sig].push_back(x);
  std::vector<DisjointBlock> out;
  for (auto& [labels, elements] : blocks) out.push_back({labels, std::move(elements)});
  return out;
}

#define RSWORK_CONV_INSTANTIATE(S)                                                             \
  template ConvElement<S> convolve(const ConvElement<S>&, const ConvElement<S>&);             \
  template ConvElement<S> involution(const ConvElement<S>&);                                  \
  template double sup_norm(const ConvElement<S>&);                                            \
  template bool supported_on_bisection(const ConvElement<S>&);                                \
  template struct CrossedElement<S>;                                                          \
  template CrossedElement<S> crossed_term(const AlgebraAction&, Elem, const Vector<S>&);      \
  template CrossedElement<S> crossed_multiply(const AlgebraAction&, const CrossedElement<S>&, \
                                              const CrossedElement<S>&);                      \
  template Vector<S> semigroup_multiply(const FinRS&, const Vector<S>&, const Vector<S>&);    \
  template CrossedElement<S> psi(const AlgebraAction&, const Vector<S>&);                     \
  template ConvElement<S> covering_transfer(const CoveringMorphism&, const ConvElement<S>&);

RSWORK_CONV_INSTANTIATE(Complex)
RSWORK_CONV_INSTANTIATE(GaussianRational)

}  // namespace rswork
