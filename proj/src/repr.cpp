#include "rswork/repr.hpp"

#include <Eigen/SVD>
#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <ostream>

namespace rswork {

NormReport operator_norm(const Eigen::MatrixXcd& A, double tol, std::size_t max_iterations,
                         std::size_t dense_limit) {
  NormReport rep;
  rep.tol = tol;
  if (A.size() == 0) {
    rep.method = "svd";
    return rep;
  }
  if (std::size_t(std::max(A.rows(), A.cols())) <= dense_limit) {
    rep.method = "svd";
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(A);
    rep.value = svd.singularValues()(0);
    return rep;
  }
  rep.method = "power";
  const double row_sum = A.cwiseAbs().rowwise().sum().maxCoeff();
  const double col_sum = A.cwiseAbs().colwise().sum().maxCoeff();
  const double upper = std::sqrt(row_sum * col_sum);
  std::mt19937_64 rng(0x5eed);
  std::normal_distribution<double> gauss;
  Eigen::VectorXcd v(A.cols());
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = Complex(gauss(rng), gauss(rng));
  v.normalize();
  double estimate = 0;
  for (std::size_t it = 1; it <= max_iterations; ++it) {
    Eigen::VectorXcd Av = A * v;
    double next = Av.norm();
    Eigen::VectorXcd w = A.adjoint() * Av;
    double wn = w.norm();
    if (wn == 0) {
      rep.value = next;
      rep.iterations = it;
      return rep;
    }
    v = w / wn;
    if (std::abs(next - estimate) <= tol * std::max(next, 1e-300)) {
      rep.value = next;
      rep.iterations = it;
      return rep;
    }
    estimate = next;
  }
  std::vector<Complex> last(v.data(), v.data() + v.size());
  throw NonConvergenceError("power iteration did not converge", estimate, estimate, upper,
                            std::move(last));
}

template <class Scalar>
std::vector<Matrix<Scalar>> regular_rep_basis(const FinCat& C) {
  const auto n = Eigen::Index(C.num_morphisms());
  enforce_guard("regular representation entries", std::size_t(n * n), kRegularRepEntryGuard);
  std::vector<Matrix<Scalar>> out;
  for (Mor x = 0; x < n; ++x) {
    Matrix<Scalar> M = Matrix<Scalar>::Zero(n, n);
    for (Mor z : C.with_range(C.d(x)))
      if (auto xz = C.compose(x, z)) M(*xz, z) = Scalar(1);
    out.push_back(std::move(M));
  }
  return out;
}

template <class Scalar>
RegularRep<Scalar> regular_rep_category(const ConvElement<Scalar>& f) {
  const FinCat& C = f.category();
  const auto n = Eigen::Index(C.num_morphisms());
  enforce_guard("regular representation entries", std::size_t(n * n), kRegularRepEntryGuard);
  RegularRep<Scalar> rep;
  rep.op.basis = C.morphism_names();
  rep.op.matrix = Matrix<Scalar>::Zero(n, n);
  for (Mor x : f.support())
    for (Mor z : C.with_range(C.d(x))) {
      if (auto xz = C.compose(x, z))
        rep.op.matrix(*xz, z) += f[x];
      else
        rep.compressed = true;
    }
  auto canc = is_left_cancellative(C);
  rep.left_cancellative = canc.holds;
  if (!canc.holds) {
    const auto& w = *canc.witness;
    rep.diagnostic = "not left cancellative: " + C.morphism_name(w[0]) + " " +
                     C.morphism_name(w[1]) + " = " + C.morphism_name(w[0]) + " " +
                     C.morphism_name(w[2]) + "; pi_f may exceed the sup norm on bisections";
  }
  return rep;
}

template <class Scalar>
RepCheck check_semigroup_rep(const FinRS& S, const SemigroupRep<Scalar>& sigma) {
  RepCheck rep;
  auto fail = [&](const std::string& what, std::vector<Elem> w) {
    if (!rep.ok) return;
    rep.ok = false;
    rep.failed = what;
    rep.witness = std::move(w);
  };
  const std::size_t n = S.size();
  if (sigma.sigma.size() != n) {
    fail("one_operator_per_element", {});
    return rep;
  }
  for (Elem s = 0; s < n && rep.ok; ++s) {
    if (operator_norm(sigma.sigma[s]).value > 1 + 1e-9) fail("contractive", {s});
    for (Elem t = 0; t < n && rep.ok; ++t)
      if (!approx_equal<Scalar>(sigma.sigma[s] * sigma.sigma[t], sigma.sigma[S.mul(s, t)], 1e-12))
        fail("multiplicative", {s, t});
  }
  for (Elem e : S.projections()) {
    const auto& P = sigma.sigma[e];
    if (!approx_equal<Scalar>(P, adjoint<Scalar>(P), 1e-12) ||
        !approx_equal<Scalar>(P * P, P, 1e-12))
      fail("projection", {e});
  }
  return rep;
}

template <class Scalar>
SemigroupRep<Scalar> regular_representation(const FinRS& S) {
  S.require_restriction("regular_representation");
  if (!classify_ample(S).left) throw UnsupportedError("regular representation needs left ample S");
  const auto n = Eigen::Index(S.size());
  SemigroupRep<Scalar> out;
  for (Elem s = 0; s < n; ++s) {
    Matrix<Scalar> M = Matrix<Scalar>::Zero(n, n);
    for (Elem t = 0; t < n; ++t)
      if (S.leq_projection(S.rho(t), S.lambda(s))) M(S.mul(s, t), t) = Scalar(1);
    if (!approx_equal<Scalar>(Matrix<Scalar>(M * adjoint<Scalar>(M) * M), M, 1e-12))
      throw InternalError("phi'_" + S.name(s) + " is not a partial isometry");
    out.sigma.push_back(std::move(M));
  }
  return out;
}

template <class Scalar>
Matrix<Scalar> extend(const SemigroupRep<Scalar>& sigma, const Vector<Scalar>& x) {
  const auto d = Eigen::Index(sigma.dim());
  Matrix<Scalar> M = Matrix<Scalar>::Zero(d, d);
  for (Eigen::Index s = 0; s < x.size(); ++s)
    if (!ScalarTraits<Scalar>::is_zero(x[s])) M += x[s] * sigma.sigma[s];
  return M;
}

template <class Scalar>
LinOp<Scalar> regular_rep_semigroup(const FinRS& S, const Vector<Scalar>& x) {
  auto sigma = regular_representation<Scalar>(S);
  return LinOp<Scalar>{S.names(), extend(sigma, x)};
}

template <class Scalar>
bool independent_on(const SemigroupRep<Scalar>& sigma, const std::vector<Elem>& subset) {
  const auto d = Eigen::Index(sigma.dim());
  Matrix<Scalar> cols(d * d, Eigen::Index(subset.size()));
  for (std::size_t j = 0; j < subset.size(); ++j) {
    const auto& M = sigma.sigma[subset[j]];
    for (Eigen::Index i = 0; i < d * d; ++i) cols(i, Eigen::Index(j)) = M.data()[i];
  }
  return rank<Scalar>(cols) == Eigen::Index(subset.size());
}

template <class Scalar>
Matrix<Scalar> CovariantPair<Scalar>::pi(const Vector<Scalar>& f) const {
  const auto d = Eigen::Index(dim());
  Matrix<Scalar> M = Matrix<Scalar>::Zero(d, d);
  for (Eigen::Index x = 0; x < f.size(); ++x)
    if (!ScalarTraits<Scalar>::is_zero(f[x])) M += f[x] * pi_point[x];
  return M;
}

template <class Scalar>
CovarianceReport check_covariant_pair(const FinRS& S, const EtaleAction& theta,
                                      const CovariantPair<Scalar>& pair) {
  CovarianceReport rep;
  const auto d = Eigen::Index(pair.dim());
  const std::size_t m = theta.carrier();
  auto eq = [](const Matrix<Scalar>& a, const Matrix<Scalar>& b) {
    return approx_equal<Scalar>(a, b, 1e-12);
  };
  for (std::size_t x = 0; x < m; ++x) {
    const auto& P = pair.pi_point[x];
    if (!eq(P * P, P) || !eq(adjoint<Scalar>(P), P)) rep.pi_homomorphism = false;
    for (std::size_t y = x + 1; y < m; ++y)
      if (!is_zero_matrix<Scalar>(P * pair.pi_point[y], 1e-12)) rep.pi_homomorphism = false;
  }
  rep.sigma_rep = check_semigroup_rep(S, SemigroupRep<Scalar>{pair.sigma}).ok;
  for (Elem s = 0; s < S.size(); ++s) {
    const auto& th = theta.theta[s];
    for (Point x : th.domain()) {
      if (!eq(pair.pi_point[th.at(x)] * pair.sigma[s], pair.sigma[s] * pair.pi_point[x])) {
        if (rep.covariance) rep.witness = {s, x};
        rep.covariance = false;
      }
    }
  }
  for (Elem e : S.projections()) {
    auto dom = theta.domain(e);
    Matrix<Scalar> ind = Matrix<Scalar>::Zero(d, d);
    Matrix<Scalar> span(d, d * Eigen::Index(dom.size()));
    for (std::size_t i = 0; i < dom.size(); ++i) {
      ind += pair.pi_point[dom[i]];
      span.middleCols(Eigen::Index(i) * d, d) = pair.pi_point[dom[i]];
    }
    if (!eq(ind, pair.sigma[e])) rep.indicator = false;
    Matrix<Scalar> both(d, span.cols() + d);
    both << span, pair.sigma[e];
    auto r_span = rank<Scalar>(span), r_sigma = rank<Scalar>(pair.sigma[e]);
    if (r_span != r_sigma || rank<Scalar>(both) != r_sigma) rep.range = false;
  }
  return rep;
}

template <class Scalar>
CovariantPair<Scalar> covariant_pair_from_sigma(const FinRS& S, const CanonicalAction& can,
                                                const SemigroupRep<Scalar>& sigma) {
  auto check = check_semigroup_rep(S, sigma);
  if (!check.ok) throw ValidationError("sigma is not a representation: " + check.failed);
  const auto d = Eigen::Index(sigma.dim());
  const Matrix<Scalar> I = Matrix<Scalar>::Identity(d, d);
  CovariantPair<Scalar> pair;
  pair.sigma = sigma.sigma;
  for (const auto& phi : can.characters) {
    Matrix<Scalar> M = I;
    for (std::uint32_t i = 0; i < can.E.size(); ++i) {
      const auto& se = sigma.sigma[can.E.element(i)];
      M = phi(i) ? Matrix<Scalar>(M * se) : Matrix<Scalar>(M * (I - se));
    }
    pair.pi_point.push_back(std::move(M));
  }
  auto rep = check_covariant_pair(S, can.action, pair);
  if (!rep.ok()) throw InternalError("pair built from sigma fails the covariance conditions");
  return pair;
}

template <class Scalar>
Matrix<Scalar> integrate(const CovariantPair<Scalar>& pair, const CrossedElement<Scalar>& x) {
  const auto d = Eigen::Index(pair.dim());
  Matrix<Scalar> M = Matrix<Scalar>::Zero(d, d);
  for (const auto& [s, a] : x.terms) M += pair.pi(a) * pair.sigma[s];
  return M;
}

template <class Scalar>
Matrix<Scalar> integrate(const CovariantPair<Scalar>& pair, const FinRS& S, const EtaleAction& theta,
                         const GermTable& G, const ConvElement<Scalar>& F, std::mt19937_64* rng) {
  (void)S;
  if (&F.category() != &G.category())
    throw ValidationError("element does not live on this germ category");
  const auto d = Eigen::Index(pair.dim());
  Matrix<Scalar> M = Matrix<Scalar>::Zero(d, d);
  for (Mor c : F.support()) {
    const auto& members = G.members(c);
    Germ g = members.front();
    if (rng) {
      std::uniform_int_distribution<std::size_t> pick(0, members.size() - 1);
      g = members[pick(*rng)];
    }
    M += F[c] * (pair.pi_point[theta.theta[g.s].at(g.x)] * pair.sigma[g.s]);
  }
  return M;
}

template <class Scalar>
CovariantPair<Scalar> disintegrate(const FinRS& S, const GermTable& G,
                                   const std::vector<Matrix<Scalar>>& Pi) {
  const FinCat& C = G.category();
  const std::size_t n = C.num_morphisms();
  if (Pi.size() != n) throw ValidationError("need one operator per germ");
  const auto d = Pi.empty() ? Eigen::Index(0) : Pi[0].rows();
  for (Mor a = 0; a < n; ++a)
    for (Mor b = 0; b < n; ++b) {
      Matrix<Scalar> prod = Pi[a] * Pi[b];
      auto ab = C.composable(a, b) ? C.compose(a, b) : std::nullopt;
      bool ok = ab ? approx_equal<Scalar>(prod, Pi[*ab], 1e-12) : is_zero_matrix<Scalar>(prod, 1e-12);
      if (!ok)
        throw ValidationError("Pi is not multiplicative at (" + C.morphism_name(a) + ", " +
                              C.morphism_name(b) + ")");
    }
  CovariantPair<Scalar> pair;
  for (Obj x = 0; x < C.num_objects(); ++x) pair.pi_point.push_back(Pi[C.unit(x)]);
  for (Elem s = 0; s < S.size(); ++s) {
    Matrix<Scalar> M = Matrix<Scalar>::Zero(d, d);
    for (Mor c : G.theta_set(s)) M += Pi[c];
    pair.sigma.push_back(std::move(M));
  }
  return pair;
}

template <class Scalar>
std::vector<Matrix<Scalar>> bisection_blocks(const CovariantPair<Scalar>& pair, const FinRS& S,
                                             const EtaleAction& theta, const GermTable& G,
                                             const ConvElement<Scalar>& F) {
  (void)S;
  (void)theta;
  auto B = F.support();
  if (!is_bisection(G.category(), B)) throw ValidationError("F is not supported on a bisection");
  std::vector<Elem> covering;
  for (Mor c : B) covering.push_back(G.representative(c).s);
  std::sort(covering.begin(), covering.end());
  covering.erase(std::unique(covering.begin(), covering.end()), covering.end());
  std::vector<std::vector<std::uint32_t>> family;
  for (Elem s : covering) {
    auto th = G.theta_set(s);
    std::vector<std::uint32_t> part;
    std::set_intersection(th.begin(), th.end(), B.begin(), B.end(), std::back_inserter(part));
    family.push_back(std::move(part));
  }
  const auto d = Eigen::Index(pair.dim());
  const FinCat& C = G.category();
  std::vector<Matrix<Scalar>> out;
  for (const auto& block : disjointify(family)) {
    Elem s = covering[block.labels.front()];
    Matrix<Scalar> T = Matrix<Scalar>::Zero(d, d);
    for (Mor c : block.elements) T += F[c] * (pair.pi_point[C.r(c)] * pair.sigma[s]);
    out.push_back(std::move(T));
  }
  return out;
}

template <class Scalar>
bool completely_orthogonal_check(const std::vector<Matrix<Scalar>>& family, double tol) {
  for (std::size_t i = 0; i < family.size(); ++i)
    for (std::size_t j = 0; j < family.size(); ++j) {
      if (i == j) continue;
      Matrix<Scalar> a = adjoint<Scalar>(family[i]) * family[j];
      Matrix<Scalar> b = family[i] * adjoint<Scalar>(family[j]);
      if constexpr (ScalarTraits<Scalar>::exact) {
        if (!is_zero_matrix<Scalar>(a) || !is_zero_matrix<Scalar>(b)) return false;
      } else {
        if (a.norm() > tol || b.norm() > tol) return false;
      }
    }
  return true;
}

template <class Scalar>
MaxNormIdentity max_norm_identity(const std::vector<Matrix<Scalar>>& family) {
  MaxNormIdentity out;
  if (family.empty()) {
    out.holds = true;
    return out;
  }
  Matrix<Scalar> sum = family[0];
  out.max_norm = operator_norm(family[0]).value;
  for (std::size_t i = 1; i < family.size(); ++i) {
    sum += family[i];
    out.max_norm = std::max(out.max_norm, operator_norm(family[i]).value);
  }
  out.sum_norm = operator_norm(sum).value;
  out.holds = std::abs(out.sum_norm - out.max_norm) <= 1e-8;
  return out;
}

std::vector<std::vector<std::uint32_t>> fock_basis(std::size_t m, std::size_t N) {
  if (m == 0) throw ValidationError("Fock space needs at least one letter");
  std::size_t dim = 0, level = 1;
  for (std::size_t k = 0; k <= N; ++k) {
    dim += level;
    enforce_guard("Fock space dimension", dim, kFockDimensionGuard);
    level *= m;
  }
  std::vector<std::vector<std::uint32_t>> words{{}};
  std::size_t begin = 0;
  for (std::size_t k = 1; k <= N; ++k) {
    std::size_t end = words.size();
    for (std::size_t i = begin; i < end; ++i)
      for (std::uint32_t j = 0; j < m; ++j) {
        auto w = words[i];
        w.push_back(j);
        words.push_back(std::move(w));
      }
    begin = end;
  }
  return words;
}

template <class Scalar>
std::vector<LinOp<Scalar>> fock_creation(std::size_t m, std::size_t N) {
  auto words = fock_basis(m, N);
  std::map<std::vector<std::uint32_t>, Eigen::Index> where;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < words.size(); ++i) {
    where[words[i]] = Eigen::Index(i);
    std::string l = words[i].empty() ? "()" : "";
    for (auto j : words[i]) l += std::to_string(j + 1);
    labels.push_back(l);
  }
  const auto dim = Eigen::Index(words.size());
  std::vector<LinOp<Scalar>> out;
  for (std::uint32_t j = 0; j < m; ++j) {
    LinOp<Scalar> L{labels, Matrix<Scalar>::Zero(dim, dim)};
    for (std::size_t i = 0; i < words.size(); ++i) {
      if (words[i].size() >= N) continue;
      std::vector<std::uint32_t> jw{j};
      jw.insert(jw.end(), words[i].begin(), words[i].end());
      L.matrix(where.at(jw), Eigen::Index(i)) = Scalar(1);
    }
    out.push_back(std::move(L));
  }
  return out;
}

Eigen::MatrixXcd evaluate(const NCPolynomial& p, const std::vector<Eigen::MatrixXcd>& ops,
                          Eigen::Index dim) {
  if (p.num_variables() > ops.size())
    throw ValidationError("polynomial uses " + std::to_string(p.num_variables()) +
                          " variables, only " + std::to_string(ops.size()) + " operators given");
  // creation operators are very sparse, so words are multiplied sparsely
  using Sparse = Eigen::SparseMatrix<Complex>;
  std::vector<Sparse> sparse;
  for (const auto& op : ops) sparse.push_back(op.sparseView());
  Sparse id(dim, dim);
  id.setIdentity();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& [w, c] : p.terms) {
    Sparse M = id;
    for (auto i : w) M = Sparse(M * sparse[i]);
    out += c * Eigen::MatrixXcd(M);
  }
  return out;
}

NormReport tensor_norm(const NCPolynomial& p, std::size_t m, std::size_t N) {
  auto L = fock_creation<Complex>(m, N);
  std::vector<Eigen::MatrixXcd> ops;
  for (auto& l : L) ops.push_back(std::move(l.matrix));
  auto dim = ops.front().rows();
  return operator_norm(evaluate(p, ops, dim));
}

PolyRep poly_rep(const Eigen::MatrixXcd& P, const Eigen::MatrixXcd& T,
                 const std::vector<Complex>& coeffs) {
  const double tol = 1e-10;
  std::string problems;
  if (P.rows() != P.cols() || T.rows() != T.cols() || P.rows() != T.rows())
    throw ValidationError("P and T must be square of the same size");
  if ((P * P - P).norm() > tol) problems += " P^2 != P;";
  if ((P.adjoint() - P).norm() > tol) problems += " P != P*;";
  if (operator_norm(T).value > 1 + tol) problems += " ||T|| > 1;";
  if ((P * T - T).norm() > tol) problems += " PT != T;";
  if ((T * P - T).norm() > tol) problems += " TP != T;";
  if (!problems.empty()) throw ValidationError("poly_rep preconditions:" + problems);
  const auto d = P.rows();
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(d, d), power = Eigen::MatrixXcd::Identity(d, d);
  for (std::size_t k = 1; k < coeffs.size(); ++k) {
    power = power * T;
    acc += coeffs[k] * power;
  }
  Complex a0 = coeffs.empty() ? Complex(0) : coeffs[0];
  PolyRep out;
  out.op.matrix = acc + a0 * P;
  for (Eigen::Index i = 0; i < d; ++i) out.op.basis.push_back(std::to_string(i));
  out.norm = operator_norm(out.op.matrix).value;
  out.dominating_norm = operator_norm(Eigen::MatrixXcd(acc + a0 * Eigen::MatrixXcd::Identity(d, d))).value;
  if (out.norm > out.dominating_norm + 1e-9)
    throw InternalError("||pi(p)|| exceeds the norm with P = identity");
  return out;
}

double von_neumann_bound(const std::vector<Complex>& coeffs, std::size_t grid) {
  double best = 0;
  for (std::size_t k = 0; k < grid; ++k) {
    Complex z = std::polar(1.0, 2 * M_PI * double(k) / double(grid));
    Complex v = 0;
    for (std::size_t i = coeffs.size(); i-- > 0;) v = v * z + coeffs[i];
    best = std::max(best, std::abs(v));
  }
  return best;
}

void write_binary(std::ostream& os, const Eigen::MatrixXcd& A) {
  std::uint64_t rows = std::uint64_t(A.rows()), cols = std::uint64_t(A.cols());
  os.write(reinterpret_cast<const char*>(&rows), sizeof rows);
  os.write(reinterpret_cast<const char*>(&cols), sizeof cols);
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j) {
      double re = A(i, j).real(), im = A(i, j).imag();
      os.write(reinterpret_cast<const char*>(&re), sizeof re);
      os.write(reinterpret_cast<const char*>(&im), sizeof im);
    }
}

#define RSWORK_REPR_INSTANTIATE(S)                                                              \
  template std::vector<Matrix<S>> regular_rep_basis(const FinCat&);                            \
  template RegularRep<S> regular_rep_category(const ConvElement<S>&);                          \
  template RepCheck check_semigroup_rep(const FinRS&, const SemigroupRep<S>&);                 \
  template SemigroupRep<S> regular_representation(const FinRS&);                               \
  template LinOp<S> regular_rep_semigroup(const FinRS&, const Vector<S>&);                     \
  template Matrix<S> extend(const SemigroupRep<S>&, const Vector<S>&);                         \
  template bool independent_on(const SemigroupRep<S>&, const std::vector<Elem>&);              \
  template struct CovariantPair<S>;                                                            \
  template CovarianceReport check_covariant_pair(const FinRS&, const EtaleAction&,             \
                                                 const CovariantPair<S>&);                     \
  template CovariantPair<S> covariant_pair_from_sigma(const FinRS&, const CanonicalAction&,    \
                                                      const SemigroupRep<S>&);                 \
  template Matrix<S> integrate(const CovariantPair<S>&, const CrossedElement<S>&);             \
  template Matrix<S> integrate(const CovariantPair<S>&, const FinRS&, const EtaleAction&,      \
                               const GermTable&, const ConvElement<S>&, std::mt19937_64*);     \
  template CovariantPair<S> disintegrate(const FinRS&, const GermTable&,                       \
                                         const std::vector<Matrix<S>>&);                       \
  template std::vector<Matrix<S>> bisection_blocks(const CovariantPair<S>&, const FinRS&,      \
                                                   const EtaleAction&, const GermTable&,       \
                                                   const ConvElement<S>&);                     \
  template bool completely_orthogonal_check(const std::vector<Matrix<S>>&, double);            \
  template MaxNormIdentity max_norm_identity(const std::vector<Matrix<S>>&);                   \
  template std::vector<LinOp<S>> fock_creation(std::size_t, std::size_t);

RSWORK_REPR_INSTANTIATE(Complex)
RSWORK_REPR_INSTANTIATE(GaussianRational)

}  // namespace rswork
