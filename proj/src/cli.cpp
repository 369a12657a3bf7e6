#include "rswork/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <ostream>
#include <random>

#include "rswork/builders.hpp"
#include "rswork/conv.hpp"
#include "rswork/dsl.hpp"
#include "rswork/error.hpp"
#include "rswork/germs.hpp"
#include "rswork/polynomial.hpp"
#include "rswork/repr.hpp"
#include "rswork/rsem.hpp"
#include "rswork/spectrum.hpp"

#ifndef RSWORK_FIXTURE_DIR
#define RSWORK_FIXTURE_DIR "fixtures"
#endif

namespace rswork::cli {

using nlohmann::json;
using CatPtr = std::shared_ptr<const FinCat>;

std::string fixture_dir() {
  if (const char* v = std::getenv("RSWORK_FIXTURES"); v && *v) return v;
  return RSWORK_FIXTURE_DIR;
}

namespace {

struct Options {
  std::string file;
  std::string name;
  std::string action;
  std::string category;
  std::string graph;
  std::string covering;
  std::string expr;
  std::string poly;
  std::string expect;
  std::string out_matrix;
  std::size_t fock = 0;
  std::size_t truncate = 0;
  std::size_t samples = 20;
  std::uint64_t seed = 0;
};

struct Outcome {
  json report;
  bool pass = true;
};

json cjson(Complex z) { return json::array({z.real(), z.imag()}); }

json names_of(const FinRS& S, const std::vector<Elem>& v) {
  json a = json::array();
  for (Elem s : v) a.push_back(S.name(s));
  return a;
}

json names_of(const FinCat& C, const std::vector<Mor>& v) {
  json a = json::array();
  for (Mor x : v) a.push_back(C.morphism_name(x));
  return a;
}

template <class Scalar>
json conv_json(const ConvElement<Scalar>& f) {
  json o = json::object();
  for (Mor x : f.support()) o[f.category().morphism_name(x)] = cjson(f[x]);
  return o;
}

json norm_json(const NormReport& n) {
  return {{"value", n.value}, {"method", n.method}, {"tol", n.tol}, {"iterations", n.iterations}};
}

dsl::Workspace workspace(const Options& o) {
  if (o.file.empty()) throw ValidationError("an input file is required");
  return dsl::load(o.file);
}

FinRS semigroup(const dsl::Workspace& ws, const Options& o) { return dsl::build(ws.semigroup(o.name)); }

// Graphs are looked up in the input file first, then in the bundled fixtures.
Graph graph(const Options& o) {
  if (!o.file.empty()) {
    auto ws = dsl::load(o.file);
    for (const auto& g : ws.graphs)
      if (g.name.text == o.graph) return dsl::build(g);
  }
  auto path = std::filesystem::path(fixture_dir()) / (o.graph + ".rs-dsl");
  if (!std::filesystem::exists(path)) throw ValidationError("no graph named '" + o.graph + "'");
  return dsl::build(dsl::load(path.string()).graph(o.graph));
}

// Convolution expressions: sums and products of morphism names, numbers and
// i; a number c stands for c times the identity (sum of the units);
// star(...) is the groupoid involution. Names that do not start with a
// letter go in double quotes.
class ExprParser {
 public:
  ExprParser(const std::string& s, CatPtr C) : _s(s), _C(std::move(C)) {}

  ConvElement<Complex> parse() {
    auto v = sum();
    skip();
    if (_i != _s.size()) fail("unexpected '" + std::string(1, _s[_i]) + "'");
    return v;
  }

 private:
  using E = ConvElement<Complex>;
  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError(ErrorCode::parse, "<expr>", 1, _i + 1, msg);
  }
  void skip() {
    while (_i < _s.size() && std::isspace(static_cast<unsigned char>(_s[_i]))) ++_i;
  }
  bool at(char c) {
    skip();
    return _i < _s.size() && _s[_i] == c;
  }
  E scalar(Complex c) {
    E f(_C);
    for (Obj u = 0; u < _C->num_objects(); ++u) f[_C->unit(u)] = c;
    return f;
  }
  E sum() {
    E acc(_C);
    bool first = true;
    while (true) {
      Complex sign = 1;
      if (at('+') || at('-')) {
        sign = _s[_i] == '-' ? -1.0 : 1.0;
        ++_i;
      } else if (!first) {
        break;
      }
      acc += sign * product();
      first = false;
    }
    return acc;
  }
  bool starts_atom() {
    skip();
    if (_i >= _s.size()) return false;
    char c = _s[_i];
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '"' || c == '(' || c == '.';
  }
  E product() {
    E p = atom();
    while (true) {
      if (at('*')) {
        ++_i;
        p = convolve(p, atom());
      } else if (starts_atom()) {
        p = convolve(p, atom());
      } else {
        return p;
      }
    }
  }
  E atom() {
    skip();
    if (_i >= _s.size()) fail("unexpected end of expression");
    char c = _s[_i];
    if (c == '(') {
      ++_i;
      E v = sum();
      if (!at(')')) fail("expected ')'");
      ++_i;
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t start = _i;
      while (_i < _s.size() && (std::isdigit(static_cast<unsigned char>(_s[_i])) || _s[_i] == '.')) ++_i;
      double v = std::stod(_s.substr(start, _i - start));
      if (_i < _s.size() && _s[_i] == 'i') {
        ++_i;
        return scalar({0, v});
      }
      return scalar(v);
    }
    std::string name;
    std::size_t start = _i;
    if (c == '"') {
      ++_i;
      while (_i < _s.size() && _s[_i] != '"') name += _s[_i++];
      if (_i >= _s.size()) fail("unterminated quoted name");
      ++_i;
    } else {
      while (_i < _s.size() && (std::isalnum(static_cast<unsigned char>(_s[_i])) || _s[_i] == '_' ||
                                _s[_i] == '.' || _s[_i] == '\''))
        name += _s[_i++];
      if (name.empty()) fail("unexpected '" + std::string(1, c) + "'");
      if (name == "star" && at('(')) {
        ++_i;
        E v = sum();
        if (!at(')')) fail("expected ')'");
        ++_i;
        return involution(v);
      }
      if (name == "i" && !_C->find_morphism("i")) return scalar({0, 1});
    }
    auto x = _C->find_morphism(name);
    if (!x) {
      _i = start;
      fail("unknown morphism '" + name + "'");
    }
    return E::delta(_C, *x);
  }

  const std::string& _s;
  CatPtr _C;
  std::size_t _i = 0;
};

Outcome cmd_check(const Options& o) {
  auto ws = workspace(o);
  auto S = semigroup(ws, o);
  const auto& ax = S.axioms();
  Outcome r;
  json axioms = json::object();
  for (int i = 0; i < 8; ++i) axioms["P" + std::to_string(i + 1)] = ax.pass[i];
  json wit = json::array();
  for (const auto& w : ax.witnesses)
    wit.push_back({{"axiom", "P" + std::to_string(w.axiom)}, {"tuple", names_of(S, w.tuple)}});
  auto ample = classify_ample(S);
  json aj = {{"left", ample.left}, {"right", ample.right}};
  if (ample.left_witness)
    aj["left_witness"] = names_of(S, {(*ample.left_witness)[0], (*ample.left_witness)[1], (*ample.left_witness)[2]});
  if (ample.right_witness)
    aj["right_witness"] = names_of(S, {(*ample.right_witness)[0], (*ample.right_witness)[1], (*ample.right_witness)[2]});
  r.report = {{"semigroup", ws.semigroup(o.name).name.text},
              {"size", S.size()},
              {"projections", names_of(S, S.projections())},
              {"axioms", axioms},
              {"witnesses", wit},
              {"classification", to_string(ax.classification)},
              {"ample", aj},
              {"inverse", bool(is_inverse(S))}};
  if (S.maps_supplied()) {
    r.report["maps_match_derived"] = S.maps_match_derived();
    r.pass = r.pass && S.maps_match_derived();
  }
  if (S.is_restriction()) {
    auto id = verify_identities(S);
    r.report["identities"] = {{"pass", id.pass}, {"failed", id.failed}, {"witness", names_of(S, id.witness)}};
    r.pass = r.pass && id.pass;
  }
  if (!o.expect.empty()) {
    bool match = o.expect == to_string(ax.classification);
    r.report["expected"] = o.expect;
    r.pass = r.pass && match;
  }
  return r;
}

Outcome cmd_spectrum(const Options& o) {
  auto ws = workspace(o);
  auto S = semigroup(ws, o);
  Semilattice E(S);
  auto chars = enumerate_characters(E);
  Outcome r;
  json cj = json::array();
  for (auto phi : chars) {
    json bits = json::object();
    for (std::uint32_t i = 0; i < E.size(); ++i) bits[E.name(i)] = phi(i) ? 1 : 0;
    cj.push_back({{"label", label(E, phi)}, {"bitstring", bitstring(E, phi)}, {"values", bits}});
  }
  std::vector<Character> principal;
  for (std::uint32_t e = 0; e < E.size(); ++e) principal.push_back(principal_character(E, e));
  std::sort(principal.begin(), principal.end());
  auto sorted = chars;
  std::sort(sorted.begin(), sorted.end());
  bool dense = sorted == principal;
  r.report = {{"semigroup", ws.semigroup(o.name).name.text},
              {"projections", E.names()},
              {"characters", cj},
              {"principal_equals_all", dense}};
  if (E.size() <= kBruteForceCrossCheck) {
    auto bf = brute_force_characters(E);
    std::sort(bf.begin(), bf.end());
    r.report["brute_force_agrees"] = bf == sorted;
    r.pass = bf == sorted;
  }
  r.pass = r.pass && dense;
  if (S.is_restriction()) {
    auto can = canonical_action(S);
    json act = json::object();
    for (Elem s = 0; s < S.size(); ++s) {
      json m = json::object();
      const auto& th = can.action.theta[s];
      for (Point x : th.domain()) m[can.action.point_names[x]] = can.action.point_names[th.at(x)];
      act[S.name(s)] = m;
    }
    r.report["action"] = act;
  }
  return r;
}

Outcome cmd_tight(const Options& o) {
  auto ws = workspace(o);
  auto S = semigroup(ws, o);
  Semilattice E(S);
  TightReport t = S.is_restriction() ? tight_spectrum(S) : tight_spectrum(E);
  json labels = json::array();
  for (auto phi : t.tight) labels.push_back(label(E, phi));
  Outcome r;
  r.report = {{"semigroup", ws.semigroup(o.name).name.text},
              {"tight", labels},
              {"invariance_checked", t.invariance_checked}};
  return r;
}

Outcome cmd_germs(const Options& o) {
  auto ws = workspace(o);
  auto S = semigroup(ws, o);
  S.require_restriction("germs");
  Outcome r;
  std::optional<CanonicalAction> can;
  EtaleAction theta;
  if (o.action.empty()) {
    can = canonical_action(S);
    theta = can->action;
  } else {
    theta = dsl::build(ws.action(o.action), S);
  }
  auto G = germ_category(S, theta);
  const FinCat& C = G.category();
  json classes = json::array();
  for (Mor c = 0; c < G.num_classes(); ++c) {
    const Germ& g = G.representative(c);
    classes.push_back({{"class_id", c},
                       {"name", C.morphism_name(c)},
                       {"representative", {S.name(g.s), theta.point_names[g.x]}},
                       {"members_count", G.members(c).size()},
                       {"d", C.object_name(C.d(c))},
                       {"r", C.object_name(C.r(c))}});
  }
  auto laws = validate_category(C);
  auto ac = can ? check_ample_cancellative(S) : check_ample_cancellative(S, theta);
  r.report = {{"semigroup", ws.semigroup(o.name).name.text},
              {"action", o.action.empty() ? "canonical" : o.action},
              {"classes", classes},
              {"category_laws", laws.ok},
              {"left_ample", ac.left_ample},
              {"left_cancellative", ac.left_cancellative},
              {"consistent", ac.consistent}};
  if (ac.witness)
    r.report["witness"] = names_of(C, {(*ac.witness)[0], (*ac.witness)[1], (*ac.witness)[2]});
  r.pass = laws.ok && ac.consistent;
  if (can) {
    auto st = s_tilde(S, *can, G);
    r.report["s_tilde"] = {{"injective", st.injective},
                           {"is_full_preimage", st.is_full_preimage},
                           {"closed_under_left", st.closed_under_left},
                           {"functor_iso", st.functor_iso},
                           {"equals_whole", st.equals_whole},
                           {"restriction_identity", st.restriction_identity}};
    r.pass = r.pass && st.injective && st.is_full_preimage && st.closed_under_left &&
             st.functor_iso && st.equals_whole && st.restriction_identity;
  }
  return r;
}

CatPtr category(const Options& o) {
  if (!o.graph.empty()) {
    if (o.truncate == 0) throw ValidationError("--graph needs --truncate N");
    return std::make_shared<const FinCat>(graph_category(graph(o), o.truncate));
  }
  auto ws = workspace(o);
  return std::make_shared<const FinCat>(dsl::build(ws.category(o.category)));
}

Outcome cmd_bisections(const Options& o) {
  auto C = category(o);
  Outcome r;
  auto laws = validate_category(*C);
  json bis = json::array();
  for (const auto& U : enumerate_bisections(*C)) bis.push_back(names_of(*C, U));
  r.report = {{"morphisms", C->num_morphisms()},
              {"truncated", C->truncated()},
              {"category_laws", laws.ok},
              {"bisections", bis}};
  r.pass = laws.ok;
  if (!C->truncated() && C->num_morphisms() <= kReconstructionGuard) {
    auto rec = bis_germ_reconstruction(*C);
    r.report["reconstruction"] = {{"bisections", rec.bisections},
                                  {"germ_morphisms", rec.germ_morphisms},
                                  {"bijective", rec.bijective},
                                  {"preserves_ends", rec.preserves_ends},
                                  {"preserves_units", rec.preserves_units},
                                  {"preserves_composition", rec.preserves_composition}};
    r.pass = r.pass && rec.ok();
  }
  return r;
}

Outcome cmd_conv(const Options& o) {
  auto C = category(o);
  if (o.expr.empty()) throw ValidationError("conv needs --expr");
  auto f = ExprParser(o.expr, C).parse();
  Outcome r;
  r.report = {{"expr", o.expr}, {"result", conv_json(f)}, {"sup_norm", sup_norm(f)},
              {"on_bisection", supported_on_bisection(f)}};
  return r;
}

void maybe_write(const Options& o, const Eigen::MatrixXcd& A) {
  if (o.out_matrix.empty()) return;
  std::ofstream os(o.out_matrix, std::ios::binary);
  if (!os) throw ValidationError("cannot write " + o.out_matrix);
  write_binary(os, A);
}

Outcome cmd_norm(const Options& o) {
  Outcome r;
  if (!o.poly.empty()) {
    auto p = parse_polynomial(o.poly);
    if (o.truncate == 0) throw ValidationError("--poly needs --truncate N");
    std::vector<Eigen::MatrixXcd> ops;
    std::size_t letters = 0;
    if (o.fock) {
      letters = o.fock;
      for (auto& L : fock_creation<Complex>(o.fock, o.truncate)) ops.push_back(std::move(L.matrix));
    } else if (!o.graph.empty()) {
      auto C = std::make_shared<const FinCat>(graph_category(graph(o), o.truncate));
      auto G = graph(o);
      letters = G.edges.size();
      for (const auto& e : G.edges) {
        auto x = C->find_morphism(e.name);
        ops.push_back(regular_rep_category(ConvElement<Complex>::delta(C, *x)).op.matrix);
      }
    } else {
      throw ValidationError("--poly needs --fock M or --graph NAME");
    }
    if (p.num_variables() > letters)
      throw ValidationError("polynomial has more variables than generators");
    auto A = evaluate(p, ops, ops.front().rows());
    auto n = operator_norm(A);
    r.report = norm_json(n);
    r.report["dimension"] = A.rows();
    r.report["truncate"] = o.truncate;
    // all generators acting as 1 on C: a one-dimensional representation
    std::vector<Complex> ones(letters, 1.0);
    r.report["all_ones_value"] = std::abs(p.at(ones));
    r.report["l1_bound"] = p.l1_norm();
    if (letters == 1) r.report["unit_circle_sup"] = von_neumann_bound(p.univariate_coefficients());
    maybe_write(o, A);
    return r;
  }
  if (o.expr.empty()) throw ValidationError("norm needs --poly or --expr");
  auto C = category(o);
  auto f = ExprParser(o.expr, C).parse();
  auto rep = regular_rep_category(f);
  auto n = operator_norm(rep.op.matrix);
  r.report = norm_json(n);
  r.report["sup_norm"] = sup_norm(f);
  r.report["on_bisection"] = supported_on_bisection(f);
  r.report["left_cancellative"] = rep.left_cancellative;
  r.report["compressed"] = rep.compressed;
  if (rep.diagnostic) r.report["diagnostic"] = *rep.diagnostic;
  maybe_write(o, rep.op.matrix);
  return r;
}

using Q = GaussianRational;

Q random_gaussian_integer(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-3, 3);
  return Q(mpq_class(d(rng)), mpq_class(d(rng)));
}

Vector<Q> random_vector(std::size_t n, std::mt19937_64& rng) {
  Vector<Q> v(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = random_gaussian_integer(rng);
  return v;
}

Outcome cmd_semicrossed(const Options& o) {
  auto ws = workspace(o);
  auto S = semigroup(ws, o);
  S.require_restriction("semicrossed-check");
  auto can = canonical_action(S);
  AlgebraAction alpha(S, can.action);
  std::mt19937_64 rng(o.seed);
  Outcome r;
  bool psi_hom = true;
  for (std::size_t k = 0; k < o.samples; ++k) {
    auto x = random_vector(S.size(), rng), y = random_vector(S.size(), rng);
    if (!(psi(alpha, semigroup_multiply(S, x, y)) ==
          crossed_multiply(alpha, psi(alpha, x), psi(alpha, y))))
      psi_hom = false;
  }
  r.report = {{"semigroup", ws.semigroup(o.name).name.text}, {"seed", o.seed},
              {"samples", o.samples}, {"psi_homomorphism", psi_hom}};
  r.pass = psi_hom;
  if (!classify_ample(S).left) {
    r.report["regular_representation"] = "skipped: not left ample";
    return r;
  }
  auto sigma = regular_representation<Q>(S);
  auto rep = check_semigroup_rep(S, sigma);
  auto pair = covariant_pair_from_sigma(S, can, sigma);
  auto cov = check_covariant_pair(S, can.action, pair);
  bool iso = true;
  double worst = 0;
  for (std::size_t k = 0; k < o.samples; ++k) {
    auto x = random_vector(S.size(), rng);
    Matrix<Q> lhs = integrate(pair, psi(alpha, x));
    Matrix<Q> rhs = extend(sigma, x);
    if (!approx_equal<Q>(lhs, rhs)) iso = false;
    double a = operator_norm(lhs).value, b = operator_norm(rhs).value;
    worst = std::max(worst, std::abs(a - b));
  }
  r.report["sigma_representation"] = rep.ok;
  r.report["covariant_pair"] = {{"covariance", cov.covariance}, {"range", cov.range},
                                {"indicator", cov.indicator}, {"pi_homomorphism", cov.pi_homomorphism},
                                {"sigma_rep", cov.sigma_rep}};
  r.report["psi_isometry"] = iso && worst <= 1e-9;
  r.report["max_norm_gap"] = worst;
  r.pass = r.pass && rep.ok && cov.ok() && iso && worst <= 1e-9;
  if (auto star = is_inverse(S)) {
    bool adj = true;
    for (Elem s = 0; s < S.size(); ++s)
      if (!approx_equal<Q>(sigma.sigma[(*star)[s]], adjoint<Q>(sigma.sigma[s]))) adj = false;
    r.report["star_preserved"] = adj;
    r.pass = r.pass && adj;
  }
  return r;
}

Outcome cmd_embed(const Options& o) {
  auto ws = workspace(o);
  auto S = semigroup(ws, o);
  auto wp = wagner_preston_embed(S);
  json phi = json::object();
  for (Elem s = 0; s < S.size(); ++s) phi[S.name(s)] = to_string(wp.phi[s], S.names());
  Outcome r;
  r.report = {{"semigroup", ws.semigroup(o.name).name.text},
              {"phi", phi},
              {"injective", wp.injective},
              {"all_bijective", wp.all_bijective}};
  if (wp.non_injective_witness) r.report["non_injective_witness"] = S.name(*wp.non_injective_witness);
  r.pass = wp.injective;
  return r;
}

json covering_json(const CoveringReport& rep, const CoveringMorphism& phi) {
  json pass = json::object(), wit = json::object();
  for (int m = 0; m < 6; ++m) {
    pass["M" + std::to_string(m + 1)] = rep.pass[m];
    if (!rep.pass[m]) wit["M" + std::to_string(m + 1)] = rep.witness[m];
  }
  (void)phi;
  return {{"conditions", pass}, {"witnesses", wit}, {"units_to_units", rep.units_to_units},
          {"ok", rep.ok()}};
}

ConvElement<Q> random_element(const CatPtr& C, std::mt19937_64& rng) {
  ConvElement<Q> f(C);
  for (Mor x = 0; x < C->num_morphisms(); ++x) f[x] = random_gaussian_integer(rng);
  return f;
}

// T(f * g) = T(f) * T(g) on random exact elements.
bool transfer_homomorphism(const CoveringMorphism& phi, std::size_t samples, std::mt19937_64& rng) {
  for (std::size_t k = 0; k < samples; ++k) {
    auto f = random_element(phi.target, rng), g = random_element(phi.target, rng);
    if (!(covering_transfer(phi, convolve(f, g)) ==
          convolve(covering_transfer(phi, f), covering_transfer(phi, g))))
      return false;
  }
  return true;
}

Outcome cmd_cover(const Options& o) {
  auto ws = workspace(o);
  std::map<std::string, CatPtr> cats;
  auto cat = [&](const std::string& n) {
    auto it = cats.find(n);
    if (it == cats.end())
      it = cats.emplace(n, std::make_shared<const FinCat>(dsl::build(ws.category(n)))).first;
    return it->second;
  };
  std::mt19937_64 rng(o.seed);
  Outcome r;
  json list = json::array();
  std::vector<std::pair<std::string, CoveringMorphism>> built;
  for (const auto& d : ws.coverings) {
    if (!o.covering.empty() && d.name.text != o.covering) continue;
    auto phi = dsl::build(d, cat(d.source.text), cat(d.target.text));
    auto rep = validate_covering(phi);
    auto id_rep = validate_covering(identity_covering(phi.source));
    bool hom = transfer_homomorphism(phi, o.samples, rng);
    // T_{id o phi} = T_phi o T_id and T_{phi o id} = T_id o T_phi
    bool functorial = true;
    auto id_d = identity_covering(phi.target), id_c = identity_covering(phi.source);
    for (std::size_t k = 0; k < o.samples; ++k) {
      auto f = random_element(phi.target, rng);
      auto lhs = covering_transfer(compose(id_d, phi), f);
      auto rhs = covering_transfer(phi, covering_transfer(id_d, f));
      auto lhs2 = covering_transfer(compose(phi, id_c), f);
      auto rhs2 = covering_transfer(id_c, covering_transfer(phi, f));
      if (!(lhs == rhs) || !(lhs2 == rhs2)) functorial = false;
    }
    json j = covering_json(rep, phi);
    j["name"] = d.name.text;
    j["identity_ok"] = id_rep.ok();
    j["transfer_homomorphism"] = hom;
    j["transfer_functorial"] = functorial;
    list.push_back(j);
    r.pass = r.pass && rep.ok() && id_rep.ok() && hom && functorial;
    built.emplace_back(d.name.text, std::move(phi));
  }
  if (built.empty()) throw ValidationError("no covering to check");
  // composable pairs declared in the same file
  json pairs = json::array();
  for (const auto& [pn, p] : built)
    for (const auto& [qn, q] : built) {
      if (p.target != q.source) continue;
      auto qp = compose(q, p);
      bool ok = validate_covering(qp).ok();
      for (std::size_t k = 0; k < o.samples && ok; ++k) {
        auto f = random_element(q.target, rng);
        ok = covering_transfer(qp, f) == covering_transfer(p, covering_transfer(q, f));
      }
      pairs.push_back({{"first", pn}, {"second", qn}, {"ok", ok}});
      r.pass = r.pass && ok;
    }
  r.report = {{"seed", o.seed}, {"coverings", list}, {"compositions", pairs}};
  return r;
}

json error_json(const std::string& code, const std::string& message) {
  return {{"error", {{"code", code}, {"message", message}}}};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out) {
  CLI::App app{"Finite restriction semigroups, germ categories and their representations", "rswork"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--seed", o.seed, "Seed for randomized checks")->default_val(0);

  auto file_opt = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("file", o.file, "DSL input file");
    if (required) opt->required()->check(CLI::ExistingFile);
    sub->add_option("--name", o.name, "Semigroup block to use (default: first)");
  };
  auto seed_opt = [&](CLI::App* sub) {
    sub->add_option("--seed", o.seed, "Seed for randomized checks");
    sub->add_option("--samples", o.samples, "Random samples per property")->default_val(20);
  };

  auto* check = app.add_subcommand("check", "Axioms, classification and ampleness");
  file_opt(check, true);
  check->add_option("--expect", o.expect, "Expected classification");
  auto* spectrum = app.add_subcommand("spectrum", "Characters of E and the canonical action");
  file_opt(spectrum, true);
  auto* tight = app.add_subcommand("tight", "Tight characters");
  file_opt(tight, true);
  auto* germs = app.add_subcommand("germs", "Germ category of an action");
  file_opt(germs, true);
  germs->add_option("--action", o.action, "Action block (default: canonical action)");
  auto cat_opts = [&](CLI::App* sub) {
    sub->add_option("file", o.file, "DSL input file");
    sub->add_option("--category", o.category, "Category block");
    sub->add_option("--graph", o.graph, "Graph block or bundled graph fixture");
    sub->add_option("--truncate", o.truncate, "Path length bound for graph categories");
  };
  auto* bis = app.add_subcommand("bisections", "Bisections and the germ reconstruction");
  cat_opts(bis);
  auto* conv = app.add_subcommand("conv", "Evaluate a convolution expression");
  cat_opts(conv);
  conv->add_option("--expr", o.expr, "Expression, e.g. \"2 a*b + star(c)\"")->required();
  auto* norm = app.add_subcommand("norm", "Regular-representation or Fock-space norm");
  cat_opts(norm);
  norm->add_option("--expr", o.expr, "Convolution expression on --category");
  norm->add_option("--poly", o.poly, "Polynomial in x1, x2, ... for --graph or --fock");
  norm->add_option("--fock", o.fock, "Number of creation operators");
  norm->add_option("--out", o.out_matrix, "Write the operator as binary row-major f64 pairs");
  auto* semi = app.add_subcommand("semicrossed-check", "psi and covariant-pair checks");
  file_opt(semi, true);
  seed_opt(semi);
  auto* embed = app.add_subcommand("embed", "Wagner-Preston representation");
  file_opt(embed, true);
  auto* cover = app.add_subcommand("cover-check", "Covering morphism conditions and transfer");
  file_opt(cover, true);
  seed_opt(cover);
  cover->add_option("--covering", o.covering, "Covering block (default: all)");
  auto* pretty = app.add_subcommand("pretty", "Print the canonical form of a DSL file");
  file_opt(pretty, true);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::ParseError& e) {
    out << error_json("usage", e.what()).dump(2) << "\n";
    return kInputError;
  }

  try {
    if (pretty->parsed()) {
      out << dsl::pretty(dsl::load(o.file));
      return kPass;
    }
    Outcome r;
    if (check->parsed()) r = cmd_check(o);
    else if (spectrum->parsed()) r = cmd_spectrum(o);
    else if (tight->parsed()) r = cmd_tight(o);
    else if (germs->parsed()) r = cmd_germs(o);
    else if (bis->parsed()) r = cmd_bisections(o);
    else if (conv->parsed()) r = cmd_conv(o);
    else if (norm->parsed()) r = cmd_norm(o);
    else if (semi->parsed()) r = cmd_semicrossed(o);
    else if (embed->parsed()) r = cmd_embed(o);
    else if (cover->parsed()) r = cmd_cover(o);
    r.report["pass"] = r.pass;
    out << r.report.dump(2) << "\n";
    return r.pass ? kPass : kAssertionFailure;
  } catch (const ParseError& e) {
    json j = error_json(std::string(to_string(e.code())), e.message());
    j["error"]["line"] = e.line();
    j["error"]["column"] = e.column();
    j["error"]["where"] = e.what();
    out << j.dump(2) << "\n";
    return kInputError;
  } catch (const NonConvergenceError& e) {
    json j = error_json("non_convergence", e.what());
    j["error"]["estimate"] = e.estimate();
    j["error"]["bracket"] = {e.lower(), e.upper()};
    out << j.dump(2) << "\n";
    return kAssertionFailure;
  } catch (const Error& e) {
    out << error_json(std::string(to_string(e.code())), e.what()).dump(2) << "\n";
    return e.code() == ErrorCode::internal ? kAssertionFailure : kInputError;
  }
}

}  // namespace rswork::cli
