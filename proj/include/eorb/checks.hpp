#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "flag_class.hpp"
#include "orbit_lab.hpp"
#include "sampling.hpp"
#include "skew_spectral.hpp"
#include "symplectic.hpp"

namespace eorb::checks {

/// Outcome of one property over all trials of a suite.
struct PropertyResult
{
  std::string suite;
  std::string name;
  bool passed         = true;
  double max_residual = 0;
  double threshold    = 0;
  int trials          = 0;
  std::string detail;
};

struct CheckOptions
{
  int n              = 3;
  int trials         = 100;
  std::uint64_t seed = 1;
  ToleranceConfig tol{};
};

/// Accumulates per-property maxima in first-seen order.
class Recorder
{
public:
  explicit Recorder(std::string suite) : suite_(std::move(suite)) {}

  void observe(const std::string & name, double residual, double threshold)
  {
    auto & r        = slot(name);
    r.threshold     = threshold;
    r.max_residual  = std::max(r.max_residual, residual);
    r.passed        = r.passed && residual <= threshold && std::isfinite(residual);
    r.trials       += 1;
  }

  void require(const std::string & name, bool ok, const std::string & detail = {})
  {
    auto & r = slot(name);
    r.trials += 1;
    if (!ok) {
      r.passed       = false;
      r.max_residual = 1;
      if (r.detail.empty()) r.detail = detail;
    }
  }

  void note(const std::string & name, const std::string & detail) { slot(name).detail = detail; }

  std::vector<PropertyResult> take() { return std::move(results_); }

private:
  PropertyResult & slot(const std::string & name)
  {
    const auto it = index_.find(name);
    if (it != index_.end()) return results_[it->second];
    index_[name] = results_.size();
    results_.push_back({suite_, name, true, 0, 0, 0, {}});
    return results_.back();
  }

  std::string suite_;
  std::vector<PropertyResult> results_;
  std::map<std::string, std::size_t> index_;
};

inline const std::vector<Family> & standard_families()
{
  static const std::vector<Family> f{Family::O, Family::SO, Family::E, Family::SE};
  return f;
}

/// Positive imaginary parts of the eigenvalues of a real matrix, ascending.
inline std::vector<double> positive_imaginary_parts(const Mat & a, double zero)
{
  std::vector<double> out;
  if (a.size() == 0) return out;
  Eigen::EigenSolver<Mat> es(a, false);
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double im = es.eigenvalues()(i).imag();
    if (im > zero) out.push_back(im);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Block lambdas repeated once per 2-plane, ascending.
inline std::vector<double> expanded_lambdas(const SkewSpectrum & s)
{
  std::vector<double> out;
  for (const auto & b : s.blocks) out.insert(out.end(), static_cast<std::size_t>(b.dim() / 2), b.lambda);
  return out;
}

// ---------------------------------------------------------------------------

inline std::vector<PropertyResult> core_suite(const CheckOptions & o)
{
  Recorder rec("core");
  sampling::Rng rng(o.seed);
  for (int t = 0; t < o.trials; ++t) {
    const Family fam = standard_families()[static_cast<std::size_t>(t) % 4];
    const GroupSpec g(o.n, fam, o.tol);
    const auto a = sampling::random_group_element(g, rng);
    const auto b = sampling::random_group_element(g, rng);
    const auto c = sampling::random_group_element(g, rng);
    const auto x = sampling::random_algebra_element(g, rng);
    const auto y = sampling::random_algebra_element(g, rng);
    const auto z = sampling::random_algebra_element(g, rng);
    const auto m = sampling::random_dual_element(g, rng);

    rec.observe("associativity", distance(compose(g, compose(g, a, b), c), compose(g, a, compose(g, b, c))), 1e-10 * 10);
    rec.observe("inverse", distance(compose(g, a, inverse(g, a)), GroupElement::identity(o.n)), o.tol.abs);
    rec.observe("adjoint action property", distance(adjoint_action(g, compose(g, a, b), x), adjoint_action(g, a, adjoint_action(g, b, x))),
                1e-10 * scale_of(x) * 10);
    rec.observe("coadjoint action property",
                distance(coadjoint_action(g, compose(g, a, b), m), coadjoint_action(g, a, coadjoint_action(g, b, m))), 1e-10 * scale_of(m) * 10);
    const double pr = std::abs(pairing(g, coadjoint_action(g, a, m), adjoint_action(g, a, x)) - pairing(g, m, x));
    rec.observe("pairing invariance", pr, 1e-10 * std::max(1.0, scale_of(m) * scale_of(x)));

    if (has_translations(fam)) {
      const Vec p = sampling::random_vector(rng, o.n);
      const Vec v = sampling::random_vector(rng, o.n);
      rec.observe("momentum identity", std::abs(GroupSpec::inner_h(momentum_map(g, p, v), x.omega) - p.dot(x.omega * v)), 1e-12 * 10);
    }
    const auto jac = bracket(g, x, bracket(g, y, z)) + bracket(g, y, bracket(g, z, x)) + bracket(g, z, bracket(g, x, y));
    rec.observe("jacobi identity", distance(jac, AlgebraElement::zero(o.n)), 1e-10);

    const double h   = 1e-6;
    const auto fd    = (1.0 / h) * (adjoint_action(g, group_exp(g, h * x), y) - y);
    rec.observe("bracket finite difference", distance(fd, bracket(g, x, y)), 1e-4 * scale_of(x) * scale_of(x) * scale_of(y));
    const auto cfd = (1.0 / (2 * h)) * (coadjoint_action(g, group_exp(g, h * x), m) - coadjoint_action(g, group_exp(g, -h * x), m));
    rec.observe("coadjoint generator finite difference", distance(cfd, coadjoint_generator(g, x, m)), 1e-8 * scale_of(x) * scale_of(x) * scale_of(m));

    const GroupElement rot{a.r, Vec::Zero(o.n)};
    rec.observe("phi H-equivariance", distance(musical_phi(g, adjoint_action(g, rot, x)), coadjoint_action(g, rot, musical_phi(g, x))),
                1e-12 * scale_of(x) * 10);
    const Mat e = group_exp(g, x).r;
    rec.observe("exp orthogonality", (e.transpose() * e - Mat::Identity(o.n, o.n)).cwiseAbs().maxCoeff(), 1e-12);
  }
  return rec.take();
}

inline std::vector<PropertyResult> spectral_suite(const CheckOptions & o)
{
  Recorder rec("spectral");
  sampling::Rng rng(o.seed);
  for (int t = 0; t < o.trials; ++t) {
    const Mat w = t % 2 == 0 ? Mat(sampling::random_skew(rng, o.n)) : sampling::random_structured_skew(rng, o.n).omega;
    const auto s = youla_decompose(w, o.tol);
    const double scale = std::max(1.0, w.norm());
    rec.observe("reconstruction", (reconstruct(s) - w).cwiseAbs().maxCoeff() / scale, 1e-10);
    const Mat q = s.assembled_basis();
    rec.observe("orthonormal basis", (q.transpose() * q - Mat::Identity(o.n, o.n)).cwiseAbs().maxCoeff(), 1e-10);
    int total = s.d0();
    bool increasing = true;
    for (std::size_t k = 0; k < s.blocks.size(); ++k) {
      const auto & b = s.blocks[k];
      total += b.dim();
      rec.require("even block dims", b.dim() % 2 == 0);
      if (k > 0 && !(b.lambda > s.blocks[k - 1].lambda)) increasing = false;
      const Mat jj = b.J * b.J + Mat::Identity(b.dim(), b.dim());
      rec.observe("J squared is -I", jj.cwiseAbs().maxCoeff(), o.tol.abs);
      const Mat restricted = b.basis.transpose() * w * b.basis / b.lambda;
      rec.observe("J is the normalised restriction", (restricted - b.J).cwiseAbs().maxCoeff(), 1e-7);
    }
    rec.require("lambdas strictly increasing", increasing);
    rec.require("dimensions sum to n", total == o.n);

    const double zero = std::max(o.tol.abs, o.tol.rank_rel * (w.size() ? linalg::RankedSvd(w, o.tol).sigma(0) : 0.0));
    const auto ref    = positive_imaginary_parts(w, zero);
    const auto got    = expanded_lambdas(s);
    if (ref.size() != got.size()) {
      rec.require("lambda multiset vs eigensolver", false, "count mismatch");
    } else {
      double worst = 0;
      for (std::size_t i = 0; i < ref.size(); ++i) worst = std::max(worst, std::abs(ref[i] - got[i]) / ref[i]);
      rec.observe("lambda multiset vs eigensolver", worst, 1e-10);
    }

    const Mat r   = sampling::random_rotation(rng, o.n, false);
    const auto s2 = youla_decompose(r * w * r.transpose(), o.tol);
    bool same     = s2.d0() == s.d0() && s2.block_dims() == s.block_dims();
    double dl     = 0;
    for (std::size_t k = 0; same && k < s.blocks.size(); ++k) dl = std::max(dl, std::abs(s.blocks[k].lambda - s2.blocks[k].lambda));
    rec.require("conjugation equivariance (structure)", same);
    rec.observe("conjugation equivariance (lambda)", dl / scale, 1e-10);
  }
  return rec.take();
}

inline std::vector<PropertyResult> orbits_suite(const CheckOptions & o)
{
  Recorder rec("orbits");
  sampling::Rng rng(o.seed);
  for (int t = 0; t < o.trials; ++t) {
    const Family fam = standard_families()[static_cast<std::size_t>(t) % 4];
    const GroupSpec g(o.n, fam, o.tol);

    const auto x  = sampling::random_stratified_adjoint(g, rng);
    const auto nf = normal_form_adjoint(g, x);
    rec.observe("adjoint normal form residual", nf.residual / scale_of(x), 1e-9);
    rec.observe("adjoint normal form idempotent", distance(normal_form_adjoint(g, nf.point).mover, GroupElement::identity(o.n)), 1e-9 * scale_of(x));
    const auto ix = isotropy_algebra_adjoint(g, nf.point);
    rec.require("adjoint properness", ix.proper_algebra_level);
    rec.require("adjoint dimension identity", orbit_dimension(g, nf.point) == g.dim_g() - ix.dim_full);

    const auto m   = sampling::random_stratified_coadjoint(g, rng);
    const auto nfm = normal_form_coadjoint(g, m);
    rec.observe("coadjoint normal form residual", nfm.residual / scale_of(m), 1e-9);
    rec.observe("coadjoint normal form idempotent", distance(normal_form_coadjoint(g, nfm.point).mover, GroupElement::identity(o.n)),
                1e-9 * scale_of(m));
    const auto im = isotropy_algebra_coadjoint(g, nfm.point);
    rec.require("coadjoint properness", im.proper_algebra_level);
    rec.require("coadjoint dimension identity", orbit_dimension(g, nfm.point) == g.dim_g() - im.dim_full);

    if (has_translations(fam)) {
      const Vec p      = sampling::random_vector(rng, o.n);
      const int h_p    = static_cast<int>(stabiliser_basis(g, p).size());
      rec.require("rank tau_p = dim h - dim h_p", linalg::rank(tau_matrix(g, p), g.tol()) == g.dim_h() - h_p);
    }

    const auto el = sampling::random_group_element(g, rng);
    rec.require("same_orbit on moved adjoint pair", same_orbit(g, x, adjoint_action(g, el, x)) == OrbitMatch::Same);
    rec.require("same_orbit on moved coadjoint pair", same_orbit(g, m, coadjoint_action(g, el, m)) == OrbitMatch::Same);

    const auto delta = sampling::random_delta_adjoint(g, rng, sampling::random_stratum(rng));
    const auto rep   = bijection_pair(g, delta);
    rec.require("bijection base signatures agree", rep.base_agrees());
    rec.require("bijection fibre dimension", rep.fibre_consistent());
    rec.require("bijection lambda data", rep.adjoint_class.d0 == rep.coadjoint_class.d0
                                             && rep.adjoint_class.complex_dims() == rep.coadjoint_class.complex_dims());
    for (const auto & e : rep.edges) rec.require("bundle edge dimension identity", e.consistent(), e.label);
  }
  return rec.take();
}

struct TableRow
{
  std::string label;
  AlgebraElement adjoint_point;
  DualElement coadjoint_point;
  std::string display;
  int dim        = 0;
  int components = 1;
};

/// The two E(3) tables: point coordinates and expected display, orbit dimension, component count.
inline std::vector<TableRow> e3_table(OrbitKind kind)
{
  Mat w       = Mat::Zero(3, 3);
  w(1, 0)     = 1.3;
  w(0, 1)     = -1.3;
  const Vec z = Vec::Zero(3);
  const Vec e = Vec::Unit(3, 2) * 0.7;
  const Mat o = Mat::Zero(3, 3);
  if (kind == OrbitKind::Coadjoint) {
    return {{"(0,0)", {}, {o, z}, "point", 0, 1},
            {"(L,0)", {}, {w, z}, "F(1,2C)", 2, 1},
            {"(0,p)", {}, {o, e}, "Aff(~1;2)", 4, 1},
            {"(L,p)", {}, {w, e}, "Aff(~1;2C)", 4, 2}};
  }
  return {{"(0,0)", {o, z}, {}, "point", 0, 1},
          {"(w,0)", {w, z}, {}, "Aff(1;2C)", 4, 1},
          {"(0,v)", {o, e}, {}, "Aff([~1,2])", 2, 1},
          {"(w,v)", {w, e}, {}, "Aff(~1;2C)", 4, 2}};
}

inline std::vector<PropertyResult> flags_suite(const CheckOptions & o)
{
  Recorder rec("flags");
  sampling::Rng rng(o.seed);
  const GroupSpec e3(3, Family::E, o.tol);
  for (const auto kind : {OrbitKind::Coadjoint, OrbitKind::Adjoint}) {
    for (const auto & row : e3_table(kind)) {
      const auto c = kind == OrbitKind::Coadjoint ? classify_en_coadjoint(e3, row.coadjoint_point) : classify_en_adjoint(e3, row.adjoint_point);
      const std::string name = "E(3) " + to_string(kind) + " table " + row.label;
      const bool ok = display(c.signature) == row.display && c.orbit_dim == row.dim && c.flag_dim == row.dim && c.components == row.components;
      rec.require(name, ok, display(c.signature) + " dim " + std::to_string(c.orbit_dim) + " components " + std::to_string(c.components));
    }
  }
  for (int t = 0; t < o.trials; ++t) {
    const Family fam = standard_families()[static_cast<std::size_t>(t) % 4];
    const GroupSpec g(o.n, fam, o.tol);
    const auto x  = sampling::random_stratified_adjoint(g, rng);
    const auto m  = sampling::random_stratified_coadjoint(g, rng);
    const auto cx = classify(g, x);
    const auto cm = classify(g, m);
    rec.require("flag_dimension = rank oracle", cx.dims_consistent() && cm.dims_consistent(),
                cx.signature.render() + " / " + cm.signature.render());
    rec.require("signature sums to n", cx.signature.total_dim() == o.n && cm.signature.total_dim() == o.n);
    rec.require("orbit + isotropy = dim g", cx.orbit_dim + cx.isotropy_dim == g.dim_g() && cm.orbit_dim + cm.isotropy_dim == g.dim_g());
    const auto el = sampling::random_group_element(g, rng);
    rec.require("class function (adjoint)", same_class(cx, classify(g, adjoint_action(g, el, x))));
    rec.require("class function (coadjoint)", same_class(cm, classify(g, coadjoint_action(g, el, m))));
    rec.require("render/parse round trip", FlagSignature::parse(cx.signature.render()) == cx.signature
                                               && FlagSignature::parse(cm.signature.render()) == cm.signature);
  }
  return rec.take();
}

inline std::vector<PropertyResult> symplectic_suite(const CheckOptions & o)
{
  Recorder rec("symplectic");
  sampling::Rng rng(o.seed);
  const int n = o.n;
  const GroupSpec g(n, Family::E, o.tol);
  for (int t = 0; t < o.trials; ++t) {
    const auto m   = sampling::random_dual_element(g, rng);
    const auto xi  = sampling::random_algebra_element(g, rng);
    const auto eta = sampling::random_algebra_element(g, rng);
    const double k = kks_eval(g, m, xi, eta);
    rec.observe("kks antisymmetry", std::abs(k + kks_eval(g, m, eta, xi)), 1e-15 * std::max(1.0, std::abs(k)) * 10);
    const auto a = sampling::random_group_element(g, rng);
    rec.observe("kks invariance", std::abs(kks_eval(g, coadjoint_action(g, a, m), adjoint_action(g, a, xi), adjoint_action(g, a, eta)) - k),
                1e-10 * std::max(1.0, std::abs(k)));

    const auto iso = fibre_isotropy_check(g, m, 5, rng);
    rec.observe("V-fibre isotropy", iso.max_abs, 0.0);
    rec.require("V-fibre dimension", iso.fibre_dim == iso.expected_fibre_dim);

    const auto s  = sampling::random_structured_skew(rng, n - 1, (n - 1) % 2);
    const Mat q   = sampling::random_rotation(rng, n, true);
    Mat L         = Mat::Zero(n, n);
    L.bottomRightCorner(n - 1, n - 1) = s.omega;
    const DualElement reg{q * L * q.transpose(), q.col(0) * sampling::uniform(rng, 0.5, 2.0)};
    const auto fib = symplectic_fibre_check(g, coadjoint_action(g, a, reg));
    if (fib.min_singular_value) {
      rec.observe("h_p-fibre Gram 1/min singular value", 1.0 / *fib.min_singular_value, 1e8);
    } else {
      rec.require("h_p-fibre Gram 1/min singular value", fib.fibre_dim == 0);
      rec.note("h_p-fibre Gram 1/min singular value", "fibres are points in this dimension");
    }

    OrientedLine l{sampling::random_unit_vector(rng, n), Vec::Zero(n)};
    l.base         = sampling::random_vector(rng, n);
    l.base -= l.direction.dot(l.base) * l.direction;
    auto perp = [&](Vec v) { return Vec(v - l.direction.dot(v) * l.direction); };
    const LineTangent t1{l, perp(sampling::random_vector(rng, n)), perp(sampling::random_vector(rng, n))};
    const LineTangent t2{l, perp(sampling::random_vector(rng, n)), perp(sampling::random_vector(rng, n))};
    const double lf = line_form(t1, t2, g.tol());
    rec.observe("line_form invariance", std::abs(line_form(act_on_tangent(a, t1), act_on_tangent(a, t2), g.tol()) - lf), 1e-10 * std::max(1.0, std::abs(lf)));
    const double delta = sampling::normal(rng);
    rec.observe("line_form base-point shift", std::abs(line_form(shift_base_point(t1, delta), shift_base_point(t2, delta), g.tol()) - lf),
                1e-14 * std::max(1.0, std::abs(lf)) * 100);
    rec.observe("line_form Gram nondegenerate", std::max(0.0, 1.0 - linalg::min_singular_value(line_form_gram(l, g.tol()))), g.tol().abs);

    const Vec p     = sampling::random_vector(rng, n);
    const auto on   = coadjoint_action(g, sampling::random_group_element(g, rng), DualElement{Mat::Zero(n, n), p});
    const auto moved = line_from_coadjoint(g, coadjoint_action(g, a, on));
    const auto ref   = act_on_line(a, line_from_coadjoint(g, on));
    rec.observe("line_from_coadjoint equivariance", line_distance(moved, ref) / scale_of(on), 1e-10);
  }
  const auto fit = line_form_vs_kks(g, sampling::random_vector(rng, n), std::max(o.trials, 1), rng);
  rec.observe("KKS vs line_form single scalar", fit.max_rel_deviation, 1e-6);
  rec.note("KKS vs line_form single scalar", "c = " + std::to_string(fit.scale) + " over " + std::to_string(fit.pairs) + " pairs");
  return rec.take();
}

inline const std::vector<std::string> & suite_names()
{
  static const std::vector<std::string> names{"core", "spectral", "orbits", "flags", "symplectic"};
  return names;
}

/// Runs one named suite or `all`; throws InputError on an unknown name.
inline std::vector<PropertyResult> run_suite(const std::string & suite, const CheckOptions & o)
{
  if (o.n < 1) throw InputError("check: n must be positive");
  if (o.trials < 0) throw InputError("check: trials must be non-negative");
  if (suite == "all") {
    std::vector<PropertyResult> out;
    for (const auto & s : suite_names()) {
      auto r = run_suite(s, o);
      out.insert(out.end(), r.begin(), r.end());
    }
    return out;
  }
  if (suite == "core") return core_suite(o);
  if (suite == "spectral") return spectral_suite(o);
  if (suite == "orbits") return orbits_suite(o);
  if (suite == "flags") return flags_suite(o);
  if (suite == "symplectic") {
    if (o.n < 2) throw InputError("check: the symplectic suite needs n >= 2");
    return symplectic_suite(o);
  }
  throw InputError("check: unknown suite '" + suite + "'");
}

}  // namespace eorb::checks
