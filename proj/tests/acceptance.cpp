// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "eorb/eorb.hpp"

using namespace eorb;

namespace {

using Clock = std::chrono::steady_clock;

const std::vector<Family> kFamilies{Family::O, Family::SO, Family::E, Family::SE};

/// Every classification made by criteria 1-7, for the cumulative dimension check.
struct DimensionLedger
{
  int points     = 0;
  int mismatches = 0;
  std::string first_bad;

  const OrbitClass & record(const OrbitClass & c)
  {
    ++points;
    if (c.flag_dim != c.orbit_dim) {
      if (mismatches++ == 0) first_bad = c.signature.render() + " flag " + std::to_string(c.flag_dim) + " rank " + std::to_string(c.orbit_dim);
    }
    return c;
  }
};

DimensionLedger ledger;

template<typename Point>
OrbitClass tracked(const GroupSpec & g, const Point & x)
{
  return ledger.record(classify(g, x));
}

std::string sci(double x)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

struct Outcome
{
  bool pass = true;
  std::string detail;
};

Mat plane(int n, int i, int j, double s)
{
  Mat w   = Mat::Zero(n, n);
  w(j, i) = s;
  w(i, j) = -s;
  return w;
}

Mat rot2(double a)
{
  Mat r(2, 2);
  r << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
  return r;
}

struct TableRow
{
  const char * label;
  Mat omega;
  Vec vec;
  const char * expected;
  int dim;
  int components;
};

Outcome e3_table(bool coadjoint)
{
  const GroupSpec e3(3, Family::E);
  const Mat w = plane(3, 0, 1, 1.3);
  const Mat o = Mat::Zero(3, 3);
  const Vec z = Vec::Zero(3);
  const Vec e = 0.7 * Vec::Unit(3, 2);
  // the bracket form Aff([~1;2]) and the rendered Aff([~1,2]) parse to one signature
  const std::vector<TableRow> rows =
    coadjoint ? std::vector<TableRow>{{"(0,0)", o, z, "point", 0, 1},
                                      {"(L,0)", w, z, "F(1,2C)", 2, 1},
                                      {"(0,p)", o, e, "Aff(~1;2)", 4, 1},
                                      {"(L,p)", w, e, "Aff(~1;2C)", 4, 2}}
              : std::vector<TableRow>{{"(0,0)", o, z, "point", 0, 1},
                                      {"(w,0)", w, z, "Aff(1;2C)", 4, 1},
                                      {"(0,v)", o, e, "Aff([~1;2])", 2, 1},
                                      {"(w,v)", w, e, "Aff(~1;2C)", 4, 2}};
  Outcome out;
  std::ostringstream os;
  for (const auto & row : rows) {
    const auto c = coadjoint ? tracked(e3, DualElement{row.omega, row.vec}) : tracked(e3, AlgebraElement{row.omega, row.vec});
    const std::string want = row.expected;
    const bool sig_ok = want == "point" ? display(c.signature) == "point" : c.signature == FlagSignature::parse(want);
    const bool ok     = sig_ok && c.orbit_dim == row.dim && c.flag_dim == row.dim && c.components == row.components;
    out.pass          = out.pass && ok;
    os << row.label << "=" << display(c.signature) << "/" << c.orbit_dim << "/" << c.components << (ok ? " " : "(!) ");
  }
  out.detail = os.str();
  return out;
}

Outcome se2_closed_forms()
{
  const GroupSpec g(2, Family::SE);
  sampling::Rng rng(3);
  double worst = 0;
  for (int t = 0; t < 100; ++t) {
    const double w = sampling::normal(rng);
    const double l = sampling::normal(rng);
    const Vec v    = sampling::random_vector(rng, 2);
    const Vec p    = sampling::random_vector(rng, 2);
    const GroupElement a{rot2(sampling::uniform(rng, -M_PI, M_PI)), sampling::random_vector(rng, 2)};
    const Mat J = rot2(M_PI / 2);
    const auto y  = adjoint_action(g, a, {w * J, v});
    const Vec cap = a.r * v - w * (J * a.d);
    worst = std::max({worst, std::abs(y.omega(1, 0) - w), (y.v - cap).cwiseAbs().maxCoeff()});
    const auto m   = coadjoint_action(g, a, {l * J, p});
    const Vec rp   = a.r * p;
    worst = std::max({worst, std::abs(m.L(1, 0) - (l + rp.dot(J * a.d))), (m.p - rp).cwiseAbs().maxCoeff()});
  }
  return {worst < 1e-12, "max abs error " + sci(worst)};
}

Outcome pairing_and_momentum()
{
  sampling::Rng rng(4);
  double pair_worst = 0;
  double mom_worst  = 0;
  for (int t = 0; t < 500; ++t) {
    const int n = 2 + t % 5;
    const GroupSpec g(n, kFamilies[static_cast<std::size_t>(t / 5) % 4]);
    const auto a = sampling::random_group_element(g, rng);
    const auto m = sampling::random_dual_element(g, rng);
    const auto x = sampling::random_algebra_element(g, rng);
    pair_worst   = std::max(pair_worst, std::abs(pairing(g, coadjoint_action(g, a, m), adjoint_action(g, a, x)) - pairing(g, m, x)));
  }
  for (int t = 0; t < 500; ++t) {
    const int n = 2 + t % 5;
    const GroupSpec g(n, Family::E);
    const Vec p = sampling::random_vector(rng, n);
    const Vec v = sampling::random_vector(rng, n);
    const Mat w = sampling::random_skew(rng, n);
    mom_worst   = std::max(mom_worst, std::abs(GroupSpec::inner_h(momentum_map(g, p, v), w) - p.dot(w * v)));
  }
  return {pair_worst < 1e-10 && mom_worst < 1e-10,
          "pairing " + sci(pair_worst) + ", momentum " + sci(mom_worst)};
}

Outcome normal_forms()
{
  sampling::Rng rng(5);
  double worst   = 0;
  int class_fail = 0;
  for (int t = 0; t < 300; ++t) {
    const int n = 1 + t % 6;
    const GroupSpec g(n, kFamilies[static_cast<std::size_t>(t) % 4]);
    const auto x   = sampling::random_stratified_adjoint(g, rng);
    const auto nfx = normal_form_adjoint(g, x);
    const double sx = scale_of(x);
    worst = std::max({worst, (nfx.point.omega * nfx.point.v).cwiseAbs().maxCoeff() / sx, distance(adjoint_action(g, nfx.mover, x), nfx.point) / sx});
    const auto cx = tracked(g, x);

    const auto m   = sampling::random_stratified_coadjoint(g, rng);
    const auto nfm = normal_form_coadjoint(g, m);
    const double sm = scale_of(m);
    worst = std::max({worst, split_on_annihilator(g, nfm.point.L, nfm.point.p).L_ann.cwiseAbs().maxCoeff() / sm,
                      distance(coadjoint_action(g, nfm.mover, m), nfm.point) / sm});
    const auto cm = tracked(g, m);

    for (int k = 0; k < 5; ++k) {
      const auto a = sampling::random_group_element(g, rng);
      if (!(tracked(g, adjoint_action(g, a, x)).signature == cx.signature)) ++class_fail;
      if (!(tracked(g, coadjoint_action(g, a, m)).signature == cm.signature)) ++class_fail;
    }
  }
  return {worst < 1e-9 && class_fail == 0, "max relative residual " + sci(worst) + ", class changes " + std::to_string(class_fail)};
}

Outcome properness()
{
  sampling::Rng rng(6);
  int bad = 0;
  for (int t = 0; t < 300; ++t) {
    const int n = 1 + t % 6;
    const GroupSpec g(n, kFamilies[static_cast<std::size_t>(t) % 4]);
    const auto x  = normal_form_adjoint(g, sampling::random_stratified_adjoint(g, rng)).point;
    const auto rx = isotropy_algebra_adjoint(g, x);
    const auto m  = normal_form_coadjoint(g, sampling::random_stratified_coadjoint(g, rng)).point;
    const auto rm = isotropy_algebra_coadjoint(g, m);
    if (rx.dim_full != rx.dim_h_joint + rx.dim_ker_part) ++bad;
    if (rm.dim_full != rm.dim_h_joint + rm.dim_ker_part) ++bad;
    tracked(g, x);
    tracked(g, m);
  }
  return {bad == 0, std::to_string(bad) + " improper of 600"};
}

Outcome bijection()
{
  sampling::Rng rng(7);
  int bad_base = 0, bad_lambda = 0, bad_fibre = 0, bad_edge = 0, edges = 0;
  for (int t = 0; t < 200; ++t) {
    const int n = 1 + t % 6;
    const GroupSpec g(n, t % 2 ? Family::E : Family::SE);
    const auto x = sampling::random_delta_adjoint(g, rng, sampling::random_stratum(rng));
    const auto r = bijection_pair(g, x);
    ledger.record(r.adjoint_class);
    ledger.record(r.coadjoint_class);
    if (!(r.base_signature == r.coadjoint_base_signature)) ++bad_base;
    const auto & la = r.adjoint_class.lambda_multiset;
    const auto & lc = r.coadjoint_class.lambda_multiset;
    bool same = la.size() == lc.size();
    for (std::size_t i = 0; same && i < la.size(); ++i) {
      same = la[i].multiplicity == lc[i].multiplicity && std::abs(la[i].lambda - lc[i].lambda) <= 1e-10 * std::max(1.0, la[i].lambda);
    }
    if (!same) ++bad_lambda;
    const int d0       = r.adjoint_class.d0;
    const int expected = r.adjoint_class.generic ? d0 - 1 : n - d0;
    if (r.fibre_dim != expected || !r.fibre_consistent()) ++bad_fibre;
    for (const auto & e : r.edges) {
      ++edges;
      if (!e.consistent()) ++bad_edge;
    }
  }
  std::ostringstream os;
  os << "base " << bad_base << ", lambda " << bad_lambda << ", fibre " << bad_fibre << ", edges " << bad_edge << "/" << edges << " bad";
  return {bad_base + bad_lambda + bad_fibre + bad_edge == 0 && edges > 0, os.str()};
}

Outcome youla()
{
  sampling::Rng rng(8);
  double rec = 0;
  double lam = 0;
  int count_bad = 0;
  for (int t = 0; t < 200; ++t) {
    const int n = 1 + t % 8;
    const Mat w = sampling::random_skew(rng, n);
    const auto s = youla_decompose(w);
    rec = std::max(rec, (reconstruct(s) - w).cwiseAbs().maxCoeff() / std::max(1.0, w.norm()));
    Eigen::EigenSolver<Mat> es(w, false);
    std::vector<double> ref;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
      if (es.eigenvalues()(i).imag() > 1e-9 * std::max(1.0, w.norm())) ref.push_back(es.eigenvalues()(i).imag());
    }
    std::sort(ref.begin(), ref.end());
    std::vector<double> got;
    for (const auto & b : s.blocks) got.insert(got.end(), static_cast<std::size_t>(b.dim() / 2), b.lambda);
    if (ref.size() != got.size()) {
      ++count_bad;
      continue;
    }
    for (std::size_t i = 0; i < ref.size(); ++i) lam = std::max(lam, std::abs(ref[i] - got[i]) / ref[i]);
  }
  return {rec < 1e-10 && lam < 1e-10 && count_bad == 0,
          "reconstruction " + sci(rec) + ", lambda rel " + sci(lam) + ", count mismatches " + std::to_string(count_bad)};
}

Outcome symplectic()
{
  sampling::Rng rng(9);
  double iso = 0;
  double min_sigma = INFINITY;
  int point_fibres = 0;
  int regular      = 0;
  for (int n : {3, 5}) {
    const GroupSpec g(n, Family::E);
    for (int t = 0; t < 50; ++t) {
      iso = std::max(iso, fibre_isotropy_check(g, sampling::random_dual_element(g, rng), 5, rng).max_abs);
      const auto s = sampling::random_structured_skew(rng, n - 1, (n - 1) % 2);
      const Mat q  = sampling::random_rotation(rng, n, true);
      Mat L        = Mat::Zero(n, n);
      L.bottomRightCorner(n - 1, n - 1) = s.omega;
      const DualElement reg{q * L * q.transpose(), q.col(0) * sampling::uniform(rng, 0.5, 2.0)};
      const auto r = symplectic_fibre_check(g, coadjoint_action(g, sampling::random_group_element(g, rng), reg));
      ++regular;
      // in n = 3 the H_p-orbit is a point; its empty Gram matrix is vacuously nondegenerate
      if (r.min_singular_value) min_sigma = std::min(min_sigma, *r.min_singular_value);
      else ++point_fibres;
    }
  }
  double inv = 0;
  for (int t = 0; t < 200; ++t) {
    const int n = 2 + t % 5;
    const GroupSpec g(n, Family::E);
    OrientedLine l{sampling::random_unit_vector(rng, n), sampling::random_vector(rng, n)};
    l.base -= l.direction.dot(l.base) * l.direction;
    auto tangent = [&]() {
      Vec a = sampling::random_vector(rng, n);
      Vec b = sampling::random_vector(rng, n);
      a -= l.direction.dot(a) * l.direction;
      b -= l.direction.dot(b) * l.direction;
      return LineTangent{l, a, b};
    };
    const auto t1 = tangent();
    const auto t2 = tangent();
    const auto a  = sampling::random_group_element(g, rng);
    inv = std::max(inv, std::abs(line_form(act_on_tangent(a, t1), act_on_tangent(a, t2)) - line_form(t1, t2)));
  }
  double dev = 0;
  std::ostringstream scales;
  for (int n : {3, 4}) {
    const auto fit = line_form_vs_kks(GroupSpec(n, Family::E), Vec::Unit(n, 0), 50, rng);
    dev = std::max(dev, fit.pairs == 50 ? fit.max_rel_deviation : INFINITY);
    scales << " c(n=" << n << ")=" << fit.scale;
  }
  std::ostringstream os;
  os << "isotropy " << iso << ", min sigma " << min_sigma << " (" << point_fibres << "/" << regular << " point fibres)"
     << ", line invariance " << inv << ", fit deviation " << dev << scales.str();
  return {iso == 0.0 && min_sigma > 1e-8 && inv < 1e-10 && dev < 1e-6, os.str()};
}

}  // namespace

int main()
{
  const auto start = Clock::now();
  int failures     = 0;
  auto run = [&](int id, const char * name, const std::function<Outcome()> & body, double budget_s) {
    const auto t0   = Clock::now();
    Outcome o       = body();
    const double dt = std::chrono::duration<double>(Clock::now() - t0).count();
    if (budget_s > 0 && dt >= budget_s) {
      o.pass = false;
      o.detail += " (over time budget)";
    }
    if (!o.pass) ++failures;
    std::printf("%s criterion %d: %s [%.3f s] %s\n", o.pass ? "PASS" : "FAIL", id, name, dt, o.detail.c_str());
    std::fflush(stdout);
  };

  run(1, "E(3) coadjoint table", [] { return e3_table(true); }, 1.0);
  run(2, "E(3) adjoint table", [] { return e3_table(false); }, 1.0);
  run(3, "SE(2) closed forms", se2_closed_forms, 0);
  run(4, "pairing invariance and momentum identity", pairing_and_momentum, 0);
  run(5, "Cartan normal forms", normal_forms, 0);
  run(6, "properness", properness, 0);
  run(7, "bijection", bijection, 0);
  run(8, "Youla round trip", youla, 0);
  run(9, "symplectic suite", symplectic, 0);
  const double total = std::chrono::duration<double>(Clock::now() - start).count();
  run(10, "orbit-dimension consistency", [&] {
    Outcome o;
    o.pass   = ledger.mismatches == 0 && ledger.points > 0 && total < 60.0;
    o.detail = std::to_string(ledger.points) + " points, " + std::to_string(ledger.mismatches) + " mismatches"
             + (ledger.first_bad.empty() ? "" : " first " + ledger.first_bad) + ", cumulative " + sci(total) + " s";
    return o;
  }, 0);
  return failures == 0 ? 0 : 1;
}
