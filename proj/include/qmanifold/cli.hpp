#pragma once

// Subcommand bodies for the qmanifold tool. Each returns the process exit
// code and writes only to the streams it is given:
//   0  every identity within tolerance
//   1  input error (manifest, expression, domain, degenerate vector, u = 0)
//   2  some identity residual above tolerance

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "qmanifold/analysis.hpp"
#include "qmanifold/catenoid.hpp"
#include "qmanifold/manifest.hpp"
#include "qmanifold/qbasis.hpp"
#include "qmanifold/report.hpp"
#include "qmanifold/sampling.hpp"

namespace qmf::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitIdentity = 2;

/// Tolerance sources in increasing precedence: defaults or manifest, the
/// QMANIFOLD_TOL value, then explicit flags.
struct ToleranceOverrides {
  const char* env = nullptr;
  std::optional<double> first;
  std::optional<double> curvature;

  Tolerances apply(Tolerances base) const {
    base = tolerances_from_env(base, env);
    if (first) base.first = *first;
    if (curvature) base.curvature = *curvature;
    return base;
  }
};

/// Thresholds for checks that are exact up to rounding, independent of the
/// configurable tolerances.
inline constexpr double kAlgebraicTol = 1e-12;
inline constexpr double kParallelTol = 1e-10;

namespace detail {

inline std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

inline std::string point_text(const Vec3& p) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "(%.17g, %.17g, %.17g)", p(0), p(1), p(2));
  return buf;
}

/// Writes to `path` when given, otherwise to `out`.
inline bool emit(const report::json& doc, const std::optional<std::string>& path, std::ostream& out,
                 std::ostream& err) {
  if (!path) {
    report::write_json(out, doc);
    return true;
  }
  std::ofstream f(*path);
  if (!f) {
    err << "error: cannot write '" << *path << "'\n";
    return false;
  }
  report::write_json(f, doc);
  return true;
}

/// Names of Q-basis checks whose residual is above tolerance.
inline std::vector<std::string> qbasis_failures(const QBasisReport& q, const Tolerances& tol) {
  std::vector<std::string> out;
  auto gate = [&](const char* name, std::optional<double> v, double t) {
    if (v && !(*v < t)) out.emplace_back(name);
  };
  gate("orbit_identity", q.orbit_identity_residual, kAlgebraicTol);
  gate("angle_routes", q.angles.route_residual, kAlgebraicTol);
  gate("con_r", q.con_r_residual, tol.curvature);
  gate("obmu", q.obmu_residual, tol.curvature);
  gate("flat_gt_ricci", q.flat_gt_ricci_residual, tol.curvature);
  return out;
}

inline std::vector<std::string> classification_failures(const ClassificationReport& c, const Tolerances& tol) {
  std::vector<std::string> out;
  if (c.fr_residual && !(*c.fr_residual < tol.curvature)) out.emplace_back("almost_einstein_R");
  if (c.einstein_scalar_residual && !(*c.einstein_scalar_residual < tol.curvature))
    out.emplace_back("einstein_scalar_relation");
  return out;
}

}  // namespace detail

struct AnalyzeOptions {
  std::string manifest_path;
  std::optional<std::string> output_path;
  ToleranceOverrides tol;
};

inline int cmd_analyze(const AnalyzeOptions& opt, std::ostream& out, std::ostream& err) {
  try {
    const Manifest man = load_manifest(opt.manifest_path);
    const Tolerances tol = opt.tol.apply(man.tol);
    if (man.points.empty()) throw ManifestError(0, "[points] is empty");
    if (man.basis_x) require_q_basis(*man.basis_x);
    const MetricSpec spec = man.spec();

    report::json points = report::json::array();
    bool failed = false;
    for (const Vec3& p : man.points) {
      MetricAt m;
      try {
        m = metric_at(spec, p);
      } catch (const Error& e) {
        throw Error(std::string(e.what()) + " at point " + detail::point_text(p));
      }
      const CurvatureReport rep = analyze(m);
      const ClassificationReport cls = classify(rep, tol);
      std::vector<std::string> fails = rep.residuals.failures(tol);
      for (auto& f : detail::classification_failures(cls, tol)) fails.push_back(std::move(f));
      report::json q = nullptr;
      if (man.basis_x) {
        const QBasisReport qb = q_basis_report(m, *man.basis_x, tol);
        for (auto& f : detail::qbasis_failures(qb, tol)) fails.push_back(std::move(f));
        q = report::to_json(qb);
      }
      failed = failed || !fails.empty();
      points.push_back({{"point", report::to_json(p)},
                        {"curvature", report::to_json(rep)},
                        {"classification", report::to_json(cls)},
                        {"qbasis", q},
                        {"failures", fails}});
    }
    const report::json doc = {
        {"tool", report::tool_json()},
        {"command", "analyze"},
        {"manifest", report::manifest_echo(man)},
        {"tolerances", {{"first", tol.first}, {"curvature", tol.curvature}}},
        {"points", points},
        {"status", failed ? "fail" : "pass"},
    };
    if (!detail::emit(doc, opt.output_path, out, err)) return kExitInput;
    return failed ? kExitIdentity : kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
}

struct VerifyOptions {
  std::uint64_t seed = 42;
  std::size_t count = 100;
  sampling::Box box{-2.0, 2.0};
  ToleranceOverrides tol;
};

/// Running maximum of one identity's residual across samples.
struct VerifyLine {
  std::string name;
  double max_residual = 0.0;
  double tolerance = 0.0;
  std::size_t samples = 0;

  bool pass() const { return max_residual < tolerance; }
  void add(double r) {
    max_residual = std::max(max_residual, std::isnan(r) ? INFINITY : r);
    ++samples;
  }
};

/// The residual table `verify` prints, computed without any I/O.
inline std::vector<VerifyLine> verify_lines(const VerifyOptions& opt, const Tolerances& tol) {
  sampling::Rng rng(opt.seed);
  std::vector<VerifyLine> lines;
  const IdentityResiduals proto;
  for (const auto& [name, e] : proto.entries())
    lines.push_back({name, 0.0, e.second ? tol.curvature : tol.first, 0});
  const std::size_t base = lines.size();
  lines.push_back({"reconstruction_random_vectors", 0.0, tol.curvature, 0});
  lines.push_back({"orbit_identity", 0.0, kAlgebraicTol, 0});
  lines.push_back({"angle_routes", 0.0, kAlgebraicTol, 0});
  lines.push_back({"cos_psi_2cos_phi_minus_1", 0.0, kAlgebraicTol, 0});
  lines.push_back({"con_r", 0.0, tol.curvature, 0});
  lines.push_back({"parallel_nabla_q", 0.0, kParallelTol, 0});
  lines.push_back({"parallel_F", 0.0, kParallelTol, 0});

  for (std::size_t s = 0; s < opt.count; ++s) {
    const MetricSpec spec = sampling::random_spec(rng);
    const Vec3 p = sampling::random_point(rng, opt.box);
    const CurvatureReport rep = analyze(spec, p);
    std::size_t i = 0;
    for (const auto& [name, e] : rep.residuals.entries()) lines[i++].add(e.first);

    std::array<Vec3, 4> v;
    for (auto& w : v) w = sampling::random_vector(rng);
    double rec = 0.0;
    for (const auto* ric : {&rep.ricci_g, &rep.ricci_gt}) {
      const Riemann4& R = ric->which == Which::g ? rep.R : rep.R_tilde;
      rec = std::max(rec, std::abs(R(v[0], v[1], v[2], v[3]) -
                                   reconstruct_from_ricci(*ric, rep.metric, v[0], v[1], v[2], v[3])));
    }
    lines[base].add(rec);

    const Vec3 x = sampling::random_q_vector(rng);
    const QBasisReport q = q_basis_report(rep.metric, x, tol);
    lines[base + 1].add(q.orbit_identity_residual);
    lines[base + 2].add(q.angles.route_residual);
    lines[base + 3].add(std::abs(q.angles.cos_psi - (2 * q.angles.cos_phi - 1)));
    if (q.con_r_residual) lines[base + 4].add(*q.con_r_residual);

    const MetricSpec par = sampling::random_parallel_spec(rng);
    const CurvatureReport pr = analyze(par, sampling::random_point(rng, opt.box));
    lines[base + 5].add(pr.nabla_q.max_abs());
    lines[base + 6].add(pr.F.f.max_abs());
  }
  return lines;
}

inline int cmd_verify(const VerifyOptions& opt, std::ostream& out, std::ostream& err) {
  if (opt.count == 0) {
    err << "error: --count must be at least 1\n";
    return kExitInput;
  }
  if (!(opt.box.lo < opt.box.hi)) {
    err << "error: --box requires lo < hi\n";
    return kExitInput;
  }
  Tolerances tol;
  try {
    tol = opt.tol.apply(tol);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
  std::vector<VerifyLine> lines;
  try {
    lines = verify_lines(opt, tol);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
  char buf[256];
  std::snprintf(buf, sizeof buf, "qmanifold verify: seed=%llu count=%zu box=[%.17g, %.17g]\n",
                static_cast<unsigned long long>(opt.seed), opt.count, opt.box.lo, opt.box.hi);
  out << buf;
  std::snprintf(buf, sizeof buf, "%-32s %-12s %-10s %-8s %s\n", "identity", "max_residual", "tolerance",
                "samples", "status");
  out << buf;
  bool failed = false;
  for (const auto& l : lines) {
    std::snprintf(buf, sizeof buf, "%-32s %-12.3e %-10.0e %-8zu %s\n", l.name.c_str(), l.max_residual,
                  l.tolerance, l.samples, l.pass() ? "pass" : "FAIL");
    out << buf;
    failed = failed || !l.pass();
  }
  out << (failed ? "result: FAIL\n" : "result: pass\n");
  return failed ? kExitIdentity : kExitOk;
}

struct CatenoidOptions {
  std::vector<double> u{0.5, 1.0, 2.0};
  std::optional<std::size_t> emit_slices;
  std::string out_dir = ".";
  ToleranceOverrides tol;
};

/// Sample (v, w) pairs used to confirm the values do not depend on them.
inline constexpr std::array<std::array<double, 2>, 3> kCatenoidAngles{{{0.3, 0.7}, {1.9, -2.4}, {4.0, 3.1}}};

inline int cmd_catenoid(const CatenoidOptions& opt, std::ostream& out, std::ostream& err) {
  Tolerances tol;
  try {
    tol = opt.tol.apply(tol);
    if (opt.u.empty()) throw Error("--u needs at least one value");
    for (double u : opt.u) catenoid::require_chart(u);
    if (opt.emit_slices && *opt.emit_slices < 2) throw Error("--emit-slices needs n >= 2");
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }

  bool failed = false;
  char buf[512];
  for (double u : opt.u) {
    const auto [v0, w0] = kCatenoidAngles[0];
    const catenoid::GoldenReport g = catenoid::golden_report(u, v0, w0, tol);
    std::snprintf(buf, sizeof buf, "catenoid u = %.17g (v = %g, w = %g)\n", u, v0, w0);
    out << buf;
    std::snprintf(buf, sizeof buf, "  %-26s %-20s %-36s %-20s %s\n", "quantity", "computed", "formula",
                  "expected", "diff");
    out << buf;
    for (const auto& r : g.rows) {
      const bool ok = r.diff() < tol.curvature;
      std::snprintf(buf, sizeof buf, "  %-26s %-20.12g %-36s %-20.12g %.2e%s\n", r.quantity.c_str(), r.computed,
                    r.formula.c_str(), r.expected, r.diff(), ok ? "" : "  FAIL");
      out << buf;
      failed = failed || !ok;
    }

    // Every value is independent of (v, w).
    double spread = 0.0;
    for (std::size_t a = 1; a < kCatenoidAngles.size(); ++a) {
      const auto other = catenoid::golden_report(u, kCatenoidAngles[a][0], kCatenoidAngles[a][1], tol);
      for (std::size_t r = 0; r < g.rows.size(); ++r)
        spread = std::max(spread, std::abs(other.rows[r].computed - g.rows[r].computed));
    }
    const Mat3 fd = catenoid::induced_metric_fd(u, v0, w0);
    const double metric_fd = (fd - g.curvature.metric.g).max_abs();
    const EinsteinKind kind = g.classification.einstein.kind;
    const auto fails = g.curvature.residuals.failures(tol);

    std::snprintf(buf, sizeof buf, "  (v, w) independence: max spread over %zu pairs %.2e%s\n",
                  kCatenoidAngles.size(), spread, spread < tol.curvature ? "" : "  FAIL");
    out << buf;
    std::snprintf(buf, sizeof buf, "  induced metric vs finite-difference tangents: %.2e%s\n", metric_fd,
                  metric_fd < 1e-6 ? "" : "  FAIL");
    out << buf;
    out << "  classification: " << to_string(kind)
        << (g.classification.is_locally_product ? ", locally product" : ", not locally product")
        << (kind == EinsteinKind::Generic ? "" : "  FAIL (expected Generic)") << '\n';
    out << "  identity residuals: " << (fails.empty() ? "all within tolerance" : "FAIL") << '\n';
    for (const auto& f : fails) out << "    failed: " << f << '\n';
    out << "  note: " << g.theta.note << "\n\n";
    failed = failed || spread >= tol.curvature || metric_fd >= 1e-6 || kind != EinsteinKind::Generic || !fails.empty();
  }

  if (opt.emit_slices) {
    const std::filesystem::path dir(opt.out_dir);
    for (const auto& [slice, file] : {std::pair{catenoid::Slice::S1, "s1.csv"}, std::pair{catenoid::Slice::S2, "s2.csv"}}) {
      const auto path = dir / file;
      std::ofstream f(path);
      if (!f) {
        err << "error: cannot write '" << path.string() << "'\n";
        return kExitInput;
      }
      const auto pts = catenoid::slice_samples(slice, *opt.emit_slices);
      catenoid::write_slice_csv(f, pts);
      out << "wrote " << path.string() << " (" << pts.size() << " rows)\n";
    }
  }
  out << (failed ? "result: FAIL\n" : "result: pass\n");
  return failed ? kExitIdentity : kExitOk;
}

struct BasisOptions {
  std::string manifest_path;
  std::optional<Vec3> x;
  std::optional<std::string> output_path;
  ToleranceOverrides tol;
};

inline int cmd_basis(const BasisOptions& opt, std::ostream& out, std::ostream& err) {
  try {
    const Manifest man = load_manifest(opt.manifest_path);
    const Tolerances tol = opt.tol.apply(man.tol);
    const std::optional<Vec3> x = opt.x ? opt.x : man.basis_x;
    if (!x) throw Error("no vector given: pass --x a,b,c or set [basis] x in the manifest");
    require_q_basis(*x);
    if (man.points.empty()) throw ManifestError(0, "[points] is empty");
    const MetricSpec spec = man.spec();

    report::json points = report::json::array();
    bool failed = false;
    for (const Vec3& p : man.points) {
      MetricAt m;
      try {
        m = metric_at(spec, p);
      } catch (const Error& e) {
        throw Error(std::string(e.what()) + " at point " + detail::point_text(p));
      }
      const QBasisReport q = q_basis_report(m, *x, tol);
      const auto fails = detail::qbasis_failures(q, tol);
      failed = failed || !fails.empty();
      points.push_back({{"point", report::to_json(p)}, {"qbasis", report::to_json(q)}, {"failures", fails}});
    }
    const report::json doc = {
        {"tool", report::tool_json()},
        {"command", "basis"},
        {"manifest", report::manifest_echo(man)},
        {"tolerances", {{"first", tol.first}, {"curvature", tol.curvature}}},
        {"x", report::to_json(*x)},
        {"points", points},
        {"status", failed ? "fail" : "pass"},
    };
    if (!detail::emit(doc, opt.output_path, out, err)) return kExitInput;
    return failed ? kExitIdentity : kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
}

}  // namespace qmf::cli
