#pragma once

// JSON views of the per-point reports. The layout is documented in
// docs/report.schema.json; absent optional values are written as null so
// every key is always present.

#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <string>

#include "json.hpp"
#include "qmanifold/analysis.hpp"
#include "qmanifold/manifest.hpp"
#include "qmanifold/qbasis.hpp"

namespace qmf::report {

using json = nlohmann::ordered_json;

inline constexpr const char* kToolName = "qmanifold";
inline constexpr const char* kToolVersion = "0.1.0";

inline json to_json(const Vec3& v) { return json::array({v(0), v(1), v(2)}); }

/// Nested arrays with the first index outermost.
template <std::size_t Rank>
json to_json(const Tensor<Rank>& t) {
  if constexpr (Rank == 1) {
    return json::array({t[0], t[1], t[2]});
  } else {
    json out = json::array();
    for (std::size_t i = 0; i < kDim; ++i) {
      Tensor<Rank - 1> slice;
      for (std::size_t k = 0; k < Tensor<Rank - 1>::size; ++k) slice[k] = t[i * Tensor<Rank - 1>::size + k];
      out.push_back(to_json(slice));
    }
    return out;
  }
}

template <class T>
json optional_json(const std::optional<T>& v) {
  if (!v) return nullptr;
  if constexpr (std::is_arithmetic_v<T>) return *v;
  else return json(*v);
}

inline json to_json(const RicciData& r) {
  return {{"rho", to_json(r.rho)}, {"tau", r.tau}, {"tau_star", r.tau_star}};
}

inline json to_json(const EinsteinFit& f) {
  return {{"kind", to_string(f.kind)}, {"alpha", f.alpha}, {"beta", f.beta}, {"residual", f.residual}};
}

inline json to_json(const IdentityResiduals& r) {
  json out = json::object();
  for (const auto& [name, e] : r.entries()) out[name] = e.first;
  return out;
}

inline json to_json(const CurvatureReport& c) {
  const MetricAt& m = c.metric;
  return {
      {"metric", {{"A", m.A()}, {"B", m.B()}, {"dA", json::array({m.dA(0), m.dA(1), m.dA(2)})},
                  {"dB", json::array({m.dB(0), m.dB(1), m.dB(2)})}, {"g", to_json(m.g)}, {"gt", to_json(m.gt)}}},
      {"christoffel_g", to_json(c.gamma.gamma)},
      {"christoffel_gt", to_json(c.gamma_tilde.gamma)},
      {"deformation", to_json(c.deformation)},
      {"F", to_json(c.F.f)},
      {"theta", to_json(c.theta.theta)},
      {"theta_tilde", to_json(c.theta.theta_tilde)},
      {"nabla_q", to_json(c.nabla_q)},
      {"riemann_g", to_json(c.R.r)},
      {"riemann_gt", to_json(c.R_tilde.r)},
      {"ricci_g", to_json(c.ricci_g)},
      {"ricci_gt", to_json(c.ricci_gt)},
      {"residuals", to_json(c.residuals)},
  };
}

inline json to_json(const ClassificationReport& c) {
  return {
      {"w1_residual", c.w1_residual},
      {"locally_product", c.is_locally_product},
      {"product_witness", {{"A3", c.product.A3}, {"B1", c.product.B1}, {"B2", c.product.B2}}},
      {"einstein", to_json(c.einstein)},
      {"con_ae", {{"residual", c.con_ae_residual}, {"coeff_g", c.con_ae_coeff_g}, {"coeff_gt", c.con_ae_coeff_gt}}},
      {"fr_residual", optional_json(c.fr_residual)},
      {"einstein_scalar_residual", optional_json(c.einstein_scalar_residual)},
  };
}

inline json to_json(const QBasisReport& q) {
  json orbit = json::array();
  for (const auto& v : q.orbit) orbit.push_back(to_json(v));
  json pred = nullptr;
  if (q.predicted_sectional) pred = json(*q.predicted_sectional);
  return {
      {"x", to_json(q.x)},
      {"orbit", orbit},
      {"angles", {{"phi", q.angles.phi}, {"psi", q.angles.psi}, {"cos_phi", q.angles.cos_phi},
                  {"cos_psi", q.angles.cos_psi}, {"route_residual", q.angles.route_residual}}},
      {"orbit_identity_residual", q.orbit_identity_residual},
      {"triple_product", q.triple_product},
      {"ricci_directions", json(q.ricci_dirs)},
      {"sectional", json(q.sectional)},
      {"ricci_tilde_x", optional_json(q.ricci_tilde_x)},
      {"psi_right_angle", q.psi_right_angle},
      {"con_r_residual", optional_json(q.con_r_residual)},
      {"einstein", to_json(q.einstein)},
      {"predicted_sectional", pred},
      {"obmu_residual", optional_json(q.obmu_residual)},
      {"flat_gt_ricci_residual", optional_json(q.flat_gt_ricci_residual)},
  };
}

inline json manifest_echo(const Manifest& m) {
  json pts = json::array();
  for (const auto& p : m.points) pts.push_back(to_json(p));
  return {
      {"metric", {{"A", m.a_text}, {"B", m.b_text}}},
      {"points", pts},
      {"options", {{"tol_first", m.tol.first}, {"tol_curv", m.tol.curvature}, {"seed", m.seed},
                   {"count", m.count}, {"box", json::array({m.box.lo, m.box.hi})}}},
      {"basis", m.basis_x ? to_json(*m.basis_x) : json(nullptr)},
  };
}

inline json tool_json() { return {{"name", kToolName}, {"version", kToolVersion}}; }

namespace detail {

inline void write_string(std::ostream& os, const std::string& s) {
  // nlohmann handles the escaping; only numbers get the custom format.
  os << json(s).dump();
}

inline void write_number(std::ostream& os, double v) {
  if (!std::isfinite(v)) throw NonFinite("refusing to serialize a non-finite number");
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  os << buf;
}

inline void newline(std::ostream& os, int indent, int depth) {
  if (indent < 0) return;
  os << '\n' << std::string(static_cast<std::size_t>(indent * depth), ' ');
}

inline void write(std::ostream& os, const json& j, int indent, int depth) {
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << '{';
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) os << ',';
        first = false;
        newline(os, indent, depth + 1);
        write_string(os, k);
        os << (indent < 0 ? ":" : ": ");
        write(os, v, indent, depth + 1);
      }
      newline(os, indent, depth);
      os << '}';
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      // Arrays of scalars stay on one line; nested arrays break.
      const bool flat = std::none_of(j.begin(), j.end(), [](const json& e) { return e.is_structured(); });
      os << '[';
      bool first = true;
      for (const auto& v : j) {
        if (!first) os << (flat && indent >= 0 ? ", " : ",");
        first = false;
        if (!flat) newline(os, indent, depth + 1);
        write(os, v, indent, depth + 1);
      }
      if (!flat) newline(os, indent, depth);
      os << ']';
      return;
    }
    case json::value_t::number_float: write_number(os, j.get<double>()); return;
    case json::value_t::string: write_string(os, j.get<std::string>()); return;
    default: os << j.dump(); return;
  }
}

}  // namespace detail

/// Serializes with every floating-point number at 17 significant digits.
/// `indent` < 0 gives compact output.
inline void write_json(std::ostream& os, const json& j, int indent = 2) {
  detail::write(os, j, indent, 0);
  os << '\n';
}

inline std::string dump(const json& j, int indent = 2) {
  std::ostringstream os;
  write_json(os, j, indent);
  return os.str();
}

}  // namespace qmf::report
