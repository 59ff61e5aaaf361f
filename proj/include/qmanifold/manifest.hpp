#pragma once

// Run manifests: flat key-value text with section headers.
//
//   manifest  = { line } ;
//   line      = blank | comment | header | entry ;
//   comment   = "#" { any } ;
//   header    = "[" ( "metric" | "points" | "options" | "basis" ) "]" ;
//   entry     = key "=" value          (metric, options, basis)
//             | real "," real "," real (points) ;
//
// [metric]  A = <expr>, B = <expr>          (both required)
// [points]  one point per line
// [options] tol_first, tol_curv, seed, count, box = lo, hi
// [basis]   x = a, b, c
//
// A "#" starts a comment anywhere on a line.

#include <charconv>
#include <cstdint>
#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "qmanifold/classify.hpp"
#include "qmanifold/error.hpp"
#include "qmanifold/sampling.hpp"
#include "qmanifold/structures.hpp"

namespace qmf {

struct Manifest {
  std::string a_text;
  std::string b_text;
  std::vector<Vec3> points;
  Tolerances tol;
  std::uint64_t seed = 42;
  std::size_t count = 100;
  sampling::Box box{-2.0, 2.0};
  std::optional<Vec3> basis_x;

  MetricSpec spec() const { return MetricSpec::parse(a_text, b_text); }
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline double parse_real(std::string_view s, std::size_t line) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
    throw ManifestError(line, "expected a real number, got '" + std::string(s) + "'");
  if (!std::isfinite(v)) throw ManifestError(line, "number is not finite: '" + std::string(s) + "'");
  return v;
}

inline std::uint64_t parse_unsigned(std::string_view s, std::size_t line) {
  s = trim(s);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
    throw ManifestError(line, "expected a non-negative integer, got '" + std::string(s) + "'");
  return v;
}

/// Comma-separated reals, exactly `n` of them.
inline std::vector<double> parse_list(std::string_view s, std::size_t n, std::size_t line) {
  std::vector<double> out;
  for (;;) {
    const auto comma = s.find(',');
    out.push_back(parse_real(s.substr(0, comma), line));
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  if (out.size() != n)
    throw ManifestError(line, "expected " + std::to_string(n) + " comma-separated numbers, got " +
                                  std::to_string(out.size()));
  return out;
}

inline Vec3 parse_vec3(std::string_view s, std::size_t line) {
  const auto v = parse_list(s, 3, line);
  return make_vec(v[0], v[1], v[2]);
}

}  // namespace detail

inline Manifest parse_manifest(std::istream& in) {
  enum class Section { None, Metric, Points, Options, Basis };
  Manifest m;
  Section section = Section::None;
  bool have_a = false, have_b = false;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view s = raw;
    if (const auto hash = s.find('#'); hash != std::string_view::npos) s = s.substr(0, hash);
    s = detail::trim(s);
    if (s.empty()) continue;

    if (s.front() == '[') {
      if (s.back() != ']') throw ManifestError(line, "unterminated section header");
      const auto name = detail::trim(s.substr(1, s.size() - 2));
      if (name == "metric") section = Section::Metric;
      else if (name == "points") section = Section::Points;
      else if (name == "options") section = Section::Options;
      else if (name == "basis") section = Section::Basis;
      else throw ManifestError(line, "unknown section [" + std::string(name) + "]");
      continue;
    }

    if (section == Section::Points) {
      m.points.push_back(detail::parse_vec3(s, line));
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string_view::npos) throw ManifestError(line, "expected 'key = value'");
    const auto key = detail::trim(s.substr(0, eq));
    const auto value = detail::trim(s.substr(eq + 1));
    auto unknown = [&] { return ManifestError(line, "unknown key '" + std::string(key) + "'"); };

    switch (section) {
      case Section::None: throw ManifestError(line, "entry outside of any section");
      case Section::Metric:
        if (key == "A") {
          m.a_text = value;
          have_a = true;
        } else if (key == "B") {
          m.b_text = value;
          have_b = true;
        } else {
          throw unknown();
        }
        break;
      case Section::Options:
        if (key == "tol_first") m.tol.first = detail::parse_real(value, line);
        else if (key == "tol_curv") m.tol.curvature = detail::parse_real(value, line);
        else if (key == "seed") m.seed = detail::parse_unsigned(value, line);
        else if (key == "count") m.count = detail::parse_unsigned(value, line);
        else if (key == "box") {
          const auto b = detail::parse_list(value, 2, line);
          if (!(b[0] < b[1])) throw ManifestError(line, "box requires lo < hi");
          m.box = {b[0], b[1]};
        } else {
          throw unknown();
        }
        break;
      case Section::Basis:
        if (key == "x") m.basis_x = detail::parse_vec3(value, line);
        else throw unknown();
        break;
      case Section::Points: break;
    }
  }
  if (!have_a || !have_b) throw ManifestError(0, "[metric] must define both A and B");
  if (!(m.tol.first > 0) || !(m.tol.curvature > 0)) throw ManifestError(0, "tolerances must be positive");
  // Surface expression errors now rather than at the first point.
  (void)m.spec();
  return m;
}

inline Manifest parse_manifest_text(const std::string& text) {
  std::istringstream in(text);
  return parse_manifest(in);
}

inline Manifest load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ManifestError(0, "cannot open '" + path + "'");
  return parse_manifest(in);
}

/// QMANIFOLD_TOL = "first[,curvature]" overrides the given tolerances.
inline Tolerances tolerances_from_env(Tolerances base, const char* value) {
  if (value == nullptr || *value == '\0') return base;
  std::string_view s = value;
  const auto comma = s.find(',');
  try {
    base.first = detail::parse_real(s.substr(0, comma), 0);
    if (comma != std::string_view::npos) base.curvature = detail::parse_real(s.substr(comma + 1), 0);
  } catch (const ManifestError&) {
    throw Error("QMANIFOLD_TOL must be 'first[,curvature]', got '" + std::string(s) + "'");
  }
  if (!(base.first > 0) || !(base.curvature > 0)) throw Error("QMANIFOLD_TOL values must be positive");
  return base;
}

}  // namespace qmf
