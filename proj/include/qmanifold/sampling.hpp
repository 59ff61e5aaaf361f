#pragma once

// Seeded random metric specs, points and vectors for property runs.
// Coefficients are built as c₀ + Σ cᵢ·f(aᵢxⱼ + bᵢ)² with c₀ > 0 and cᵢ ≥ 0,
// so A and B are positive everywhere and no rejection step is needed.

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>

#include "qmanifold/expr.hpp"
#include "qmanifold/qbasis.hpp"
#include "qmanifold/structures.hpp"

namespace qmf::sampling {

/// mt19937_64 with a fixed mapping to [0, 1), so a seed gives the same stream
/// on every standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(unit() * static_cast<double>(n)); }

 private:
  std::mt19937_64 engine_;
};

struct Box {
  double lo = -1.0;
  double hi = 1.0;
};

namespace detail {

inline std::string num(double v) { return expr::detail::format_number(v); }

/// Draws rounded to 3 decimals keep the generated expressions readable.
inline double draw(Rng& rng, double lo, double hi) { return std::round(rng.uniform(lo, hi) * 1e3) / 1e3; }

inline std::string affine(double a, double b, std::size_t var) {
  std::string s = num(a) + "*x" + std::to_string(var + 1);
  if (b < 0) return s + " - " + num(-b);
  return s + " + " + num(b);
}

/// One term c·f(a·xⱼ + b)², f drawn from {cosh, exp, polynomial}.
inline std::string term(Rng& rng, std::size_t var) {
  const double c = draw(rng, 0.1, 1.0);
  const double a = draw(rng, 0.2, 0.9) * (rng.unit() < 0.5 ? -1.0 : 1.0);
  const double b = draw(rng, -0.5, 0.5);
  const std::string arg = affine(a, b, var);
  switch (rng.index(3)) {
    case 0: return num(c) + "*cosh(" + arg + ")^2";
    case 1: return num(c) + "*exp(" + arg + ")^2";
    default: {
      const double q = draw(rng, -0.5, 0.5);
      const std::string sq = num(std::abs(q)) + "*x" + std::to_string(var + 1) + "^2";
      return num(c) + "*(" + arg + (q < 0 ? " - " : " + ") + sq + ")^2";
    }
  }
}

/// c₀ plus one or two terms in variables drawn from `vars`.
template <std::size_t N>
std::string coefficient(Rng& rng, const std::array<std::size_t, N>& vars) {
  std::string s = num(draw(rng, 0.5, 2.0));
  const std::size_t terms = 1 + rng.index(2);
  for (std::size_t t = 0; t < terms; ++t) s += " + " + term(rng, vars[rng.index(N)]);
  return s;
}

}  // namespace detail

/// A and B depending on all three coordinates: generically A₃, B₁, B₂ ≠ 0.
inline MetricSpec random_spec(Rng& rng) {
  const std::array<std::size_t, 3> all{0, 1, 2};
  std::string a = detail::coefficient(rng, all);
  std::string b = detail::coefficient(rng, all);
  // Make sure the generic sample is not accidentally parallel.
  a += " + " + detail::term(rng, 2);
  b += " + " + detail::term(rng, rng.index(2));
  return MetricSpec::parse(a, b);
}

/// A = A(x¹, x²), B = B(x³): A₃ = B₁ = B₂ = 0, so ∇P = 0.
inline MetricSpec random_parallel_spec(Rng& rng) {
  const std::array<std::size_t, 2> plane{0, 1};
  const std::array<std::size_t, 1> axis{2};
  return MetricSpec::parse(detail::coefficient(rng, plane), detail::coefficient(rng, axis));
}

inline Vec3 random_point(Rng& rng, const Box& box) {
  return make_vec(rng.uniform(box.lo, box.hi), rng.uniform(box.lo, box.hi), rng.uniform(box.lo, box.hi));
}

/// Components in [−1, 1] with |x³((x¹)² + (x²)²)| ≥ margin, so x induces a
/// Q-basis that is not close to degenerate.
inline Vec3 random_q_vector(Rng& rng, double margin = 1e-2) {
  for (;;) {
    const Vec3 x = make_vec(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1));
    if (induces_q_basis(x, margin)) return x;
  }
}

inline Vec3 random_vector(Rng& rng) {
  return make_vec(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1));
}

}  // namespace qmf::sampling
