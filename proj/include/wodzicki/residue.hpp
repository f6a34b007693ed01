#ifndef WODZICKI_RESIDUE_HPP_
#define WODZICKI_RESIDUE_HPP_

/* The residue trace and the normalized integral.
 *
 * For a symbol expansion on the d-torus, the residue density at x is the
 * cosphere integral of the spinor trace of the degree -d component,
 *
 *   wres(S) = int_{T^d} int_{S^{d-1}} Tr(sigma_{-d}(x, xi)) dxi dx,
 *
 * evaluated exactly: the restriction |xi| = 1 absorbs all denominator
 * powers, each monomial xi^beta integrates over the sphere to a rational
 * multiple of a half-integer power of pi (zero whenever some beta_i is odd),
 * and the x-integral of a trigonometric polynomial is (2 pi)^d times its
 * mean.  The normalized integral is
 *
 *   ncintegral(S) = c_d * wres(S),   c_d = (2 pi)^{-d},
 *
 * with the constant fixed by calibration: c_d * wres(|D|^{-d}) must equal
 * the residue at s = d of the spectral zeta function, which the floating
 * point oracle checks independently for d = 2, 3, 4.
 */

#include "wodzicki/exact_scalar.hpp"
#include "wodzicki/symbol.hpp"

#include <string>
#include <utility>

namespace wodzicki {

struct ResidueValue {
  ExactScalar value;
  std::string provenance;
};

namespace detail {
/* Gamma(m/2) for m >= 1, exactly: a rational times sqrt(pi)^s, s in {0,1}.
 * Gamma(n) = (n-1)!;  Gamma(k + 1/2) = (2k)! / (4^k k!) * sqrt(pi). */
inline std::pair<Rational, int> gamma_half(int m) {
  if (m < 1) throw std::invalid_argument("gamma_half: argument must be >= 1/2");
  if (m % 2 == 0) {
    BigInt f = 1;
    for (int t = 2; t < m / 2; ++t) f *= t;
    return {Rational(f), 0};
  }
  int k = (m - 1) / 2;
  BigInt num = 1;
  for (int t = 2; t <= 2 * k; ++t) num *= t;
  BigInt den = 1;
  for (int t = 2; t <= k; ++t) den *= t;
  den <<= 2 * k;
  return {Rational(num) / Rational(den), 1};
}
} // namespace detail

/* Exact integral of xi^beta over the unit sphere S^{d-1}:
 *
 *   0                                        if any beta_i is odd,
 *   2 prod_i Gamma((beta_i+1)/2) / Gamma((|beta|+d)/2)   otherwise.
 *
 * beta = 0 gives the sphere volume 2 pi^{d/2} / Gamma(d/2). */
inline ExactScalar sphere_monomial_integral(const XiExp& beta, int d) {
  if (d < 2) throw std::invalid_argument("sphere_monomial_integral: dimension must be >= 2");
  if (static_cast<int>(beta.size()) != d)
    throw std::invalid_argument("sphere_monomial_integral: multi-index size mismatch");
  int weight = 0;
  for (int b : beta) {
    if (b < 0) throw std::invalid_argument("sphere_monomial_integral: negative exponent");
    if (b % 2 != 0) return ExactScalar();
    weight += b;
  }
  Rational r = 2;
  int half_powers = 0;
  for (int b : beta) {
    auto [g, s] = detail::gamma_half(b + 1);
    r *= g;
    half_powers += s;
  }
  auto [gden, sden] = detail::gamma_half(weight + d);
  r /= gden;
  half_powers -= sden;
  return ExactScalar::pi_half_power(GaussianRational(r), half_powers);
}

inline ExactScalar sphere_volume(int d) { return sphere_monomial_integral(XiExp(d, 0), d); }

/* Residue density integrated over the torus.  Needs the degree -d component,
 * so the expansion must be valid at least that deep. */
inline ResidueValue wres(const SymbolExpansion& S) {
  int d = S.dim();
  if (d < 2) throw std::invalid_argument("wres: dimension must be >= 2");
  const HomoComponent comp = S.component(-d);  // throws FloorError if unknown
  ExactScalar total;
  for (int parity = 0; parity < 2; ++parity) {
    const HomoPart& part = comp.part(parity);
    if (part.is_zero()) continue;
    for (auto& [beta, c] : part.num) {
      ExactScalar sphere = sphere_monomial_integral(beta, d);
      if (sphere.is_zero()) continue;
      TrigPoly tr = c.trace();
      if (tr.is_zero()) continue;
      total += sphere * tr.integral();
    }
  }
  return {std::move(total), "cosphere integral of the depth-" + std::to_string(d) +
                                " symbol component on the " + std::to_string(d) + "-torus"};
}

/* Normalization constant (2 pi)^{-d}. */
inline ExactScalar residue_normalization(int d) {
  return ExactScalar::pi_power(GaussianRational(Rational(BigInt(1), BigInt(1) << d)), -d);
}

/* The normalized integral: c_d times the residue. */
inline ResidueValue ncintegral(const SymbolExpansion& S) {
  ResidueValue r = wres(S);
  return {residue_normalization(S.dim()) * r.value, "normalized " + r.provenance};
}

} // namespace wodzicki

#endif // WODZICKI_RESIDUE_HPP_
