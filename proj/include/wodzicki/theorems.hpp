#ifndef WODZICKI_THEOREMS_HPP_
#define WODZICKI_THEOREMS_HPP_

/* Executable statements about gauge perturbations D + A of the flat-torus
 * Dirac operator: the linear-in-A spectral-action coefficients (tadpoles)
 * vanish, odd and dimension-matching powers of A D^{-1} integrate to zero,
 * the zeta(0) difference reduces to a finite sum of quadratic-type terms,
 * conjugation by D is invisible under the noncommutative integral, and the
 * Einstein-Hilbert term is insensitive to A.  Every check is exact: the
 * engine returns ExactScalar values and the claims are equalities of those.
 */

#include "wodzicki/operators.hpp"
#include "wodzicki/residue.hpp"

#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wodzicki {

struct VerificationReport {
  std::string statement;  // slug naming the verified relation
  std::string inputs;     // digest of the concrete inputs
  std::string relation;   // the asserted relation, human readable
  std::vector<std::pair<std::string, ExactScalar>> values;
  /* Named residual polynomials for symbolic identities: each entry is the
   * fully reduced difference (actual - expected) and must print "0". */
  std::vector<std::pair<std::string, std::string>> reduced;
  bool pass = false;
};

namespace detail {

inline std::string digest_string(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

inline std::vector<OperatorSpec> repeated_one_form(const OneForm& A, int count) {
  std::vector<OperatorSpec> parts;
  for (int i = 0; i < count; ++i) parts.push_back(OperatorSpec::one_form(A));
  return parts;
}

/* A real scalar function derived from one coefficient of a selfadjoint
 * one-form (whose coefficients are imaginary-valued); falls back to the
 * constant 1 when that coefficient vanishes. */
inline TrigPoly derived_real_scalar(const OneForm& A, int index) {
  TrigPoly f = A.a[static_cast<size_t>(index % A.dim)].scaled(GaussianRational(0, 1));
  if (f.is_zero()) f = TrigPoly(A.dim, GaussianRational(1));
  return f;
}

} // namespace detail

/* ---- tadpole values ---- */

/* The coefficient linear in A of the spectral-action term attached to
 * operator order `order` (any integer <= d).  In integral form:
 *   order != 0:  -order * ncint(A D |D|^{-order-2})
 *   order == 0:  -ncint(A D^{-1}).
 * Selfadjointness of A is part of the definition of a gauge perturbation. */
inline ResidueValue tadpole(const OneForm& A, int order) {
  const int d = A.dim;
  if (order > d) throw std::invalid_argument("tadpole: order must not exceed the dimension");
  if (!A.is_selfadjoint()) throw std::invalid_argument("tadpole: perturbation must be selfadjoint");
  if (order == 0) {
    SymbolExpansion S = symbol_product(one_form_symbol(A), dirac_power_symbol(d, -1));
    ResidueValue v = ncintegral(S);
    return {v.value.scaled(GaussianRational(-1)), "negated noncommutative integral of A D^{-1}"};
  }
  SymbolExpansion S = symbol_product(
      one_form_symbol(A), symbol_product(dirac_symbol(d), abs_dirac_power_symbol(d, -order - 2)));
  ResidueValue v = ncintegral(S);
  return {v.value.scaled(GaussianRational(-order)),
          "scaled noncommutative integral of A D |D|^{-order-2}"};
}

/* For the real structure the relevant perturbation is A + J A J^{-1},
 * which cancels identically for commutative coefficients, so the doubled
 * tadpole identity collapses to 0 = 2 * 0; both sides are still computed. */
inline VerificationReport real_perturbation_tadpole(const OneForm& A, int order) {
  VerificationReport rep;
  rep.statement = "tadpole-of-the-doubled-perturbation";
  rep.inputs = detail::digest_string(A.str() + "|order=" + std::to_string(order));
  rep.relation = "tadpole(A + JAJ^{-1}) equals twice tadpole(A); both vanish";
  ExactScalar doubled = tadpole(OneForm(A.dim), order).value;  // A + JAJ^{-1} == 0 pointwise
  ExactScalar twice = tadpole(A, order).value.scaled(GaussianRational(2));
  rep.values.emplace_back("tadpole of doubled perturbation", doubled);
  rep.values.emplace_back("twice the tadpole of A", twice);
  rep.pass = doubled == twice && doubled.is_zero();
  return rep;
}

/* ---- powers of A D^{-1} ---- */

inline ResidueValue ncint_power(const OneForm& A, int n) {
  if (n < 1) throw std::invalid_argument("ncint_power: the exponent must be positive");
  const int d = A.dim;
  std::vector<OperatorSpec> parts;
  parts.reserve(2 * static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    parts.push_back(OperatorSpec::one_form(A));
    parts.push_back(OperatorSpec::dirac_power(d, -1));
  }
  ResidueValue v = ncintegral(realize(OperatorSpec::product(std::move(parts)), -d));
  v.provenance = "noncommutative integral of (A D^{-1})^" + std::to_string(n);
  return v;
}

/* zeta_{D+A}(0) - zeta_D(0): zero in odd dimensions, and in even dimensions
 * the finite sum over k of (1/2k) ncint((A D^{-1})^{2k}) up to k = d/2. */
inline ResidueValue zeta0_difference(const OneForm& A) {
  const int d = A.dim;
  if (d % 2 == 1) return {ExactScalar{}, "zeta(0) is unperturbed in odd dimensions"};
  ExactScalar total;
  for (int k = 1; 2 * k <= d; ++k)
    total = total + ncint_power(A, 2 * k).value.scaled(GaussianRational(Rational(1, 2 * k)));
  return {total, "weighted sum of even powers of A D^{-1} under the noncommutative integral"};
}

/* The explicit Fourier-mode quadratic functional
 *   sum_l sum_{m,n} a_{m,l} a_{n,-l} (l_m l_n - delta_{mn} |l|^2)
 * that the quadratic term ncint((A D^{-1})^2) reproduces on the 4-torus up
 * to the prefactor 8 pi^2 / 3. */
inline ExactScalar quadratic_fourier_functional(const OneForm& A) {
  const int d = A.dim;
  ExactScalar total;
  for (int m = 0; m < d; ++m)
    for (int n = 0; n < d; ++n)
      for (const auto& [l, cm] : A.a[static_cast<size_t>(m)].coeffs()) {
        Frequency neg(l);
        for (int& v : neg) v = -v;
        GaussianRational cn = A.a[static_cast<size_t>(n)].coeff(neg);
        if (cn.is_zero()) continue;
        long dot = static_cast<long>(l[static_cast<size_t>(m)]) * l[static_cast<size_t>(n)];
        long norm = 0;
        if (m == n)
          for (int v : l) norm += static_cast<long>(v) * v;
        total += ExactScalar((cm * cn).scaled(GaussianRational(dot - norm)));
      }
  return total;
}

/* ---- conjugation invariance under the integral ---- */

/* ncint(prod_j a_j alpha(b_j)) == ncint(prod_j a_j b_j) for scalar
 * functions, with alpha the conjugation by D; list length at most d/2. */
inline VerificationReport alpha_trace_identity(const std::vector<TrigPoly>& as,
                                               const std::vector<TrigPoly>& bs) {
  if (as.empty() || as.size() != bs.size())
    throw std::invalid_argument("alpha_trace_identity: need equally sized, nonempty lists");
  const int d = as[0].dim();
  const int k = static_cast<int>(as.size());
  for (const TrigPoly& f : as)
    if (f.dim() != d) throw std::invalid_argument("alpha_trace_identity: dimension mismatch");
  for (const TrigPoly& f : bs)
    if (f.dim() != d) throw std::invalid_argument("alpha_trace_identity: dimension mismatch");
  if (2 * k > d) throw std::invalid_argument("alpha_trace_identity: list length must be at most d/2");

  const int floor = -d - 2 * k;
  SymbolExpansion lhs =
      symbol_product(multiplication_symbol(as[0]), alpha_conjugation(bs[0], floor));
  TrigPoly plain = as[0] * bs[0];
  for (int j = 1; j < k; ++j) {
    lhs = symbol_product(
        lhs, symbol_product(multiplication_symbol(as[static_cast<size_t>(j)]),
                            alpha_conjugation(bs[static_cast<size_t>(j)], floor)));
    plain = plain * (as[static_cast<size_t>(j)] * bs[static_cast<size_t>(j)]);
  }
  ExactScalar left = ncintegral(lhs).value;
  ExactScalar right = ncintegral(multiplication_symbol(plain)).value;

  VerificationReport rep;
  rep.statement = "conjugation-by-dirac-invisible-under-integral";
  std::string desc;
  for (const TrigPoly& f : as) desc += f.str() + ";";
  for (const TrigPoly& f : bs) desc += f.str() + ";";
  rep.inputs = detail::digest_string(desc);
  rep.relation = "ncint(prod a_j (D b_j D^{-1})) == ncint(prod a_j b_j)";
  rep.values.emplace_back("conjugated product", left);
  rep.values.emplace_back("plain product", right);
  rep.pass = left == right;
  return rep;
}

/* ---- Einstein-Hilbert invariance ---- */

/* Contracting one gamma through a length-3 word loses dimension:
 * sum_nu gamma^mu gamma^nu gamma^tau gamma_nu == (2-d) gamma^mu gamma^tau,
 * checked as an identity of Clifford elements (hence of traces). */
inline VerificationReport clifford_contraction_identity(int d) {
  using CE = CliffordElement<GaussianRational>;
  VerificationReport rep;
  rep.statement = "gamma-contraction-through-three-letter-words";
  rep.inputs = detail::digest_string("d=" + std::to_string(d));
  rep.relation = "sum_nu g^mu g^nu g^tau g_nu == (2-d) g^mu g^tau for all mu, tau";
  rep.pass = true;
  for (int mu = 1; mu <= d; ++mu)
    for (int tau = 1; tau <= d; ++tau) {
      CE sum = CE::scalar(d, GaussianRational(0));
      for (int nu = 1; nu <= d; ++nu)
        sum = sum + CE::generator(d, mu) * CE::generator(d, nu) * CE::generator(d, tau) *
                        CE::generator(d, nu);
      CE want = (CE::generator(d, mu) * CE::generator(d, tau)).scaled(GaussianRational(2 - d));
      rep.pass = rep.pass && sum == want;
    }
  rep.values.emplace_back("dimension", ExactScalar(GaussianRational(d)));
  return rep;
}

/* ncint(|D+A|^{-d+2}) == ncint(|D|^{-d+2}): the order -d+2 term of the
 * spectral action ignores the gauge perturbation.  Even d; the negative
 * even power is realized as the parametrix of the corresponding positive
 * power of (D+A)^2, which is an exact polynomial symbol. */
inline VerificationReport einstein_hilbert_invariance(const OneForm& A) {
  const int d = A.dim;
  if (d % 2 != 0)
    throw std::invalid_argument("einstein_hilbert_invariance: even dimension required");

  ExactScalar lhs, rhs;
  if (d == 2) {
    lhs = ncintegral(identity_symbol(d)).value;
    rhs = lhs;
  } else {
    SymbolExpansion DA = perturbed_dirac_symbol(A);
    SymbolExpansion P2 = symbol_product(DA, DA);
    SymbolExpansion P2m = P2;
    for (int i = 1; i < (d - 2) / 2; ++i) P2m = symbol_product(P2m, P2);
    lhs = ncintegral(parametrix(P2m, -d)).value;
    rhs = ncintegral(abs_dirac_power_symbol(d, 2 - d)).value;
  }

  VerificationReport rep;
  rep.statement = "einstein-hilbert-term-ignores-the-perturbation";
  rep.inputs = detail::digest_string(A.str());
  rep.relation = "ncint(|D+A|^{-d+2}) == ncint(|D|^{-d+2}) (both vanish on the flat torus)";
  rep.values.emplace_back("perturbed", lhs);
  rep.values.emplace_back("unperturbed", rhs);
  rep.pass = lhs == rhs && lhs.is_zero();
  return rep;
}

/* ---- parity, reality, and closed-form suite ---- */

/* Reality of the gauge integrals, vanishing of the odd/parity-forbidden
 * cases, inertness of multiplication-type products against the phase
 * D |D|^{-1}, absence of subleading terms in exact Dirac powers, and the
 * quadratic closed forms evaluated against the cosphere trace formula. */
inline VerificationReport parity_reality_suite(const OneForm& A, int k, int l) {
  const int d = A.dim;
  if (!A.is_selfadjoint())
    throw std::invalid_argument("parity_reality_suite: A must be selfadjoint");
  if (k < 1 || l < 1) throw std::invalid_argument("parity_reality_suite: powers must be positive");

  VerificationReport rep;
  rep.statement = "parity-and-reality-of-gauge-integrals";
  rep.inputs = detail::digest_string(A.str() + "|k=" + std::to_string(k) +
                                     "|l=" + std::to_string(l));
  rep.relation = "listed integrals real; parity-forbidden integrals zero; closed forms exact";
  rep.pass = true;
  auto record = [&rep](const std::string& name, const ExactScalar& v, bool ok) {
    rep.values.emplace_back(name, v);
    rep.pass = rep.pass && ok;
  };
  auto ncint_of = [&](std::vector<OperatorSpec> parts) {
    return ncintegral(realize(OperatorSpec::product(std::move(parts)), -d)).value;
  };

  // Reality family: every integral of a word in the selfadjoint A and
  // powers of D, |D| is a real multiple of a power of pi.
  {
    auto parts = detail::repeated_one_form(A, l);
    parts.push_back(OperatorSpec::dirac_power(d, -k));
    ExactScalar v = ncint_of(std::move(parts));
    record("real: A^l D^-k", v, v.is_real());
  }
  {
    ExactScalar v = ncint_power(A, k).value;
    record("real: (A D^-1)^k", v, v.is_real());
  }
  {
    auto parts = detail::repeated_one_form(A, l);
    parts.push_back(OperatorSpec::abs_power(d, -k));
    ExactScalar v = ncint_of(std::move(parts));
    record("real: A^l |D|^-k", v, v.is_real());
  }
  {
    auto parts = detail::repeated_one_form(A, l);
    parts.push_back(OperatorSpec::dirac_power(d, 1));
    parts.push_back(OperatorSpec::abs_power(d, -k));
    ExactScalar v = ncint_of(std::move(parts));
    record("real: A^l D |D|^-k", v, v.is_real());
  }
  if (d % 2 == 0) {
    auto parts = detail::repeated_one_form(A, l);
    parts.push_back(OperatorSpec::abs_power(d, -k));
    SymbolExpansion base = realize(OperatorSpec::product(std::move(parts)), -d);
    SymbolExpansion chiS = multiplication_symbol(chirality<TrigPoly>(d));
    ExactScalar v = ncintegral(symbol_product(chiS, base)).value;
    record("real: chi A^l |D|^-k", v, v.is_real());
  }

  // Vanishing family: a single A against any inverse power.
  for (int q = 1; q <= d; ++q) {
    {
      std::vector<OperatorSpec> parts{OperatorSpec::one_form(A), OperatorSpec::abs_power(d, -q)};
      ExactScalar v = ncint_of(std::move(parts));
      record("zero: A |D|^-" + std::to_string(q), v, v.is_zero());
    }
    {
      std::vector<OperatorSpec> parts{OperatorSpec::one_form(A), OperatorSpec::dirac_power(d, -q)};
      ExactScalar v = ncint_of(std::move(parts));
      record("zero: A D^-" + std::to_string(q), v, v.is_zero());
    }
  }

  // Multiplication-type words built from the algebra and its D-commutators
  // give zero against odd-shifted inverse powers, with or without the
  // phase D |D|^{-1}.
  {
    TrigPoly b = detail::derived_real_scalar(A, 0);
    TrigPoly a = detail::derived_real_scalar(A, d - 1);
    SymbolExpansion comm = symbol_product(dirac_symbol(d), multiplication_symbol(b)) -
                           symbol_product(multiplication_symbol(b), dirac_symbol(d));
    SymbolExpansion B1 = symbol_product(multiplication_symbol(a), comm);
    SymbolExpansion B2 = multiplication_symbol(a * b);
    SymbolExpansion F = symbol_product(dirac_symbol(d), abs_dirac_power_symbol(d, -1));
    for (int odd = 1; odd <= 3; odd += 2)
      for (int which = 0; which < 2; ++which) {
        const SymbolExpansion& B = which == 0 ? B1 : B2;
        std::string tag = which == 0 ? "a[D,b]" : "ab";
        ExactScalar v =
            ncintegral(symbol_product(B, abs_dirac_power_symbol(d, odd - d), -d)).value;
        record("zero: " + tag + " |D|^" + std::to_string(odd - d), v, v.is_zero());
        ExactScalar vf =
            ncintegral(
                symbol_product(B, symbol_product(F, abs_dirac_power_symbol(d, odd - d)), -d))
                .value;
        record("zero: " + tag + " F |D|^" + std::to_string(odd - d), vf, vf.is_zero());
      }
  }

  // Exact integer powers of D carry no subleading component at all.
  for (int kk = 1; kk <= 4; ++kk) {
    bool z = dirac_power_symbol(d, kk).component(kk - 1).is_zero() &&
             dirac_power_symbol(d, -kk).component(-kk - 1).is_zero();
    record("no subleading term in D^" + std::to_string(kk) + " and D^-" + std::to_string(kk),
           ExactScalar{}, z);
  }

  // Quadratic closed forms: the engine value of ncint(M |D|^{-d}) for a
  // multiplication word M equals c_d Vol(S^{d-1}) times the integrated
  // pointwise Clifford trace of M.
  {
    ExactScalar scale = residue_normalization(d) * sphere_volume(d);
    {
      std::vector<OperatorSpec> parts{OperatorSpec::one_form(A), OperatorSpec::one_form(A),
                                      OperatorSpec::abs_power(d, -d)};
      ExactScalar lhs = ncint_of(std::move(parts));
      Coeff m0 = A.coefficient() * A.coefficient();
      ExactScalar rhs = scale * m0.trace().integral();
      record("closed form: A^2 |D|^-d", lhs, lhs == rhs);
      record("closed form target: A^2 |D|^-d", rhs, true);
    }
    if (d % 2 == 0) {
      // companion form with cyclically shifted coefficients keeps the
      // chirality-twisted product nonscalar
      OneForm B = A;
      for (int j = 0; j < d; ++j) B.a[static_cast<size_t>(j)] = A.a[static_cast<size_t>((j + 1) % d)];
      std::vector<OperatorSpec> parts{OperatorSpec::one_form(A), OperatorSpec::one_form(B),
                                      OperatorSpec::abs_power(d, -d)};
      SymbolExpansion base = realize(OperatorSpec::product(std::move(parts)), -d);
      SymbolExpansion chiS = multiplication_symbol(chirality<TrigPoly>(d));
      ExactScalar lhs = ncintegral(symbol_product(chiS, base)).value;
      Coeff m0 = chirality<TrigPoly>(d) * A.coefficient() * B.coefficient();
      ExactScalar rhs = scale * m0.trace().integral();
      record("closed form: chi A A' |D|^-d", lhs, lhs == rhs);
      record("closed form target: chi A A' |D|^-d", rhs, true);
    }
  }

  return rep;
}

} // namespace wodzicki

#endif // WODZICKI_THEOREMS_HPP_
