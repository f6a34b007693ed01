#ifndef WODZICKI_OPERATORS_HPP_
#define WODZICKI_OPERATORS_HPP_

/* Symbol builders for the concrete operators on a flat spin torus.
 *
 * On the flat d-torus every building block has a finite exact expansion:
 *
 *   D            gamma(xi)                       (one component, degree 1)
 *   D^k          |xi|^k Id      for even k       (one component, degree k)
 *                gamma(xi) |xi|^{k-1} for odd k
 *   |D|^k        |xi|^k Id                       (one component, degree k)
 *   mult. by f   f                               (one component, degree 0)
 *   one-form A   -i a_k gamma^k                  (one component, degree 0)
 *
 * These exact forms are fast paths; the test suite checks each against the
 * generic parametrix / square-root constructions.  OperatorSpec is a small
 * composable description (products of the above) that `realize` turns into a
 * symbol expansion, threading the floor through intermediate products so a
 * requested depth is honoured end to end.
 */

#include "wodzicki/forms.hpp"
#include "wodzicki/symbol.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wodzicki {

/* gamma(xi) = sum_i gamma^i xi_i as a polynomial in xi. */
inline XiPoly gamma_xi_poly(int dim) {
  XiPoly p;
  for (int i = 1; i <= dim; ++i) {
    XiExp e(dim, 0);
    e[i - 1] = 1;
    xipoly_add_term(p, e, Coeff::generator(dim, i));
  }
  return p;
}

inline SymbolExpansion identity_symbol(int dim) {
  HomoComponent c(dim, 0);
  c.add_fraction(XiExp(dim, 0), Coeff::scalar(dim, GaussianRational(1)), 0);
  SymbolExpansion S(dim, 0, kFloorUnbounded);
  S.set_component(std::move(c));
  return S;
}

inline SymbolExpansion dirac_symbol(int dim) {
  HomoComponent c(dim, 1);
  c.add_part_raw(0, gamma_xi_poly(dim));
  SymbolExpansion S(dim, 1, kFloorUnbounded);
  S.set_component(std::move(c));
  return S;
}

inline SymbolExpansion multiplication_symbol(const Coeff& f) {
  int dim = f.dim();
  HomoComponent c(dim, 0);
  c.add_fraction(XiExp(dim, 0), f, 0);
  SymbolExpansion S(dim, 0, kFloorUnbounded);
  S.set_component(std::move(c));
  return S;
}

inline SymbolExpansion multiplication_symbol(const TrigPoly& f) {
  return multiplication_symbol(Coeff::scalar(f.dim(), f));
}

inline SymbolExpansion one_form_symbol(const OneForm& A) {
  return multiplication_symbol(A.coefficient());
}

/* D^k for any integer k; k = 0 gives the identity. */
inline SymbolExpansion dirac_power_symbol(int dim, int k) {
  if (k == 0) return identity_symbol(dim);
  HomoComponent c(dim, k);
  if (k % 2 == 0) {
    int np = k >= 0 ? 0 : -k;
    c.add_part_raw(np, norm_sq_power_poly(dim, (k + np) / 2));
  } else {
    int np = k >= 1 ? 0 : 1 - k;
    XiPoly num = gamma_xi_poly(dim);
    if (k >= 1) num = xipoly_mul(num, norm_sq_power_poly(dim, (k - 1) / 2), dim);
    c.add_part_raw(np, std::move(num));
  }
  SymbolExpansion S(dim, k, kFloorUnbounded);
  S.set_component(std::move(c));
  return S;
}

/* |D|^k = |xi|^k Id for any integer k; odd k introduces the odd-parity
 * denominator exponent. */
inline SymbolExpansion abs_dirac_power_symbol(int dim, int k) {
  if (k % 2 == 0) return dirac_power_symbol(dim, k);
  HomoComponent c(dim, k);
  int np = k >= 1 ? 1 : -k;
  c.add_part_raw(np, norm_sq_power_poly(dim, (k + np) / 2));
  SymbolExpansion S(dim, k, kFloorUnbounded);
  S.set_component(std::move(c));
  return S;
}

inline SymbolExpansion laplace_symbol(int dim) { return dirac_power_symbol(dim, 2); }

/* D + A for a one-form A. */
inline SymbolExpansion perturbed_dirac_symbol(const OneForm& A) {
  SymbolExpansion S = dirac_symbol(A.dim);
  if (!A.is_zero()) {
    HomoComponent c(A.dim, 0);
    c.add_fraction(XiExp(A.dim, 0), A.coefficient(), 0);
    S.set_component(std::move(c));
  }
  return S;
}

/* The inner automorphism b |-> D b D^{-1} on a scalar function b, with the
 * inverse supplied by the parametrix construction.  On the flat torus the
 * result is exact:  b - i gamma^m (d_m b) gamma(xi) / |xi|^2. */
inline SymbolExpansion alpha_conjugation(const TrigPoly& b, int floor) {
  int dim = b.dim();
  SymbolExpansion D = dirac_symbol(dim);
  SymbolExpansion Db = symbol_product(D, multiplication_symbol(b));
  SymbolExpansion Dinv = parametrix(D, floor - 1);
  return symbol_product(Db, Dinv);
}

/* ---- composable operator descriptions ---- */

struct OperatorSpec {
  enum class Kind { dirac, multiplication, one_form, dirac_power, abs_power, product };

  Kind kind = Kind::dirac;
  int dim = 0;
  int exponent = 0;                  // dirac_power / abs_power
  Coeff factor;                      // multiplication
  OneForm form;                      // one_form
  std::vector<OperatorSpec> parts;   // product

  static OperatorSpec dirac(int dim) {
    OperatorSpec s;
    s.kind = Kind::dirac;
    s.dim = dim;
    return s;
  }
  static OperatorSpec multiplication(Coeff f) {
    OperatorSpec s;
    s.kind = Kind::multiplication;
    s.dim = f.dim();
    s.factor = std::move(f);
    return s;
  }
  static OperatorSpec multiplication(const TrigPoly& f) {
    return multiplication(Coeff::scalar(f.dim(), f));
  }
  static OperatorSpec one_form(OneForm A) {
    OperatorSpec s;
    s.kind = Kind::one_form;
    s.dim = A.dim;
    s.form = std::move(A);
    return s;
  }
  static OperatorSpec dirac_power(int dim, int k) {
    OperatorSpec s;
    s.kind = Kind::dirac_power;
    s.dim = dim;
    s.exponent = k;
    return s;
  }
  static OperatorSpec abs_power(int dim, int k) {
    OperatorSpec s;
    s.kind = Kind::abs_power;
    s.dim = dim;
    s.exponent = k;
    return s;
  }
  static OperatorSpec product(std::vector<OperatorSpec> factors) {
    if (factors.empty()) throw std::invalid_argument("OperatorSpec::product: empty factor list");
    OperatorSpec s;
    s.kind = Kind::product;
    s.dim = factors.front().dim;
    for (auto& f : factors)
      if (f.dim != s.dim) throw std::invalid_argument("OperatorSpec::product: dimension mismatch");
    s.parts = std::move(factors);
    return s;
  }

  /* Order of the operator the spec describes. */
  int top_degree() const {
    switch (kind) {
      case Kind::dirac: return 1;
      case Kind::multiplication:
      case Kind::one_form: return 0;
      case Kind::dirac_power:
      case Kind::abs_power: return exponent;
      case Kind::product: {
        int t = 0;
        for (auto& f : parts) t += f.top_degree();
        return t;
      }
    }
    throw std::logic_error("OperatorSpec::top_degree: unknown kind");
  }
};

/* Build the symbol of a spec.  Atomic specs are exact.  For products the
 * requested floor is threaded through every intermediate composition: a
 * factor or partial product only ever needs to be known down to
 * floor - (sum of the orders of the remaining factors). */
inline SymbolExpansion realize(const OperatorSpec& spec,
                               std::optional<int> want_floor = std::nullopt) {
  switch (spec.kind) {
    case OperatorSpec::Kind::dirac: return dirac_symbol(spec.dim);
    case OperatorSpec::Kind::multiplication: return multiplication_symbol(spec.factor);
    case OperatorSpec::Kind::one_form: return one_form_symbol(spec.form);
    case OperatorSpec::Kind::dirac_power: return dirac_power_symbol(spec.dim, spec.exponent);
    case OperatorSpec::Kind::abs_power: return abs_dirac_power_symbol(spec.dim, spec.exponent);
    case OperatorSpec::Kind::product: break;
  }

  const auto& parts = spec.parts;
  int total_top = spec.top_degree();

  std::vector<int> suffix_top(parts.size() + 1, 0);
  for (size_t i = parts.size(); i-- > 0;)
    suffix_top[i] = suffix_top[i + 1] + parts[i].top_degree();

  auto child_floor = [&](size_t i) -> std::optional<int> {
    if (!want_floor) return std::nullopt;
    return *want_floor - (total_top - parts[i].top_degree());
  };

  SymbolExpansion acc = realize(parts[0], child_floor(0));
  for (size_t i = 1; i < parts.size(); ++i) {
    std::optional<int> step;
    if (want_floor) step = *want_floor - suffix_top[i + 1];
    acc = symbol_product(acc, realize(parts[i], child_floor(i)), step);
  }
  return acc;
}

} // namespace wodzicki

#endif // WODZICKI_OPERATORS_HPP_
