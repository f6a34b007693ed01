#ifndef WODZICKI_FORMS_HPP_
#define WODZICKI_FORMS_HPP_

/* Gauge potentials on the flat spin torus.
 *
 * A one-form is stored by its d coefficient functions a_1..a_d:
 *
 *   A = -i a_k gamma^k   (sum over k),
 *
 * a trigonometric-polynomial-coefficient Clifford field of degree one.  A is
 * selfadjoint as an operator exactly when every a_k is purely
 * imaginary-valued, i.e. when the Fourier data satisfies
 * hat a_k(-l) = -conj(hat a_k(l)); the blade coefficients -i a_k are then
 * real-valued functions.
 *
 * Seeded generation is deterministic: the same (seed, dim, max_freq, modes)
 * always produces the same form, so runs are reproducible from a manifest.
 */

#include "wodzicki/clifford.hpp"
#include "wodzicki/trig_poly.hpp"

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace wodzicki {

struct OneForm {
  int dim = 0;
  std::vector<TrigPoly> a;  // a[k-1] multiplies gamma^k

  OneForm() = default;
  explicit OneForm(int d) : dim(d), a(d, TrigPoly(d)) {
    if (d < 1) throw std::invalid_argument("OneForm: dimension must be positive");
  }
  OneForm(int d, std::vector<TrigPoly> comps) : dim(d), a(std::move(comps)) {
    if (static_cast<int>(a.size()) != d) throw std::invalid_argument("OneForm: need d components");
    for (auto& f : a)
      if (f.dim() != d) throw std::invalid_argument("OneForm: component dimension mismatch");
  }

  bool is_zero() const {
    for (auto& f : a)
      if (!f.is_zero()) return false;
    return true;
  }

  /* Selfadjoint as an operator <=> every a_k purely imaginary-valued. */
  bool is_selfadjoint() const {
    for (auto& f : a)
      if (!f.is_imaginary_valued()) return false;
    return true;
  }

  /* The matrix-valued coefficient -i a_k gamma^k. */
  CliffordElement<TrigPoly> coefficient() const {
    CliffordElement<TrigPoly> out(dim);
    for (int k = 0; k < dim; ++k)
      if (!a[k].is_zero())
        out += CliffordElement<TrigPoly>::generator(dim, k + 1).scaled(a[k].scaled(GaussianRational(0, -1)));
    return out;
  }

  OneForm scaled(const GaussianRational& z) const {
    OneForm out(dim);
    for (int k = 0; k < dim; ++k) out.a[k] = a[k].scaled(z);
    return out;
  }

  friend OneForm operator+(const OneForm& x, const OneForm& y) {
    if (x.dim != y.dim) throw std::invalid_argument("OneForm: dimension mismatch");
    OneForm out(x.dim);
    for (int k = 0; k < x.dim; ++k) out.a[k] = x.a[k] + y.a[k];
    return out;
  }

  std::string str() const {
    std::string out;
    for (int k = 0; k < dim; ++k) out += "a" + std::to_string(k + 1) + " = " + a[k].str() + "\n";
    return out;
  }
};

/* Deterministic selfadjoint one-form: per component, `modes` rounds each add
 * z e^{il.x} - conj(z) e^{-il.x} with |l|_inf <= max_freq, which is purely
 * imaginary-valued by construction. */
inline OneForm random_selfadjoint_one_form(std::uint64_t seed, int dim, int max_freq = 2,
                                           int modes = 3) {
  if (dim < 1) throw std::invalid_argument("random_selfadjoint_one_form: bad dimension");
  if (max_freq < 0 || modes < 1) throw std::invalid_argument("random_selfadjoint_one_form: bad shape");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> freq(-max_freq, max_freq);
  std::uniform_int_distribution<int> num(-3, 3);
  std::uniform_int_distribution<int> den(1, 3);
  OneForm A(dim);
  for (int k = 0; k < dim; ++k) {
    for (int round = 0; round < modes; ++round) {
      Frequency l(dim);
      for (int i = 0; i < dim; ++i) l[i] = freq(rng);
      Rational re(num(rng), den(rng));
      Rational im(num(rng), den(rng));
      GaussianRational z(re, im);
      if (z.is_zero()) z = GaussianRational(0, 1);
      Frequency ml(dim);
      for (int i = 0; i < dim; ++i) ml[i] = -l[i];
      A.a[k] += TrigPoly::mode(dim, l, z);
      A.a[k] += TrigPoly::mode(dim, ml, -z.conj());
    }
  }
  return A;
}

} // namespace wodzicki

#endif // WODZICKI_FORMS_HPP_
