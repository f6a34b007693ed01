#ifndef WODZICKI_CLIFFORD_HPP_
#define WODZICKI_CLIFFORD_HPP_

/* Clifford algebra over a generic commutative coefficient ring R.
 *
 * Generators gamma^1..gamma^d obey  gamma^i gamma^j + gamma^j gamma^i =
 * 2 delta^{ij}, so every element is a sum over ordered products ("blades")
 * gamma^{i1}..gamma^{ik}, i1<..<ik, stored as bitmasks.  The trace is the
 * spinor-representation trace, normalized so that
 *
 *   trace(1) = 2^{floor(d/2)},   trace(any nonempty blade) = 0.
 *
 * For even d this is the trace of the unique irreducible representation;
 * for odd d it is the average over the two inequivalent irreducibles (which
 * kills the top blade as well).  The chirality is
 *
 *   chi = (-i)^{d/2} gamma^1..gamma^d            (d even),
 *
 * and the boundary chirality, anticommuting with gamma^d only, is
 *
 *   chi_b = (-i)^{d/2-1} gamma^1..gamma^{d-1}    (d even).
 */

#include "wodzicki/rational.hpp"
#include "wodzicki/ring_traits.hpp"

#include <bit>
#include <type_traits>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

namespace wodzicki {

using Blade = std::uint32_t;

/* Sign from moving the generators of blade `a` past those of `b` into a
 * single ordered product: (-1)^{#{(i,j) : i in a, j in b, i > j}}. */
inline int blade_reorder_sign(Blade a, Blade b) {
  int swaps = 0;
  a >>= 1;
  while (a != 0) {
    swaps += std::popcount(a & b);
    a >>= 1;
  }
  return (swaps & 1) ? -1 : 1;
}

template <class R>
class CliffordElement {
 public:
  CliffordElement() : dim_(0) {}
  explicit CliffordElement(int dim) : dim_(dim) {}

  static CliffordElement scalar(int dim, R c) {
    CliffordElement x(dim);
    x.add_term(0, std::move(c));
    return x;
  }
  static CliffordElement scalar(int dim, GaussianRational z)
    requires(!std::is_same_v<R, GaussianRational>)
  {
    return scalar(dim, RingTraits<R>::scalar(dim, std::move(z)));
  }
  /* gamma^i, 1-based index. */
  static CliffordElement generator(int dim, int i) {
    if (i < 1 || i > dim) throw std::out_of_range("CliffordElement::generator index");
    CliffordElement x(dim);
    x.add_term(Blade(1) << (i - 1), RingTraits<R>::scalar(dim, GaussianRational(1)));
    return x;
  }
  /* c * gamma^{i1}..gamma^{ik} given by mask bits. */
  static CliffordElement blade(int dim, Blade mask, R c) {
    CliffordElement x(dim);
    if (mask >> dim) throw std::out_of_range("CliffordElement::blade mask");
    x.add_term(mask, std::move(c));
    return x;
  }

  int dim() const { return dim_; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::map<Blade, R>& coeffs() const { return coeffs_; }

  R coeff(Blade mask) const {
    auto it = coeffs_.find(mask);
    return it == coeffs_.end() ? RingTraits<R>::zero(dim_) : it->second;
  }

  void add_term(Blade mask, R c) {
    if (c.is_zero()) return;
    auto it = coeffs_.find(mask);
    if (it == coeffs_.end()) {
      coeffs_.emplace(mask, std::move(c));
    } else {
      it->second += c;
      if (it->second.is_zero()) coeffs_.erase(it);
    }
  }

  CliffordElement operator-() const {
    CliffordElement x(dim_);
    for (auto& [m, c] : coeffs_) x.coeffs_.emplace(m, -c);
    return x;
  }

  CliffordElement& operator+=(const CliffordElement& o) {
    require_same_dim(o);
    for (auto& [m, c] : o.coeffs_) add_term(m, c);
    return *this;
  }
  CliffordElement& operator-=(const CliffordElement& o) {
    require_same_dim(o);
    for (auto& [m, c] : o.coeffs_) add_term(m, -c);
    return *this;
  }
  CliffordElement& operator*=(const CliffordElement& o) {
    require_same_dim(o);
    CliffordElement out(dim_);
    for (auto& [m1, c1] : coeffs_)
      for (auto& [m2, c2] : o.coeffs_) {
        R c = c1 * c2;
        if (blade_reorder_sign(m1, m2) < 0) c = -c;
        out.add_term(m1 ^ m2, std::move(c));
      }
    coeffs_ = std::move(out.coeffs_);
    return *this;
  }

  friend CliffordElement operator+(CliffordElement a, const CliffordElement& b) { return a += b; }
  friend CliffordElement operator-(CliffordElement a, const CliffordElement& b) { return a -= b; }
  friend CliffordElement operator*(CliffordElement a, const CliffordElement& b) { return a *= b; }
  friend bool operator==(const CliffordElement& a, const CliffordElement& b) {
    return a.dim_ == b.dim_ && a.coeffs_ == b.coeffs_;
  }
  friend bool operator!=(const CliffordElement& a, const CliffordElement& b) { return !(a == b); }

  CliffordElement scaled(const GaussianRational& z) const {
    CliffordElement x(dim_);
    if (z.is_zero()) return x;
    for (auto& [m, c] : coeffs_) x.add_term(m, c.scaled(z));
    return x;
  }
  CliffordElement scaled(const R& r) const
    requires(!std::is_same_v<R, GaussianRational>)
  {
    CliffordElement x(dim_);
    if (r.is_zero()) return x;
    for (auto& [m, c] : coeffs_) x.add_term(m, c * r);
    return x;
  }

  /* Spinor trace: 2^{floor(d/2)} * coefficient of the empty blade. */
  R trace() const {
    Rational dimv(BigInt(1) << (dim_ / 2));
    return coeff(0).scaled(GaussianRational(dimv));
  }

  /* Adjoint: conjugate coefficients, reverse each word; since the
   * generators are selfadjoint, reversal contributes (-1)^{k(k-1)/2}. */
  CliffordElement adjoint() const {
    using wodzicki::conj;
    CliffordElement x(dim_);
    for (auto& [m, c] : coeffs_) {
      int k = std::popcount(m);
      R cc = conj(c);
      if (((k * (k - 1) / 2) & 1) != 0) cc = -cc;
      x.add_term(m, std::move(cc));
    }
    return x;
  }

  std::string str() const {
    if (coeffs_.empty()) return "0";
    std::string out;
    for (auto& [m, c] : coeffs_) {
      if (!out.empty()) out += " + ";
      out += "(" + c.str() + ")";
      for (int i = 0; i < dim_; ++i)
        if (m & (Blade(1) << i)) out += "*g" + std::to_string(i + 1);
    }
    return out;
  }

 private:
  void require_same_dim(const CliffordElement& o) const {
    if (dim_ != o.dim_) throw std::invalid_argument("CliffordElement dimension mismatch");
  }

  int dim_;
  std::map<Blade, R> coeffs_;
};

/* chi = (-i)^{d/2} gamma^1..gamma^d, squares to 1, anticommutes with every
 * generator; requires d even. */
template <class R>
CliffordElement<R> chirality(int dim) {
  if (dim % 2 != 0) throw std::domain_error("chirality needs even dimension");
  Blade full = (Blade(1) << dim) - 1;
  return CliffordElement<R>::blade(dim, full,
                                   RingTraits<R>::scalar(dim, GaussianRational::i_power(-(dim / 2))));
}

/* chi_b = (-i)^{d/2-1} gamma^1..gamma^{d-1}: squares to 1, commutes with
 * gamma^1..gamma^{d-1} and anticommutes with gamma^d; requires d even. */
template <class R>
CliffordElement<R> boundary_chirality(int dim) {
  if (dim % 2 != 0) throw std::domain_error("boundary_chirality needs even dimension");
  Blade side = (Blade(1) << (dim - 1)) - 1;
  return CliffordElement<R>::blade(dim, side,
                                   RingTraits<R>::scalar(dim, GaussianRational::i_power(-(dim / 2 - 1))));
}

template <class R>
CliffordElement<R> commutator(const CliffordElement<R>& a, const CliffordElement<R>& b) {
  return a * b - b * a;
}

template <class R>
CliffordElement<R> anticommutator(const CliffordElement<R>& a, const CliffordElement<R>& b) {
  return a * b + b * a;
}

} // namespace wodzicki

#endif // WODZICKI_CLIFFORD_HPP_
