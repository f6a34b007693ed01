#ifndef WODZICKI_TRIG_POLY_HPP_
#define WODZICKI_TRIG_POLY_HPP_

/* Trigonometric polynomials on the d-torus, stored by Fourier coefficient:
 *
 *   f(x) = sum_l c_l e^{i l.x},   l in Z^d,  c_l Gaussian rational.
 *
 * These are the x-dependent coefficient functions of all symbols.  The
 * pointwise complex conjugate (= adjoint of the multiplication operator)
 * maps c_l -> conj(c_{-l}); f is real-valued iff conj(f) == f and purely
 * imaginary-valued iff conj(f) == -f.  d/dx^k maps c_l -> i l_k c_l, and the
 * normalized torus integral of f is (2 pi)^d c_0.
 */

#include "wodzicki/exact_scalar.hpp"
#include "wodzicki/rational.hpp"
#include "wodzicki/ring_traits.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace wodzicki {

using Frequency = std::vector<int>;

class TrigPoly {
 public:
  TrigPoly() : dim_(0) {}
  explicit TrigPoly(int dim) : dim_(dim) {}
  TrigPoly(int dim, GaussianRational constant) : dim_(dim) {
    if (!constant.is_zero()) coeffs_[Frequency(dim, 0)] = std::move(constant);
  }

  static TrigPoly mode(int dim, Frequency l, GaussianRational c) {
    TrigPoly f(dim);
    if (static_cast<int>(l.size()) != dim) throw std::invalid_argument("TrigPoly::mode frequency size");
    if (!c.is_zero()) f.coeffs_[std::move(l)] = std::move(c);
    return f;
  }

  int dim() const { return dim_; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::map<Frequency, GaussianRational>& coeffs() const { return coeffs_; }

  GaussianRational coeff(const Frequency& l) const {
    auto it = coeffs_.find(l);
    return it == coeffs_.end() ? GaussianRational() : it->second;
  }

  bool is_constant() const {
    return coeffs_.empty() || (coeffs_.size() == 1 && coeffs_.begin()->first == Frequency(dim_, 0));
  }

  /* Pointwise complex conjugate. */
  TrigPoly conj() const {
    TrigPoly f(dim_);
    for (auto& [l, c] : coeffs_) {
      Frequency ml(dim_);
      for (int k = 0; k < dim_; ++k) ml[k] = -l[k];
      f.coeffs_[std::move(ml)] = c.conj();
    }
    return f;
  }

  bool is_real_valued() const { return conj() == *this; }
  bool is_imaginary_valued() const { return conj() == -*this; }
  /* As a multiplication operator, selfadjoint == real-valued. */
  bool is_selfadjoint() const { return is_real_valued(); }

  TrigPoly derivative(int k) const {
    check_axis(k);
    TrigPoly f(dim_);
    for (auto& [l, c] : coeffs_)
      if (l[k] != 0) f.coeffs_[l] = c * GaussianRational(0, l[k]);
    return f;
  }

  /* integral over [0,2pi]^d = (2 pi)^d * c_0 */
  ExactScalar integral() const {
    GaussianRational c0 = coeff(Frequency(dim_, 0));
    BigInt two_d = BigInt(1) << dim_;
    return ExactScalar::pi_power(c0 * GaussianRational(Rational(two_d)), dim_);
  }

  TrigPoly operator-() const {
    TrigPoly f(dim_);
    for (auto& [l, c] : coeffs_) f.coeffs_[l] = -c;
    return f;
  }

  TrigPoly& operator+=(const TrigPoly& o) {
    require_same_dim(o);
    for (auto& [l, c] : o.coeffs_) add_term(l, c);
    return *this;
  }
  TrigPoly& operator-=(const TrigPoly& o) {
    require_same_dim(o);
    for (auto& [l, c] : o.coeffs_) add_term(l, -c);
    return *this;
  }
  TrigPoly& operator*=(const TrigPoly& o) {
    require_same_dim(o);
    TrigPoly out(dim_);
    for (auto& [l1, c1] : coeffs_)
      for (auto& [l2, c2] : o.coeffs_) {
        Frequency l(dim_);
        for (int k = 0; k < dim_; ++k) l[k] = l1[k] + l2[k];
        out.add_term(l, c1 * c2);
      }
    coeffs_ = std::move(out.coeffs_);
    return *this;
  }

  friend TrigPoly operator+(TrigPoly a, const TrigPoly& b) { return a += b; }
  friend TrigPoly operator-(TrigPoly a, const TrigPoly& b) { return a -= b; }
  friend TrigPoly operator*(TrigPoly a, const TrigPoly& b) { return a *= b; }
  friend bool operator==(const TrigPoly& a, const TrigPoly& b) {
    return a.dim_ == b.dim_ && a.coeffs_ == b.coeffs_;
  }
  friend bool operator!=(const TrigPoly& a, const TrigPoly& b) { return !(a == b); }

  TrigPoly scaled(const GaussianRational& z) const {
    TrigPoly f(dim_);
    if (z.is_zero()) return f;
    for (auto& [l, c] : coeffs_) f.coeffs_[l] = c * z;
    return f;
  }

  std::string str() const {
    if (coeffs_.empty()) return "0";
    std::string out;
    for (auto& [l, c] : coeffs_) {
      if (!out.empty()) out += " + ";
      out += "(" + c.str() + ")";
      bool flat = true;
      for (int v : l)
        if (v != 0) flat = false;
      if (!flat) {
        out += "*e^(i[";
        for (size_t k = 0; k < l.size(); ++k) out += (k ? "," : "") + std::to_string(l[k]);
        out += "].x)";
      }
    }
    return out;
  }

 private:
  void check_axis(int k) const {
    if (k < 0 || k >= dim_) throw std::out_of_range("TrigPoly axis");
  }
  void require_same_dim(const TrigPoly& o) const {
    if (dim_ != o.dim_) throw std::invalid_argument("TrigPoly dimension mismatch");
  }
  void add_term(const Frequency& l, const GaussianRational& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = coeffs_.try_emplace(l, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) coeffs_.erase(it);
    }
  }

  int dim_;
  std::map<Frequency, GaussianRational> coeffs_;
};

inline TrigPoly conj(const TrigPoly& f) { return f.conj(); }

template <>
struct RingTraits<TrigPoly> {
  static TrigPoly zero(int dim) { return TrigPoly(dim); }
  static TrigPoly scalar(int dim, GaussianRational z) { return TrigPoly(dim, std::move(z)); }
};

} // namespace wodzicki

#endif // WODZICKI_TRIG_POLY_HPP_
