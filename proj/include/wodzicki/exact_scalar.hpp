#ifndef WODZICKI_EXACT_SCALAR_HPP_
#define WODZICKI_EXACT_SCALAR_HPP_

/* Exact scalars of the form  sum_m  q_m * pi^(m/2)  with q_m Gaussian
 * rational and m ranging over (finitely many) integers.  pi is treated as a
 * formal transcendental unit, so equality of two scalars is equality of the
 * coefficient maps: all closed-form values produced by cosphere integrals,
 * volume factors and normalization constants live here without rounding.
 */

#include "wodzicki/rational.hpp"

#include <cmath>
#include <map>
#include <string>

namespace wodzicki {

class ExactScalar {
 public:
  ExactScalar() = default;
  ExactScalar(GaussianRational c) {
    if (!c.is_zero()) terms_[0] = std::move(c);
  }
  ExactScalar(long n) : ExactScalar(GaussianRational(n)) {}

  /* c * pi^(half_power/2) */
  static ExactScalar pi_half_power(GaussianRational c, int half_power) {
    ExactScalar s;
    if (!c.is_zero()) s.terms_[half_power] = std::move(c);
    return s;
  }
  /* c * pi^k */
  static ExactScalar pi_power(GaussianRational c, int k) { return pi_half_power(std::move(c), 2 * k); }

  bool is_zero() const { return terms_.empty(); }
  bool is_real() const {
    for (auto& [m, c] : terms_)
      if (c.im != 0) return false;
    return true;
  }
  bool is_imaginary() const {
    for (auto& [m, c] : terms_)
      if (c.re != 0) return false;
    return true;
  }

  const std::map<int, GaussianRational>& terms() const { return terms_; }

  /* Coefficient of pi^(m/2). */
  GaussianRational coeff(int half_power) const {
    auto it = terms_.find(half_power);
    return it == terms_.end() ? GaussianRational() : it->second;
  }

  ExactScalar conj() const {
    ExactScalar s;
    for (auto& [m, c] : terms_) s.terms_[m] = c.conj();
    return s;
  }

  ExactScalar operator-() const {
    ExactScalar s;
    for (auto& [m, c] : terms_) s.terms_[m] = -c;
    return s;
  }

  ExactScalar& operator+=(const ExactScalar& o) {
    for (auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  ExactScalar& operator-=(const ExactScalar& o) {
    for (auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  ExactScalar& operator*=(const ExactScalar& o) {
    ExactScalar out;
    for (auto& [m1, c1] : terms_)
      for (auto& [m2, c2] : o.terms_) out.add_term(m1 + m2, c1 * c2);
    terms_ = std::move(out.terms_);
    return *this;
  }

  friend ExactScalar operator+(ExactScalar a, const ExactScalar& b) { return a += b; }
  friend ExactScalar operator-(ExactScalar a, const ExactScalar& b) { return a -= b; }
  friend ExactScalar operator*(ExactScalar a, const ExactScalar& b) { return a *= b; }
  friend bool operator==(const ExactScalar& a, const ExactScalar& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const ExactScalar& a, const ExactScalar& b) { return !(a == b); }

  ExactScalar scaled(const GaussianRational& z) const {
    ExactScalar s;
    if (z.is_zero()) return s;
    for (auto& [m, c] : terms_) s.terms_[m] = c * z;
    return s;
  }

  /* The single conversion to floating point, shared by every numeric
   * comparison in the test and oracle layers. */
  double to_double() const {
    double v = 0;
    for (auto& [m, c] : terms_) {
      if (c.im != 0) throw std::domain_error("ExactScalar::to_double on non-real value");
      v += wodzicki::to_double(c.re) * std::pow(M_PI, m / 2.0);
    }
    return v;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto& [m, c] : terms_) {
      if (!out.empty()) out += " + ";
      out += "(" + c.str() + ")";
      if (m != 0) {
        out += "*pi";
        if (m != 2) {
          out += "^";
          if (m % 2 == 0)
            out += std::to_string(m / 2);
          else
            out += "(" + std::to_string(m) + "/2)";
        }
      }
    }
    return out;
  }

 private:
  void add_term(int m, const GaussianRational& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.try_emplace(m, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  std::map<int, GaussianRational> terms_;
};

inline ExactScalar conj(const ExactScalar& s) { return s.conj(); }

} // namespace wodzicki

#endif // WODZICKI_EXACT_SCALAR_HPP_
