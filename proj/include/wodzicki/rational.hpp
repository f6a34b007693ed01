#ifndef WODZICKI_RATIONAL_HPP_
#define WODZICKI_RATIONAL_HPP_

/* Exact rational and Gaussian-rational arithmetic.
 *
 * Every coefficient in the engine is a Gaussian rational a+bi with a,b in
 * lowest terms (positive denominators are maintained by the backend).  All
 * operations are exact; nothing in this header touches floating point except
 * the explicit to_double conversions used by the numerical oracle.
 */

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace wodzicki {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline std::string to_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

inline double to_double(const Rational& r) { return r.template convert_to<double>(); }

/* Parses "p", "-p" or "p/q". */
inline Rational rational_from_string(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(BigInt(s));
  BigInt num(s.substr(0, slash)), den(s.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("rational_from_string: zero denominator");
  return Rational(num, den);
}

struct GaussianRational {
  Rational re{0};
  Rational im{0};

  GaussianRational() = default;
  GaussianRational(Rational r) : re(std::move(r)) {}
  GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
  GaussianRational(long r) : re(r) {}
  GaussianRational(long r, long i) : re(r), im(i) {}

  static GaussianRational unit_i() { return GaussianRational(Rational(0), Rational(1)); }

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }

  GaussianRational conj() const { return {re, -im}; }

  GaussianRational operator-() const { return {-re, -im}; }

  GaussianRational& operator+=(const GaussianRational& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    Rational nre = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(nre);
    return *this;
  }

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

  GaussianRational inverse() const {
    Rational n = re * re + im * im;
    if (n == 0) throw std::domain_error("GaussianRational::inverse of zero");
    return {re / n, -im / n};
  }
  GaussianRational& operator/=(const GaussianRational& o) { return *this *= o.inverse(); }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }

  GaussianRational scaled(const GaussianRational& z) const { return *this * z; }

  /* i^k for any integer k. */
  static GaussianRational i_power(long k) {
    switch (((k % 4) + 4) % 4) {
      case 0: return GaussianRational(1);
      case 1: return unit_i();
      case 2: return GaussianRational(-1);
      default: return -unit_i();
    }
  }

  std::string str() const {
    if (is_zero()) return "0";
    std::string out;
    if (re != 0) out += to_string(re);
    if (im != 0) {
      if (!out.empty() && im > 0) out += "+";
      if (im == -1)
        out += "-i";
      else if (im == 1)
        out += "i";
      else
        out += to_string(im) + "i";
    }
    return out;
  }
};

inline GaussianRational conj(const GaussianRational& z) { return z.conj(); }

} // namespace wodzicki

#endif // WODZICKI_RATIONAL_HPP_
