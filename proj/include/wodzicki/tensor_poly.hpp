#ifndef WODZICKI_TENSOR_POLY_HPP_
#define WODZICKI_TENSOR_POLY_HPP_

/* Commutative polynomials over ExactScalar in indexed geometric
 * indeterminates.  These model the curvature-type data entering the
 * heat-coefficient identities on a manifold with boundary:
 *
 *   a_mu                gauge potential components
 *   F_{mu nu}           field strength, antisymmetric
 *   dF_{mu nu}          normal derivative of F, antisymmetric in (mu,nu)
 *   ddF_{mu nu}         second normal derivative of F, antisymmetric
 *   tau                 scalar curvature
 *   R_{i j k l}         Riemann tensor, antisymmetric in (i,j) and (k,l)
 *   L_{a b}             second fundamental form
 *   Gamma^k_{b i}       frame connection (nabla_b e_i, e_k), antisym in (k,i)
 *   dGamma^k_{b i}      normal derivative of Gamma, antisym in (k,i)
 *
 * Symmetry relations are applied eagerly when an atom is built, so equal
 * polynomials have equal representations and the zero test is trivial.
 */

#include "wodzicki/exact_scalar.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <iterator>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace wodzicki {

enum class TensorFamily : std::uint8_t { a, F, dF, ddF, tau, R, L, Gamma, dGamma };

inline const char* family_name(TensorFamily f) {
  switch (f) {
    case TensorFamily::a: return "a";
    case TensorFamily::F: return "F";
    case TensorFamily::dF: return "dF";
    case TensorFamily::ddF: return "ddF";
    case TensorFamily::tau: return "tau";
    case TensorFamily::R: return "R";
    case TensorFamily::L: return "L";
    case TensorFamily::Gamma: return "Gamma";
    default: return "dGamma";
  }
}

inline int family_arity(TensorFamily f) {
  switch (f) {
    case TensorFamily::a: return 1;
    case TensorFamily::F:
    case TensorFamily::dF:
    case TensorFamily::ddF:
    case TensorFamily::L: return 2;
    case TensorFamily::tau: return 0;
    case TensorFamily::R: return 4;
    default: return 3; // Gamma, dGamma
  }
}

struct TensorAtom {
  TensorFamily family{TensorFamily::tau};
  std::array<std::int8_t, 4> idx{0, 0, 0, 0};

  friend bool operator<(const TensorAtom& x, const TensorAtom& y) {
    if (x.family != y.family) return x.family < y.family;
    return x.idx < y.idx;
  }
  friend bool operator==(const TensorAtom& x, const TensorAtom& y) {
    return x.family == y.family && x.idx == y.idx;
  }

  std::string str() const {
    std::string out = family_name(family);
    int n = family_arity(family);
    if (n > 0) {
      out += "(";
      for (int k = 0; k < n; ++k) out += (k ? "," : "") + std::to_string(int(idx[k]));
      out += ")";
    }
    return out;
  }
};

/* Canonicalizes an atom: returns sign in {-1,0,+1}; atom is rewritten in
 * place when the sign is nonzero. */
inline int canonicalize_atom(TensorAtom& t) {
  auto antisym_pair = [&](int p, int q) -> int {
    if (t.idx[p] == t.idx[q]) return 0;
    if (t.idx[p] > t.idx[q]) {
      std::swap(t.idx[p], t.idx[q]);
      return -1;
    }
    return 1;
  };
  switch (t.family) {
    case TensorFamily::F:
    case TensorFamily::dF:
    case TensorFamily::ddF:
      return antisym_pair(0, 1);
    case TensorFamily::R: {
      int s1 = antisym_pair(0, 1);
      if (s1 == 0) return 0;
      int s2 = antisym_pair(2, 3);
      return s1 * s2;
    }
    case TensorFamily::Gamma:
    case TensorFamily::dGamma:
      /* antisymmetric in (first, third) index: (nabla_b e_i, e_k) = -(nabla_b e_k, e_i) */
      return antisym_pair(0, 2);
    default:
      return 1;
  }
}

using TensorMonomial = std::vector<TensorAtom>; // kept sorted

class TensorPoly {
 public:
  TensorPoly() = default;
  TensorPoly(ExactScalar c) {
    if (!c.is_zero()) terms_[TensorMonomial{}] = std::move(c);
  }
  TensorPoly(long n) : TensorPoly(ExactScalar(n)) {}
  TensorPoly(GaussianRational z) : TensorPoly(ExactScalar(std::move(z))) {}

  static TensorPoly atom(TensorFamily fam, std::vector<int> indices, ExactScalar c = ExactScalar(1)) {
    if (static_cast<int>(indices.size()) != family_arity(fam))
      throw std::invalid_argument("TensorPoly::atom arity");
    TensorAtom t;
    t.family = fam;
    for (size_t k = 0; k < indices.size(); ++k) t.idx[k] = static_cast<std::int8_t>(indices[k]);
    int s = canonicalize_atom(t);
    TensorPoly p;
    if (s == 0 || c.is_zero()) return p;
    if (s < 0) c = -c;
    p.terms_[TensorMonomial{t}] = std::move(c);
    return p;
  }

  bool is_zero() const { return terms_.empty(); }
  const std::map<TensorMonomial, ExactScalar>& terms() const { return terms_; }

  bool is_real() const {
    for (auto& [m, c] : terms_)
      if (!c.is_real()) return false;
    return true;
  }

  /* Indeterminates are real-valued, so conjugation acts on coefficients. */
  TensorPoly conj() const {
    TensorPoly p;
    for (auto& [m, c] : terms_) p.terms_[m] = c.conj();
    return p;
  }

  TensorPoly operator-() const {
    TensorPoly p;
    for (auto& [m, c] : terms_) p.terms_[m] = -c;
    return p;
  }

  TensorPoly& operator+=(const TensorPoly& o) {
    for (auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  TensorPoly& operator-=(const TensorPoly& o) {
    for (auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  TensorPoly& operator*=(const TensorPoly& o) {
    TensorPoly out;
    for (auto& [m1, c1] : terms_)
      for (auto& [m2, c2] : o.terms_) {
        TensorMonomial m;
        m.reserve(m1.size() + m2.size());
        std::merge(m1.begin(), m1.end(), m2.begin(), m2.end(), std::back_inserter(m));
        out.add_term(m, c1 * c2);
      }
    terms_ = std::move(out.terms_);
    return *this;
  }

  friend TensorPoly operator+(TensorPoly x, const TensorPoly& y) { return x += y; }
  friend TensorPoly operator-(TensorPoly x, const TensorPoly& y) { return x -= y; }
  friend TensorPoly operator*(TensorPoly x, const TensorPoly& y) { return x *= y; }
  friend bool operator==(const TensorPoly& x, const TensorPoly& y) { return x.terms_ == y.terms_; }
  friend bool operator!=(const TensorPoly& x, const TensorPoly& y) { return !(x == y); }

  TensorPoly scaled(const ExactScalar& s) const {
    TensorPoly p;
    if (s.is_zero()) return p;
    for (auto& [m, c] : terms_) {
      ExactScalar cs = c * s;
      if (!cs.is_zero()) p.terms_[m] = std::move(cs);
    }
    return p;
  }
  TensorPoly scaled(const GaussianRational& z) const { return scaled(ExactScalar(z)); }

  /* Number of atoms from the given families in each monomial; used to split
   * a difference polynomial into pieces by gauge-field degree. */
  TensorPoly part_of_degree(const std::vector<TensorFamily>& fams, int degree) const {
    TensorPoly p;
    for (auto& [m, c] : terms_) {
      int n = 0;
      for (auto& t : m)
        for (auto f : fams)
          if (t.family == f) ++n;
      if (n == degree) p.terms_[m] = c;
    }
    return p;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto& [m, c] : terms_) {
      if (!out.empty()) out += " + ";
      out += "(" + c.str() + ")";
      for (auto& t : m) out += "*" + t.str();
    }
    return out;
  }

 private:
  void add_term(const TensorMonomial& m, const ExactScalar& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.try_emplace(m, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  std::map<TensorMonomial, ExactScalar> terms_;
};

inline TensorPoly conj(const TensorPoly& p) { return p.conj(); }

} // namespace wodzicki

#endif // WODZICKI_TENSOR_POLY_HPP_
