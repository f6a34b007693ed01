#ifndef WODZICKI_SYMBOL_HPP_
#define WODZICKI_SYMBOL_HPP_

/* Asymptotic symbols of classical pseudodifferential operators on the flat
 * d-torus, kept exact.
 *
 * A symbol is a finite family of homogeneous components sigma_g(x, xi),
 * g = top, top-1, ..., floor.  Each component is stored as (at most) two
 * fractions
 *
 *     N_even(x, xi) / |xi|^{2k}   +   N_odd(x, xi) / |xi|^{2k+1},
 *
 * where the numerators are polynomials in xi whose coefficients are Clifford
 * elements over trigonometric polynomials, and every numerator monomial
 * xi^beta obeys |beta| = g + norm_power (homogeneity).  Even and odd
 * denominator exponents never mix (|xi| is not rational in xi), which is
 * exactly the parity grading used by the vanishing arguments.
 *
 * The composition (product) of two symbols is
 *
 *   sigma^{PQ}_g = sum over a + b - |alpha| = g of
 *                  (-i)^{|alpha|}/alpha! d_xi^alpha sigma^P_a d_x^alpha sigma^Q_b,
 *
 * the parametrix inverts an elliptic symbol degree by degree, and
 * sqrt_symbol produces the square root of a positive order-2 symbol with
 * leading part |xi|^2 Id; both are defined by the property that composing
 * back reproduces the input down to the floor, and the test suite enforces
 * those contracts verbatim.
 *
 * Floors: components below the floor are unknown (truncated), and requests
 * below a floor raise; degrees above `top` are identically zero.  Exact
 * (differential-type) symbols carry an unbounded floor.
 */

#include "wodzicki/clifford.hpp"
#include "wodzicki/trig_poly.hpp"

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace wodzicki {

using Coeff = CliffordElement<TrigPoly>;
using XiExp = std::vector<int>;
using XiPoly = std::map<XiExp, Coeff>;

constexpr int kFloorUnbounded = -(1 << 24);
inline bool floor_is_unbounded(int f) { return f <= kFloorUnbounded / 2; }

class FloorError : public std::runtime_error {
 public:
  explicit FloorError(const std::string& what) : std::runtime_error(what) {}
};

/* ---- xi-polynomial helpers ---- */

inline void xipoly_add_term(XiPoly& p, const XiExp& e, const Coeff& c) {
  if (c.is_zero()) return;
  auto it = p.find(e);
  if (it == p.end()) {
    p.emplace(e, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) p.erase(it);
  }
}

inline XiPoly xipoly_mul(const XiPoly& a, const XiPoly& b, int dim) {
  XiPoly out;
  for (auto& [e1, c1] : a)
    for (auto& [e2, c2] : b) {
      XiExp e(dim);
      for (int k = 0; k < dim; ++k) e[k] = e1[k] + e2[k];
      xipoly_add_term(out, e, c1 * c2);
    }
  return out;
}

inline XiPoly xipoly_scaled(const XiPoly& a, const GaussianRational& z) {
  XiPoly out;
  if (z.is_zero()) return out;
  for (auto& [e, c] : a) out.emplace(e, c.scaled(z));
  return out;
}

/* (xi_1^2 + .. + xi_d^2)^k with identity Clifford coefficients. */
inline XiPoly norm_sq_power_poly(int dim, int k) {
  XiPoly out;
  XiExp zero(dim, 0);
  out.emplace(zero, Coeff::scalar(dim, GaussianRational(1)));
  XiPoly norm_sq;
  for (int i = 0; i < dim; ++i) {
    XiExp e(dim, 0);
    e[i] = 2;
    norm_sq.emplace(e, Coeff::scalar(dim, GaussianRational(1)));
  }
  for (int t = 0; t < k; ++t) out = xipoly_mul(out, norm_sq, dim);
  return out;
}

inline int xipoly_max_degree(const XiPoly& p) {
  int m = 0;
  for (auto& [e, c] : p) {
    int s = 0;
    for (int v : e) s += v;
    if (s > m) m = s;
  }
  return m;
}

/* Exact division of p by (xi_1^2+..+xi_d^2); nullopt when not divisible.
 * Lex-leading term of the divisor is xi_1^2, with scalar coefficient 1, so
 * the single-divisor division algorithm decides divisibility. */
inline std::optional<XiPoly> xipoly_divide_norm_sq(const XiPoly& p, int dim) {
  XiPoly rem = p, quot;
  while (!rem.empty()) {
    auto lead = std::prev(rem.end());  // lex-largest exponent
    XiExp e = lead->first;
    Coeff c = lead->second;
    if (e[0] < 2) return std::nullopt;
    e[0] -= 2;
    xipoly_add_term(quot, e, c);
    // rem -= (c * xi^e) * norm_sq
    for (int i = 0; i < dim; ++i) {
      XiExp f = e;
      f[i] += 2;
      xipoly_add_term(rem, f, -c);
    }
  }
  return quot;
}

/* ---- homogeneous fraction: num / |xi|^norm_power ---- */

struct HomoPart {
  int norm_power = 0;
  XiPoly num;

  bool is_zero() const { return num.empty(); }
};

/* ---- one homogeneous component: even + odd denominator parts ---- */

class HomoComponent {
 public:
  HomoComponent() : dim_(0), degree_(0) { init_parts(); }
  HomoComponent(int dim, int degree) : dim_(dim), degree_(degree) { init_parts(); }

  int dim() const { return dim_; }
  int degree() const { return degree_; }
  bool is_zero() const { return parts_[0].is_zero() && parts_[1].is_zero(); }

  const HomoPart& part(int parity) const { return parts_[parity & 1]; }

  /* Adds c * xi^beta / |xi|^norm_power; |beta| must equal degree + norm_power. */
  void add_fraction(const XiExp& beta, const Coeff& c, int norm_power) {
    if (c.is_zero()) return;
    int weight = 0;
    for (int v : beta) weight += v;
    if (weight != degree_ + norm_power)
      throw std::invalid_argument("HomoComponent::add_fraction: homogeneity mismatch");
    XiPoly mono;
    mono.emplace(beta, c);
    add_part_raw(norm_power, mono);
  }

  void add_part_raw(int norm_power, const XiPoly& num) {
    if (norm_power < 0) throw std::invalid_argument("HomoComponent: negative norm power");
    HomoPart& dst = parts_[norm_power & 1];
    if (num.empty()) return;
    if (dst.is_zero()) {
      dst.norm_power = norm_power;
      dst.num = num;
      return;
    }
    if (dst.norm_power == norm_power) {
      for (auto& [e, c] : num) xipoly_add_term(dst.num, e, c);
    } else if (dst.norm_power > norm_power) {
      XiPoly lifted = xipoly_mul(num, norm_sq_power_poly(dim_, (dst.norm_power - norm_power) / 2), dim_);
      for (auto& [e, c] : lifted) xipoly_add_term(dst.num, e, c);
    } else {
      XiPoly lifted =
          xipoly_mul(dst.num, norm_sq_power_poly(dim_, (norm_power - dst.norm_power) / 2), dim_);
      dst.norm_power = norm_power;
      dst.num = std::move(lifted);
      for (auto& [e, c] : num) xipoly_add_term(dst.num, e, c);
    }
    if (dst.num.empty()) dst.norm_power = norm_power & 1;
  }

  HomoComponent& operator+=(const HomoComponent& o) {
    require_compatible(o);
    for (int p = 0; p < 2; ++p)
      if (!o.parts_[p].is_zero()) add_part_raw(o.parts_[p].norm_power, o.parts_[p].num);
    return *this;
  }
  HomoComponent& operator-=(const HomoComponent& o) { return *this += -o; }

  HomoComponent operator-() const {
    HomoComponent out(dim_, degree_);
    for (int p = 0; p < 2; ++p) {
      out.parts_[p].norm_power = parts_[p].norm_power;
      for (auto& [e, c] : parts_[p].num) out.parts_[p].num.emplace(e, -c);
    }
    return out;
  }

  friend HomoComponent operator+(HomoComponent a, const HomoComponent& b) { return a += b; }
  friend HomoComponent operator-(HomoComponent a, const HomoComponent& b) { return a -= b; }

  friend bool operator==(const HomoComponent& a, const HomoComponent& b) { return (a - b).is_zero(); }
  friend bool operator!=(const HomoComponent& a, const HomoComponent& b) { return !(a == b); }

  HomoComponent scaled(const GaussianRational& z) const {
    HomoComponent out(dim_, degree_);
    if (z.is_zero()) return out;
    for (int p = 0; p < 2; ++p)
      if (!parts_[p].is_zero()) out.add_part_raw(parts_[p].norm_power, xipoly_scaled(parts_[p].num, z));
    return out;
  }

  /* Pointwise (matrix) product; degrees add, no derivative corrections. */
  friend HomoComponent pointwise_product(const HomoComponent& a, const HomoComponent& b) {
    if (a.dim_ != b.dim_) throw std::invalid_argument("HomoComponent product: dimension mismatch");
    HomoComponent out(a.dim_, a.degree_ + b.degree_);
    for (int p = 0; p < 2; ++p)
      for (int q = 0; q < 2; ++q) {
        const HomoPart& x = a.parts_[p];
        const HomoPart& y = b.parts_[q];
        if (x.is_zero() || y.is_zero()) continue;
        out.add_part_raw(x.norm_power + y.norm_power, xipoly_mul(x.num, y.num, a.dim_));
      }
    out.reduce();
    return out;
  }

  /* d/d xi_i with the quotient rule:
   * d(N/|xi|^n) = ((dN)|xi|^2 - n xi_i N) / |xi|^{n+2}. */
  HomoComponent xi_derivative(int i) const {
    HomoComponent out(dim_, degree_ - 1);
    for (int p = 0; p < 2; ++p) {
      const HomoPart& x = parts_[p];
      if (x.is_zero()) continue;
      XiPoly dn;
      for (auto& [e, c] : x.num) {
        if (e[i] == 0) continue;
        XiExp f = e;
        f[i] -= 1;
        xipoly_add_term(dn, f, c.scaled(GaussianRational(e[i])));
      }
      XiPoly res = xipoly_mul(dn, norm_sq_power_poly(dim_, 1), dim_);
      if (x.norm_power != 0) {
        for (auto& [e, c] : x.num) {
          XiExp f = e;
          f[i] += 1;
          xipoly_add_term(res, f, c.scaled(GaussianRational(-x.norm_power)));
        }
      }
      out.add_part_raw(x.norm_power + 2, res);
    }
    out.reduce();
    return out;
  }

  HomoComponent x_derivative(int i) const {
    HomoComponent out(dim_, degree_);
    for (int p = 0; p < 2; ++p) {
      const HomoPart& x = parts_[p];
      if (x.is_zero()) continue;
      XiPoly dn;
      for (auto& [e, c] : x.num) {
        Coeff dc(dim_);
        for (auto& [mask, f] : c.coeffs()) dc.add_term(mask, f.derivative(i));
        xipoly_add_term(dn, e, dc);
      }
      out.add_part_raw(x.norm_power, dn);
    }
    return out;
  }

  /* Coefficientwise adjoint (xi and |xi| are real). */
  HomoComponent star() const {
    HomoComponent out(dim_, degree_);
    for (int p = 0; p < 2; ++p) {
      const HomoPart& x = parts_[p];
      if (x.is_zero()) continue;
      XiPoly n;
      for (auto& [e, c] : x.num) n.emplace(e, c.adjoint());
      out.add_part_raw(x.norm_power, n);
    }
    return out;
  }

  /* Divides out common (xi.xi) factors to keep norm powers minimal. */
  void reduce() {
    for (int p = 0; p < 2; ++p) {
      HomoPart& x = parts_[p];
      while (!x.is_zero() && x.norm_power >= 2) {
        auto q = xipoly_divide_norm_sq(x.num, dim_);
        if (!q) break;
        x.num = std::move(*q);
        x.norm_power -= 2;
      }
      if (x.is_zero()) x.norm_power = p;
    }
  }

  int max_xi_degree() const {
    int m = 0;
    for (int p = 0; p < 2; ++p)
      if (!parts_[p].is_zero()) m = std::max(m, xipoly_max_degree(parts_[p].num));
    return m;
  }
  bool has_norm_denominator() const {
    return (!parts_[0].is_zero() && parts_[0].norm_power > 0) || !parts_[1].is_zero();
  }
  /* True when every coefficient function is constant; x-derivatives of such
   * a component vanish, which truncates composition corrections. */
  bool is_x_independent() const {
    for (int p = 0; p < 2; ++p)
      for (auto& [e, c] : parts_[p].num)
        for (auto& [mask, f] : c.coeffs())
          if (!f.is_constant()) return false;
    return true;
  }

  std::string str() const {
    if (is_zero()) return "0";
    std::string out;
    for (int p = 0; p < 2; ++p) {
      const HomoPart& x = parts_[p];
      if (x.is_zero()) continue;
      for (auto& [e, c] : x.num) {
        if (!out.empty()) out += " + ";
        out += "[" + c.str() + "]";
        for (size_t k = 0; k < e.size(); ++k)
          if (e[k] != 0) out += "*xi" + std::to_string(k + 1) + (e[k] == 1 ? "" : "^" + std::to_string(e[k]));
        if (x.norm_power != 0) out += "/|xi|^" + std::to_string(x.norm_power);
      }
    }
    return out;
  }

 private:
  void init_parts() {
    parts_[0].norm_power = 0;
    parts_[1].norm_power = 1;
  }
  void require_compatible(const HomoComponent& o) const {
    if (dim_ != o.dim_ || degree_ != o.degree_)
      throw std::invalid_argument("HomoComponent: dimension/degree mismatch");
  }

  int dim_;
  int degree_;
  HomoPart parts_[2];  // index = norm_power parity
};

/* ---- symbol expansion ---- */

class SymbolExpansion {
 public:
  SymbolExpansion() : dim_(0), top_(0), floor_(kFloorUnbounded) {}
  SymbolExpansion(int dim, int top, int floor) : dim_(dim), top_(top), floor_(floor) {
    if (!floor_is_unbounded(floor) && floor > top)
      throw std::invalid_argument("SymbolExpansion: floor above top");
  }

  int dim() const { return dim_; }
  int top() const { return top_; }
  int floor() const { return floor_; }
  bool is_zero() const { return comps_.empty(); }
  const std::map<int, HomoComponent, std::greater<int>>& components() const { return comps_; }

  /* Highest degree carrying a nonzero component (the operator's order). */
  std::optional<int> order() const {
    if (comps_.empty()) return std::nullopt;
    return comps_.begin()->first;
  }

  HomoComponent component(int degree) const {
    if (degree > top_) return HomoComponent(dim_, degree);
    if (!floor_is_unbounded(floor_) && degree < floor_)
      throw FloorError("symbol component below floor requested (degree " + std::to_string(degree) +
                       ", floor " + std::to_string(floor_) + ")");
    auto it = comps_.find(degree);
    return it == comps_.end() ? HomoComponent(dim_, degree) : it->second;
  }

  void set_component(HomoComponent c) {
    if (c.dim() != dim_) throw std::invalid_argument("set_component: dimension mismatch");
    if (c.degree() > top_ || (!floor_is_unbounded(floor_) && c.degree() < floor_))
      throw std::invalid_argument("set_component: degree outside [floor, top]");
    if (c.is_zero())
      comps_.erase(c.degree());
    else
      comps_.insert_or_assign(c.degree(), std::move(c));
  }

  void set_floor(int floor) {
    floor_ = floor;
    if (!floor_is_unbounded(floor))
      for (auto it = comps_.begin(); it != comps_.end();)
        it = (it->first < floor) ? comps_.erase(it) : std::next(it);
  }

  SymbolExpansion operator-() const {
    SymbolExpansion out(dim_, top_, floor_);
    for (auto& [g, c] : comps_) out.comps_.emplace(g, -c);
    return out;
  }

  friend SymbolExpansion operator+(const SymbolExpansion& a, const SymbolExpansion& b) {
    if (a.dim_ != b.dim_) throw std::invalid_argument("SymbolExpansion add: dimension mismatch");
    SymbolExpansion out(a.dim_, std::max(a.top_, b.top_), std::max(a.floor_, b.floor_));
    for (auto& [g, c] : a.comps_)
      if (floor_is_unbounded(out.floor_) || g >= out.floor_) out.accumulate(g, c);
    for (auto& [g, c] : b.comps_)
      if (floor_is_unbounded(out.floor_) || g >= out.floor_) out.accumulate(g, c);
    return out;
  }
  friend SymbolExpansion operator-(const SymbolExpansion& a, const SymbolExpansion& b) { return a + (-b); }

  SymbolExpansion scaled(const GaussianRational& z) const {
    SymbolExpansion out(dim_, top_, floor_);
    if (z.is_zero()) return out;
    for (auto& [g, c] : comps_) out.comps_.emplace(g, c.scaled(z));
    return out;
  }

  void accumulate(int degree, const HomoComponent& c) {
    if (c.is_zero()) return;
    if (!floor_is_unbounded(floor_) && degree < floor_) return;  // truncated region
    if (degree > top_) top_ = degree;
    auto it = comps_.find(degree);
    if (it == comps_.end()) {
      comps_.emplace(degree, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) comps_.erase(it);
    }
  }

  /* True when all components with degree >= bound agree. */
  friend bool equal_above(const SymbolExpansion& a, const SymbolExpansion& b, int bound) {
    for (int g = std::max(a.top_, b.top_); g >= bound; --g)
      if (a.component(g) != b.component(g)) return false;
    return true;
  }

  /* Full equality: identical validity range and identical nonzero
   * components.  Two expansions truncated at different floors are never
   * equal even if they agree where both are defined; use equal_above for
   * that comparison. */
  friend bool operator==(const SymbolExpansion& a, const SymbolExpansion& b) {
    if (a.dim_ != b.dim_) return false;
    bool ua = floor_is_unbounded(a.floor_), ub = floor_is_unbounded(b.floor_);
    if (ua != ub || (!ua && a.floor_ != b.floor_)) return false;
    int lo = ua ? std::min(a.lowest_stored_(), b.lowest_stored_()) : a.floor_;
    return equal_above(a, b, lo);
  }
  friend bool operator!=(const SymbolExpansion& a, const SymbolExpansion& b) { return !(a == b); }

  std::string str() const {
    std::string out;
    for (auto& [g, c] : comps_) {
      out += "sigma_" + std::to_string(g) + " = " + c.str() + "\n";
    }
    if (out.empty()) out = "0\n";
    return out;
  }

 private:
  int lowest_stored_() const {
    int lo = top_;
    for (auto& [g, c] : comps_)
      if (!c.is_zero()) lo = std::min(lo, g);
    return lo;
  }

  int dim_;
  int top_;
  int floor_;
  std::map<int, HomoComponent, std::greater<int>> comps_;
};

/* ---- multi-index enumeration ---- */

inline void for_each_multiindex(int dim, int weight, std::vector<int>& scratch,
                                const std::function<void(const std::vector<int>&)>& fn, int axis = 0) {
  if (axis == dim - 1) {
    scratch[axis] = weight;
    fn(scratch);
    return;
  }
  for (int w = 0; w <= weight; ++w) {
    scratch[axis] = w;
    for_each_multiindex(dim, weight - w, scratch, fn, axis + 1);
  }
}

inline Rational multiindex_factorial(const std::vector<int>& alpha) {
  BigInt f = 1;
  for (int v : alpha)
    for (int t = 2; t <= v; ++t) f *= t;
  return Rational(f);
}

/* ---- composition ---- */

/* The degree-g component of sigma^{PQ}; P and Q must both be known deep
 * enough that every contributing term is available. */
inline HomoComponent product_component_at(const SymbolExpansion& P, const SymbolExpansion& Q, int g) {
  int dim = P.dim();
  HomoComponent out(dim, g);
  std::vector<int> scratch(dim, 0);
  for (auto& [a, compA] : P.components()) {
    int max_w_a = compA.has_norm_denominator() ? INT32_MAX : compA.max_xi_degree();
    for (auto& [b, compB] : Q.components()) {
      int w = a + b - g;
      if (w < 0 || w > max_w_a) continue;
      if (w == 0) {
        out += pointwise_product(compA, compB);
        continue;
      }
      GaussianRational phase = GaussianRational::i_power(-w);
      for_each_multiindex(dim, w, scratch, [&](const std::vector<int>& alpha) {
        HomoComponent da = compA;
        HomoComponent db = compB;
        for (int i = 0; i < dim; ++i)
          for (int t = 0; t < alpha[i]; ++t) {
            da = da.xi_derivative(i);
            if (da.is_zero()) return;
          }
        if (da.is_zero()) return;
        for (int i = 0; i < dim; ++i)
          for (int t = 0; t < alpha[i]; ++t) db = db.x_derivative(i);
        if (db.is_zero()) return;
        GaussianRational c = phase * GaussianRational(Rational(1) / multiindex_factorial(alpha));
        out += pointwise_product(da, db).scaled(c);
      });
    }
  }
  out.reduce();
  return out;
}

/* Floor of a composition: contributions from unknown components of either
 * factor can reach degree max(P.floor + Q.top, Q.floor + P.top) - 1. */
inline int product_floor(const SymbolExpansion& P, const SymbolExpansion& Q) {
  if (floor_is_unbounded(P.floor()) && floor_is_unbounded(Q.floor())) return kFloorUnbounded;
  long fp = floor_is_unbounded(P.floor()) ? long(kFloorUnbounded) : long(P.floor()) + Q.top();
  long fq = floor_is_unbounded(Q.floor()) ? long(kFloorUnbounded) : long(Q.floor()) + P.top();
  return static_cast<int>(std::max(fp, fq));
}

inline SymbolExpansion symbol_product(const SymbolExpansion& P, const SymbolExpansion& Q,
                                      std::optional<int> want_floor = std::nullopt) {
  if (P.dim() != Q.dim()) throw std::invalid_argument("symbol_product: dimension mismatch");
  int top = P.top() + Q.top();
  int floor = product_floor(P, Q);
  if (want_floor) floor = std::max(floor, *want_floor);
  // a requested floor above the product's top is fine: everything there is 0
  if (!floor_is_unbounded(floor) && floor > top) top = floor;

  int iterate_to = floor;
  if (floor_is_unbounded(floor)) {
    // Both factors exact: the correction series must terminate on its own,
    // either because xi-derivatives of a polynomial left component die or
    // because x-derivatives of a constant-coefficient right component die.
    long lo = top;
    for (auto& [a, compA] : P.components()) {
      long wa = compA.has_norm_denominator() ? -1 : compA.max_xi_degree();
      for (auto& [b, compB] : Q.components()) {
        long w = (wa >= 0) ? wa : (compB.is_x_independent() ? 0 : -1);
        if (w < 0)
          throw std::logic_error(
              "symbol_product: exact factors do not terminate; request a floor");
        lo = std::min(lo, long(a) + b - w);
      }
    }
    iterate_to = static_cast<int>(lo);
  }

  SymbolExpansion out(P.dim(), top, floor);
  for (int g = top; g >= iterate_to; --g) out.set_component(product_component_at(P, Q, g));
  return out;
}

/* ---- leading-symbol inversion ---- */

/* If pointwise L*L == s |xi|^{2p} Id with s a nonzero constant, the inverse
 * is L / (s |xi|^{2p}); this covers |xi|^p Id and gamma(xi)-type leaders. */
inline HomoComponent invert_leading_component(const HomoComponent& L, int p) {
  int dim = L.dim();
  HomoComponent sq = pointwise_product(L, L);
  // sq must equal s * |xi|^{2p} Id: single even part, identity blades only.
  if (!sq.part(1).is_zero()) throw std::domain_error("parametrix: leading symbol not invertible (mixed parity)");
  const HomoPart& part = sq.part(0);
  if (part.is_zero()) throw std::domain_error("parametrix: leading symbol squares to zero");
  int k2 = (2 * p + part.norm_power);
  if (k2 < 0 || k2 % 2 != 0) throw std::domain_error("parametrix: leading square has wrong homogeneity");
  XiPoly target = norm_sq_power_poly(dim, k2 / 2);
  // extract the scalar s from the lex-largest monomial
  auto lead = std::prev(part.num.end());
  auto tgt = target.find(lead->first);
  if (tgt == target.end()) throw std::domain_error("parametrix: leading square not scalar");
  const Coeff& c = lead->second;
  TrigPoly c0 = c.coeff(0);
  if (!c0.is_constant()) throw std::domain_error("parametrix: leading square not constant");
  GaussianRational s = c0.coeff(Frequency(dim, 0));
  if (s.is_zero()) throw std::domain_error("parametrix: leading square vanishes");
  // verify sq == s * |xi|^{2p} Id exactly
  HomoComponent check(dim, 2 * p);
  check.add_part_raw(part.norm_power, xipoly_scaled(target, s));
  if (!(check == sq)) throw std::domain_error("parametrix: leading symbol is not norm-like");

  HomoComponent inv(dim, -p);
  GaussianRational sinv = s.inverse();
  for (int parity = 0; parity < 2; ++parity) {
    const HomoPart& x = L.part(parity);
    if (x.is_zero()) continue;
    inv.add_part_raw(x.norm_power + 2 * p, xipoly_scaled(x.num, sinv));
  }
  inv.reduce();
  // guard: L * inv must be the identity
  HomoComponent idc(dim, 0);
  idc.add_fraction(XiExp(dim, 0), Coeff::scalar(dim, GaussianRational(1)), 0);
  if (!(pointwise_product(L, inv) == idc))
    throw std::domain_error("parametrix: leading inverse verification failed");
  return inv;
}

/* ---- parametrix ---- */

inline SymbolExpansion parametrix(const SymbolExpansion& P, int floor_req) {
  auto ord = P.order();
  if (!ord) throw std::domain_error("parametrix of the zero symbol");
  int p = *ord;
  if (floor_req < -64) throw FloorError("parametrix: requested floor below cost guard");
  if (floor_req > -p) throw std::invalid_argument("parametrix: floor must be <= -order");
  int jmax = -p - floor_req;
  if (!floor_is_unbounded(P.floor()) && P.floor() > p - jmax)
    throw FloorError("parametrix: input symbol too shallow for requested floor");

  HomoComponent Linv = invert_leading_component(P.component(p), p);

  SymbolExpansion Q(P.dim(), -p, floor_req);
  Q.set_component(Linv);
  for (int j = 1; j <= jmax; ++j) {
    // all terms of sigma^{PQ}_{-j} except sigma_p . sigma_{-p-j} (Q truncated)
    HomoComponent C = product_component_at(P, Q, -j);
    HomoComponent next = pointwise_product(Linv, -C);
    next.reduce();
    Q.set_component(std::move(next));
  }
  return Q;
}

/* ---- square root of an order-2 symbol with leading |xi|^2 Id ---- */

inline SymbolExpansion sqrt_symbol(const SymbolExpansion& P2, int floor_req) {
  int dim = P2.dim();
  auto ord = P2.order();
  if (!ord || *ord != 2) throw std::domain_error("sqrt_symbol: order must be 2");
  if (floor_req < -64) throw FloorError("sqrt_symbol: requested floor below cost guard");
  if (floor_req > 1) throw std::invalid_argument("sqrt_symbol: floor must be <= 1");

  HomoComponent lead(dim, 2);
  lead.add_part_raw(0, norm_sq_power_poly(dim, 1));
  if (!(P2.component(2) == lead)) throw std::domain_error("sqrt_symbol: leading symbol must be |xi|^2 Id");

  int jmax = 1 - floor_req;
  if (!floor_is_unbounded(P2.floor()) && P2.floor() > 2 - jmax)
    throw FloorError("sqrt_symbol: input symbol too shallow for requested floor");

  // sigma_1 = |xi| Id = (xi.xi) / |xi|
  SymbolExpansion S(dim, 1, floor_req);
  HomoComponent s1(dim, 1);
  s1.add_part_raw(1, norm_sq_power_poly(dim, 1));
  S.set_component(s1);

  // 1/(2|xi|)
  HomoComponent half_inv(dim, -1);
  half_inv.add_fraction(XiExp(dim, 0), Coeff::scalar(dim, GaussianRational(Rational(1, 2))), 1);

  for (int j = 1; j <= jmax; ++j) {
    // sigma^{SS}_{2-j} with S truncated = all known terms; the unknown
    // sigma_{1-j} enters the full product only through 2 |xi| sigma_{1-j}.
    HomoComponent C = product_component_at(S, S, 2 - j);
    HomoComponent rhs = P2.component(2 - j) - C;
    HomoComponent next = pointwise_product(half_inv, rhs);
    next.reduce();
    S.set_component(std::move(next));
  }
  return S;
}

/* ---- derivatives and adjoint of full expansions ---- */

inline SymbolExpansion xi_derivative(const SymbolExpansion& P, int i) {
  int floor = floor_is_unbounded(P.floor()) ? kFloorUnbounded : P.floor() - 1;
  SymbolExpansion out(P.dim(), P.top() - 1, floor);
  for (auto& [g, c] : P.components()) out.accumulate(g - 1, c.xi_derivative(i));
  return out;
}

inline SymbolExpansion x_derivative(const SymbolExpansion& P, int i) {
  SymbolExpansion out(P.dim(), P.top(), P.floor());
  for (auto& [g, c] : P.components()) out.accumulate(g, c.x_derivative(i));
  return out;
}

/* Adjoint symbol: sigma^{P*}_g = sum_{|alpha| = w >= 0}
 * (-i)^w/alpha!  d_xi^alpha d_x^alpha (sigma^P_{g+w})^*. */
inline SymbolExpansion symbol_adjoint(const SymbolExpansion& P) {
  int dim = P.dim();
  SymbolExpansion out(dim, P.top(), P.floor());
  std::vector<int> scratch(dim, 0);
  for (auto& [a, comp] : P.components()) {
    HomoComponent st = comp.star();
    out.accumulate(a, st);
    int wmax;
    if (!comp.has_norm_denominator()) wmax = comp.max_xi_degree();
    else if (comp.is_x_independent()) wmax = 0;  // x-derivatives vanish
    else if (floor_is_unbounded(P.floor()))
      throw std::logic_error("symbol_adjoint: exact symbol does not terminate; request a floor");
    else wmax = a - P.floor();
    for (int w = 1; w <= wmax; ++w) {
      GaussianRational phase = GaussianRational::i_power(-w);
      for_each_multiindex(dim, w, scratch, [&](const std::vector<int>& alpha) {
        HomoComponent t = st;
        for (int i = 0; i < dim; ++i)
          for (int k = 0; k < alpha[i]; ++k) {
            t = t.xi_derivative(i);
            if (t.is_zero()) return;
          }
        for (int i = 0; i < dim; ++i)
          for (int k = 0; k < alpha[i]; ++k) t = t.x_derivative(i);
        if (t.is_zero()) return;
        GaussianRational c = phase * GaussianRational(Rational(1) / multiindex_factorial(alpha));
        out.accumulate(a - w, t.scaled(c));
      });
    }
  }
  // degrees below floor may be incomplete; they were never materialized when
  // the floor is finite, and polynomial symbols terminate on their own.
  return out;
}

/* ---- parity and reality classification ---- */

enum class ComponentParity { zero, even, odd, mixed };

inline ComponentParity parity_of(const HomoComponent& c) {
  bool e = !c.part(0).is_zero(), o = !c.part(1).is_zero();
  if (e && o) return ComponentParity::mixed;
  if (e) return ComponentParity::even;
  if (o) return ComponentParity::odd;
  return ComponentParity::zero;
}

/* Per-degree parity; the even algebra contains symbols all of whose
 * components have even denominator exponents, the odd algebra likewise. */
inline std::map<int, ComponentParity> parity_class(const SymbolExpansion& P) {
  std::map<int, ComponentParity> out;
  for (auto& [g, c] : P.components()) out[g] = parity_of(c);
  return out;
}

inline bool in_even_algebra(const SymbolExpansion& P) {
  for (auto& [g, c] : P.components())
    if (parity_of(c) != ComponentParity::even && parity_of(c) != ComponentParity::zero) return false;
  return true;
}

inline bool in_odd_algebra(const SymbolExpansion& P) {
  for (auto& [g, c] : P.components())
    if (parity_of(c) != ComponentParity::odd && parity_of(c) != ComponentParity::zero) return false;
  return true;
}

enum class ComponentReality { zero, real, imaginary, mixed };

inline ComponentReality reality_of(const HomoComponent& c) {
  bool any = false, all_real = true, all_imag = true;
  for (int p = 0; p < 2; ++p) {
    if (c.part(p).is_zero()) continue;
    for (auto& [e, coeff] : c.part(p).num)
      for (auto& [mask, f] : coeff.coeffs()) {
        any = true;
        if (!f.is_real_valued()) all_real = false;
        if (!f.is_imaginary_valued()) all_imag = false;
      }
  }
  if (!any) return ComponentReality::zero;
  if (all_real) return ComponentReality::real;
  if (all_imag) return ComponentReality::imaginary;
  return ComponentReality::mixed;
}

/* Membership in the conjugation-stable class: with p the operator's order,
 * the component of degree p-j must have real-valued coefficient functions
 * for even j and purely imaginary-valued ones for odd j. */
inline bool in_reality_class(const SymbolExpansion& P) {
  auto ord = P.order();
  if (!ord) return true;
  int p = *ord;
  for (auto& [g, c] : P.components()) {
    ComponentReality r = reality_of(c);
    if (r == ComponentReality::zero) continue;
    bool j_even = ((p - g) % 2 == 0);
    if (j_even && r != ComponentReality::real) return false;
    if (!j_even && r != ComponentReality::imaginary) return false;
  }
  return true;
}

inline std::map<int, ComponentReality> reality_class(const SymbolExpansion& P) {
  std::map<int, ComponentReality> out;
  for (auto& [g, c] : P.components()) out[g] = reality_of(c);
  return out;
}

} // namespace wodzicki

#endif // WODZICKI_SYMBOL_HPP_
