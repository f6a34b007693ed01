#ifndef WODZICKI_TESTS_FOURIER_ORACLE_HPP_
#define WODZICKI_TESTS_FOURIER_ORACLE_HPP_

/* Exact operator oracle on truncated Fourier modes.
 *
 * An operator with symbol sigma(x, xi) acts on u = sum_k u_k e^{ikx} by
 * (Pu)(x) = sum_k sigma(x, k) u_k e^{ikx}; expanding sigma in x-modes gives
 * the sparse block matrix  M[l][k] = sigma-hat_{l-k}(k)  acting on spinors.
 * Entries are exact Gaussian rationals, so symbol-level identities can be
 * compared against genuine operator products entry by entry.
 *
 * Only symbols with even denominator exponents are representable (|k| itself
 * is irrational at generic integer modes); columns where a denominator
 * vanishes (k = 0) are left empty and must be excluded from comparisons.
 */

#include "matrix_rep.hpp"
#include "wodzicki/symbol.hpp"

#include <map>
#include <utility>
#include <vector>

namespace wodzicki::testsupport {

class FourierOracle {
 public:
  FourierOracle(int dim, int mode_bound)
      : dim_(dim), bound_(mode_bound), gammas_(gamma_matrices(dim)) {
    spinor_dim_ = static_cast<int>(gammas_[0].size());
  }

  int dim() const { return dim_; }
  int mode_bound() const { return bound_; }
  int spinor_dim() const { return spinor_dim_; }

  bool in_box(const Frequency& k) const {
    for (int v : k)
      if (v < -bound_ || v > bound_) return false;
    return true;
  }

  using Entries = std::map<std::pair<Frequency, Frequency>, Mat>;

  Mat gamma_word(Blade mask) const {
    Mat out = mat_id(spinor_dim_);
    for (int i = 0; i < dim_; ++i)
      if (mask & (Blade(1) << i)) out = mat_mul(out, gammas_[i]);
    return out;
  }

  /* Sparse matrix of the operator with the given (finite) symbol expansion.
   * Every stored component is used; the caller is responsible for comparing
   * only at depths where the expansion is complete. */
  Entries matrix_of(const SymbolExpansion& S) const {
    Entries out;
    for (auto& [g, comp] : S.components()) {
      for (int parity = 0; parity < 2; ++parity) {
        const HomoPart& part = comp.part(parity);
        if (part.is_zero()) continue;
        if (part.norm_power % 2 != 0)
          throw std::invalid_argument("FourierOracle: odd norm power is not rational at lattice points");
        for (auto& [beta, coeff] : part.num) {
          for (auto& [mask, tp] : coeff.coeffs()) {
            Mat word = gamma_word(mask);
            for (auto& [m, c] : tp.coeffs()) {
              // contribution c * k^beta / |k|^np * word to entry (k + m, k)
              add_symbol_term(out, beta, part.norm_power, m, c, word);
            }
          }
        }
      }
    }
    return out;
  }

  Entries compose(const Entries& A, const Entries& B) const {
    // index B rows for the sparse product
    std::map<Frequency, std::vector<const std::pair<const std::pair<Frequency, Frequency>, Mat>*>> by_row;
    for (auto& e : B) by_row[e.first.first].push_back(&e);
    Entries out;
    for (auto& [keyA, blockA] : A) {
      auto it = by_row.find(keyA.second);
      if (it == by_row.end()) continue;
      for (auto* eb : it->second) {
        std::pair<Frequency, Frequency> key{keyA.first, eb->first.second};
        Mat prod = mat_mul(blockA, eb->second);
        auto ins = out.find(key);
        if (ins == out.end())
          out.emplace(std::move(key), std::move(prod));
        else
          ins->second = mat_add(ins->second, prod);
      }
    }
    return out;
  }

  Entries add(const Entries& A, const Entries& B) const {
    Entries out = A;
    for (auto& [k, b] : B) {
      auto it = out.find(k);
      if (it == out.end())
        out.emplace(k, b);
      else
        it->second = mat_add(it->second, b);
    }
    return out;
  }

  /* Conjugate transpose: (M*)[l][k] = M[k][l]^dagger. */
  Entries adjoint(const Entries& A) const {
    Entries out;
    for (auto& [key, block] : A) {
      Mat t = mat_zero(spinor_dim_);
      for (int r = 0; r < spinor_dim_; ++r)
        for (int c = 0; c < spinor_dim_; ++c) t[r][c] = block[c][r].conj();
      out.emplace(std::make_pair(key.second, key.first), std::move(t));
    }
    return out;
  }

  /* Compares entries on columns k with |k|_inf <= interior (and rows in the
   * box).  Columns with |k|_inf <= exclude_radius are skipped: inverse-type
   * symbols leave the zero mode undefined, so any path through it corrupts
   * nearby columns of a genuine operator product.  Returns true when all
   * compared blocks agree exactly. */
  bool equal_on_interior(const Entries& A, const Entries& B, int interior, int exclude_radius = -1) const {
    auto relevant = [&](const std::pair<Frequency, Frequency>& key) {
      int inf = 0;
      for (int v : key.second) inf = std::max(inf, std::abs(v));
      if (inf > interior || inf <= exclude_radius) return false;
      if (!in_box(key.first)) return false;
      return true;
    };
    auto block_of = [&](const Entries& M, const std::pair<Frequency, Frequency>& key) {
      auto it = M.find(key);
      return it == M.end() ? mat_zero(spinor_dim_) : it->second;
    };
    std::vector<std::pair<Frequency, Frequency>> keys;
    for (auto& [k, b] : A)
      if (relevant(k)) keys.push_back(k);
    for (auto& [k, b] : B)
      if (relevant(k)) keys.push_back(k);
    for (auto& key : keys) {
      Mat a = block_of(A, key), b = block_of(B, key);
      for (int r = 0; r < spinor_dim_; ++r)
        for (int c = 0; c < spinor_dim_; ++c)
          if (!(a[r][c] - b[r][c]).is_zero()) return false;
    }
    return true;
  }

  /* Largest |m|_inf over x-frequencies appearing in the symbol: the reach of
   * the operator in mode space, used to size safe interiors. */
  static int x_reach(const SymbolExpansion& S) {
    int reach = 0;
    for (auto& [g, comp] : S.components())
      for (int parity = 0; parity < 2; ++parity) {
        if (comp.part(parity).is_zero()) continue;
        for (auto& [beta, coeff] : comp.part(parity).num)
          for (auto& [mask, tp] : coeff.coeffs())
            for (auto& [m, c] : tp.coeffs())
              for (int v : m) reach = std::max(reach, std::abs(v));
      }
    return reach;
  }

 private:
  void add_symbol_term(Entries& out, const XiExp& beta, int norm_power, const Frequency& m,
                       const GaussianRational& c, const Mat& word) const {
    Frequency k(dim_);
    enumerate_modes(0, k, [&](const Frequency& kk) {
      BigInt norm_sq = 0;
      for (int v : kk) norm_sq += BigInt(v) * v;
      if (norm_power > 0 && norm_sq == 0) return;  // column left undefined
      GaussianRational value = c;
      for (int i = 0; i < dim_; ++i)
        for (int t = 0; t < beta[i]; ++t) value = value * GaussianRational(kk[i]);
      if (norm_power > 0) {
        BigInt den = 1;
        for (int t = 0; t < norm_power / 2; ++t) den *= norm_sq;
        value = value * GaussianRational(Rational(BigInt(1), den));
      }
      if (value.is_zero()) return;
      Frequency row(dim_);
      for (int i = 0; i < dim_; ++i) row[i] = kk[i] + m[i];
      if (!in_box(row)) return;  // clipped by the truncation
      std::pair<Frequency, Frequency> key{row, kk};
      Mat blk = mat_scale(word, value);
      auto it = out.find(key);
      if (it == out.end())
        out.emplace(std::move(key), std::move(blk));
      else
        it->second = mat_add(it->second, blk);
    });
  }

  template <class Fn>
  void enumerate_modes(int axis, Frequency& k, const Fn& fn) const {
    if (axis == dim_) {
      fn(k);
      return;
    }
    for (int v = -bound_; v <= bound_; ++v) {
      k[axis] = v;
      enumerate_modes(axis + 1, k, fn);
    }
  }

  int dim_;
  int bound_;
  std::vector<Mat> gammas_;
  int spinor_dim_;
};

} // namespace wodzicki::testsupport

#endif // WODZICKI_TESTS_FOURIER_ORACLE_HPP_
