#include <catch2/catch_amalgamated.hpp>

#include "support/fourier_oracle.hpp"
#include "support/random_gen.hpp"
#include "wodzicki/operators.hpp"

using namespace wodzicki;
using wodzicki::testsupport::FourierOracle;
using wodzicki::testsupport::Rng;

namespace {

int nonzero_component_count(const SymbolExpansion& S) {
  int n = 0;
  for (auto& [g, c] : S.components())
    if (!c.is_zero()) ++n;
  return n;
}

/* -i gamma^m (d_m b) gamma(xi) / |xi|^2, the exact depth-one tail of the
 * conjugation D b D^{-1} for a scalar function b. */
HomoComponent conjugation_tail(const TrigPoly& b) {
  int dim = b.dim();
  HomoComponent out(dim, -1);
  for (int m = 0; m < dim; ++m) {
    TrigPoly db = b.derivative(m);
    if (db.is_zero()) continue;
    for (int i = 0; i < dim; ++i) {
      Coeff word = Coeff::generator(dim, m + 1) * Coeff::generator(dim, i + 1);
      XiExp e(dim, 0);
      e[i] = 1;
      out.add_fraction(e, word.scaled(db.scaled(GaussianRational(0, -1))), 2);
    }
  }
  out.reduce();
  return out;
}

} // namespace

TEST_CASE("integer powers of the Dirac symbol are single exact components") {
  for (int dim : {2, 3, 4}) {
    SymbolExpansion id = identity_symbol(dim);
    for (int k = -4; k <= 4; ++k) {
      SymbolExpansion P = dirac_power_symbol(dim, k);
      REQUIRE(P.order().has_value());
      CHECK(*P.order() == k);
      CHECK(nonzero_component_count(P) == 1);
      CHECK(floor_is_unbounded(P.floor()));

      SymbolExpansion Q = abs_dirac_power_symbol(dim, k);
      CHECK(*Q.order() == k);
      CHECK(nonzero_component_count(Q) == 1);

      // group law against the inverse power; both orders of composition
      CHECK(symbol_product(P, dirac_power_symbol(dim, -k)) == id);
      CHECK(symbol_product(dirac_power_symbol(dim, -k), P) == id);
      CHECK(symbol_product(Q, abs_dirac_power_symbol(dim, -k)) == id);
    }
    // group law on random exponent pairs, even and odd mixtures
    Rng rng(0x9e3779b97f4a7c15ULL + dim);
    for (int round = 0; round < 10; ++round) {
      int k = rng.uniform(-4, 4), m = rng.uniform(-4, 4);
      CHECK(symbol_product(dirac_power_symbol(dim, k), dirac_power_symbol(dim, m)) ==
            dirac_power_symbol(dim, k + m));
      CHECK(symbol_product(abs_dirac_power_symbol(dim, k), abs_dirac_power_symbol(dim, m)) ==
            abs_dirac_power_symbol(dim, k + m));
    }
    // D |D|^{-2} == D^{-1}, |D|^2 == D^2
    CHECK(symbol_product(dirac_symbol(dim), abs_dirac_power_symbol(dim, -2)) ==
          dirac_power_symbol(dim, -1));
    CHECK(abs_dirac_power_symbol(dim, 2) == dirac_power_symbol(dim, 2));
  }
}

TEST_CASE("closed-form powers agree with the parametrix and square root") {
  for (int dim : {2, 3}) {
    const int floor = -6;
    SymbolExpansion D = dirac_symbol(dim);
    SymbolExpansion P2 = laplace_symbol(dim);

    CHECK(equal_above(parametrix(D, floor), dirac_power_symbol(dim, -1), floor));
    CHECK(equal_above(parametrix(P2, floor), dirac_power_symbol(dim, -2), floor));

    SymbolExpansion root = sqrt_symbol(P2, -4);
    CHECK(equal_above(root, abs_dirac_power_symbol(dim, 1), -4));
    CHECK(equal_above(parametrix(root, floor), abs_dirac_power_symbol(dim, -1), floor));

    CHECK(symbol_product(symbol_product(D, D), D) == dirac_power_symbol(dim, 3));
    SymbolExpansion abs_inv = abs_dirac_power_symbol(dim, -1);
    CHECK(symbol_product(symbol_product(abs_inv, abs_inv), abs_inv) ==
          abs_dirac_power_symbol(dim, -3));
  }
}

TEST_CASE("one-form symbols are selfadjoint exactly for imaginary-valued coefficients") {
  for (int dim : {2, 3, 4}) {
    for (std::uint64_t seed : {1ULL, 2ULL, 77ULL}) {
      OneForm A = random_selfadjoint_one_form(seed, dim);
      REQUIRE(A.is_selfadjoint());
      REQUIRE_FALSE(A.is_zero());
      for (auto& f : A.a) CHECK(f.is_imaginary_valued());

      SymbolExpansion SA = one_form_symbol(A);
      CHECK(symbol_adjoint(SA) == SA);
      CHECK(symbol_adjoint(perturbed_dirac_symbol(A)) == perturbed_dirac_symbol(A));
      // blade coefficients -i a_k of a selfadjoint form are real-valued
      Coeff ca = A.coefficient();
      for (auto& [mask, f] : ca.coeffs()) CHECK(f.is_real_valued());
    }

    // real-valued (nonzero) coefficients give an anti-selfadjoint form
    Rng rng(31 * dim);
    OneForm B(dim);
    B.a[0] = rng.real_trig_poly(dim, 2, 2) + TrigPoly(dim, GaussianRational(1));
    CHECK_FALSE(B.is_selfadjoint());
    SymbolExpansion SB = one_form_symbol(B);
    CHECK(symbol_adjoint(SB) == -SB);
  }

  // determinism: identical seeds reproduce the form, different seeds vary
  OneForm X = random_selfadjoint_one_form(424242, 3);
  OneForm Y = random_selfadjoint_one_form(424242, 3);
  REQUIRE(X.dim == Y.dim);
  for (int k = 0; k < 3; ++k) CHECK(X.a[k] == Y.a[k]);
  OneForm Z = random_selfadjoint_one_form(424243, 3);
  bool all_equal = true;
  for (int k = 0; k < 3; ++k) all_equal = all_equal && (X.a[k] == Z.a[k]);
  CHECK_FALSE(all_equal);
}

TEST_CASE("conjugation by the Dirac symbol has the exact two-term expansion") {
  Rng rng(0xabcdef12);
  for (int dim : {2, 3}) {
    const int floor = -dim - 2;
    for (int round = 0; round < 4; ++round) {
      TrigPoly b = rng.real_trig_poly(dim, 3, 2);
      SymbolExpansion al = alpha_conjugation(b, floor);

      REQUIRE(al.top() >= 0);
      CHECK(al.component(0) == multiplication_symbol(b).component(0));
      CHECK(al.component(-1) == conjugation_tail(b));
      for (int g = -2; g >= floor; --g) CHECK(al.component(g).is_zero());
    }
    // alpha fixes constants
    TrigPoly one(dim, GaussianRational(1));
    CHECK(equal_above(alpha_conjugation(one, floor), identity_symbol(dim), floor));
  }
}

TEST_CASE("conjugation matches matrix conjugation on Fourier modes") {
  Rng rng(0x5eed5eedULL);
  const int dim = 2, box = 6;
  FourierOracle oracle(dim, box);
  for (int round = 0; round < 3; ++round) {
    TrigPoly b = rng.real_trig_poly(dim, 2, 2);
    SymbolExpansion al = alpha_conjugation(b, -6);

    auto MD = oracle.matrix_of(dirac_symbol(dim));
    auto Mb = oracle.matrix_of(multiplication_symbol(b));
    auto MDinv = oracle.matrix_of(dirac_power_symbol(dim, -1));
    auto conj = oracle.compose(oracle.compose(MD, Mb), MDinv);

    int reach = FourierOracle::x_reach(al);
    int interior = box - std::max(1, 2 * reach);
    REQUIRE(interior >= 1);
    // the zero mode is excluded: the inverse symbol does not define it
    CHECK(oracle.equal_on_interior(oracle.matrix_of(al), conj, interior, 0));
  }
}

TEST_CASE("operator specs realize to the expected compositions") {
  Rng rng(0x77aa77);
  for (int dim : {2, 3}) {
    OneForm A = random_selfadjoint_one_form(900 + dim, dim);
    SymbolExpansion SA = one_form_symbol(A);

    // atomic specs
    CHECK(realize(OperatorSpec::dirac(dim)) == dirac_symbol(dim));
    CHECK(realize(OperatorSpec::one_form(A)) == SA);
    CHECK(realize(OperatorSpec::dirac_power(dim, -2)) == dirac_power_symbol(dim, -2));
    CHECK(realize(OperatorSpec::abs_power(dim, 3)) == abs_dirac_power_symbol(dim, 3));

    // polynomial-times-inverse-power products terminate exactly
    OperatorSpec ADm2 =
        OperatorSpec::product({OperatorSpec::one_form(A), OperatorSpec::dirac_power(dim, -2)});
    SymbolExpansion S = realize(ADm2);
    REQUIRE(S.order().has_value());
    CHECK(*S.order() == -2);
    CHECK(floor_is_unbounded(S.floor()));
    CHECK(S == symbol_product(SA, dirac_power_symbol(dim, -2)));

    // an inverse power on the left of an x-dependent factor has no exact
    // expansion; realizing it without a floor must fail loudly
    OperatorSpec Dm2A =
        OperatorSpec::product({OperatorSpec::dirac_power(dim, -2), OperatorSpec::one_form(A)});
    CHECK_THROWS_AS(realize(Dm2A), std::logic_error);

    // with a floor it matches the directly floored product
    SymbolExpansion T = realize(Dm2A, -6);
    CHECK(equal_above(T, symbol_product(dirac_power_symbol(dim, -2), SA, -6), -6));

    // three-factor product with floor threading: D (mult b) D^{-1}
    TrigPoly b = rng.real_trig_poly(dim, 2, 2);
    OperatorSpec conj = OperatorSpec::product({OperatorSpec::dirac(dim),
                                               OperatorSpec::multiplication(b),
                                               OperatorSpec::dirac_power(dim, -1)});
    CHECK(equal_above(realize(conj, -5), alpha_conjugation(b, -5), -5));

    // nested products realize like flat ones
    OperatorSpec nested = OperatorSpec::product(
        {OperatorSpec::product({OperatorSpec::dirac(dim), OperatorSpec::one_form(A)}),
         OperatorSpec::abs_power(dim, -3)});
    OperatorSpec flat = OperatorSpec::product({OperatorSpec::dirac(dim), OperatorSpec::one_form(A),
                                               OperatorSpec::abs_power(dim, -3)});
    CHECK(equal_above(realize(nested, -6), realize(flat, -6), -6));
  }
}

TEST_CASE("building blocks land in the expected parity and reality classes") {
  for (int dim : {2, 3, 4}) {
    for (int k = -4; k <= 4; ++k) {
      SymbolExpansion P = dirac_power_symbol(dim, k);
      CHECK(in_even_algebra(P));
      CHECK(in_reality_class(P));
      if (k % 2 != 0) {
        SymbolExpansion Q = abs_dirac_power_symbol(dim, k);
        CHECK(in_odd_algebra(Q));
        CHECK(in_reality_class(Q));
        CHECK_FALSE(in_even_algebra(Q));
      }
    }

    OneForm A = random_selfadjoint_one_form(5150 + dim, dim);
    SymbolExpansion SA = one_form_symbol(A);
    CHECK(in_even_algebra(SA));
    CHECK(in_reality_class(SA));

    // A D^{-1} is a single homogeneous component: the polynomial factor has
    // xi-degree zero, so every composition correction vanishes
    SymbolExpansion ADinv = symbol_product(SA, dirac_power_symbol(dim, -1));
    CHECK(nonzero_component_count(ADinv) == 1);
    CHECK(floor_is_unbounded(ADinv.floor()));
    CHECK(in_even_algebra(ADinv));
    CHECK(in_reality_class(ADinv));

    // conjugations of real scalar functions stay in both distinguished classes
    Rng rng(60 + dim);
    TrigPoly b = rng.real_trig_poly(dim, 2, 2);
    SymbolExpansion al = alpha_conjugation(b, -4);
    CHECK(in_even_algebra(al));
    CHECK(in_reality_class(al));
  }
}
