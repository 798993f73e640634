#include <doctest.h>

#include "eclld/lfunc.hpp"
#include "eclld/primes.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

using namespace eclld;

namespace {

const LSeries& curve_one() {
  static const LSeries ls = make_lseries(WashingtonCurve{1});
  return ls;
}

const LSeries& curve_minus_one() {
  static const LSeries ls = make_lseries(WashingtonCurve{-1}, verified_conductor(WashingtonCurve{-1}));
  return ls;
}

}  // namespace

TEST_CASE("coefficients are multiplicative with the Hecke relation at good primes") {
  for (std::int64_t t : {1, -1, 13}) {
    const WashingtonCurve c{t};
    const auto lam = coefficients(c, 2000);
    CHECK(lam[1] == 1.0);
    CHECK(lam[2] == 0.0);
    CHECK(lam[4] == 0.0);
    for (int p : primes_up_to(44)) {
      const double lp = lam[static_cast<std::size_t>(p)];
      CHECK(std::abs(lp) <= 2.0);
      const double expect = (p == 2 || c.bad_at(p)) ? lp * lp : lp * lp - 1.0;
      CHECK(lam[static_cast<std::size_t>(p * p)] == doctest::Approx(expect).epsilon(1e-12));
    }
    for (int m = 1; m < 40; ++m)
      for (int n = 1; n < 40; ++n)
        if (std::gcd(m, n) == 1)
          CHECK(lam[static_cast<std::size_t>(m * n)] ==
                doctest::Approx(lam[static_cast<std::size_t>(m)] * lam[static_cast<std::size_t>(n)]).epsilon(1e-12));
  }
}

TEST_CASE("coefficient count guard") {
  CHECK(required_terms(1352) == 368);
  CHECK(default_terms(1352) == 1571);
  CHECK_THROWS_AS(make_lseries(WashingtonCurve{1}, std::nullopt, 100), std::invalid_argument);
  CHECK_THROWS_AS(coefficients(WashingtonCurve{1}, 0), std::invalid_argument);
  CHECK_THROWS_AS(completed_L(cplx(2.0, 0.0), curve_one()), std::domain_error);
}

TEST_CASE("two-parameter consistency") {
  for (const LSeries* ls : {&curve_one(), &curve_minus_one()})
    for (cplx s : {cplx(0.5, 0.0), cplx(0.6, 0.3), cplx(0.5, 2.0), cplx(0.2, 5.0), cplx(0.5, 10.0)})
      CHECK(afe_consistency(*ls, s) < 1e-8);
}

TEST_CASE("wrong conductor or sign breaks consistency") {
  LSeries wrong = curve_one();
  wrong.conductor.value = 2 * wrong.conductor.value;
  CHECK(afe_consistency(wrong, cplx(0.6, 0.3)) > 1e-4);
  LSeries flipped = curve_one();
  flipped.root_number = 1;
  CHECK(afe_consistency(flipped, cplx(0.6, 0.3)) > 1e-4);
}

TEST_CASE("completed L is independent of the kernel") {
  AfeOptions a, b;
  b.kernel_scale = 2.5;
  b.height = 20.0;
  b.Y = 1.3;
  for (cplx s : {cplx(0.7, 1.0), cplx(0.5, 4.0)}) {
    const cplx u = completed_L(s, curve_one(), a).value, v = completed_L(s, curve_one(), b).value;
    CHECK(std::abs(u - v) < 1e-9 * std::abs(u) + 1e-12);
  }
}

TEST_CASE("functional equation Lambda(s) = -Lambda(1-s)") {
  for (cplx s : {cplx(0.8, 0.4), cplx(0.3, 3.0)}) {
    const cplx u = completed_L(s, curve_one()).value, v = completed_L(1.0 - s, curve_one()).value;
    CHECK(std::abs(u + v) < 1e-9 * std::abs(u));
  }
}

TEST_CASE("central zero is simple for the small curves") {
  for (const LSeries* ls : {&curve_one(), &curve_minus_one()}) {
    const CentralValues c = central_values(*ls);
    CHECK(c.value < 1e-8);
    CHECK(c.first > 1e-3);
    CHECK(c.order == 1);
  }
}

TEST_CASE("rotated Z is real on the critical line") {
  for (double t : {0.7, 3.3, 8.1}) {
    const ComplexValue z = rotated_Z(curve_one(), t);
    CHECK(std::abs(z.value.imag()) < 1e-9 * std::max(1.0, std::abs(z.value.real())));
  }
}

TEST_CASE("zeros on [0, 10]") {
  const ZeroList z = find_zeros(curve_one(), 10.0);
  CHECK(z.central_order == 1);
  CHECK(std::abs(static_cast<double>(z.ordinates.size()) - z.expected_count) <= 2.0);
  CHECK_FALSE(z.count_warning);
  CHECK(z.max_residual < 1e-6);
  for (std::size_t i = 0; i < z.ordinates.size(); ++i) {
    CHECK(z.ordinates[i] > 0.0);
    if (i > 0) CHECK(z.ordinates[i] > z.ordinates[i - 1]);
    CHECK(z.scaled[i] == doctest::Approx(z.ordinates[i] * z.L / std::numbers::pi));
  }
  // first ordinate recomputed with a different kernel and balance parameter
  AfeOptions o;
  o.kernel_scale = 2.5;
  o.height = 20.0;
  o.Y = 1.3;
  CHECK(std::abs(rotated_Z(curve_one(), z.ordinates[0], o).value.real()) < 1e-7);
  CHECK(z.ordinates[0] == doctest::Approx(1.90095).epsilon(1e-5));
  CHECK_THROWS_AS(find_zeros(curve_one(), 40.0), std::invalid_argument);
}

TEST_CASE("zero count estimate grows like T log Q / pi") {
  const double a = zero_count_estimate(curve_one(), 10.0, 1), b = zero_count_estimate(curve_one(), 20.0, 1);
  CHECK(b > a);
  CHECK(zero_count_estimate(curve_one(), 10.0, 0) - a == doctest::Approx(0.5));
}

TEST_CASE("empirical one-level sums") {
  const std::vector<LSeries> curves{curve_one(), curve_minus_one()};
  const double X = 1e4;

  TestFunction one{"one", [](double) { return 1.0; }, [](double) { return 0.0; }, 0.0,
                   std::numeric_limits<double>::infinity()};
  const EmpiricalResult count = empirical_one_level(curves, one, X, 10.0);
  double expect = 0.0;
  for (const LSeries& ls : curves) {
    const ZeroList z = find_zeros(ls, 10.0);
    expect += 2.0 * static_cast<double>(z.ordinates.size()) + z.central_order;
  }
  CHECK(count.average == doctest::Approx(expect / 2.0));
  CHECK(count.rows[0].truncated);

  const TestFunction g = gaussian_test_function();
  const EmpiricalResult e = empirical_one_level(curves, g, X);
  CHECK(e.central_average == doctest::Approx(g.psi(0.0)));
  for (const EmpiricalRow& row : e.rows) {
    CHECK(row.central_contribution == doctest::Approx(1.0));
    CHECK(row.contribution >= row.central_contribution);
    CHECK_FALSE(row.truncated);
  }
  CHECK_THROWS_AS(empirical_one_level({}, g, X), std::invalid_argument);
}

TEST_CASE("verified conductors") {
  CHECK(verified_conductor(WashingtonCurve{1}).value == BigInt(1352));
  const Conductor c = verified_conductor(WashingtonCurve{-1});
  CHECK(c.exact);
  CHECK(c.value == BigInt(196));
  CHECK(verified_conductor(WashingtonCurve{2}).value == BigInt(5776));
  CHECK(verified_conductor(WashingtonCurve{4}).value == BigInt(21904));
}
