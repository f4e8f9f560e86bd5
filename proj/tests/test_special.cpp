#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include <boost/math/special_functions/bessel.hpp>

#include "rmtwork/error.hpp"
#include "rmtwork/special.hpp"

using namespace rmtwork;
using cplx = std::complex<double>;

namespace {

double rel(cplx got, cplx want) { return std::abs(got - want) / std::abs(want); }

// e^{-Re z} I1(z), 30-digit reference values.
struct Ref {
  cplx z, value;
};
const Ref kI1Scaled[] = {
    {{0.5, 0.3}, {0.15115662954224785, 0.098530261771857705}},
    {{1.9, -1.0}, {0.1378677387242839, -0.17786683744451853}},
    {{3.0, 4.0}, {-0.1527621388966114, -0.076224784747293558}},
    {{10.0, 0.5}, {0.10766559667625781, 0.05565665041061641}},
    {{0.2, 15.0}, {-0.00461309395282266, 0.17124886738745973}},
    {{24.0, 3.0}, {-0.078234696685812431, 0.016002656296191557}},
    {{26.0, 1.0}, {0.042842835957019597, 0.064064364195871454}},
    {{5.0, 40.0}, {-0.0010125996941334346, 0.062763580868132738}},
    {{100.0, 250.0}, {-0.0083429672832536408, -0.022822633161795946}},
    {{1000.0, 3.0}, {-0.012482016794344406, 0.0017983615072372678}},
    {{0.01, 2000.0}, {7.0197253828183751e-5, 0.016208066437990412}},
};

}  // namespace

TEST_CASE("real Bessel wrappers match Boost and fill in x = 0") {
  for (double x : {1e-6, 0.3, 2.0, 17.5, 80.0}) {
    CHECK(bessel_j1(x) == doctest::Approx(boost::math::cyl_bessel_j(1, x)).epsilon(1e-15));
    CHECK(bessel_i1(x) == doctest::Approx(boost::math::cyl_bessel_i(1, x)).epsilon(1e-15));
  }
  CHECK(j1_over_x(0.0) == 0.5);
  CHECK(i1_over_x(0.0) == 0.5);
  CHECK(j1_over_x(1e-5) == doctest::Approx(bessel_j1(1e-5) / 1e-5).epsilon(1e-15));
  CHECK(i1_over_x(-2.0) == doctest::Approx(i1_over_x(2.0)).epsilon(1e-15));
  CHECK(std::isfinite(bessel_i1_scaled(5000.0)));
  CHECK(bessel_i1_scaled(5000.0) == doctest::Approx(1.0 / std::sqrt(2 * std::numbers::pi * 5000.0)).epsilon(1e-4));
}

TEST_CASE("complex scaled I1 matches reference values in every regime") {
  for (const auto& r : kI1Scaled) {
    INFO("z = " << r.z);
    CHECK(rel(bessel_i1_complex_scaled(r.z), r.value) < 1e-12);
  }
}

TEST_CASE("complex scaled I1 is odd and reduces to J1 on the imaginary axis") {
  for (double y : {0.7, 5.0, 24.9, 25.1, 300.0}) {
    // I1(i y) = i J1(y); Re zeta = 0 so the scale factor is 1
    const cplx v = bessel_i1_complex_scaled({0.0, y});
    CHECK(std::abs(v.real()) < 1e-15);
    CHECK(v.imag() == doctest::Approx(bessel_j1(y)).epsilon(1e-11));
  }
  const cplx z{-3.0, 2.0};
  CHECK(rel(bessel_i1_complex_scaled(z), -bessel_i1_complex_scaled(-z)) < 1e-15);
}

TEST_CASE("regime boundaries are continuous") {
  for (double r : {2.0, 25.0}) {
    for (double phase : {0.0, 0.7, 1.5707963267948966}) {
      const cplx below = std::polar(r * (1 - 1e-12), phase);
      const cplx above = std::polar(r * (1 + 1e-12), phase);
      CHECK(rel(bessel_i1_complex_scaled(below), bessel_i1_complex_scaled(above)) < 1e-10);
    }
  }
}

TEST_CASE("0F1(;2;z) identities with J1 and I1") {
  for (double x : {1e-3, 0.1, 0.5, 1.0, 3.3, 12.0, 29.9}) {
    CHECK(rel(hyp0f1_2(x * x) * x, boost::math::cyl_bessel_i(1, 2 * x)) < 1e-12);
    CHECK(rel(hyp0f1_2(-x * x) * x, boost::math::cyl_bessel_j(1, 2 * x)) < 1e-12);
  }
}

TEST_CASE("0F1(;2;z) against reference values") {
  CHECK(rel(hyp0f1_2(-3.0), 0.088003064612533165) < 1e-13);
  CHECK(rel(hyp0f1_2(-50.0), 0.021893548253388934) < 1e-13);
  CHECK(rel(hyp0f1_2({-0.25, 0.1}), {0.87931867063132391, 0.045954789713859892}) < 1e-14);
  CHECK(rel(hyp0f1_2(400.0), 735369808162967.64) < 1e-13);
  CHECK(rel(hyp0f1_2({-2500.0, 600.0}), {-48.556422910293871, -106.26441341667816}) < 1e-12);

  // 0F1 ~ 1e949 here; only the scaled form is representable
  const ScaledComplex big = hyp0f1_2_scaled({1e6, 1e6});
  CHECK(std::log(std::abs(big.mantissa)) + big.log_scale == doctest::Approx(2185.4810060111999));
  const double phase = std::remainder(std::arg(big.mantissa) - (-1.4711366787234605), 2 * std::numbers::pi);
  CHECK(std::abs(phase) < 1e-9);
}

TEST_CASE("0F1 domain errors") {
  CHECK_THROWS_AS(hyp0f1_2_scaled({2e14, 0.0}), DomainError);
  CHECK_THROWS_AS(hyp0f1_2_scaled({std::nan(""), 0.0}), DomainError);
  CHECK_THROWS_AS(hyp0f1_2_scaled({INFINITY, 0.0}), DomainError);
  CHECK(hyp0f1_2(0.0) == cplx(1.0, 0.0));
}
