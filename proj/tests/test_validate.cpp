#include <doctest.h>

#include <cmath>

#include "rmtwork/validate.hpp"

using namespace rmtwork;

TEST_CASE("special-function and oracle suites pass") {
  CHECK(check_special_identities().passed);
  CHECK(check_quadrature_oracles().passed);
  CHECK(check_normalization(5).passed);
  for (const auto& c : check_limits()) CHECK_MESSAGE(c.passed, c.name);
}

TEST_CASE("Jarzynski suite reports every class and temperature") {
  const auto results = check_jarzynski(9, 40);
  CHECK(results.size() == 9);
  for (const auto& c : results) {
    CHECK_MESSAGE(c.passed, c.name);
    CHECK(c.tolerance == 1e-10);
  }
}

TEST_CASE("semicircle check accepts the right radius and rejects a wrong one") {
  CHECK(check_semicircle([](const EnsembleSpec& s) { return s.radius(); }, 3).passed);
  // injected error: radius without the 1/pi
  const RadiusRule wrong = [](const EnsembleSpec& s) { return 2.0 * s.n_levels * s.mean_spacing; };
  const CheckResult bad = check_semicircle(wrong, 3);
  CHECK_FALSE(bad.passed);
  CHECK(bad.measured > 0.1);
}

TEST_CASE("Kramers and spacing checks") {
  CHECK(check_kramers(4).passed);
  CHECK(check_central_spacing(4, 3, 400).measured < 0.1);
}

TEST_CASE("report aggregation") {
  ValidationReport r;
  r.checks.push_back({"a", 0.0, 1.0, true, ""});
  CHECK(r.passed());
  r.checks.push_back({"b", 2.0, 1.0, false, ""});
  CHECK_FALSE(r.passed());
}
