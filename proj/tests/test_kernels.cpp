#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include <omp.h>

#include "rmtwork/kernels.hpp"
#include "rmtwork/workstats.hpp"

using namespace rmtwork;
using cplx = std::complex<double>;

namespace {

struct Data {
  std::vector<double> work, prob;
};

Data random_atoms(std::size_t n) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> w(-30.0, 30.0), p(0.0, 1.0);
  Data d{std::vector<double>(n), std::vector<double>(n)};
  for (std::size_t k = 0; k < n; ++k) {
    d.work[k] = w(rng);
    d.prob[k] = p(rng) / n;
  }
  return d;
}

// Runs `body` with the given number of OpenMP threads.
template <class F>
void with_threads(int n, F&& body) {
  const int saved = omp_get_max_threads();
  omp_set_num_threads(n);
  body();
  omp_set_num_threads(saved);
}

}  // namespace

TEST_CASE("characteristic kernel: parallel equals serial bit for bit") {
  const Data d = random_atoms(5000);
  const auto u = uniform_grid(0.0, 3.0, 257);
  std::vector<cplx> serial(u.size()), parallel(u.size());
  kernels::characteristic_serial(d.work, d.prob, u, serial);
  for (int threads : {1, 2, 4}) {
    with_threads(threads, [&] { kernels::characteristic_parallel(d.work, d.prob, u, parallel); });
    CHECK(serial == parallel);
  }
}

TEST_CASE("characteristic kernel: direct sum") {
  const std::vector<double> work{-1.0, 2.0}, prob{0.25, 0.75};
  const std::vector<double> u{0.0, 0.4};
  std::vector<cplx> out(2);
  kernels::characteristic_serial(work, prob, u, out);
  CHECK(std::abs(out[0] - 1.0) < 1e-15);
  CHECK(std::abs(out[1] - (0.25 * std::polar(1.0, -0.4) + 0.75 * std::polar(1.0, 0.8))) < 1e-15);
}

TEST_CASE("inverse Fourier kernel: parallel equals serial bit for bit") {
  const auto u = uniform_grid(0.0, 50.0, 4001);
  std::vector<double> weight(u.size(), u[1] - u[0]);
  std::vector<cplx> g(u.size());
  for (std::size_t k = 0; k < u.size(); ++k) g[k] = std::exp(-0.5 * u[k] * u[k]);
  const auto w = uniform_grid(-4.0, 4.0, 81);
  std::vector<double> serial(w.size()), parallel(w.size());
  kernels::inverse_fourier_serial(u, weight, g, w, serial);
  for (int threads : {1, 3}) {
    with_threads(threads, [&] { kernels::inverse_fourier_parallel(u, weight, g, w, parallel); });
    CHECK(serial == parallel);
  }
  // Gaussian characteristic function inverts to the standard normal density
  weight.front() *= 0.5;
  kernels::inverse_fourier_serial(u, weight, g, w, serial);
  for (std::size_t j = 0; j < w.size(); ++j) {
    CHECK(serial[j] == doctest::Approx(std::exp(-0.5 * w[j] * w[j]) / std::sqrt(2 * std::numbers::pi)).epsilon(1e-10));
  }
}

TEST_CASE("thread count is reported") { CHECK(kernels::max_threads() >= 1); }
