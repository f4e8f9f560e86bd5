#include "rmtwork/kernels.hpp"

#include <cmath>
#include <cstddef>
#include <numbers>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "rmtwork/error.hpp"

namespace rmtwork::kernels {

namespace {

inline std::complex<double> characteristic_at(std::span<const double> work,
                                              std::span<const double> prob, double u) {
  double re = 0.0;
  double im = 0.0;
  const std::size_t n = work.size();
  for (std::size_t j = 0; j < n; ++j) {
    const double phase = u * work[j];
    re += prob[j] * std::cos(phase);
    im += prob[j] * std::sin(phase);
  }
  return {re, im};
}

inline double inverse_at(std::span<const double> u, std::span<const double> weight,
                         std::span<const std::complex<double>> g, double w) {
  double acc = 0.0;
  const std::size_t n = u.size();
  for (std::size_t k = 0; k < n; ++k) {
    const double phase = u[k] * w;
    // Re(g e^{-i phase})
    acc += weight[k] * (g[k].real() * std::cos(phase) + g[k].imag() * std::sin(phase));
  }
  return acc / std::numbers::pi;
}

void check_sizes(std::size_t a, std::size_t b, const char* what) {
  if (a != b) throw ContractViolation(what);
}

}  // namespace

void characteristic_serial(std::span<const double> work, std::span<const double> prob,
                           std::span<const double> u, std::span<std::complex<double>> out) {
  check_sizes(work.size(), prob.size(), "characteristic: work/prob size mismatch");
  check_sizes(u.size(), out.size(), "characteristic: u/out size mismatch");
  for (std::size_t k = 0; k < u.size(); ++k) out[k] = characteristic_at(work, prob, u[k]);
}

void characteristic_parallel(std::span<const double> work, std::span<const double> prob,
                             std::span<const double> u, std::span<std::complex<double>> out) {
  check_sizes(work.size(), prob.size(), "characteristic: work/prob size mismatch");
  check_sizes(u.size(), out.size(), "characteristic: u/out size mismatch");
  const auto n = static_cast<std::ptrdiff_t>(u.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < n; ++k) out[k] = characteristic_at(work, prob, u[k]);
}

void inverse_fourier_serial(std::span<const double> u, std::span<const double> weight,
                            std::span<const std::complex<double>> g, std::span<const double> w,
                            std::span<double> out) {
  check_sizes(u.size(), weight.size(), "inverse_fourier: u/weight size mismatch");
  check_sizes(u.size(), g.size(), "inverse_fourier: u/g size mismatch");
  check_sizes(w.size(), out.size(), "inverse_fourier: w/out size mismatch");
  for (std::size_t j = 0; j < w.size(); ++j) out[j] = inverse_at(u, weight, g, w[j]);
}

void inverse_fourier_parallel(std::span<const double> u, std::span<const double> weight,
                              std::span<const std::complex<double>> g,
                              std::span<const double> w, std::span<double> out) {
  check_sizes(u.size(), weight.size(), "inverse_fourier: u/weight size mismatch");
  check_sizes(u.size(), g.size(), "inverse_fourier: u/g size mismatch");
  check_sizes(w.size(), out.size(), "inverse_fourier: w/out size mismatch");
  const auto n = static_cast<std::ptrdiff_t>(w.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t j = 0; j < n; ++j) out[j] = inverse_at(u, weight, g, w[j]);
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace rmtwork::kernels
