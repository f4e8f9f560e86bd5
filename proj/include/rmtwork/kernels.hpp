#pragma once

// Data-parallel inner loops. Each kernel has a serial reference and an OpenMP
// version; the OpenMP version parallelises over output points only, so every
// output is produced by the same arithmetic in the same order and the two
// agree bit-for-bit.

#include <complex>
#include <span>

namespace rmtwork::kernels {

/// out[k] = sum_j prob[j] exp(i u[k] work[j]).
void characteristic_serial(std::span<const double> work, std::span<const double> prob,
                           std::span<const double> u, std::span<std::complex<double>> out);
void characteristic_parallel(std::span<const double> work, std::span<const double> prob,
                             std::span<const double> u, std::span<std::complex<double>> out);

/// out[j] = (1/pi) sum_k weight[k] Re(g[k] exp(-i u[k] w[j])).
/// With trapezoid weights on u >= 0 this inverts a Hermitian characteristic function.
void inverse_fourier_serial(std::span<const double> u, std::span<const double> weight,
                            std::span<const std::complex<double>> g, std::span<const double> w,
                            std::span<double> out);
void inverse_fourier_parallel(std::span<const double> u, std::span<const double> weight,
                              std::span<const std::complex<double>> g,
                              std::span<const double> w, std::span<double> out);

/// Number of OpenMP threads the parallel kernels will use (1 without OpenMP).
int max_threads();

}  // namespace rmtwork::kernels
