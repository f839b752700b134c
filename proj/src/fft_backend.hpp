#pragma once

#include <complex>

namespace gpam::detail {

// Unnormalized 2-D real transforms on an m×m grid; the half spectrum is
// m×(m/2+1) row-major. c2r overwrites its input. Thread-safe.
void fft_c2r(int m, std::complex<double>* half, double* out);
void fft_r2c(int m, double* in, std::complex<double>* half);

}  // namespace gpam::detail
