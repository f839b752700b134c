#include "fft_backend.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

#include "gpam/aligned.hpp"

namespace gpam::detail {
namespace {

struct Plans {
  fftw_plan c2r = nullptr;
  fftw_plan r2c = nullptr;
};

// FFTW's planner is not re-entrant; execution of an existing plan on fresh
// arrays is. ESTIMATE plans are deterministic, so results do not depend on
// timing measurements taken at plan time.
const Plans& plans_for(int m) {
  static std::mutex mu;
  static std::map<int, Plans> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;
  const std::size_t real_size = static_cast<std::size_t>(m) * m;
  const std::size_t half_size = static_cast<std::size_t>(m) * (m / 2 + 1);
  std::vector<double, AlignedAllocator<double>> r(real_size);
  std::vector<std::complex<double>, AlignedAllocator<std::complex<double>>> c(
      half_size);
  auto* cc = reinterpret_cast<fftw_complex*>(c.data());
  Plans p;
  p.c2r = fftw_plan_dft_c2r_2d(m, m, cc, r.data(), FFTW_ESTIMATE);
  p.r2c = fftw_plan_dft_r2c_2d(m, m, r.data(), cc, FFTW_ESTIMATE);
  return cache.emplace(m, p).first->second;
}

}  // namespace

void fft_c2r(int m, std::complex<double>* half, double* out) {
  fftw_execute_dft_c2r(plans_for(m).c2r, reinterpret_cast<fftw_complex*>(half),
                       out);
}

void fft_r2c(int m, double* in, std::complex<double>* half) {
  fftw_execute_dft_r2c(plans_for(m).r2c, in,
                       reinterpret_cast<fftw_complex*>(half));
}

}  // namespace gpam::detail
