#include "graphwave/fourier.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstdint>
#include <mutex>
#include <numbers>

#include "graphwave/errors.hpp"

namespace graphwave {

namespace {

constexpr std::size_t kMaxFft = std::size_t{1} << 26;

std::mutex fftw_plan_mutex;  // FFTW planning is not thread-safe

// e^{is w j^2 / 2} with the phase reduced in long double; j^2 is exact
// below 2^63 and the reduction keeps absolute phase error ~ 1e-12 even for
// accumulated phases ~ 1e8.
std::complex<double> quadratic_twiddle(std::uint64_t j, double w, int sign) {
  constexpr long double two_pi = 2.0L * std::numbers::pi_v<long double>;
  long double phase = std::fmod(0.5L * static_cast<long double>(w) *
                                    static_cast<long double>(j * j),
                                two_pi);
  double p = static_cast<double>(sign) * static_cast<double>(phase);
  return {std::cos(p), std::sin(p)};
}

void fft_inplace(std::vector<std::complex<double>>& data, int direction) {
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(fftw_plan_mutex);
    plan = fftw_plan_dft_1d(static_cast<int>(data.size()),
                            reinterpret_cast<fftw_complex*>(data.data()),
                            reinterpret_cast<fftw_complex*>(data.data()), direction,
                            FFTW_ESTIMATE);
  }
  if (!plan) throw NumericError("fft planning failed");
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(fftw_plan_mutex);
    fftw_destroy_plan(plan);
  }
}

}  // namespace

std::vector<std::complex<double>> chirp_transform(const std::vector<std::complex<double>>& c,
                                                  double w, std::size_t m_count) {
  const std::size_t n = c.size();
  if (n == 0 || m_count == 0) return std::vector<std::complex<double>>(m_count);

  std::size_t padded = 1;
  while (padded < n + m_count - 1) padded <<= 1;
  if (padded > kMaxFft)
    throw NumericError("chirp_transform: padded FFT size exceeds the 2^26 memory guard");

  std::vector<std::complex<double>> a(padded);
  for (std::size_t j = 0; j < n; ++j) a[j] = c[j] * quadratic_twiddle(j, w, -1);

  // b_t = e^{+i w t^2 / 2} for t in (-(n-1)) .. (m_count-1), wrapped circularly.
  std::vector<std::complex<double>> b(padded);
  for (std::size_t t = 0; t < m_count; ++t) b[t] = quadratic_twiddle(t, w, +1);
  for (std::size_t j = 1; j < n; ++j) b[padded - j] = quadratic_twiddle(j, w, +1);

  fft_inplace(a, FFTW_FORWARD);
  fft_inplace(b, FFTW_FORWARD);
  for (std::size_t i = 0; i < padded; ++i) a[i] *= b[i];
  fft_inplace(a, FFTW_BACKWARD);

  std::vector<std::complex<double>> out(m_count);
  const double scale = 1.0 / static_cast<double>(padded);
  for (std::size_t m = 0; m < m_count; ++m)
    out[m] = a[m] * scale * quadratic_twiddle(m, w, -1);
  return out;
}

std::vector<std::complex<double>> direct_transform(const std::vector<std::complex<double>>& c,
                                                   double w, std::size_t m_count) {
  std::vector<std::complex<double>> out(m_count);
  for (std::size_t m = 0; m < m_count; ++m) {
    std::complex<double> acc = 0.0;
    for (std::size_t j = 0; j < c.size(); ++j) {
      long double phase = std::fmod(static_cast<long double>(w) * static_cast<long double>(j) *
                                        static_cast<long double>(m),
                                    2.0L * std::numbers::pi_v<long double>);
      double p = static_cast<double>(phase);
      acc += c[j] * std::complex<double>(std::cos(p), -std::sin(p));
    }
    out[m] = acc;
  }
  return out;
}

}  // namespace graphwave
