#include "gazesynth/filter.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace gazesynth::dsp {

std::vector<Biquad> butterworth_lowpass(int order, double cutoff_hz, double sample_rate_hz) {
  if (order < 1) throw std::invalid_argument("filter order must be >= 1");
  if (!(cutoff_hz > 0.0) || !(cutoff_hz < sample_rate_hz / 2.0)) {
    throw std::invalid_argument("cutoff must lie in (0, Nyquist)");
  }
  const double k = 2.0 * sample_rate_hz;
  const double wc = k * std::tan(std::numbers::pi * cutoff_hz / sample_rate_hz);

  std::vector<Biquad> sections;
  // Analog poles wc * exp(i*pi*(2m + order + 1) / (2*order)); take one of each
  // conjugate pair, plus the real pole at -wc for odd orders.
  for (int m = 0; m < order / 2; ++m) {
    const double theta = std::numbers::pi * (2.0 * m + order + 1) / (2.0 * order);
    const double re = wc * std::cos(theta);
    const double a1 = -2.0 * re;  // s^2 + a1 s + a0
    const double a0 = wc * wc;
    const double d = k * k + a1 * k + a0;
    Biquad s;
    s.b = {a0 / d, 2.0 * a0 / d, a0 / d};
    s.a = {1.0, 2.0 * (a0 - k * k) / d, (k * k - a1 * k + a0) / d};
    sections.push_back(s);
  }
  if (order % 2 == 1) {
    const double d = k + wc;
    Biquad s;
    s.b = {wc / d, wc / d, 0.0};
    s.a = {1.0, (wc - k) / d, 0.0};
    sections.push_back(s);
  }
  return sections;
}

double magnitude_squared(const std::vector<Biquad>& sections, double freq_hz, double sample_rate_hz) {
  const std::complex<double> z1 = std::polar(1.0, -2.0 * std::numbers::pi * freq_hz / sample_rate_hz);
  const std::complex<double> z2 = z1 * z1;
  double mag2 = 1.0;
  for (const auto& s : sections) {
    const auto num = s.b[0] + s.b[1] * z1 + s.b[2] * z2;
    const auto den = s.a[0] + s.a[1] * z1 + s.a[2] * z2;
    mag2 *= std::norm(num / den);
  }
  return mag2;
}

std::vector<double> filter_causal(const std::vector<Biquad>& sections, std::span<const double> x) {
  std::vector<double> y(x.begin(), x.end());
  if (y.empty()) return y;
  for (const auto& s : sections) {
    // Transposed direct form II, steady state for constant input y[0].
    const double x0 = y[0];
    double z2 = (s.b[2] - s.a[2]) * x0;
    double z1 = (s.b[1] - s.a[1]) * x0 + z2;
    for (double& v : y) {
      const double in = v;
      const double out = s.b[0] * in + z1;
      z1 = s.b[1] * in - s.a[1] * out + z2;
      z2 = s.b[2] * in - s.a[2] * out;
      v = out;
    }
  }
  return y;
}

std::size_t edge_pad_length(double cutoff_hz, double sample_rate_hz) {
  const double tau_samples = sample_rate_hz / (2.0 * std::numbers::pi * cutoff_hz);
  return static_cast<std::size_t>(std::ceil(3.0 * tau_samples));
}

std::vector<double> filtfilt(const std::vector<Biquad>& sections, std::span<const double> x, std::size_t pad) {
  const std::size_t n = x.size();
  if (n <= pad || n < 2) {
    throw std::invalid_argument("signal of " + std::to_string(n) + " samples is too short for edge padding of " +
                                std::to_string(pad));
  }
  std::vector<double> ext;
  ext.reserve(n + 2 * pad);
  for (std::size_t k = pad; k >= 1; --k) ext.push_back(2.0 * x[0] - x[k]);
  ext.insert(ext.end(), x.begin(), x.end());
  for (std::size_t k = 1; k <= pad; ++k) ext.push_back(2.0 * x[n - 1] - x[n - 1 - k]);

  std::vector<double> fwd = filter_causal(sections, ext);
  std::reverse(fwd.begin(), fwd.end());
  std::vector<double> back = filter_causal(sections, fwd);
  std::reverse(back.begin(), back.end());
  return {back.begin() + static_cast<std::ptrdiff_t>(pad), back.begin() + static_cast<std::ptrdiff_t>(pad + n)};
}

}  // namespace gazesynth::dsp
