#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace gazesynth::dsp {

/// Second-order section, a0 normalised to 1. First-order sections carry
/// b2 = a2 = 0.
struct Biquad {
  std::array<double, 3> b{};
  std::array<double, 3> a{1.0, 0.0, 0.0};
};

/// Digital Butterworth low-pass via the bilinear transform with frequency
/// prewarping. Unity DC gain per section.
std::vector<Biquad> butterworth_lowpass(int order, double cutoff_hz, double sample_rate_hz);

/// Single-pass squared magnitude |H(f)|^2 of a cascade.
double magnitude_squared(const std::vector<Biquad>& sections, double freq_hz, double sample_rate_hz);

/// Causal filtering, each section started in its steady state for a constant
/// input equal to x[0].
std::vector<double> filter_causal(const std::vector<Biquad>& sections, std::span<const double> x);

/// Padding used on each side before forward-backward filtering: three time
/// constants 1/(2 pi fc), in samples.
std::size_t edge_pad_length(double cutoff_hz, double sample_rate_hz);

/// Forward-backward filtering with odd reflective padding of pad samples.
/// Throws std::invalid_argument when the signal is not longer than pad.
std::vector<double> filtfilt(const std::vector<Biquad>& sections, std::span<const double> x, std::size_t pad);

}  // namespace gazesynth::dsp
