#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "apmeas/convolution.hpp"
#include "apmeas/measure.hpp"

namespace apmeas {

enum class Taper { None, Triangular };

std::string to_string(Taper t);

struct Peak {
  double freq = 0.0;
  double height = 0.0;     // sample maximum
  double intensity = 0.0;  // integral over the peak region
};

struct Spectrum {
  double fmin = 0.0;
  double fstep = 1.0;
  std::vector<double> intensity;  // clipped at 0
  double min_raw = 0.0;           // smallest value before clipping
  double window_length = 0.0;
  std::vector<Peak> peaks;
  double pp_mass_fraction = 0.0;

  double freq(std::size_t i) const noexcept { return fmin + static_cast<double>(i) * fstep; }
};

/// gamma_n = (1/|A_n|) omega|A_n * (conj omega|A_n)^dagger. Throws TruncationTooSmall.
Measure autocorrelation(const Measure& omega, const VanHoveSequence& vh, std::size_t n);

/// Real part of the Fourier transform of a finite measure on fmin + i*fstep.
/// The triangular taper is max(0, 1 - |x|/halfwidth); halfwidth <= 0 selects
/// the support radius of gamma.
Spectrum fourier(const Measure& gamma, double fmin, double fmax, double fstep, Taper taper = Taper::Triangular,
                 double taper_halfwidth = 0.0);

struct PeakSplit {
  std::vector<Peak> peaks;
  double continuous_floor = 0.0;  // largest intensity outside every peak region
  double pp_mass_fraction = 0.0;
};

/// Peak regions are maximal runs of samples >= threshold; each yields one peak
/// at its maximum.
PeakSplit peak_split(const Spectrum& s, double threshold);

/// Periodogram |sum_x w e^{-2 pi i k x}|^2 / length of the atoms of omega in
/// the open window, untapered.
std::vector<double> periodogram(const Measure& omega, const Window& window, double fmin, double fmax,
                                double fstep);

/// Frequencies of the k largest local maxima of a sampled curve.
std::vector<double> top_peak_positions(const std::vector<double>& values, double fmin, double fstep,
                                       std::size_t k);

}  // namespace apmeas
