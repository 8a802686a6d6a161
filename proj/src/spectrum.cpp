#include "scr/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fft_util.hpp"

namespace scr {

std::size_t RadialSpectrum::dominant_bin() const {
  return static_cast<std::size_t>(
      std::max_element(power.begin(), power.end()) - power.begin());
}

namespace {

// Luminance plane of the (sub)image: channel mean.
std::vector<double> luminance_window(const ImageBuffer& img, int x0, int y0, int w,
                                     int h) {
  std::vector<double> plane(static_cast<std::size_t>(w) * h, 0.0);
  const double inv_c = 1.0 / img.channels;
  for (int c = 0; c < img.channels; ++c)
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x)
        plane[static_cast<std::size_t>(y) * w + x] += inv_c * img.at(c, y0 + y, x0 + x);
  return plane;
}

}  // namespace

RadialSpectrum radial_power_spectrum(const ImageBuffer& img,
                                     const std::optional<RegionDeg>& region,
                                     double fit_lo_frac, double fit_hi_frac) {
  img.validate();

  int x0 = 0, y0 = 0, w = img.width, h = img.height;
  if (region) {
    const double cx = img.width / 2.0 + region->center_x_deg * img.ppd;
    const double cy = img.height / 2.0 + region->center_y_deg * img.ppd;
    w = static_cast<int>(std::llround(region->width_deg * img.ppd));
    h = static_cast<int>(std::llround(region->height_deg * img.ppd));
    x0 = static_cast<int>(std::llround(cx - w / 2.0));
    y0 = static_cast<int>(std::llround(cy - h / 2.0));
    if (x0 < 0 || y0 < 0 || x0 + w > img.width || y0 + h > img.height)
      throw std::invalid_argument("radial spectrum: region outside image bounds");
  }
  if (w < 32 || h < 32)
    throw std::invalid_argument("radial spectrum: region smaller than 32 x 32 pixels");

  std::vector<double> plane = luminance_window(img, x0, y0, w, h);

  double mean = 0.0;
  for (double v : plane) mean += v;
  mean /= static_cast<double>(plane.size());

  // separable Hann window on the mean-removed plane
  std::vector<double> wx(w), wy(h);
  for (int x = 0; x < w; ++x) wx[x] = 0.5 - 0.5 * std::cos(2.0 * M_PI * x / (w - 1));
  for (int y = 0; y < h; ++y) wy[y] = 0.5 - 0.5 * std::cos(2.0 * M_PI * y / (h - 1));
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      plane[static_cast<std::size_t>(y) * w + x] =
          (plane[static_cast<std::size_t>(y) * w + x] - mean) * wx[x] * wy[y];

  std::vector<double> spectrum(2 * detail::half_spectrum_size(w, h));
  detail::fft_r2c_2d(plane.data(), spectrum.data(), w, h);

  const double nyquist = img.nyquist_cpd();
  const int n_bins = std::min(w, h) / 2;
  const double df = nyquist / n_bins;

  RadialSpectrum out;
  out.freq_cpd.resize(n_bins);
  out.power.assign(n_bins, 0.0);
  std::vector<double> counts(n_bins, 0.0);
  for (int b = 0; b < n_bins; ++b) out.freq_cpd[b] = (b + 0.5) * df;

  const int half_w = w / 2 + 1;
  for (int ky = 0; ky < h; ++ky) {
    const double fy = (ky <= h / 2 ? ky : ky - h) / static_cast<double>(h);
    for (int kx = 0; kx < half_w; ++kx) {
      if (kx == 0 && ky == 0) continue;  // DC is removed anyway
      const double fx = kx / static_cast<double>(w);
      const double f_cpd = img.ppd * std::sqrt(fx * fx + fy * fy);
      const int b = static_cast<int>(f_cpd / df);
      if (b >= n_bins) continue;
      const std::size_t i = 2 * (static_cast<std::size_t>(ky) * half_w + kx);
      const double p = spectrum[i] * spectrum[i] + spectrum[i + 1] * spectrum[i + 1];
      // bins 0 < kx < w/2 stand in for their Hermitian mirror as well
      const double weight = (kx == 0 || 2 * kx == w) ? 1.0 : 2.0;
      out.power[b] += weight * p;
      counts[b] += weight;
    }
  }
  for (int b = 0; b < n_bins; ++b)
    if (counts[b] > 0.0) out.power[b] /= counts[b];

  // least-squares slope of log power vs log frequency over the mid band
  out.fit_lo_cpd = fit_lo_frac * nyquist;
  out.fit_hi_cpd = fit_hi_frac * nyquist;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (int b = 0; b < n_bins; ++b) {
    if (out.freq_cpd[b] < out.fit_lo_cpd || out.freq_cpd[b] > out.fit_hi_cpd) continue;
    if (!(out.power[b] > 0.0) || counts[b] == 0.0) continue;
    const double lx = std::log10(out.freq_cpd[b]);
    const double ly = std::log10(out.power[b]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  }
  if (n >= 2) {
    const double denom = n * sxx - sx * sx;
    if (std::abs(denom) > 1e-12) out.slope = (n * sxy - sx * sy) / denom;
  }
  return out;
}

}  // namespace scr
