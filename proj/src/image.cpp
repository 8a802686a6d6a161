#include "scr/image.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fft_util.hpp"
#include "scr/kernels.hpp"

namespace scr {

ImageBuffer ImageBuffer::create(int width, int height, int channels, double ppd) {
  ImageBuffer img;
  img.width = width;
  img.height = height;
  img.channels = channels;
  img.ppd = ppd;
  img.data.assign(static_cast<std::size_t>(width) * height * channels, 0.0);
  img.validate();
  return img;
}

void ImageBuffer::validate() const {
  if (width <= 0 || height <= 0)
    throw std::invalid_argument("image: dimensions must be positive");
  if (channels != 1 && channels != 3)
    throw std::invalid_argument("image: channel count must be 1 or 3");
  if (!(ppd > 0.0)) throw std::invalid_argument("image: ppd must be > 0");
  if (data.size() != plane_size() * static_cast<std::size_t>(channels))
    throw std::invalid_argument("image: data length does not match geometry");
}

namespace {

std::vector<double> butterworth_gain_table(int width, int height, double ppd,
                                           double cutoff_cpd, int order) {
  const int half_w = width / 2 + 1;
  std::vector<double> gain(detail::half_spectrum_size(width, height));
  for (int ky = 0; ky < height; ++ky) {
    const double fy = (ky <= height / 2 ? ky : ky - height) / static_cast<double>(height);
    for (int kx = 0; kx < half_w; ++kx) {
      const double fx = kx / static_cast<double>(width);
      const double f_cpd = ppd * std::sqrt(fx * fx + fy * fy);
      gain[static_cast<std::size_t>(ky) * half_w + kx] =
          1.0 / std::sqrt(1.0 + std::pow(f_cpd / cutoff_cpd, 2.0 * order));
    }
  }
  return gain;
}

// Filters one plane in place through the half spectrum.
void filter_plane(double* plane, int width, int height, const std::vector<double>& gain) {
  std::vector<double> spectrum(2 * detail::half_spectrum_size(width, height));
  detail::fft_r2c_2d(plane, spectrum.data(), width, height);
  kernels::active().scale_complex(spectrum.data(), gain.data(), gain.size());
  detail::fft_c2r_2d(spectrum.data(), plane, width, height);
  const double norm = 1.0 / (static_cast<double>(width) * height);
  for (std::size_t i = 0; i < static_cast<std::size_t>(width) * height; ++i)
    plane[i] *= norm;
}

// Even (mirror) extension to 2W x 2H, which makes the periodic transform
// boundary-artifact free.
std::vector<double> mirror_extend(const double* plane, int width, int height) {
  std::vector<double> ext(static_cast<std::size_t>(2 * width) * (2 * height));
  for (int y = 0; y < 2 * height; ++y) {
    const int sy = y < height ? y : 2 * height - 1 - y;
    for (int x = 0; x < 2 * width; ++x) {
      const int sx = x < width ? x : 2 * width - 1 - x;
      ext[static_cast<std::size_t>(y) * (2 * width) + x] =
          plane[static_cast<std::size_t>(sy) * width + sx];
    }
  }
  return ext;
}

}  // namespace

ImageBuffer butterworth_lowpass(const ImageBuffer& img, double cutoff_cpd, int order,
                                BoundaryMode boundary) {
  img.validate();
  if (!(cutoff_cpd > 0.0) || cutoff_cpd > img.nyquist_cpd())
    throw std::invalid_argument("butterworth: cutoff must be in (0, ppd/2]");
  if (order < 1) throw std::invalid_argument("butterworth: order must be >= 1");

  ImageBuffer out = img;
  if (boundary == BoundaryMode::periodic) {
    const auto gain =
        butterworth_gain_table(img.width, img.height, img.ppd, cutoff_cpd, order);
    for (int c = 0; c < img.channels; ++c)
      filter_plane(out.channel(c), img.width, img.height, gain);
  } else {
    const int ew = 2 * img.width, eh = 2 * img.height;
    const auto gain = butterworth_gain_table(ew, eh, img.ppd, cutoff_cpd, order);
    for (int c = 0; c < img.channels; ++c) {
      std::vector<double> ext = mirror_extend(img.channel(c), img.width, img.height);
      filter_plane(ext.data(), ew, eh, gain);
      double* dst = out.channel(c);
      for (int y = 0; y < img.height; ++y)
        std::copy_n(ext.data() + static_cast<std::size_t>(y) * ew, img.width,
                    dst + static_cast<std::size_t>(y) * img.width);
    }
  }
  kernels::active().clamp01(out.data.data(), out.data.size());
  return out;
}

namespace {

struct ResampleMap {
  std::vector<std::int32_t> idx;
  std::vector<double> frac;
};

// Source coordinate of destination pixel i: (i + 0.5) * scale - 0.5, clamped
// so idx + 1 stays in bounds.
ResampleMap make_map(int dst_size, int src_size) {
  ResampleMap map;
  map.idx.resize(dst_size);
  map.frac.resize(dst_size);
  const double scale = static_cast<double>(src_size) / dst_size;
  for (int i = 0; i < dst_size; ++i) {
    double s = (i + 0.5) * scale - 0.5;
    s = std::clamp(s, 0.0, static_cast<double>(src_size - 1));
    int i0 = static_cast<int>(s);
    if (i0 > src_size - 2) i0 = src_size - 2;
    map.idx[i] = i0;
    map.frac[i] = s - i0;
  }
  return map;
}

// Bilinear resample of one plane to dst_w x dst_h.
std::vector<double> bilinear_plane(const double* src, int src_w, int src_h,
                                   int dst_w, int dst_h) {
  const auto& k = kernels::active();
  const ResampleMap xmap = make_map(dst_w, src_w);
  const ResampleMap ymap = make_map(dst_h, src_h);
  std::vector<double> dst(static_cast<std::size_t>(dst_w) * dst_h);
  std::vector<double> row_a(dst_w), row_b(dst_w);
  for (int y = 0; y < dst_h; ++y) {
    const int y0 = ymap.idx[y];
    k.gather_lerp(src + static_cast<std::size_t>(y0) * src_w, xmap.idx.data(),
                  xmap.frac.data(), row_a.data(), dst_w);
    k.gather_lerp(src + static_cast<std::size_t>(y0 + 1) * src_w, xmap.idx.data(),
                  xmap.frac.data(), row_b.data(), dst_w);
    k.lerp_rows(row_a.data(), row_b.data(), ymap.frac[y],
                dst.data() + static_cast<std::size_t>(y) * dst_w, dst_w);
  }
  return dst;
}

std::vector<double> gaussian_taps(double sigma) {
  const int radius = std::max(1, static_cast<int>(std::ceil(3.0 * sigma)));
  std::vector<double> taps(radius + 1);
  double sum = 0.0;
  for (int k = 0; k <= radius; ++k) {
    taps[k] = std::exp(-0.5 * (k * k) / (sigma * sigma));
    sum += (k == 0 ? 1.0 : 2.0) * taps[k];
  }
  for (double& t : taps) t /= sum;
  return taps;
}

}  // namespace

ImageBuffer gaussian_downsample_upsample(const ImageBuffer& img, double target_ppd,
                                         double max_downsample_factor) {
  img.validate();
  if (!(target_ppd > 0.0) || target_ppd > img.ppd + 1e-12)
    throw std::invalid_argument("resample: target ppd must be in (0, source ppd]");
  if (target_ppd < img.ppd / max_downsample_factor - 1e-9)
    throw std::invalid_argument("resample: target ppd below the downsample limit");

  const double ratio = img.ppd / target_ppd;
  const int dst_w = std::max(1, static_cast<int>(std::llround(img.width / ratio)));
  const int dst_h = std::max(1, static_cast<int>(std::llround(img.height / ratio)));

  ImageBuffer out = img;
  const bool prefilter = ratio > 1.0 + 1e-12;
  std::vector<double> taps;
  if (prefilter) taps = gaussian_taps(0.5 * ratio);

  const auto& k = kernels::active();
  std::vector<double> tmp(img.plane_size());
  std::vector<double> blurred(img.plane_size());
  for (int c = 0; c < img.channels; ++c) {
    const double* src = img.channel(c);
    if (prefilter) {
      const int radius = static_cast<int>(taps.size()) - 1;
      k.conv_sym_h(src, tmp.data(), img.width, img.height, taps.data(), radius);
      k.conv_sym_v(tmp.data(), blurred.data(), img.width, img.height, taps.data(), radius);
      src = blurred.data();
    }
    const std::vector<double> small =
        bilinear_plane(src, img.width, img.height, dst_w, dst_h);
    const std::vector<double> up =
        bilinear_plane(small.data(), dst_w, dst_h, img.width, img.height);
    std::copy(up.begin(), up.end(), out.channel(c));
  }
  k.clamp01(out.data.data(), out.data.size());
  return out;
}

namespace {

// Frames often repeat a cutoff (step schedules); memoize per distinct value.
class FilterCache {
 public:
  ImageBuffer& get(double key, auto&& compute) {
    for (auto& [k, v] : entries_)
      if (k == key) return v;
    entries_.emplace_back(key, compute());
    return entries_.back().second;
  }

 private:
  std::vector<std::pair<double, ImageBuffer>> entries_;
};

}  // namespace

std::vector<ImageBuffer> render_trial_sequence(const ImageBuffer& img,
                                               const StepSchedule& schedule,
                                               double landing_ms,
                                               std::span<const double> frame_times_ms,
                                               int butterworth_order) {
  schedule.validate();
  if (!std::is_sorted(frame_times_ms.begin(), frame_times_ms.end()))
    throw std::invalid_argument("render sequence: frame times must be sorted");

  FilterCache cache;
  std::vector<ImageBuffer> frames;
  frames.reserve(frame_times_ms.size());
  for (double t : frame_times_ms) {
    const double post = t - landing_ms;
    if (post < 0.0) {
      frames.push_back(img);  // pre-saccadic frame
      continue;
    }
    const double cutoff = step_schedule_cpd(post, schedule);
    if (cutoff >= img.nyquist_cpd()) {
      frames.push_back(img);
      continue;
    }
    frames.push_back(cache.get(
        cutoff, [&] { return butterworth_lowpass(img, cutoff, butterworth_order); }));
  }
  return frames;
}

std::vector<ImageBuffer> render_trial_sequence(const ImageBuffer& img,
                                               const SchedulerParams& params,
                                               const AcuityCurve& curve,
                                               double landing_ms,
                                               std::span<const double> frame_times_ms) {
  params.validate();
  if (!std::is_sorted(frame_times_ms.begin(), frame_times_ms.end()))
    throw std::invalid_argument("render sequence: frame times must be sorted");

  FilterCache cache;
  std::vector<ImageBuffer> frames;
  frames.reserve(frame_times_ms.size());
  for (double t : frame_times_ms) {
    const double post = t - landing_ms;
    if (post < 0.0) {
      frames.push_back(img);
      continue;
    }
    const double target_ppd = 2.0 * scheduled_cpd(post, params, curve);
    if (target_ppd >= img.ppd) {
      frames.push_back(img);
      continue;
    }
    frames.push_back(cache.get(target_ppd, [&] {
      return gaussian_downsample_upsample(img, target_ppd, params.max_downsample_factor);
    }));
  }
  return frames;
}

}  // namespace scr
