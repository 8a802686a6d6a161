#include "scr/io.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace scr {

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

namespace {

std::string format_time(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

double median_interval(const std::vector<GazeSample>& samples) {
  if (samples.size() < 2) return 1.0;
  std::vector<double> dt(samples.size() - 1);
  for (std::size_t i = 1; i < samples.size(); ++i)
    dt[i - 1] = samples[i].t_ms - samples[i - 1].t_ms;
  const std::size_t mid = dt.size() / 2;
  std::nth_element(dt.begin(), dt.begin() + mid, dt.end());
  return dt[mid];
}

}  // namespace

GazeTrace read_trace_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open trace: " + path);

  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty trace file: " + path);
  while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
  if (line != "t_ms,x_deg,y_deg,valid")
    throw std::runtime_error("trace header must be 't_ms,x_deg,y_deg,valid': " + path);

  GazeTrace trace;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
    if (line.empty()) continue;
    GazeSample s;
    int valid = 0;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%d", &s.t_ms, &s.x_deg, &s.y_deg,
                    &valid) != 4)
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": bad CSV row");
    s.valid = valid != 0;
    trace.samples.push_back(s);
  }
  trace.sample_rate_hz = 1000.0 / median_interval(trace.samples);
  trace.validate();
  return trace;
}

void write_trace_csv(const std::string& path, const GazeTrace& trace) {
  std::ostringstream out;
  out << "t_ms,x_deg,y_deg,valid\n";
  for (const GazeSample& s : trace.samples)
    out << format_time(s.t_ms) << ',' << format_number(s.x_deg) << ','
        << format_number(s.y_deg) << ',' << (s.valid ? 1 : 0) << '\n';
  write_file(path, out.str());
}

std::string events_to_json(std::span<const SaccadeEvent> events) {
  std::ostringstream out;
  out << "[\n";
  for (std::size_t i = 0; i < events.size(); ++i) {
    const SaccadeEvent& e = events[i];
    out << "  {\"onset\": " << format_time(e.onset_ms)
        << ", \"offset\": " << format_time(e.offset_ms)
        << ", \"amplitude\": " << format_number(e.amplitude_deg)
        << ", \"peak_velocity\": " << format_number(e.peak_velocity_dps)
        << ", \"direction\": " << format_number(e.direction_deg) << "}"
        << (i + 1 < events.size() ? "," : "") << "\n";
  }
  out << "]\n";
  return out.str();
}

std::vector<SaccadeEvent> events_from_json(const std::string& json_text) {
  const auto parsed = nlohmann::json::parse(json_text);
  std::vector<SaccadeEvent> events;
  for (const auto& item : parsed) {
    SaccadeEvent e;
    e.onset_ms = item.at("onset").get<double>();
    e.offset_ms = item.at("offset").get<double>();
    e.amplitude_deg = item.at("amplitude").get<double>();
    e.peak_velocity_dps = item.at("peak_velocity").get<double>();
    e.direction_deg = item.at("direction").get<double>();
    events.push_back(e);
  }
  return events;
}

void write_events_json(const std::string& path, std::span<const SaccadeEvent> events) {
  write_file(path, events_to_json(events));
}

std::vector<SaccadeEvent> read_events_json(const std::string& path) {
  return events_from_json(read_file(path));
}

std::string online_events_to_json(std::span<const OnlineEvent> events) {
  std::ostringstream out;
  out << "[\n";
  for (std::size_t i = 0; i < events.size(); ++i) {
    const OnlineEvent& e = events[i];
    out << "  {\"type\": \"" << to_string(e.type)
        << "\", \"t\": " << format_time(e.t_ms) << ", \"x\": " << format_number(e.x_deg)
        << ", \"y\": " << format_number(e.y_deg) << "}"
        << (i + 1 < events.size() ? "," : "") << "\n";
  }
  out << "]\n";
  return out.str();
}

void write_online_events_json(const std::string& path,
                              std::span<const OnlineEvent> events) {
  write_file(path, online_events_to_json(events));
}

double srgb_to_linear(double encoded) {
  if (encoded <= 0.04045) return encoded / 12.92;
  return std::pow((encoded + 0.055) / 1.055, 2.4);
}

double linear_to_srgb(double linear) {
  linear = std::clamp(linear, 0.0, 1.0);
  if (linear <= 0.0031308) return 12.92 * linear;
  return 1.055 * std::pow(linear, 1.0 / 2.4) - 0.055;
}

namespace {

bool has_suffix(const std::string& s, const char* suffix) {
  const std::size_t n = std::strlen(suffix);
  return s.size() >= n && s.compare(s.size() - n, n, suffix) == 0;
}

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

ImageBuffer from_bytes(const std::vector<unsigned char>& bytes, int w, int h,
                       int channels, double ppd, bool linearize) {
  ImageBuffer img = ImageBuffer::create(w, h, channels, ppd);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      for (int c = 0; c < channels; ++c) {
        const double v =
            bytes[(static_cast<std::size_t>(y) * w + x) * channels + c] / 255.0;
        img.at(c, y, x) = linearize ? srgb_to_linear(v) : v;
      }
  return img;
}

std::vector<unsigned char> to_bytes(const ImageBuffer& img, bool delinearize) {
  std::vector<unsigned char> bytes(img.plane_size() * img.channels);
  for (int y = 0; y < img.height; ++y)
    for (int x = 0; x < img.width; ++x)
      for (int c = 0; c < img.channels; ++c) {
        double v = std::clamp(img.at(c, y, x), 0.0, 1.0);
        if (delinearize) v = linear_to_srgb(v);
        bytes[(static_cast<std::size_t>(y) * img.width + x) * img.channels + c] =
            static_cast<unsigned char>(std::lround(v * 255.0));
      }
  return bytes;
}

ImageBuffer read_png(const std::string& path, double ppd, bool linearize) {
  FilePtr fp(std::fopen(path.c_str(), "rb"));
  if (!fp) throw std::runtime_error("cannot open image: " + path);

  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw std::runtime_error("png: allocation failure");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    throw std::runtime_error("png: allocation failure");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw std::runtime_error("png: failed to read " + path);
  }

  png_init_io(png, fp.get());
  png_read_info(png, info);

  // normalize to 8-bit gray or RGB
  png_set_strip_16(png);
  png_set_packing(png);
  if (png_get_color_type(png, info) == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (png_get_color_type(png, info) == PNG_COLOR_TYPE_GRAY &&
      png_get_bit_depth(png, info) < 8)
    png_set_expand_gray_1_2_4_to_8(png);
  if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
  png_set_strip_alpha(png);
  png_set_interlace_handling(png);
  png_read_update_info(png, info);

  const int w = static_cast<int>(png_get_image_width(png, info));
  const int h = static_cast<int>(png_get_image_height(png, info));
  const int channels = static_cast<int>(png_get_channels(png, info));
  if (channels != 1 && channels != 3) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw std::runtime_error("png: unsupported channel layout in " + path);
  }

  std::vector<unsigned char> bytes(static_cast<std::size_t>(w) * h * channels);
  std::vector<png_bytep> rows(h);
  for (int y = 0; y < h; ++y)
    rows[y] = bytes.data() + static_cast<std::size_t>(y) * w * channels;
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);

  return from_bytes(bytes, w, h, channels, ppd, linearize);
}

void write_png(const std::string& path, const ImageBuffer& img, bool delinearize) {
  FilePtr fp(std::fopen(path.c_str(), "wb"));
  if (!fp) throw std::runtime_error("cannot write image: " + path);

  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw std::runtime_error("png: allocation failure");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    throw std::runtime_error("png: allocation failure");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw std::runtime_error("png: failed to write " + path);
  }

  png_init_io(png, fp.get());
  png_set_IHDR(png, info, img.width, img.height, 8,
               img.channels == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);

  const std::vector<unsigned char> bytes = to_bytes(img, delinearize);
  std::vector<png_bytep> rows(img.height);
  for (int y = 0; y < img.height; ++y)
    rows[y] = const_cast<png_bytep>(bytes.data() +
                                    static_cast<std::size_t>(y) * img.width * img.channels);
  png_write_image(png, rows.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

ImageBuffer read_ppm(const std::string& path, double ppd, bool linearize) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open image: " + path);
  std::string magic;
  in >> magic;
  if (magic != "P5" && magic != "P6")
    throw std::runtime_error("ppm: expected binary P5/P6 in " + path);
  const int channels = magic == "P6" ? 3 : 1;

  auto next_int = [&in, &path]() {
    // skip whitespace and '#' comments
    for (;;) {
      const int c = in.peek();
      if (c == '#') {
        std::string comment;
        std::getline(in, comment);
      } else if (std::isspace(c)) {
        in.get();
      } else {
        break;
      }
    }
    int v = 0;
    if (!(in >> v)) throw std::runtime_error("ppm: bad header in " + path);
    return v;
  };
  const int w = next_int();
  const int h = next_int();
  const int maxval = next_int();
  if (maxval != 255) throw std::runtime_error("ppm: only maxval 255 supported: " + path);
  in.get();  // single whitespace after maxval

  std::vector<unsigned char> bytes(static_cast<std::size_t>(w) * h * channels);
  in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (in.gcount() != static_cast<std::streamsize>(bytes.size()))
    throw std::runtime_error("ppm: truncated pixel data in " + path);
  return from_bytes(bytes, w, h, channels, ppd, linearize);
}

void write_ppm(const std::string& path, const ImageBuffer& img, bool delinearize) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write image: " + path);
  out << (img.channels == 3 ? "P6" : "P5") << '\n'
      << img.width << ' ' << img.height << "\n255\n";
  const std::vector<unsigned char> bytes = to_bytes(img, delinearize);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace

ImageBuffer read_image(const std::string& path, double ppd, bool linearize) {
  if (has_suffix(path, ".png")) return read_png(path, ppd, linearize);
  if (has_suffix(path, ".ppm") || has_suffix(path, ".pgm"))
    return read_ppm(path, ppd, linearize);
  throw std::runtime_error("unsupported image format (want .png/.ppm/.pgm): " + path);
}

void write_image(const std::string& path, const ImageBuffer& img, bool delinearize) {
  img.validate();
  if (has_suffix(path, ".png")) return write_png(path, img, delinearize);
  if (has_suffix(path, ".ppm") || has_suffix(path, ".pgm"))
    return write_ppm(path, img, delinearize);
  throw std::runtime_error("unsupported image format (want .png/.ppm/.pgm): " + path);
}

}  // namespace scr
