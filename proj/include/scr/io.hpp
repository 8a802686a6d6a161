#pragma once

#include <span>
#include <string>
#include <vector>

#include "scr/detector.hpp"
#include "scr/gaze.hpp"
#include "scr/image.hpp"

namespace scr {

// Numbers in text artifacts are written with 6 significant digits so golden
// files diff cleanly; trace timestamps keep 10 to preserve sub-millisecond
// resolution on long recordings.
std::string format_number(double v);

// --- gaze traces (CSV, header "t_ms,x_deg,y_deg,valid") ----------------------

GazeTrace read_trace_csv(const std::string& path);
void write_trace_csv(const std::string& path, const GazeTrace& trace);

// --- saccade events (JSON array) ---------------------------------------------

std::string events_to_json(std::span<const SaccadeEvent> events);
std::vector<SaccadeEvent> events_from_json(const std::string& json_text);
void write_events_json(const std::string& path, std::span<const SaccadeEvent> events);
std::vector<SaccadeEvent> read_events_json(const std::string& path);

std::string online_events_to_json(std::span<const OnlineEvent> events);
void write_online_events_json(const std::string& path,
                              std::span<const OnlineEvent> events);

// --- images (PNG and binary PPM/PGM) -----------------------------------------

double srgb_to_linear(double encoded);
double linear_to_srgb(double linear);

// Reads 8/16-bit gray or RGB rasters. ppd is attached as metadata; when
// linearize is set, 8-bit values are treated as sRGB-encoded and converted to
// linear light.
ImageBuffer read_image(const std::string& path, double ppd, bool linearize = true);

// Writes 8-bit PNG (.png) or binary PPM/PGM (.ppm/.pgm), converting back to
// sRGB when delinearize is set.
void write_image(const std::string& path, const ImageBuffer& img,
                 bool delinearize = true);

}  // namespace scr
