#pragma once

#include <string>

#include "hintex/core.hpp"
#include "hintex/synth.hpp"

// Bit-exact readers/writers for disparity and hint interchange, plus
// visualization dumps. Readers reject, with a located error, any file their
// paired writer could not have produced.
//
// Formats:
//  - PFM: grayscale, header "Pf", width/height line, scale line whose sign
//    encodes endianness (negative = little-endian), float32 samples in
//    bottom-up row order. +infinity encodes an invalid pixel.
//  - PNG16: 16-bit single-channel PNG with raw = round(disparity * 256) and
//    raw 0 = invalid (KITTI disparity convention). Requires disparity < 256.
//  - Hints CSV: header "x,y,d", one record per hint sorted by (x, y), with
//    x = row and y = column; disparities printed to 10 significant digits.
//  - PPM (P6, 8-bit): color images; channels divided by 255 on read.
//  - Scene spec: plain-text key=value, one pair per line.

namespace hintex {

// Parse or format failure with the file and byte offset / line it happened at.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

DisparityMap read_pfm(const std::string& path);
void write_pfm(const DisparityMap& m, const std::string& path);

DisparityMap read_png16(const std::string& path);
void write_png16(const DisparityMap& m, const std::string& path);

// Declared dimensions bound the coordinates; duplicates and out-of-bounds
// records are rejected with the offending line number.
HintMap read_hints_csv(const std::string& path, int height, int width);
void write_hints_csv(const HintMap& h, const std::string& path);

RgbImage read_ppm(const std::string& path);
void write_ppm(const RgbImage& img, const std::string& path);

// Deterministic PPM dumps with a fixed five-stop colormap (blue, cyan,
// green, yellow, red at t = 0, .25, .5, .75, 1, linear in between) over
// [lo, hi]. Hints render as 3x3 dots on black; invalid pixels render black.
void write_visualization(const HintMap& h, const std::string& path, double lo, double hi);
void write_visualization(const DisparityMap& m, const std::string& path, double lo, double hi);

// The colormap behind write_visualization, exposed so dumps are documented
// and reproducible byte for byte. t is clamped to [0,1].
void colormap(double t, unsigned char rgb[3]);

SceneSpec read_scene_spec(const std::string& path);
void write_scene_spec(const SceneSpec& spec, const std::string& path);

}  // namespace hintex
