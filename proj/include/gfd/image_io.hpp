#pragma once

#include <stdexcept>
#include <string>

#include "gfd/image.hpp"

namespace gfd {

// Raised for unreadable, unwritable, or malformed image files.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Loads an 8-bit grayscale image and scales to [0,1] (v / 255).
// Supported: binary PGM (P5, maxval 255) and 8-bit grayscale PNG.
// Format is picked by file extension (.pgm / .png, case-insensitive).
Image load_image(const std::string& path);

// Saves to [0,255]: each pixel is clamped to [0,1], scaled by 255 and
// rounded to nearest. Quantization is confined to this boundary.
void save_image(const Image& img, const std::string& path);

Image load_pgm(const std::string& path);
void save_pgm(const Image& img, const std::string& path);

Image load_png(const std::string& path);
void save_png(const Image& img, const std::string& path);

}  // namespace gfd
