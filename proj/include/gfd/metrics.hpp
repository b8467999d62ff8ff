#pragma once

#include "gfd/image.hpp"

namespace gfd {

// ||a - b||^2 / n for n-pixel images.
double mse(const Image& a, const Image& b);

// 10*log10(1/mse) for [0,1]-scale images; +infinity when a == b.
double psnr(const Image& a, const Image& b);

// Improvement in SNR, 10*log10(||degraded-orig||^2 / ||restored-orig||^2).
// +infinity when restored == orig. Computed on working-scale doubles;
// callers must not quantize first.
double isnr(const Image& orig, const Image& degraded, const Image& restored);

}  // namespace gfd
