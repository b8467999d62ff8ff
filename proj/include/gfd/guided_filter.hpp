#pragma once

#include "gfd/image.hpp"

namespace gfd {

// Mean over the (2w+1)x(2w+1) window centered at each pixel, clipped to
// the image bounds; border windows divide by their true pixel count.
// Runs in O(N) independent of w.
Image box_mean(const Image& img, int w);

// Edge-preserving smoothing of p steered by guide I:
//   a_k = cov_w(I,p) / (var_w(I) + eps),  b_k = mean_w(p) - a_k mean_w(I)
//   q_i = mean_w(a)_i * I_i + mean_w(b)_i
// All window statistics use the clipped box_mean above. var_w(I) is
// clamped at zero against roundoff.
Image guided_filter(const Image& I, const Image& p, int w, double eps);

}  // namespace gfd
