#include "gfd/guided_filter.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace gfd {

namespace {

// Sliding clipped-window sums along one axis of a row-major buffer.
// stride selects the axis: 1 for rows, width for columns.
void sliding_sums(const double* in, double* out, int length, int count,
                  std::size_t stride, std::size_t line_stride, int w) {
    for (int line = 0; line < count; ++line) {
        const double* src = in + static_cast<std::size_t>(line) * line_stride;
        double* dst = out + static_cast<std::size_t>(line) * line_stride;
        double s = 0.0;
        int hi = std::min(w, length - 1);
        for (int i = 0; i <= hi; ++i) s += src[static_cast<std::size_t>(i) * stride];
        dst[0] = s;
        for (int x = 1; x < length; ++x) {
            int enter = x + w;
            int leave = x - w - 1;
            if (enter < length) s += src[static_cast<std::size_t>(enter) * stride];
            if (leave >= 0) s -= src[static_cast<std::size_t>(leave) * stride];
            dst[static_cast<std::size_t>(x) * stride] = s;
        }
    }
}

std::vector<int> clipped_counts(int length, int w) {
    std::vector<int> c(length);
    for (int x = 0; x < length; ++x)
        c[x] = std::min(x + w, length - 1) - std::max(x - w, 0) + 1;
    return c;
}

}  // namespace

Image box_mean(const Image& img, int w) {
    if (w < 0) throw std::invalid_argument("box_mean: window radius must be nonnegative");
    int W = img.width(), H = img.height();

    Image rows(W, H);
    sliding_sums(img.pixels().data(), rows.pixels().data(), W, H,
                 1, static_cast<std::size_t>(W), w);

    Image sums(W, H);
    sliding_sums(rows.pixels().data(), sums.pixels().data(), H, W,
                 static_cast<std::size_t>(W), 1, w);

    std::vector<int> cx = clipped_counts(W, w);
    std::vector<int> cy = clipped_counts(H, w);
    for (int y = 0; y < H; ++y)
        for (int x = 0; x < W; ++x)
            sums.at(x, y) /= static_cast<double>(cx[x]) * cy[y];
    return sums;
}

Image guided_filter(const Image& I, const Image& p, int w, double eps) {
    if (!I.same_shape(p))
        throw std::invalid_argument("guided_filter: guide and input shape mismatch");
    if (eps <= 0.0)
        throw std::invalid_argument("guided_filter: eps must be positive");

    std::size_t n = I.size();
    Image Ip(I.width(), I.height());
    Image II(I.width(), I.height());
    for (std::size_t i = 0; i < n; ++i) {
        Ip[i] = I[i] * p[i];
        II[i] = I[i] * I[i];
    }

    Image mean_I = box_mean(I, w);
    Image mean_p = box_mean(p, w);
    Image mean_Ip = box_mean(Ip, w);
    Image mean_II = box_mean(II, w);

    Image a(I.width(), I.height());
    Image b(I.width(), I.height());
    for (std::size_t i = 0; i < n; ++i) {
        double var_I = std::max(mean_II[i] - mean_I[i] * mean_I[i], 0.0);
        double cov_Ip = mean_Ip[i] - mean_I[i] * mean_p[i];
        a[i] = cov_Ip / (var_I + eps);
        b[i] = mean_p[i] - a[i] * mean_I[i];
    }

    Image mean_a = box_mean(a, w);
    Image mean_b = box_mean(b, w);
    Image q(I.width(), I.height());
    for (std::size_t i = 0; i < n; ++i)
        q[i] = mean_a[i] * I[i] + mean_b[i];
    return q;
}

}  // namespace gfd
