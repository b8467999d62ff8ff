#include "gfd/metrics.hpp"

#include <cmath>
#include <limits>

namespace gfd {

double mse(const Image& a, const Image& b) {
    return sq_distance(a, b) / static_cast<double>(a.size());
}

double psnr(const Image& a, const Image& b) {
    double m = mse(a, b);
    if (m == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(1.0 / m);
}

double isnr(const Image& orig, const Image& degraded, const Image& restored) {
    double num = sq_distance(degraded, orig);
    double den = sq_distance(restored, orig);
    if (den == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(num / den);
}

}  // namespace gfd
