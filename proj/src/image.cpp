#include "gfd/image.hpp"

namespace gfd {

double image_mean(const Image& img) {
    CompensatedSum acc;
    for (double v : img.pixels()) acc.add(v);
    return acc.value() / static_cast<double>(img.size());
}

double sq_norm(const Image& img) {
    CompensatedSum acc;
    for (double v : img.pixels()) acc.add(v * v);
    return acc.value();
}

double sq_distance(const Image& a, const Image& b) {
    if (!a.same_shape(b))
        throw std::invalid_argument("sq_distance: shape mismatch");
    CompensatedSum acc;
    auto pa = a.pixels();
    auto pb = b.pixels();
    for (std::size_t i = 0; i < pa.size(); ++i) {
        double d = pa[i] - pb[i];
        acc.add(d * d);
    }
    return acc.value();
}

}  // namespace gfd
