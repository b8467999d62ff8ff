#include "gfd/degrade.hpp"

#include <stdexcept>

#include "gfd/spectral.hpp"

namespace gfd {

TestSetting table1_setting(int id, int gaussian_size) {
    switch (id) {
        case 1: return {1, KernelKind::radial, 2.0, gaussian_size};
        case 2: return {2, KernelKind::radial, 8.0, gaussian_size};
        case 3: return {3, KernelKind::boxcar, 0.308, gaussian_size};
        case 4: return {4, KernelKind::binomial, 49.0, gaussian_size};
        case 5: return {5, KernelKind::gaussian, 4.0, gaussian_size};
        default:
            throw std::invalid_argument("table1_setting: id must be in 1..5");
    }
}

Kernel make_kernel(const TestSetting& setting) {
    switch (setting.kind) {
        case KernelKind::radial: return psf_radial(7, true);
        case KernelKind::boxcar: return psf_boxcar(9);
        case KernelKind::binomial: return psf_binomial();
        case KernelKind::gaussian: return psf_gaussian(1.6, setting.gaussian_size);
    }
    throw std::invalid_argument("make_kernel: unknown kernel kind");
}

void add_gaussian_noise(Image& img, double sigma, std::uint64_t seed) {
    if (sigma < 0.0)
        throw std::invalid_argument("add_gaussian_noise: sigma must be nonnegative");
    if (sigma == 0.0) return;
    GaussianSampler g(seed);
    for (double& v : img.pixels()) v += sigma * g.next();
}

Image degrade(const Image& input, const TestSetting& setting, std::uint64_t seed) {
    Image out = circular_convolve(input, make_kernel(setting));
    add_gaussian_noise(out, setting.noise().sigma, seed);
    return out;
}

}  // namespace gfd
