#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "gfd/image.hpp"
#include "gfd/psf.hpp"

namespace gfd {

enum class KernelKind { radial, boxcar, binomial, gaussian };

// One row of the five standard benchmark degradations. sigma255_sq is
// the noise variance for pixel values in [0,255]; gaussian_size only
// matters for setting 5, where the support is not pinned upstream.
struct TestSetting {
    int id = 0;
    KernelKind kind = KernelKind::radial;
    double sigma255_sq = 0.0;
    int gaussian_size = 25;

    NoiseModel noise() const { return NoiseModel::from_variance255(sigma255_sq); }
};

// Settings 1..5: radial/sigma^2=2, radial/8, 9x9 boxcar/0.308,
// binomial/49, Gaussian(1.6)/4.
TestSetting table1_setting(int id, int gaussian_size = 25);

Kernel make_kernel(const TestSetting& setting);

// Deterministic standard-normal stream: mt19937_64 plus Box-Muller.
// Uniforms take the top 53 bits; u1 is shifted into (0,1] so the log
// never sees zero. Same seed, same platform, same sequence.
class GaussianSampler {
public:
    explicit GaussianSampler(std::uint64_t seed) : rng_(seed) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = (static_cast<double>(rng_() >> 11) + 1.0) * 0x1.0p-53;
        double u2 = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

private:
    std::mt19937_64 rng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

// Circularly blurs with the setting's kernel and adds seeded white
// Gaussian noise in row-major order. The result is intentionally not
// clamped; out-of-range values carry information the restorer uses.
Image degrade(const Image& input, const TestSetting& setting, std::uint64_t seed);

// Noise-only helper used by degrade and the sampling tests.
void add_gaussian_noise(Image& img, double sigma, std::uint64_t seed);

}  // namespace gfd
