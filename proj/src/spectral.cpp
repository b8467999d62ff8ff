#include "gfd/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>
#include <unordered_map>

namespace gfd {

namespace {

// FFTW planning is not thread-safe and not cheap; plans are cached per
// (width, height, direction). FFTW_UNALIGNED lets a cached plan execute
// on any caller buffer via fftw_execute_dft.
class PlanCache {
public:
    fftw_plan get(int width, int height, int sign) {
        std::lock_guard<std::mutex> lock(mutex_);
        std::uint64_t key = (static_cast<std::uint64_t>(width) << 33) |
                            (static_cast<std::uint64_t>(height) << 1) |
                            (sign == FFTW_FORWARD ? 0u : 1u);
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;

        std::size_t n = static_cast<std::size_t>(width) * height;
        std::vector<std::complex<double>> in(n), out(n);
        fftw_plan p = fftw_plan_dft_2d(
            height, width,
            reinterpret_cast<fftw_complex*>(in.data()),
            reinterpret_cast<fftw_complex*>(out.data()),
            sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (!p) throw NumericalError("fft: planner failed");
        plans_.emplace(key, p);
        return p;
    }

private:
    std::mutex mutex_;
    std::unordered_map<std::uint64_t, fftw_plan> plans_;
};

PlanCache& plan_cache() {
    static PlanCache cache;
    return cache;
}

void execute(fftw_plan plan, std::vector<std::complex<double>>& in, Spectrum& out) {
    fftw_execute_dft(plan,
                     reinterpret_cast<fftw_complex*>(in.data()),
                     reinterpret_cast<fftw_complex*>(&out[0]));
}

}  // namespace

Spectrum fft2(const Image& img) {
    std::size_t n = img.size();
    std::vector<std::complex<double>> in(n);
    auto px = img.pixels();
    for (std::size_t i = 0; i < n; ++i) in[i] = px[i];

    Spectrum out(img.width(), img.height());
    execute(plan_cache().get(img.width(), img.height(), FFTW_FORWARD), in, out);
    return out;
}

Image ifft2_real(const Spectrum& spec) {
    std::size_t n = spec.size();
    std::vector<std::complex<double>> in(n);
    for (std::size_t i = 0; i < n; ++i) in[i] = spec[i];

    Spectrum out(spec.width(), spec.height());
    execute(plan_cache().get(spec.width(), spec.height(), FFTW_BACKWARD), in, out);

    double scale = 1.0 / static_cast<double>(n);
    Image img(spec.width(), spec.height());
    double worst_imag = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        img[i] = out[i].real() * scale;
        worst_imag = std::max(worst_imag, std::abs(out[i].imag()) * scale);
    }
    if (worst_imag > 1e-8)
        throw NumericalError("ifft2_real: imaginary residue " + std::to_string(worst_imag));
    return img;
}

Spectrum psf_to_otf(const Kernel& k, int width, int height) {
    if (k.width() > width || k.height() > height)
        throw std::invalid_argument("psf_to_otf: kernel support exceeds grid");

    Image padded(width, height, 0.0);
    for (int y = 0; y < k.height(); ++y) {
        int py = ((y - k.center_y()) % height + height) % height;
        for (int x = 0; x < k.width(); ++x) {
            int px = ((x - k.center_x()) % width + width) % width;
            padded.at(px, py) += k.at(x, y);
        }
    }
    return fft2(padded);
}

GradientSpectrum gradient_spectrum(int width, int height) {
    GradientSpectrum g;
    g.width = width;
    g.height = height;
    g.values.resize(static_cast<std::size_t>(width) * height);
    for (int v = 0; v < height; ++v) {
        double gy = 2.0 - 2.0 * std::cos(2.0 * std::numbers::pi * v / height);
        for (int u = 0; u < width; ++u) {
            double gx = 2.0 - 2.0 * std::cos(2.0 * std::numbers::pi * u / width);
            g.values[static_cast<std::size_t>(v) * width + u] = gx + gy;
        }
    }
    return g;
}

Image circular_convolve(const Image& u, const Kernel& h) {
    int W = u.width(), H = u.height();
    if (h.width() > W || h.height() > H)
        throw std::invalid_argument("circular_convolve: kernel support exceeds image");

    Image out(W, H);
    int cx = h.center_x(), cy = h.center_y();
    for (int py = 0; py < H; ++py) {
        for (int px = 0; px < W; ++px) {
            CompensatedSum acc;
            for (int ky = 0; ky < h.height(); ++ky) {
                int sy = ((py - (ky - cy)) % H + H) % H;
                for (int kx = 0; kx < h.width(); ++kx) {
                    int sx = ((px - (kx - cx)) % W + W) % W;
                    acc.add(h.at(kx, ky) * u.at(sx, sy));
                }
            }
            out.at(px, py) = acc.value();
        }
    }
    return out;
}

namespace {

void check_shapes(const Spectrum& Fy, const Spectrum& otf, const Spectrum& FuE) {
    if (!Fy.same_shape(otf) || !Fy.same_shape(FuE))
        throw std::invalid_argument("deblur: spectrum shape mismatch");
}

}  // namespace

Image deblur_guidance(const Spectrum& Fy, const Spectrum& otf,
                      const GradientSpectrum& grad, const Spectrum& FuE,
                      double lambda) {
    check_shapes(Fy, otf, FuE);
    if (grad.width != Fy.width() || grad.height != Fy.height())
        throw std::invalid_argument("deblur_guidance: gradient spectrum shape mismatch");
    if (!(lambda >= 0.0) || !std::isfinite(lambda))
        throw std::invalid_argument("deblur_guidance: lambda must be finite and nonnegative");

    Spectrum res(Fy.width(), Fy.height());
    for (std::size_t i = 0; i < Fy.size(); ++i) {
        double g = grad.values[i];
        double denom = std::norm(otf[i]) + lambda * g;
        if (denom < 1e-30)
            throw NumericalError("deblur_guidance: vanishing denominator (singular OTF)");
        res[i] = (std::conj(otf[i]) * Fy[i] + lambda * g * FuE[i]) / denom;
    }
    return ifft2_real(res);
}

Image deblur_input(const Spectrum& Fy, const Spectrum& otf,
                   const Spectrum& FuE, double lambda) {
    check_shapes(Fy, otf, FuE);
    if (!(lambda >= 0.0) || !std::isfinite(lambda))
        throw std::invalid_argument("deblur_input: lambda must be finite and nonnegative");

    Spectrum res(Fy.width(), Fy.height());
    for (std::size_t i = 0; i < Fy.size(); ++i) {
        double denom = std::norm(otf[i]) + lambda;
        if (denom < 1e-30)
            throw NumericalError("deblur_input: vanishing denominator (singular OTF)");
        res[i] = (std::conj(otf[i]) * Fy[i] + lambda * FuE[i]) / denom;
    }
    return ifft2_real(res);
}

}  // namespace gfd
