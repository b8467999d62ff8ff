#pragma once

#include <complex>
#include <vector>

#include "gfd/errors.hpp"
#include "gfd/image.hpp"
#include "gfd/psf.hpp"

namespace gfd {

// Full (non-hermitian-packed) 2-D DFT coefficients, row-major, same
// layout as the Image they came from. Forward transform is unnormalized;
// the inverse applies the 1/(width*height) factor.
class Spectrum {
public:
    Spectrum() = default;
    Spectrum(int width, int height)
        : width_(width), height_(height),
          data_(static_cast<std::size_t>(width) * height) {}

    int width() const { return width_; }
    int height() const { return height_; }
    std::size_t size() const { return data_.size(); }

    std::complex<double>& at(int x, int y) {
        return data_[static_cast<std::size_t>(y) * width_ + x];
    }
    std::complex<double> at(int x, int y) const {
        return data_[static_cast<std::size_t>(y) * width_ + x];
    }

    std::complex<double>& operator[](std::size_t i) { return data_[i]; }
    std::complex<double> operator[](std::size_t i) const { return data_[i]; }

    bool same_shape(const Spectrum& other) const {
        return width_ == other.width_ && height_ == other.height_;
    }

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<std::complex<double>> data_;
};

// Squared magnitude response of the periodic forward-difference gradient,
// |F(d/dx)|^2 + |F(d/dy)|^2 = (2-2cos(2*pi*u/W)) + (2-2cos(2*pi*v/H)).
// Real, nonnegative, zero only at DC.
struct GradientSpectrum {
    int width = 0;
    int height = 0;
    std::vector<double> values;

    double at(int x, int y) const {
        return values[static_cast<std::size_t>(y) * width + x];
    }
};

Spectrum fft2(const Image& img);

// Inverse DFT of a spectrum expected to be (numerically) hermitian.
// Throws NumericalError if any imaginary residue exceeds 1e-8 after
// normalization.
Image ifft2_real(const Spectrum& spec);

// Embeds the kernel on a width x height grid with its center tap at
// index (0,0), wrapping negative offsets, and transforms. Throws if the
// kernel support exceeds the grid.
Spectrum psf_to_otf(const Kernel& k, int width, int height);

GradientSpectrum gradient_spectrum(int width, int height);

// Direct spatial circular convolution:
//   out(px,py) = sum_{dx,dy} h(dx,dy) * u((px-dx) mod W, (py-dy) mod H)
// with (dx,dy) the signed tap offsets. Matches multiplication by the
// psf_to_otf spectrum up to FFT roundoff.
Image circular_convolve(const Image& u, const Kernel& h);

// Guidance deblur: pixel-wise
//   F(u_I) = (conj(OTF).*F(y) + lambda*G.*F(u_E)) / (|OTF|^2 + lambda*G)
// Throws NumericalError on a vanishing denominator (DC null of the OTF).
Image deblur_guidance(const Spectrum& Fy, const Spectrum& otf,
                      const GradientSpectrum& grad, const Spectrum& FuE,
                      double lambda);

// Input deblur: pixel-wise
//   F(u_p) = (conj(OTF).*F(y) + lambda*F(u_E)) / (|OTF|^2 + lambda)
Image deblur_input(const Spectrum& Fy, const Spectrum& otf,
                   const Spectrum& FuE, double lambda);

}  // namespace gfd
