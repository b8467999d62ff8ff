#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace gfd {

// Blur kernel on a small odd-sized support, row-major. The center tap is
// at (width/2, height/2); offsets run in [-width/2, width/2] etc.
class Kernel {
public:
    Kernel(int width, int height, double fill = 0.0)
        : width_(width), height_(height),
          data_(checked_size(width, height), fill) {}

    Kernel(int width, int height, std::vector<double> data)
        : width_(width), height_(height), data_(std::move(data)) {
        if (data_.size() != checked_size(width, height))
            throw std::invalid_argument("Kernel: data length does not match dimensions");
    }

    int width() const { return width_; }
    int height() const { return height_; }
    int center_x() const { return width_ / 2; }
    int center_y() const { return height_ / 2; }

    double& at(int x, int y) { return data_[static_cast<std::size_t>(y) * width_ + x]; }
    double at(int x, int y) const { return data_[static_cast<std::size_t>(y) * width_ + x]; }

    // Tap at signed offset (dx, dy) from the center.
    double tap(int dx, int dy) const { return at(center_x() + dx, center_y() + dy); }

    const std::vector<double>& data() const { return data_; }
    std::vector<double>& data() { return data_; }

private:
    static std::size_t checked_size(int width, int height) {
        if (width <= 0 || height <= 0)
            throw std::invalid_argument("Kernel: dimensions must be positive");
        if (width % 2 == 0 || height % 2 == 0)
            throw std::invalid_argument("Kernel: dimensions must be odd");
        return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    }

    int width_;
    int height_;
    std::vector<double> data_;
};

// h(i,j) proportional to 1/(1+i^2+j^2) on [-radius, radius]^2.
Kernel psf_radial(int radius = 7, bool normalized = true);

// Uniform size x size kernel summing to 1.
Kernel psf_boxcar(int size = 9);

// Separable [1 4 6 4 1]/16 in each axis (5x5, sums to 1).
Kernel psf_binomial();

// Sampled isotropic Gaussian, normalized to sum 1. size must be odd.
Kernel psf_gaussian(double sigma = 1.6, int size = 25);

double kernel_sum(const Kernel& k);
double kernel_l1(const Kernel& k);

// Divides all taps by their sum. Throws if the sum is zero.
void normalize(Kernel& k);

// Text format: one header line "width height", then height rows of
// width whitespace-separated taps.
void save_kernel(const Kernel& k, const std::string& path);
Kernel load_kernel(const std::string& path);

}  // namespace gfd
