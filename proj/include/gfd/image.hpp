#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace gfd {

// Grayscale raster with double-precision intensities, row-major.
// Nominal range is [0,1]; intermediate pipeline values may leave that
// range and are only clamped when written to an 8-bit file.
class Image {
public:
    Image() = default;

    Image(int width, int height, double fill = 0.0)
        : width_(width), height_(height),
          data_(checked_size(width, height), fill) {}

    Image(int width, int height, std::vector<double> data)
        : width_(width), height_(height), data_(std::move(data)) {
        if (data_.size() != checked_size(width, height))
            throw std::invalid_argument("Image: data length does not match dimensions");
    }

    int width() const { return width_; }
    int height() const { return height_; }
    std::size_t size() const { return data_.size(); }

    double& at(int x, int y) { return data_[static_cast<std::size_t>(y) * width_ + x]; }
    double at(int x, int y) const { return data_[static_cast<std::size_t>(y) * width_ + x]; }

    double& operator[](std::size_t i) { return data_[i]; }
    double operator[](std::size_t i) const { return data_[i]; }

    std::span<double> pixels() { return data_; }
    std::span<const double> pixels() const { return data_; }

    bool same_shape(const Image& other) const {
        return width_ == other.width_ && height_ == other.height_;
    }

    friend bool operator==(const Image&, const Image&) = default;

private:
    static std::size_t checked_size(int width, int height) {
        if (width <= 0 || height <= 0)
            throw std::invalid_argument("Image: dimensions must be positive");
        return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<double> data_;
};

// AWGN level. Benchmark tables state the variance for 8-bit pixel values;
// all internal formulas run on [0,1]-scale intensities, so the conversion
// happens exactly once, here.
struct NoiseModel {
    double sigma = 0.0;     // std deviation, [0,1] scale
    double sigma255 = 0.0;  // std deviation, [0,255] scale

    static NoiseModel from_sigma255(double s255) {
        if (s255 < 0.0)
            throw std::invalid_argument("NoiseModel: sigma must be nonnegative");
        return NoiseModel{s255 / 255.0, s255};
    }
    static NoiseModel from_variance255(double var255) {
        if (var255 < 0.0)
            throw std::invalid_argument("NoiseModel: variance must be nonnegative");
        return from_sigma255(std::sqrt(var255));
    }
};

// Compensated (Kahan-Babuska) accumulator; sums of 256x256 images feed
// discrepancy targets that are checked to 1e-12 relative.
class CompensatedSum {
public:
    void add(double v) {
        double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v))
            comp_ += (sum_ - t) + v;
        else
            comp_ += (v - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

double image_mean(const Image& img);
double sq_norm(const Image& img);
double sq_distance(const Image& a, const Image& b);

}  // namespace gfd
