#include "gfd/psf.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>

#include "gfd/image.hpp"
#include "gfd/image_io.hpp"

namespace gfd {

Kernel psf_radial(int radius, bool normalized) {
    if (radius < 0) throw std::invalid_argument("psf_radial: radius must be nonnegative");
    int size = 2 * radius + 1;
    Kernel k(size, size);
    for (int j = -radius; j <= radius; ++j)
        for (int i = -radius; i <= radius; ++i)
            k.at(i + radius, j + radius) = 1.0 / (1.0 + i * i + j * j);
    if (normalized) normalize(k);
    return k;
}

Kernel psf_boxcar(int size) {
    if (size <= 0 || size % 2 == 0)
        throw std::invalid_argument("psf_boxcar: size must be odd and positive");
    double v = 1.0 / (static_cast<double>(size) * size);
    return Kernel(size, size, std::vector<double>(static_cast<std::size_t>(size) * size, v));
}

Kernel psf_binomial() {
    static const double row[5] = {1.0, 4.0, 6.0, 4.0, 1.0};
    Kernel k(5, 5);
    for (int y = 0; y < 5; ++y)
        for (int x = 0; x < 5; ++x)
            k.at(x, y) = row[x] * row[y] / 256.0;
    return k;
}

Kernel psf_gaussian(double sigma, int size) {
    if (sigma <= 0.0) throw std::invalid_argument("psf_gaussian: sigma must be positive");
    if (size <= 0 || size % 2 == 0)
        throw std::invalid_argument("psf_gaussian: size must be odd and positive");
    int r = size / 2;
    Kernel k(size, size);
    double inv2s2 = 1.0 / (2.0 * sigma * sigma);
    for (int j = -r; j <= r; ++j)
        for (int i = -r; i <= r; ++i)
            k.at(i + r, j + r) = std::exp(-(i * i + j * j) * inv2s2);
    normalize(k);
    return k;
}

double kernel_sum(const Kernel& k) {
    CompensatedSum acc;
    for (double v : k.data()) acc.add(v);
    return acc.value();
}

double kernel_l1(const Kernel& k) {
    CompensatedSum acc;
    for (double v : k.data()) acc.add(std::abs(v));
    return acc.value();
}

void normalize(Kernel& k) {
    double s = kernel_sum(k);
    if (s == 0.0) throw std::invalid_argument("normalize: kernel sums to zero");
    for (double& v : k.data()) v /= s;
}

void save_kernel(const Kernel& k, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError(path + ": cannot open for writing");
    out << k.width() << " " << k.height() << "\n";
    out << std::setprecision(17);
    for (int y = 0; y < k.height(); ++y) {
        for (int x = 0; x < k.width(); ++x) {
            if (x) out << " ";
            out << k.at(x, y);
        }
        out << "\n";
    }
    if (!out) throw IoError(path + ": write failed");
}

Kernel load_kernel(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError(path + ": cannot open for reading");
    int width = 0, height = 0;
    if (!(in >> width >> height))
        throw IoError(path + ": malformed kernel header");
    if (width <= 0 || height <= 0 || width % 2 == 0 || height % 2 == 0)
        throw IoError(path + ": kernel dimensions must be odd and positive");
    std::vector<double> taps(static_cast<std::size_t>(width) * height);
    for (double& v : taps)
        if (!(in >> v)) throw IoError(path + ": truncated kernel data");
    return Kernel(width, height, std::move(taps));
}

}  // namespace gfd
