#include "gfd/pipeline.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "gfd/image_io.hpp"
#include "gfd/metrics.hpp"
#include "gfd/spectral.hpp"

namespace gfd {

void RestorationParams::validate() const {
    if (w < 0) throw std::invalid_argument("params: w must be nonnegative");
    if (epsilon <= 0.0) throw std::invalid_argument("params: epsilon must be positive");
    if (max_iter <= 0) throw std::invalid_argument("params: max_iter must be positive");
    if (!(sigma > 0.0)) throw std::invalid_argument("params: sigma must be positive");
    if (rho_override && (*rho_override <= 0.0 || *rho_override > 1.0))
        throw std::invalid_argument("params: rho must lie in (0,1]");
}

RestorationResult deconvolve(const Image& y, const Kernel& h,
                             const RestorationParams& params,
                             const Image* reference,
                             const IterationObserver& observer) {
    params.validate();
    if (reference && !reference->same_shape(y))
        throw std::invalid_argument("deconvolve: reference shape mismatch");

    double rho = params.rho_override
                     ? *params.rho_override
                     : compute_rho(y, h, NoiseModel{params.sigma, params.sigma * 255.0});

    Spectrum Fy = fft2(y);
    Spectrum otf = psf_to_otf(h, y.width(), y.height());
    GradientSpectrum grad = gradient_spectrum(y.width(), y.height());

    Image u_E = params.warm_start ? y : Image(y.width(), y.height(), 0.0);
    RestorationTrace trace;
    trace.reserve(params.max_iter);

    for (int k = 0; k < params.max_iter; ++k) {
        DiscrepancyContext ctx{Fy, fft2(u_E), otf, params.sigma, rho};
        RegSelection sel = select_lambda(ctx);

        Image u_I = sel.lambda
                        ? deblur_guidance(Fy, otf, grad, ctx.FuE, *sel.lambda)
                        : u_E;
        Image u_p = sel.lambda
                        ? deblur_input(Fy, otf, ctx.FuE, *sel.lambda)
                        : u_E;
        Image u = guided_filter(u_I, u_p, params.w, params.epsilon);

        TraceRecord rec{k, sel.lambda, sel.residual, std::nullopt};
        if (reference) rec.isnr_db = isnr(*reference, y, u);
        trace.push_back(rec);

        if (observer) observer(k, u_I, u_p, u);

        if (params.early_stop) {
            double base = sq_norm(u_E);
            if (base > 0.0 && sq_distance(u, u_E) / base < 1e-8) {
                u_E = std::move(u);
                break;
            }
        }
        u_E = std::move(u);
    }
    return RestorationResult{std::move(u_E), std::move(trace)};
}

std::string trace_to_csv(const RestorationTrace& trace) {
    std::ostringstream os;
    os << std::setprecision(17);
    os << "iter,lambda,residual,isnr\n";
    for (const TraceRecord& rec : trace) {
        os << rec.k << ",";
        if (rec.lambda)
            os << *rec.lambda;
        else
            os << "inf";
        os << "," << rec.residual << ",";
        if (rec.isnr_db) os << *rec.isnr_db;
        os << "\n";
    }
    return os.str();
}

void write_trace_csv(const RestorationTrace& trace, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError(path + ": cannot open for writing");
    out << trace_to_csv(trace);
    if (!out) throw IoError(path + ": write failed");
}

}  // namespace gfd
