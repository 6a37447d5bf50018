#include "mrpca/poisson_fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace mrpca {

namespace {
// The FFTW planner mutates global state; creation/destruction must be
// serialized. Execution on instance-owned buffers is safe.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}
}  // namespace

struct PoissonSolver::Impl {
    fftw_complex* buf = nullptr;
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
    std::vector<double> eigenvalues;  // of D^T D, in buffer order
};

PoissonSolver::PoissonSolver(Dims dims) : dims_(dims), impl_(new Impl) {
    dims_.validate();
    const int m = dims_.m, n = dims_.n, k = dims_.k;
    const std::size_t count = static_cast<std::size_t>(dims_.voxels());

    impl_->buf = fftw_alloc_complex(count);
    if (!impl_->buf) throw std::bad_alloc();
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        // Storage is i-fastest (i, j, t), which is row-major (k, n, m) to FFTW.
        // FFTW_ESTIMATE keeps planning deterministic.
        impl_->fwd = fftw_plan_dft_3d(k, n, m, impl_->buf, impl_->buf, FFTW_FORWARD,
                                      FFTW_ESTIMATE);
        impl_->bwd = fftw_plan_dft_3d(k, n, m, impl_->buf, impl_->buf, FFTW_BACKWARD,
                                      FFTW_ESTIMATE);
    }
    if (!impl_->fwd || !impl_->bwd) throw std::runtime_error("fftw plan creation failed");

    impl_->eigenvalues.resize(count);
    const double pi = std::acos(-1.0);
    std::size_t idx = 0;
    for (int r = 0; r < k; ++r) {
        const double sd = std::sin(pi * r / k);
        for (int q = 0; q < n; ++q) {
            const double sh = std::sin(pi * q / n);
            for (int p = 0; p < m; ++p) {
                const double sv = std::sin(pi * p / m);
                impl_->eigenvalues[idx++] = 4.0 * (sv * sv + sh * sh + sd * sd);
            }
        }
    }
}

PoissonSolver::~PoissonSolver() {
    if (impl_) {
        std::lock_guard<std::mutex> lock(planner_mutex());
        if (impl_->fwd) fftw_destroy_plan(impl_->fwd);
        if (impl_->bwd) fftw_destroy_plan(impl_->bwd);
        if (impl_->buf) fftw_free(impl_->buf);
    }
}

Mat PoissonSolver::solve(const Mat& rhs, double alpha, double rho_z) {
    if (alpha <= 0) throw std::invalid_argument("screened poisson solve: alpha must be positive");
    if (rho_z < 0) throw std::invalid_argument("screened poisson solve: rho_z must be nonnegative");
    require_matches_dims(rhs, dims_, "screened poisson rhs");

    const std::size_t count = static_cast<std::size_t>(dims_.voxels());
    const double* src = rhs.data();
    for (std::size_t i = 0; i < count; ++i) {
        impl_->buf[i][0] = src[i];
        impl_->buf[i][1] = 0.0;
    }
    fftw_execute(impl_->fwd);
    for (std::size_t i = 0; i < count; ++i) {
        const double denom = alpha + rho_z * impl_->eigenvalues[i];
        impl_->buf[i][0] /= denom;
        impl_->buf[i][1] /= denom;
    }
    fftw_execute(impl_->bwd);

    const double scale = 1.0 / static_cast<double>(count);
    Mat out(rhs.rows(), rhs.cols());
    double* dst = out.data();
    double real_sq = 0.0, imag_sq = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        const double re = impl_->buf[i][0] * scale;
        const double im = impl_->buf[i][1] * scale;
        real_sq += re * re;
        imag_sq += im * im;
        dst[i] = re;
    }
    // Real operator, real rhs: any imaginary residue is FFT roundoff.
    if (imag_sq > 1e-16 * std::max(real_sq, 1e-300))
        throw std::runtime_error("screened poisson solve: imaginary residue above tolerance");
    return out;
}

Mat solve_screened_poisson(const Mat& rhs, double alpha, double rho_z, const Dims& dims) {
    return PoissonSolver(dims).solve(rhs, alpha, rho_z);
}

}  // namespace mrpca
