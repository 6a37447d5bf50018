#pragma once

#include <memory>

#include "mrpca/volume.hpp"

namespace mrpca {

// Solves the screened Poisson system
//
//   (alpha I + rho_z D^T D) x = rhs
//
// where D is the periodic forward-difference operator of grad3d. Under
// periodic boundaries D^T D is diagonalized by the 3D DFT with eigenvalues
//
//   lam(p,q,r) = 4 sin^2(pi p / m) + 4 sin^2(pi q / n) + 4 sin^2(pi r / k),
//
// so the solve is one forward FFT, an element-wise division by
// (alpha + rho_z * lam), and one inverse FFT. The inverse transform of a real
// right-hand side is real up to roundoff; the imaginary residue is checked
// against 1e-8 (relative) before being dropped.
//
// A PoissonSolver instance owns FFTW plans and buffers for one set of dims;
// reuse it across iterations. An instance is single-threaded (solve writes
// into its plan buffer); use one instance per thread. Plan creation is
// serialized internally since the FFTW planner mutates global state.
class PoissonSolver {
  public:
    explicit PoissonSolver(Dims dims);
    ~PoissonSolver();
    PoissonSolver(const PoissonSolver&) = delete;
    PoissonSolver& operator=(const PoissonSolver&) = delete;

    Mat solve(const Mat& rhs, double alpha, double rho_z);

    const Dims& dims() const { return dims_; }

  private:
    struct Impl;
    Dims dims_;
    std::unique_ptr<Impl> impl_;
};

// One-shot convenience wrapper.
Mat solve_screened_poisson(const Mat& rhs, double alpha, double rho_z, const Dims& dims);

}  // namespace mrpca
