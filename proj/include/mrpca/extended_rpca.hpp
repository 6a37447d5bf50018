#pragma once

#include "mrpca/grad3d.hpp"
#include "mrpca/poisson_fft.hpp"
#include "mrpca/prox.hpp"
#include "mrpca/trace.hpp"
#include "mrpca/volume.hpp"

namespace mrpca {

// Extension of the masked decomposition with a sparse perturbation term E
// (dynamic background) and a TV-regularized mask:
//
//   minimize ||L||_* + lambda_w ||W||^2 + lambda_z |||Z|||_1 + lambda_e ||E||_1
//   s.t.     (1-W) o (X - L) = E,   D_3d(W) = Z,   W in [0,1]^{mn x k}
//
// ADMM with linearization; the W subproblem is a screened Poisson system
// solved exactly by FFT (see poisson_fft.hpp) and then clamped to [0,1].
struct ExtendedConfig {
    double lambda_w = 1e-2;  // mask energy weight (on ||W||^2)
    double lambda_z = 3e-3;  // TV weight
    double lambda_e = 4e-2;  // sparse-perturbation weight
    double rho_x = 0.5;
    double rho_z = 1.0;
    double tau_l = 0.5;
    double tau_w = 0.5;
    int max_iters = 800;
    double tol_gap = 1e-4;
    double tol_change = 1e-5;

    void validate() const;
};

struct ExtendedState {
    Mat L;
    Mat W;
    Mat E;    // sparse perturbation absorbed from the background
    Mat U_x;  // dual of (1-W) o (L-X) + E = 0
    GradField Z;    // auxiliary gradient variable
    GradField U_z;  // dual of Z - D_3d(W) = 0
    int iter = 0;
};

struct ExtendedResult {
    Mat low_rank;
    Mat mask;
    Mat perturbation;
    bool converged = false;
    int iterations = 0;
    double final_gap_rel = 0.0;    // overlay residual
    double final_gap_z_rel = 0.0;  // gradient-split residual
    SolverTrace trace;
    InvariantStats invariants;
};

// Linearized-gradient terms; reduce to the masked solver's when E = 0.
Mat low_rank_gradient_ext(const ExtendedState& s, const Mat& x, double rho_x);
Mat mask_gradient_ext(const ExtendedState& s, const Mat& l_new, const Mat& x, double rho_x);

SvtResult update_low_rank_ext(const ExtendedState& s, const Mat& x, const ExtendedConfig& cfg);

// W step: solves (2 lambda_w + rho_x/tau_w) W + rho_z D^T D W = Gamma by FFT,
// then clamps. Returns the clamped iterate; `pre_clamp` (when non-null)
// receives the exact unconstrained solution, and `gamma_out` the assembled
// right-hand side, for optimality checking.
Mat update_mask_ext(const ExtendedState& s, const Mat& l_new, const Mat& x,
                    const ExtendedConfig& cfg, const Dims& dims, PoissonSolver& poisson,
                    Mat* pre_clamp = nullptr, Mat* gamma_out = nullptr);

// E step: soft((W-1) o (L-X) - U_x/rho_x, lambda_e/rho_x) with fresh L, W.
Mat update_perturbation(const ExtendedState& s, const Mat& l_new, const Mat& w_new, const Mat& x,
                        const ExtendedConfig& cfg);

// Z step: shrink(D_3d(W) - U_z/rho_z, lambda_z/rho_z) with fresh W.
GradField update_aux_gradient(const ExtendedState& s, const GradField& grad_w_new,
                              const ExtendedConfig& cfg);

// Dual ascent on both constraints; all primal blocks fresh.
struct DualPair {
    Mat u_x;
    GradField u_z;
};
DualPair update_duals_ext(const ExtendedState& s, const Mat& x, const GradField& grad_w,
                          const ExtendedConfig& cfg);

double extended_lagrangian(const ExtendedState& s, double l_nuclear, const Mat& x,
                           const GradField& grad_w, const ExtendedConfig& cfg);

ExtendedResult solve_extended(const Mat& x, const Dims& dims, const ExtendedConfig& cfg,
                              const DiagnosticOptions& diag = {});

}  // namespace mrpca
