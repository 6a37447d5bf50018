#pragma once

#include "mrpca/prox.hpp"
#include "mrpca/trace.hpp"
#include "mrpca/volume.hpp"

namespace mrpca {

// Masked decomposition X = (1-W) o L + W o S in its convex relaxation:
//
//   minimize ||L||_* + lambda_w ||W||_1
//   s.t.     (1-W) o (X - L) = 0,   W in [0,1]^{mn x k}
//
// solved by ADMM with linearized subproblems. Each iteration runs one SVT
// step on L, one soft-threshold-and-project step on W, and a dual ascent
// step on U_x.
struct MaskedConfig {
    double lambda_w = 1e-3;  // mask sparsity weight
    double rho_x = 1.0;      // augmented Lagrangian penalty
    double tau_l = 0.5;      // proximal step for the L subproblem
    double tau_w = 0.5;      // proximal step for the W subproblem
    int max_iters = 500;
    double tol_gap = 1e-4;     // relative feasibility gap
    double tol_change = 1e-5;  // relative iterate change

    void validate() const;
};

struct MaskedState {
    Mat L;    // low-rank background, mn x k
    Mat W;    // soft mask in [0,1], mn x k
    Mat U_x;  // dual of the overlay constraint
    int iter = 0;
};

struct MaskedResult {
    Mat low_rank;
    Mat mask;
    bool converged = false;
    int iterations = 0;
    double final_gap_rel = 0.0;
    SolverTrace trace;
    InvariantStats invariants;
};

// Linearized-gradient terms of the two subproblems.
Mat low_rank_gradient(const MaskedState& s, const Mat& x, double rho_x);
// Uses the freshly updated L. `l_new` is L^{i+1}; W and U_x come from `s`.
Mat mask_gradient(const MaskedState& s, const Mat& l_new, const Mat& x, double rho_x);

// One L step: svt(L - tau_l * low_rank_gradient, tau_l / rho_x).
SvtResult update_low_rank(const MaskedState& s, const Mat& x, const MaskedConfig& cfg);
// One W step: clamp(soft(W - tau_w * mask_gradient, lambda_w tau_w / rho_x)).
Mat update_mask(const MaskedState& s, const Mat& l_new, const Mat& x, const MaskedConfig& cfg);
// Dual ascent: U_x + rho_x (1-W) o (L-X), with fresh L and W.
Mat update_dual(const MaskedState& s, const Mat& x, double rho_x);

// Per-pixel temporal median of X broadcast across frames; the initial L.
Mat temporal_median(const Mat& x);

// Augmented Lagrangian value at (L, W, U_x); the box indicator is zero for
// any W produced by update_mask.
double masked_lagrangian(const Mat& l, double l_nuclear, const Mat& w, const Mat& u_x,
                         const Mat& x, double lambda_w, double rho_x);

MaskedResult solve_masked(const Mat& x, const MaskedConfig& cfg,
                          const DiagnosticOptions& diag = {});

}  // namespace mrpca
