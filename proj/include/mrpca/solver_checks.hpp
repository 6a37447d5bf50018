#pragma once

#include "mrpca/prox.hpp"
#include "mrpca/trace.hpp"
#include "mrpca/volume.hpp"

namespace mrpca {

// Runtime invariant checks shared by the solvers, active when
// DiagnosticOptions::check_interval > 0. Each records its worst observed
// violation into InvariantStats; the test suites assert on the totals.

// Dual-ascent identity: the Lagrangian increase across a dual step must
// equal ||dU||^2 / rho. `delta` is the two-point evaluated increase, which
// resolves the true increase only to roughly an ulp of the Lagrangian, so
// the relative error uses max(expected, fp-resolution / 1e-8) as its
// denominator.
void record_dual_ascent(double& worst, double delta, double du_norm, double rho,
                        double lagrangian_scale);

// Membership of -(rho/tau)(L+ - L) - rho * grad_l in the nuclear-norm
// subdifferential at L+, via the U1 V1^T + H characterization.
void check_nuclear_subgradient(InvariantStats& stats, const Mat& l_old, const Mat& grad_l,
                               const SvtResult& lsv, double rho, double tau_l);

// Per-entry membership of -(rho/tau)(W+ - W) - rho * grad_w in the
// subdifferential of lambda_w ||.||_1 + box indicator at W+.
void check_l1_subgradient(InvariantStats& stats, const Mat& w_old, const Mat& grad_w,
                          const Mat& w_new, double lambda_w, double rho, double tau_w);

}  // namespace mrpca
