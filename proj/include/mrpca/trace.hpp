#pragma once

#include <string>
#include <vector>

namespace mrpca {

// Per-iteration convergence record shared by all three solvers.
//
// CSV schema: iter,objective,gap,dL,dW,dU,lagrangian
// The extended solver appends gap_z (second constraint residual) and e_frac
// (fraction of nonzero entries of E); `extended` switches the header.
//
// `gap` is the absolute Frobenius norm of the primary constraint residual;
// divide by `x_norm` for the relative gap used in stopping tests.
struct SolverTrace {
    bool extended = false;
    std::vector<int> iter;
    std::vector<double> objective;
    std::vector<double> gap;
    std::vector<double> dL;
    std::vector<double> dW;
    std::vector<double> dU;
    std::vector<double> lagrangian;
    std::vector<double> gap_z;
    std::vector<double> e_frac;

    std::size_t size() const { return iter.size(); }
    void write_csv(const std::string& path) const;
};

// Worst-case violations of the solver's runtime invariant checks, collected
// when DiagnosticOptions::check_interval > 0.
struct InvariantStats {
    int checks = 0;
    // |dL(U) - ||dU||^2/rho| / |expected|, dual-ascent identity per dual.
    double dual_ascent_rel_err = 0.0;
    double dual_ascent_z_rel_err = 0.0;
    // Nuclear-norm subgradient membership at the L update:
    // max of ||U1'H||, ||H V1|| (scaled) and (sigma_max(H) - 1)_+.
    double nuclear_subgrad_violation = 0.0;
    // Per-entry l1 + box-indicator subgradient membership at the W update.
    double l1_subgrad_violation = 0.0;
    // (Extended solver) relative residual of the W normal equations pre-clamp.
    double normal_eq_rel_err = 0.0;
};

struct DiagnosticOptions {
    // 0 disables invariant checking; N checks the dual-ascent identities every
    // iteration and the subgradient / normal-equation conditions every N-th.
    int check_interval = 0;
};

}  // namespace mrpca
