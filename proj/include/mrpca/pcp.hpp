#pragma once

#include <optional>
#include <vector>

#include "mrpca/prox.hpp"
#include "mrpca/trace.hpp"
#include "mrpca/volume.hpp"

namespace mrpca {

// Classic additive RPCA baseline via principal component pursuit,
//
//   minimize ||L||_* + lambda_s ||S||_1   s.t.  L + S = X,
//
// solved with the inexact augmented Lagrangian method (alternating SVT and
// soft-threshold steps with a growing penalty).
struct PcpConfig {
    // <= 0 selects the standard default 1 / sqrt(max(mn, k)).
    double lambda_s = 0.0;
    // Initial penalty; <= 0 selects 1.25 / sigma_max(X).
    double mu = 0.0;
    double mu_growth = 1.6;
    double mu_max_factor = 1e7;  // cap mu at mu0 * factor
    int max_iters = 500;
    double tol = 1e-7;  // relative residual ||X-L-S||_F / ||X||_F

    void validate() const;
};

struct PcpResult {
    Mat low_rank;
    Mat sparse;
    bool converged = false;
    int iterations = 0;
    double final_residual_rel = 0.0;
    SolverTrace trace;
};

PcpResult solve_pcp(const Mat& x, const PcpConfig& cfg);

// Rule for turning the sparse component into a binary mask.
struct MaskThresholdRule {
    bool use_otsu = false;
    double fixed = 0.5;  // threshold on |S|, ignored when use_otsu

    void validate() const;
};

// 256-bin Otsu threshold: the histogram cut over [min, max] maximizing
// between-class variance, returned as the boundary value between the two
// classes. Ties break to the lowest cut. Throws on constant input.
double otsu_threshold(const std::vector<double>& values);

// Binary mask: 1 where |S| exceeds the rule's threshold.
Mat mask_from_sparse(const Mat& s, const MaskThresholdRule& rule,
                     double* threshold_out = nullptr);

}  // namespace mrpca
