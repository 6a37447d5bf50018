#include "mrpca/solver_checks.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>

namespace mrpca {

void record_dual_ascent(double& worst, double delta, double du_norm, double rho,
                        double lagrangian_scale) {
    const double expected = du_norm * du_norm / rho;
    const double fp_floor = 256.0 * std::numeric_limits<double>::epsilon() *
                            std::max(1.0, std::abs(lagrangian_scale));
    const double rel = std::abs(delta - expected) / std::max(expected, fp_floor * 1e8);
    worst = std::max(worst, rel);
}

void check_nuclear_subgradient(InvariantStats& stats, const Mat& l_old, const Mat& grad_l,
                               const SvtResult& lsv, double rho, double tau_l) {
    const Mat g = -(rho / tau_l) * (lsv.value - l_old) - rho * grad_l;

    Eigen::BDCSVD<Mat> svd(lsv.value, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd& sv = svd.singularValues();
    const double cutoff = 1e-9 * std::max(1.0, sv.size() > 0 ? sv(0) : 0.0);
    int rank = 0;
    while (rank < sv.size() && sv(rank) > cutoff) ++rank;

    Mat h = g;
    double ortho = 0.0;
    if (rank > 0) {
        const auto u1 = svd.matrixU().leftCols(rank);
        const auto v1 = svd.matrixV().leftCols(rank);
        h.noalias() -= u1 * v1.transpose();
        ortho = std::max((u1.transpose() * h).norm(), (h * v1).norm());
    }
    const double spectral = h.size() > 0 ? Eigen::BDCSVD<Mat>(h).singularValues()(0) : 0.0;
    const double viol = std::max(ortho, std::max(spectral - 1.0, 0.0));
    stats.nuclear_subgrad_violation = std::max(stats.nuclear_subgrad_violation, viol);
}

void check_l1_subgradient(InvariantStats& stats, const Mat& w_old, const Mat& grad_w,
                          const Mat& w_new, double lambda_w, double rho, double tau_w) {
    const Mat g = -(rho / tau_w) * (w_new - w_old) - rho * grad_w;

    // Subdifferential of lambda_w |w| + indicator of [0,1] at the update:
    //   w in (0,1): exactly {lambda_w}
    //   w = 0:      (-inf, lambda_w]
    //   w = 1:      [lambda_w, inf)
    constexpr double edge = 1e-12;
    double worst = 0.0;
    for (Eigen::Index idx = 0; idx < w_new.size(); ++idx) {
        const double w = w_new(idx);
        const double gv = g(idx);
        double viol;
        if (w <= edge)
            viol = std::max(gv - lambda_w, 0.0);
        else if (w >= 1.0 - edge)
            viol = std::max(lambda_w - gv, 0.0);
        else
            viol = std::abs(gv - lambda_w);
        worst = std::max(worst, viol);
    }
    stats.l1_subgrad_violation = std::max(stats.l1_subgrad_violation, worst);
}

}  // namespace mrpca
