#include "mrpca/masked_rpca.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "mrpca/solver_checks.hpp"

namespace mrpca {

void MaskedConfig::validate() const {
    if (lambda_w <= 0 || rho_x <= 0)
        throw std::invalid_argument("lambda_w and rho_x must be positive");
    if (tau_l <= 0 || tau_l > 1 || tau_w <= 0 || tau_w > 1)
        throw std::invalid_argument("tau_l and tau_w must lie in (0,1]");
    if (max_iters <= 0) throw std::invalid_argument("max_iters must be positive");
    if (tol_gap <= 0 || tol_change <= 0) throw std::invalid_argument("tolerances must be positive");
}

Mat low_rank_gradient(const MaskedState& s, const Mat& x, double rho_x) {
    // (1-W) o ((L-X) o (1-W) + U_x/rho_x)
    const auto one_minus_w = 1.0 - s.W.array();
    return one_minus_w * ((s.L - x).array() * one_minus_w + s.U_x.array() / rho_x);
}

Mat mask_gradient(const MaskedState& s, const Mat& l_new, const Mat& x, double rho_x) {
    // (X-L+) o ((L+-X) o (1-W) + U_x/rho_x)
    const auto resid = (l_new - x).array();
    return (-resid) * (resid * (1.0 - s.W.array()) + s.U_x.array() / rho_x);
}

SvtResult update_low_rank(const MaskedState& s, const Mat& x, const MaskedConfig& cfg) {
    return svt(s.L - cfg.tau_l * low_rank_gradient(s, x, cfg.rho_x), cfg.tau_l / cfg.rho_x);
}

Mat update_mask(const MaskedState& s, const Mat& l_new, const Mat& x, const MaskedConfig& cfg) {
    const Mat arg = s.W - cfg.tau_w * mask_gradient(s, l_new, x, cfg.rho_x);
    return project_unit_interval(soft_threshold(arg, cfg.lambda_w * cfg.tau_w / cfg.rho_x));
}

Mat update_dual(const MaskedState& s, const Mat& x, double rho_x) {
    return s.U_x.array() + rho_x * (1.0 - s.W.array()) * (s.L - x).array();
}

Mat temporal_median(const Mat& x) {
    const Eigen::Index rows = x.rows(), cols = x.cols();
    Mat out(rows, cols);
    std::vector<double> buf(static_cast<std::size_t>(cols));
    for (Eigen::Index p = 0; p < rows; ++p) {
        for (Eigen::Index t = 0; t < cols; ++t) buf[static_cast<std::size_t>(t)] = x(p, t);
        std::sort(buf.begin(), buf.end());
        const std::size_t h = buf.size() / 2;
        const double med = (buf.size() % 2 == 1) ? buf[h] : 0.5 * (buf[h - 1] + buf[h]);
        out.row(p).setConstant(med);
    }
    return out;
}

double masked_lagrangian(const Mat& l, double l_nuclear, const Mat& w, const Mat& u_x,
                         const Mat& x, double lambda_w, double rho_x) {
    const Mat resid = (1.0 - w.array()) * (l - x).array();
    return l_nuclear + lambda_w * w.lpNorm<1>() + u_x.cwiseProduct(resid).sum() +
           0.5 * rho_x * resid.squaredNorm();
}

MaskedResult solve_masked(const Mat& x, const MaskedConfig& cfg, const DiagnosticOptions& diag) {
    cfg.validate();
    if (x.size() == 0) throw std::invalid_argument("solve_masked: empty input");
    if (!x.allFinite()) throw std::invalid_argument("solve_masked: input has non-finite entries");

    const double x_scale = std::max(x.norm(), 1e-300);

    MaskedState s;
    s.L = temporal_median(x);
    s.W = Mat::Zero(x.rows(), x.cols());
    s.U_x = Mat::Zero(x.rows(), x.cols());

    MaskedResult res;
    double gap = (x - s.L).norm();

    for (int it = 1; it <= cfg.max_iters; ++it) {
        s.iter = it;
        SvtResult lsv = update_low_rank(s, x, cfg);
        Mat w_new = update_mask(s, lsv.value, x, cfg);

        const double dL = (lsv.value - s.L).norm();
        const double dW = (w_new - s.W).norm();

        const bool deep_check = diag.check_interval > 0 && it % diag.check_interval == 0;
        if (deep_check) {
            check_nuclear_subgradient(res.invariants, s.L, low_rank_gradient(s, x, cfg.rho_x),
                                      lsv, cfg.rho_x, cfg.tau_l);
            check_l1_subgradient(res.invariants, s.W, mask_gradient(s, lsv.value, x, cfg.rho_x),
                                 w_new, cfg.lambda_w, cfg.rho_x, cfg.tau_w);
        }

        s.L = std::move(lsv.value);
        s.W = std::move(w_new);

        const Mat u_new = update_dual(s, x, cfg.rho_x);
        const double dU = (u_new - s.U_x).norm();

        if (diag.check_interval > 0) {
            const double before = masked_lagrangian(s.L, lsv.nuclear_norm, s.W, s.U_x, x,
                                                    cfg.lambda_w, cfg.rho_x);
            const double after = masked_lagrangian(s.L, lsv.nuclear_norm, s.W, u_new, x,
                                                   cfg.lambda_w, cfg.rho_x);
            record_dual_ascent(res.invariants.dual_ascent_rel_err, after - before, dU, cfg.rho_x,
                               std::max(std::abs(before), std::abs(after)));
            ++res.invariants.checks;
        }
        s.U_x = u_new;

        gap = ((1.0 - s.W.array()) * (x - s.L).array()).matrix().norm();
        res.trace.iter.push_back(it);
        res.trace.objective.push_back(lsv.nuclear_norm + cfg.lambda_w * s.W.lpNorm<1>());
        res.trace.gap.push_back(gap);
        res.trace.dL.push_back(dL);
        res.trace.dW.push_back(dW);
        res.trace.dU.push_back(dU);
        res.trace.lagrangian.push_back(
            masked_lagrangian(s.L, lsv.nuclear_norm, s.W, s.U_x, x, cfg.lambda_w, cfg.rho_x));

        if (gap / x_scale < cfg.tol_gap && std::max(dL, dW) / x_scale < cfg.tol_change) {
            res.converged = true;
            break;
        }
    }

    res.low_rank = std::move(s.L);
    res.mask = std::move(s.W);
    res.iterations = s.iter;
    res.final_gap_rel = gap / x_scale;
    return res;
}

}  // namespace mrpca
