#include "mrpca/pcp.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace mrpca {

void PcpConfig::validate() const {
    if (mu_growth < 1.0) throw std::invalid_argument("mu_growth must be >= 1");
    if (max_iters <= 0) throw std::invalid_argument("max_iters must be positive");
    if (tol <= 0) throw std::invalid_argument("tol must be positive");
}

void MaskThresholdRule::validate() const {
    if (!use_otsu && (fixed < 0.0 || fixed > 1.0))
        throw std::invalid_argument("fixed mask threshold must lie in [0,1]");
}

PcpResult solve_pcp(const Mat& x, const PcpConfig& cfg) {
    cfg.validate();
    if (x.size() == 0) throw std::invalid_argument("solve_pcp: empty input");
    if (!x.allFinite()) throw std::invalid_argument("solve_pcp: input has non-finite entries");

    const double x_norm = std::max(x.norm(), 1e-300);
    const double lambda =
        cfg.lambda_s > 0 ? cfg.lambda_s
                         : 1.0 / std::sqrt(static_cast<double>(std::max(x.rows(), x.cols())));

    double sigma_max = Eigen::BDCSVD<Mat>(x).singularValues()(0);
    if (sigma_max <= 0) sigma_max = 1.0;
    double mu = cfg.mu > 0 ? cfg.mu : 1.25 / sigma_max;
    const double mu_max = mu * cfg.mu_max_factor;

    Mat L = Mat::Zero(x.rows(), x.cols());
    Mat S = Mat::Zero(x.rows(), x.cols());
    // Standard dual scaling: Y = X / max(sigma_max, ||X||_inf / lambda).
    const double dual_scale =
        std::max(sigma_max, x.cwiseAbs().maxCoeff() / std::max(lambda, 1e-300));
    Mat Y = x / std::max(dual_scale, 1e-300);

    PcpResult res;
    double resid = 1.0;
    // Outer iteration = dual ascent at the current penalty; inner loop
    // alternates the two proximal steps until the primal pair settles, so
    // the residual decreases across outer iterations.
    constexpr int kInnerMax = 30;
    constexpr double kInnerTol = 1e-6;
    for (int it = 1; it <= cfg.max_iters; ++it) {
        res.iterations = it;
        const Mat l_prev = L;
        const Mat s_prev = S;
        double nuclear = 0.0;
        for (int inner = 0; inner < kInnerMax; ++inner) {
            const SvtResult lsv = svt(x - S + Y / mu, 1.0 / mu);
            const double dl = (lsv.value - L).norm();
            L = lsv.value;
            nuclear = lsv.nuclear_norm;
            const Mat s_new = soft_threshold(x - L + Y / mu, lambda / mu);
            const double ds = (s_new - S).norm();
            S = s_new;
            if (std::max(dl, ds) / x_norm < kInnerTol) break;
        }

        const Mat r = x - L - S;
        resid = r.norm() / x_norm;
        Y.noalias() += mu * r;
        const double dY = mu * r.norm();

        const double objective = nuclear + lambda * S.lpNorm<1>();
        res.trace.iter.push_back(it);
        res.trace.objective.push_back(objective);
        res.trace.gap.push_back(r.norm());
        res.trace.dL.push_back((L - l_prev).norm());
        res.trace.dW.push_back((S - s_prev).norm());
        res.trace.dU.push_back(dY);
        res.trace.lagrangian.push_back(objective + Y.cwiseProduct(r).sum() +
                                       0.5 * mu * r.squaredNorm());

        if (resid < cfg.tol) {
            res.converged = true;
            break;
        }
        mu = std::min(mu * cfg.mu_growth, mu_max);
    }

    res.low_rank = std::move(L);
    res.sparse = std::move(S);
    res.final_residual_rel = resid;
    return res;
}

double otsu_threshold(const std::vector<double>& values) {
    if (values.size() < 2) throw std::invalid_argument("otsu: need at least two values");
    const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
    const double lo = *lo_it, hi = *hi_it;
    if (!(hi > lo)) throw std::invalid_argument("otsu: constant input has no bimodal split");

    constexpr int kBins = 256;
    const double width = (hi - lo) / kBins;
    std::array<std::int64_t, kBins> hist{};
    for (double v : values) {
        int b = static_cast<int>((v - lo) / width);
        if (b >= kBins) b = kBins - 1;
        if (b < 0) b = 0;
        ++hist[static_cast<std::size_t>(b)];
    }

    // Cut after bin c: class 0 = bins [0,c], class 1 = bins (c,255]. Bin i is
    // represented by its center. Ties break to the lowest cut.
    const auto total = static_cast<double>(values.size());
    double sum_all = 0.0;
    for (int i = 0; i < kBins; ++i) sum_all += (i + 0.5) * static_cast<double>(hist[i]);

    double best_var = -1.0;
    int best_cut = -1;
    double w0 = 0.0, sum0 = 0.0;
    for (int c = 0; c + 1 < kBins; ++c) {
        w0 += static_cast<double>(hist[c]);
        sum0 += (c + 0.5) * static_cast<double>(hist[c]);
        const double w1 = total - w0;
        if (w0 == 0.0 || w1 == 0.0) continue;
        const double mean0 = sum0 / w0;
        const double mean1 = (sum_all - sum0) / w1;
        const double var = w0 * w1 * (mean0 - mean1) * (mean0 - mean1);
        if (var > best_var) {
            best_var = var;
            best_cut = c;
        }
    }
    if (best_cut < 0) throw std::invalid_argument("otsu: no valid split");
    return lo + (best_cut + 1) * width;
}

Mat mask_from_sparse(const Mat& s, const MaskThresholdRule& rule, double* threshold_out) {
    rule.validate();
    const Mat mag = s.cwiseAbs();
    double thr;
    if (rule.use_otsu) {
        std::vector<double> vals(mag.data(), mag.data() + mag.size());
        thr = otsu_threshold(vals);
    } else {
        thr = rule.fixed;
    }
    if (threshold_out) *threshold_out = thr;
    return (mag.array() > thr).cast<double>();
}

}  // namespace mrpca
