#include "mrpca/extended_rpca.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mrpca/masked_rpca.hpp"
#include "mrpca/solver_checks.hpp"

namespace mrpca {

void ExtendedConfig::validate() const {
    if (lambda_w <= 0 || lambda_z <= 0 || lambda_e <= 0)
        throw std::invalid_argument("lambda_w, lambda_z, lambda_e must be positive");
    if (rho_x <= 0 || rho_z <= 0) throw std::invalid_argument("rho_x and rho_z must be positive");
    if (tau_l <= 0 || tau_l > 1 || tau_w <= 0 || tau_w > 1)
        throw std::invalid_argument("tau_l and tau_w must lie in (0,1]");
    if (max_iters <= 0) throw std::invalid_argument("max_iters must be positive");
    if (tol_gap <= 0 || tol_change <= 0) throw std::invalid_argument("tolerances must be positive");
}

Mat low_rank_gradient_ext(const ExtendedState& s, const Mat& x, double rho_x) {
    // (1-W) o ((L-X) o (1-W) + E + U_x/rho_x)
    const auto one_minus_w = 1.0 - s.W.array();
    return one_minus_w * ((s.L - x).array() * one_minus_w + s.E.array() + s.U_x.array() / rho_x);
}

Mat mask_gradient_ext(const ExtendedState& s, const Mat& l_new, const Mat& x, double rho_x) {
    // (X-L+) o ((L+-X) o (1-W) + E + U_x/rho_x)
    const auto resid = (l_new - x).array();
    return (-resid) * (resid * (1.0 - s.W.array()) + s.E.array() + s.U_x.array() / rho_x);
}

SvtResult update_low_rank_ext(const ExtendedState& s, const Mat& x, const ExtendedConfig& cfg) {
    return svt(s.L - cfg.tau_l * low_rank_gradient_ext(s, x, cfg.rho_x), cfg.tau_l / cfg.rho_x);
}

Mat update_mask_ext(const ExtendedState& s, const Mat& l_new, const Mat& x,
                    const ExtendedConfig& cfg, const Dims& dims, PoissonSolver& poisson,
                    Mat* pre_clamp, Mat* gamma_out) {
    const double alpha = 2.0 * cfg.lambda_w + cfg.rho_x / cfg.tau_w;

    // Gamma = (rho_x/tau_w) PsiHat_W + rho_z D^T (Z + U_z/rho_z)
    const Mat psi_hat = s.W - cfg.tau_w * mask_gradient_ext(s, l_new, x, cfg.rho_x);
    GradField shifted;
    shifted.h = s.Z.h + s.U_z.h / cfg.rho_z;
    shifted.v = s.Z.v + s.U_z.v / cfg.rho_z;
    shifted.d = s.Z.d + s.U_z.d / cfg.rho_z;
    const Mat gamma = (cfg.rho_x / cfg.tau_w) * psi_hat + cfg.rho_z * grad3d_adjoint(shifted, dims);

    const Mat solved = poisson.solve(gamma, alpha, cfg.rho_z);
    if (pre_clamp) *pre_clamp = solved;
    if (gamma_out) *gamma_out = gamma;
    return project_unit_interval(solved);
}

Mat update_perturbation(const ExtendedState& s, const Mat& l_new, const Mat& w_new, const Mat& x,
                        const ExtendedConfig& cfg) {
    const Mat arg = ((w_new.array() - 1.0) * (l_new - x).array() - s.U_x.array() / cfg.rho_x);
    return soft_threshold(arg, cfg.lambda_e / cfg.rho_x);
}

GradField update_aux_gradient(const ExtendedState& s, const GradField& grad_w_new,
                              const ExtendedConfig& cfg) {
    GradField arg;
    arg.h = grad_w_new.h - s.U_z.h / cfg.rho_z;
    arg.v = grad_w_new.v - s.U_z.v / cfg.rho_z;
    arg.d = grad_w_new.d - s.U_z.d / cfg.rho_z;
    return shrink_isotropic(arg, cfg.lambda_z / cfg.rho_z);
}

DualPair update_duals_ext(const ExtendedState& s, const Mat& x, const GradField& grad_w,
                          const ExtendedConfig& cfg) {
    DualPair out;
    out.u_x = s.U_x.array() +
              cfg.rho_x * ((1.0 - s.W.array()) * (s.L - x).array() + s.E.array());
    out.u_z.h = s.U_z.h + cfg.rho_z * (s.Z.h - grad_w.h);
    out.u_z.v = s.U_z.v + cfg.rho_z * (s.Z.v - grad_w.v);
    out.u_z.d = s.U_z.d + cfg.rho_z * (s.Z.d - grad_w.d);
    return out;
}

double extended_lagrangian(const ExtendedState& s, double l_nuclear, const Mat& x,
                           const GradField& grad_w, const ExtendedConfig& cfg) {
    const Mat resid_x = ((1.0 - s.W.array()) * (s.L - x).array() + s.E.array());
    GradField resid_z;
    resid_z.h = s.Z.h - grad_w.h;
    resid_z.v = s.Z.v - grad_w.v;
    resid_z.d = s.Z.d - grad_w.d;

    double v = l_nuclear + cfg.lambda_w * s.W.squaredNorm() + cfg.lambda_z * field_l1_norm(s.Z) +
               cfg.lambda_e * s.E.lpNorm<1>();
    v += s.U_x.cwiseProduct(resid_x).sum() + 0.5 * cfg.rho_x * resid_x.squaredNorm();
    v += s.U_z.h.cwiseProduct(resid_z.h).sum() + s.U_z.v.cwiseProduct(resid_z.v).sum() +
         s.U_z.d.cwiseProduct(resid_z.d).sum();
    v += 0.5 * cfg.rho_z * (resid_z.h.squaredNorm() + resid_z.v.squaredNorm() +
                            resid_z.d.squaredNorm());
    return v;
}

ExtendedResult solve_extended(const Mat& x, const Dims& dims, const ExtendedConfig& cfg,
                              const DiagnosticOptions& diag) {
    cfg.validate();
    require_matches_dims(x, dims, "solve_extended input");
    if (!x.allFinite()) throw std::invalid_argument("solve_extended: input has non-finite entries");

    const double x_scale = std::max(x.norm(), 1e-300);
    const double alpha = 2.0 * cfg.lambda_w + cfg.rho_x / cfg.tau_w;
    PoissonSolver poisson(dims);

    ExtendedState s;
    s.L = temporal_median(x);
    s.W = Mat::Zero(x.rows(), x.cols());
    s.E = Mat::Zero(x.rows(), x.cols());
    s.U_x = Mat::Zero(x.rows(), x.cols());
    s.Z = GradField::zeros(dims);
    s.U_z = GradField::zeros(dims);

    ExtendedResult res;
    res.trace.extended = true;

    double gap_x = (x - s.L).norm(), gap_z = 0.0;
    for (int it = 1; it <= cfg.max_iters; ++it) {
        s.iter = it;
        const bool deep_check = diag.check_interval > 0 && it % diag.check_interval == 0;

        SvtResult lsv = update_low_rank_ext(s, x, cfg);

        Mat w_pre, gamma;
        Mat w_new = update_mask_ext(s, lsv.value, x, cfg, dims, poisson,
                                    deep_check ? &w_pre : nullptr,
                                    deep_check ? &gamma : nullptr);
        if (deep_check) {
            check_nuclear_subgradient(res.invariants, s.L,
                                      low_rank_gradient_ext(s, x, cfg.rho_x), lsv, cfg.rho_x,
                                      cfg.tau_l);
            // The FFT path must solve the W normal equations exactly.
            const Mat lhs = alpha * w_pre + cfg.rho_z * grad3d_adjoint(grad3d(w_pre, dims), dims);
            const double rel = (lhs - gamma).norm() / std::max(gamma.norm(), 1e-300);
            res.invariants.normal_eq_rel_err = std::max(res.invariants.normal_eq_rel_err, rel);
        }

        const double dL = (lsv.value - s.L).norm();
        const double dW = (w_new - s.W).norm();

        s.L = std::move(lsv.value);
        s.W = std::move(w_new);
        const GradField grad_w = grad3d(s.W, dims);

        s.Z = update_aux_gradient(s, grad_w, cfg);
        s.E = update_perturbation(s, s.L, s.W, x, cfg);

        const DualPair duals = update_duals_ext(s, x, grad_w, cfg);
        const double dUx = (duals.u_x - s.U_x).norm();
        GradField dz;
        dz.h = duals.u_z.h - s.U_z.h;
        dz.v = duals.u_z.v - s.U_z.v;
        dz.d = duals.u_z.d - s.U_z.d;
        const double dUz = dz.norm();

        if (diag.check_interval > 0) {
            ExtendedState probe;  // shallow bookkeeping copy for the two-point evaluation
            probe.L = s.L;
            probe.W = s.W;
            probe.E = s.E;
            probe.Z = s.Z;
            probe.U_x = s.U_x;
            probe.U_z = s.U_z;
            const double before = extended_lagrangian(probe, lsv.nuclear_norm, x, grad_w, cfg);
            probe.U_x = duals.u_x;
            const double mid = extended_lagrangian(probe, lsv.nuclear_norm, x, grad_w, cfg);
            probe.U_z = duals.u_z;
            const double after = extended_lagrangian(probe, lsv.nuclear_norm, x, grad_w, cfg);
            const double scale =
                std::max({std::abs(before), std::abs(mid), std::abs(after)});
            record_dual_ascent(res.invariants.dual_ascent_rel_err, mid - before, dUx, cfg.rho_x,
                               scale);
            record_dual_ascent(res.invariants.dual_ascent_z_rel_err, after - mid, dUz, cfg.rho_z,
                               scale);
            ++res.invariants.checks;
        }
        s.U_x = duals.u_x;
        s.U_z = duals.u_z;

        gap_x = ((1.0 - s.W.array()) * (s.L - x).array() + s.E.array()).matrix().norm();
        GradField rz;
        rz.h = s.Z.h - grad_w.h;
        rz.v = s.Z.v - grad_w.v;
        rz.d = s.Z.d - grad_w.d;
        gap_z = rz.norm();

        const double objective = lsv.nuclear_norm + cfg.lambda_w * s.W.squaredNorm() +
                                 cfg.lambda_z * field_l1_norm(s.Z) +
                                 cfg.lambda_e * s.E.lpNorm<1>();
        res.trace.iter.push_back(it);
        res.trace.objective.push_back(objective);
        res.trace.gap.push_back(gap_x);
        res.trace.dL.push_back(dL);
        res.trace.dW.push_back(dW);
        res.trace.dU.push_back(dUx);
        res.trace.lagrangian.push_back(extended_lagrangian(s, lsv.nuclear_norm, x, grad_w, cfg));
        res.trace.gap_z.push_back(gap_z);
        res.trace.e_frac.push_back(
            static_cast<double>((s.E.array() != 0.0).count()) / static_cast<double>(s.E.size()));

        if (std::max(gap_x, gap_z) / x_scale < cfg.tol_gap &&
            std::max(dL, dW) / x_scale < cfg.tol_change) {
            res.converged = true;
            break;
        }
    }

    res.low_rank = std::move(s.L);
    res.mask = std::move(s.W);
    res.perturbation = std::move(s.E);
    res.iterations = s.iter;
    res.final_gap_rel = gap_x / x_scale;
    res.final_gap_z_rel = gap_z / x_scale;
    return res;
}

}  // namespace mrpca
