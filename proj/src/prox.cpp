#include "mrpca/prox.hpp"

#include <Eigen/SVD>
#include <stdexcept>

namespace mrpca {

SvtResult svt(const Mat& y, double delta) {
    if (delta < 0) throw std::invalid_argument("svt: delta must be nonnegative");
    if (!y.allFinite()) throw std::invalid_argument("svt: input has non-finite entries");

    Eigen::BDCSVD<Mat> svd(y, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd& sv = svd.singularValues();

    int rank = 0;
    while (rank < sv.size() && sv(rank) > delta) ++rank;

    SvtResult out;
    out.rank = rank;
    if (rank == 0) {
        out.value = Mat::Zero(y.rows(), y.cols());
        return out;
    }
    Eigen::VectorXd kept = sv.head(rank).array() - delta;
    out.nuclear_norm = kept.sum();
    out.value.noalias() = svd.matrixU().leftCols(rank) * kept.asDiagonal() *
                          svd.matrixV().leftCols(rank).transpose();
    return out;
}

Mat soft_threshold(const Mat& y, double t) {
    if (t < 0) throw std::invalid_argument("soft_threshold: t must be nonnegative");
    return y.array().sign() * (y.array().abs() - t).max(0.0);
}

Mat project_unit_interval(const Mat& y) {
    return y.array().max(0.0).min(1.0);
}

GradField shrink_isotropic(const GradField& g, double t) {
    if (t < 0) throw std::invalid_argument("shrink_isotropic: t must be nonnegative");
    require_same_shape(g.h, g.v, "gradient field channels");
    require_same_shape(g.h, g.d, "gradient field channels");
    if (t == 0) return g;

    const auto mag = (g.h.array().square() + g.v.array().square() + g.d.array().square()).sqrt();
    // Dividing by max(mag, t) is division-safe at zero vectors; any voxel
    // where the denominator differs from mag has numerator 0.
    const auto scale = (mag - t).max(0.0) / mag.max(t);
    GradField out;
    out.h = g.h.array() * scale;
    out.v = g.v.array() * scale;
    out.d = g.d.array() * scale;
    return out;
}

double nuclear_norm(const Mat& y) {
    Eigen::BDCSVD<Mat> svd(y);
    return svd.singularValues().sum();
}

}  // namespace mrpca
