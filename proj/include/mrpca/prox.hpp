#pragma once

#include "mrpca/volume.hpp"

namespace mrpca {

// Output of singular value thresholding. `nuclear_norm` is the nuclear norm
// of `value` (the sum of the surviving thresholded singular values), which
// solver loops reuse for objective bookkeeping instead of running a second
// SVD.
struct SvtResult {
    Mat value;
    double nuclear_norm = 0.0;
    int rank = 0;
};

// Singular value thresholding: with Y = U S V^T returns U (S - delta I)_+ V^T.
// This is the proximal operator of delta * ||.||_*.
SvtResult svt(const Mat& y, double delta);

// Entry-wise sign(y) * max(|y| - t, 0).
Mat soft_threshold(const Mat& y, double t);

// Entry-wise clamp to [0, 1].
Mat project_unit_interval(const Mat& y);

// Voxel-wise group soft threshold: each 3-vector g = (h,v,d) maps to
// g * max(|g| - t, 0) / |g|, with 0 mapping to 0. Proximal operator of the
// isotropic 3D TV term applied to a gradient field.
GradField shrink_isotropic(const GradField& g, double t);

double nuclear_norm(const Mat& y);

}  // namespace mrpca
