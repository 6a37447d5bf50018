#include "mrpca/grad3d.hpp"

#include <cmath>

namespace mrpca {

GradField grad3d(const Mat& x, const Dims& dims) {
    require_matches_dims(x, dims, "grad3d input");
    const int m = dims.m, n = dims.n, k = dims.k;

    GradField g;
    g.h.resize(x.rows(), x.cols());
    g.v.resize(x.rows(), x.cols());
    g.d.resize(x.rows(), x.cols());

    for (int t = 0; t < k; ++t) {
        const int tn = (t + 1 == k) ? 0 : t + 1;
        for (int j = 0; j < n; ++j) {
            const int jn = (j + 1 == n) ? 0 : j + 1;
            for (int i = 0; i < m; ++i) {
                const int in = (i + 1 == m) ? 0 : i + 1;
                const int p = i + j * m;
                const double c = x(p, t);
                g.h(p, t) = x(i + jn * m, t) - c;
                g.v(p, t) = x(in + j * m, t) - c;
                g.d(p, t) = x(p, tn) - c;
            }
        }
    }
    return g;
}

Mat grad3d_adjoint(const GradField& g, const Dims& dims) {
    require_matches_dims(g.h, dims, "grad3d_adjoint input");
    require_same_shape(g.h, g.v, "gradient field channels");
    require_same_shape(g.h, g.d, "gradient field channels");
    const int m = dims.m, n = dims.n, k = dims.k;

    Mat out(g.h.rows(), g.h.cols());
    for (int t = 0; t < k; ++t) {
        const int tp = (t == 0) ? k - 1 : t - 1;
        for (int j = 0; j < n; ++j) {
            const int jp = (j == 0) ? n - 1 : j - 1;
            for (int i = 0; i < m; ++i) {
                const int ip = (i == 0) ? m - 1 : i - 1;
                const int p = i + j * m;
                out(p, t) = g.h(i + jp * m, t) - g.h(p, t) + g.v(ip + j * m, t) - g.v(p, t) +
                            g.d(p, tp) - g.d(p, t);
            }
        }
    }
    return out;
}

double tv_norm(const Mat& x, const Dims& dims) {
    return field_l1_norm(grad3d(x, dims));
}

double field_l1_norm(const GradField& g) {
    return (g.h.array().square() + g.v.array().square() + g.d.array().square()).sqrt().sum();
}

}  // namespace mrpca
