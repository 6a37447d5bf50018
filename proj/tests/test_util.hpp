#pragma once

#include <random>

#include "mrpca/volume.hpp"

namespace testutil {

// Seeded uniform random matrix in [lo, hi].
inline mrpca::Mat random_matrix(int rows, int cols, std::uint64_t seed, double lo = -1.0,
                                double hi = 1.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(lo, hi);
    mrpca::Mat m(rows, cols);
    for (Eigen::Index i = 0; i < m.size(); ++i) m(i) = dist(rng);
    return m;
}

inline mrpca::GradField random_field(const mrpca::Dims& d, std::uint64_t seed) {
    mrpca::GradField g;
    g.h = random_matrix(d.pixels(), d.k, seed);
    g.v = random_matrix(d.pixels(), d.k, seed + 1);
    g.d = random_matrix(d.pixels(), d.k, seed + 2);
    return g;
}

}  // namespace testutil
