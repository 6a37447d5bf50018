#include <Eigen/SVD>
#include <cmath>
#include <random>

#include "doctest.h"
#include "mrpca/prox.hpp"
#include "test_util.hpp"

using mrpca::Mat;

namespace {

// Oracle for svt built on a different SVD algorithm (two-sided Jacobi),
// reconstructing U (S - delta)_+ V^T entry by entry.
Mat svt_oracle(const Mat& y, double delta) {
    Eigen::JacobiSVD<Mat> svd(y, Eigen::ComputeThinU | Eigen::ComputeThinV);
    Eigen::VectorXd s = (svd.singularValues().array() - delta).max(0.0);
    return svd.matrixU() * s.asDiagonal() * svd.matrixV().transpose();
}

double nuclear_plus_quadratic(const Mat& z, const Mat& y, double delta) {
    Eigen::JacobiSVD<Mat> svd(z);
    return 0.5 * (z - y).squaredNorm() + delta * svd.singularValues().sum();
}

}  // namespace

TEST_CASE("svt: zero matrix stays zero") {
    const Mat z = Mat::Zero(3, 3);
    CHECK(mrpca::svt(z, 0.5).value.isZero(0.0));
    CHECK(mrpca::svt(z, 0.5).rank == 0);
}

TEST_CASE("svt: delta 0 is the identity") {
    const Mat y = testutil::random_matrix(5, 4, 11);
    CHECK((mrpca::svt(y, 0.0).value - y).norm() < 1e-12);
}

TEST_CASE("svt: diag(3,1) with delta 2 gives diag(1,0)") {
    Mat y = Mat::Zero(2, 2);
    y(0, 0) = 3.0;
    y(1, 1) = 1.0;
    const Mat expect = (Mat(2, 2) << 1, 0, 0, 0).finished();
    CHECK((mrpca::svt(y, 2.0).value - expect).norm() < 1e-12);
    CHECK(mrpca::svt(y, 2.0).rank == 1);
}

TEST_CASE("svt: matches the full-SVD oracle on random 5x4 matrices") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Mat y = testutil::random_matrix(5, 4, 100 + seed);
        for (double delta : {0.1, 0.5, 1.5}) {
            const auto got = mrpca::svt(y, delta);
            CHECK((got.value - svt_oracle(y, delta)).cwiseAbs().maxCoeff() < 1e-10);
            Eigen::JacobiSVD<Mat> check(got.value);
            CHECK(std::abs(got.nuclear_norm - check.singularValues().sum()) < 1e-10);
        }
    }
}

TEST_CASE("svt: output rank never exceeds input rank") {
    Eigen::VectorXd u = testutil::random_matrix(6, 1, 7);
    Eigen::VectorXd v = testutil::random_matrix(4, 1, 8);
    const Mat y = u * v.transpose();  // rank 1
    CHECK(mrpca::svt(y, 1e-6).rank <= 1);
}

TEST_CASE("svt: is the prox of the nuclear norm (objective beats perturbations)") {
    const Mat y = testutil::random_matrix(6, 5, 42);
    const double delta = 0.4;
    const Mat z = mrpca::svt(y, delta).value;
    const double best = nuclear_plus_quadratic(z, y, delta);
    std::mt19937_64 rng(7);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        Mat pert(z.rows(), z.cols());
        for (Eigen::Index i = 0; i < pert.size(); ++i) pert(i) = g(rng);
        pert *= (trial % 2 == 0 ? 1e-3 : 0.3);
        CHECK(nuclear_plus_quadratic(z + pert, y, delta) >= best - 1e-10);
    }
}

TEST_CASE("svt: nonexpansive on random pairs") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Mat a = testutil::random_matrix(5, 4, 200 + seed);
        const Mat b = testutil::random_matrix(5, 4, 300 + seed);
        const double delta = 0.3;
        CHECK((mrpca::svt(a, delta).value - mrpca::svt(b, delta).value).norm() <=
              (a - b).norm() + 1e-12);
    }
}

TEST_CASE("svt: rejects non-finite input and negative delta") {
    Mat y = Mat::Zero(2, 2);
    CHECK_THROWS_AS(mrpca::svt(y, -1.0), std::invalid_argument);
    y(0, 0) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(mrpca::svt(y, 1.0), std::invalid_argument);
}

TEST_CASE("soft_threshold: analytic cases") {
    Mat y(1, 1);
    y << 0.5;
    CHECK(mrpca::soft_threshold(y, 1.0)(0, 0) == 0.0);
    Mat y2(1, 2);
    y2 << 2.0, -2.0;
    const Mat r = mrpca::soft_threshold(y2, 0.5);
    CHECK(r(0, 0) == doctest::Approx(1.5));
    CHECK(r(0, 1) == doctest::Approx(-1.5));
}

TEST_CASE("soft_threshold: matches the per-entry formula exactly") {
    const Mat y = testutil::random_matrix(4, 4, 5);
    const double t = 0.37;
    const Mat r = mrpca::soft_threshold(y, t);
    for (Eigen::Index i = 0; i < y.size(); ++i) {
        const double expect =
            (std::abs(y(i)) <= t) ? 0.0 : (y(i) > 0 ? y(i) - t : y(i) + t);
        CHECK(r(i) == expect);
    }
}

TEST_CASE("project_unit_interval: clamps and is idempotent") {
    Mat y(1, 3);
    y << -0.2, 0.5, 1.7;
    const Mat p = mrpca::project_unit_interval(y);
    CHECK(p(0, 0) == 0.0);
    CHECK(p(0, 1) == 0.5);
    CHECK(p(0, 2) == 1.0);

    const Mat in01 = testutil::random_matrix(3, 3, 9, 0.0, 1.0);
    CHECK((mrpca::project_unit_interval(in01) - in01).norm() == 0.0);

    const Mat r = testutil::random_matrix(4, 4, 10, -3.0, 3.0);
    const Mat once = mrpca::project_unit_interval(r);
    CHECK((mrpca::project_unit_interval(once) - once).norm() == 0.0);
}

TEST_CASE("shrink_isotropic: analytic voxel") {
    mrpca::GradField g;
    g.h = Mat::Constant(1, 1, 3.0);
    g.v = Mat::Constant(1, 1, 4.0);
    g.d = Mat::Constant(1, 1, 0.0);
    const auto r = mrpca::shrink_isotropic(g, 2.5);
    CHECK(r.h(0, 0) == doctest::Approx(1.5));
    CHECK(r.v(0, 0) == doctest::Approx(2.0));
    CHECK(r.d(0, 0) == doctest::Approx(0.0));
}

TEST_CASE("shrink_isotropic: below threshold collapses to zero") {
    mrpca::GradField g;
    g.h = Mat::Constant(2, 2, 0.1);
    g.v = Mat::Constant(2, 2, -0.1);
    g.d = Mat::Constant(2, 2, 0.05);
    const auto r = mrpca::shrink_isotropic(g, 1.0);
    CHECK(r.h.isZero(0.0));
    CHECK(r.v.isZero(0.0));
    CHECK(r.d.isZero(0.0));
}

TEST_CASE("shrink_isotropic: matches the per-voxel closed form") {
    const mrpca::Dims d{3, 2, 2};
    const auto g = testutil::random_field(d, 77);
    const double t = 0.6;
    const auto r = mrpca::shrink_isotropic(g, t);
    for (Eigen::Index i = 0; i < g.h.size(); ++i) {
        const double mag = std::sqrt(g.h(i) * g.h(i) + g.v(i) * g.v(i) + g.d(i) * g.d(i));
        const double scale = mag > t ? (mag - t) / mag : 0.0;
        CHECK(r.h(i) == doctest::Approx(g.h(i) * scale).epsilon(1e-14));
        CHECK(r.v(i) == doctest::Approx(g.v(i) * scale).epsilon(1e-14));
        CHECK(r.d(i) == doctest::Approx(g.d(i) * scale).epsilon(1e-14));
    }
}
