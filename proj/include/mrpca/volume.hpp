#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <stdexcept>

namespace mrpca {

using Mat = Eigen::MatrixXd;

// Dimensions of a video volume: m rows x n columns per frame, k frames.
struct Dims {
    int m = 0;
    int n = 0;
    int k = 0;

    int pixels() const { return m * n; }
    std::int64_t voxels() const { return static_cast<std::int64_t>(m) * n * k; }

    bool operator==(const Dims&) const = default;

    void validate() const {
        if (m <= 0 || n <= 0 || k <= 0)
            throw std::invalid_argument("volume dimensions must be positive");
    }
};

// A grayscale video volume with two synchronized views of one buffer:
//
//   matrix view  X in R^{mn x k}, column t = vectorized frame t,
//   tensor view  T in R^{m x n x k}.
//
// Frames are vectorized column-major, pixel (i,j) of frame t lands at
// matrix entry (i + j*m, t). Since Eigen matrices are column-major the
// reshape between the two views is the identity on storage; at() below is
// that reshape spelled out.
class Volume {
  public:
    Volume() = default;
    Volume(Dims dims, Mat data) : dims_(dims), data_(std::move(data)) {
        dims_.validate();
        if (data_.rows() != dims_.pixels() || data_.cols() != dims_.k)
            throw std::invalid_argument("volume data does not match dims (want mn x k)");
    }
    static Volume zeros(Dims dims) {
        dims.validate();
        return Volume(dims, Mat::Zero(dims.pixels(), dims.k));
    }

    const Dims& dims() const { return dims_; }
    const Mat& matrix() const { return data_; }
    Mat& matrix() { return data_; }

    double at(int i, int j, int t) const { return data_(i + j * dims_.m, t); }
    double& at(int i, int j, int t) { return data_(i + j * dims_.m, t); }

  private:
    Dims dims_;
    Mat data_;
};

// Voxel-wise 3-channel gradient field (horizontal, vertical, depth
// differences), each channel stored in the mn x k matrix layout above.
struct GradField {
    Mat h, v, d;

    static GradField zeros(Dims dims) {
        const Mat z = Mat::Zero(dims.pixels(), dims.k);
        return GradField{z, z, z};
    }
    double norm() const {
        return std::sqrt(h.squaredNorm() + v.squaredNorm() + d.squaredNorm());
    }
};

inline void require_same_shape(const Mat& a, const Mat& b, const char* what) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument(std::string("dimension mismatch: ") + what);
}

inline void require_matches_dims(const Mat& x, const Dims& dims, const char* what) {
    dims.validate();
    if (x.rows() != dims.pixels() || x.cols() != dims.k)
        throw std::invalid_argument(std::string("matrix does not reshape to dims: ") + what);
}

}  // namespace mrpca
