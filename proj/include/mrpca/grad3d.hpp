#pragma once

#include "mrpca/volume.hpp"

namespace mrpca {

// Forward first differences of the m x n x k tensor view of `x`, periodic in
// every axis:
//
//   h(i,j,t) = x(i, j+1 mod n, t) - x(i,j,t)   (horizontal, along columns)
//   v(i,j,t) = x(i+1 mod m, j, t) - x(i,j,t)   (vertical, along rows)
//   d(i,j,t) = x(i, j, t+1 mod k) - x(i,j,t)   (depth, along frames)
//
// Periodic boundaries keep the operator circulant, so D^T D diagonalizes
// under the 3D DFT (see poisson_fft.hpp).
GradField grad3d(const Mat& x, const Dims& dims);

// Adjoint of grad3d: <grad3d(x), g> = <x, grad3d_adjoint(g)>.
Mat grad3d_adjoint(const GradField& g, const Dims& dims);

// Isotropic 3D total variation: sum over voxels of sqrt(h^2 + v^2 + d^2).
double tv_norm(const Mat& x, const Dims& dims);

// Sum over voxels of the Euclidean magnitude of an existing gradient field
// (the ||.|_1 of voxel magnitudes used in the TV-regularized objective).
double field_l1_norm(const GradField& g);

}  // namespace mrpca
