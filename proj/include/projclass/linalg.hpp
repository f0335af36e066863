#pragma once

#include <vector>

#include "projclass/tracked.hpp"

namespace projclass {

using Matrix = std::vector<std::vector<BigFloat>>;

/// Singular values of a dense matrix by one-sided Jacobi rotations, sorted
/// in decreasing order.
std::vector<BigFloat> singular_values(Matrix a);

/// Number of singular values above `relative` times the largest.
int numeric_rank(const Matrix& a, double relative);

/// Matrix of tracked values with entries below `tol` relative to their
/// magnitude set to zero.
Matrix denoised(const std::vector<std::vector<Tracked>>& a, double tol);

}  // namespace projclass
