#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "framelab/types.hpp"

namespace framelab {

// Columns f_i with <f_i, e_j> = delta_ij for the basis given by the columns
// e_j of `basis`. Throws NotABasis when the matrix is numerically singular.
Mat dual_basis(const Mat& basis);

// Rank with threshold rel_tol * sigma_max.
int rank_of(const Mat& m, double rel_tol = 1e-10);
int rank_of(const RealMat& m, double rel_tol = 1e-10);

double largest_singular_value(const Mat& m);

// Orthonormal basis of the orthogonal complement of span{columns}; the
// returned matrix has n - rank columns (possibly zero).
RealMat left_null_space(const RealMat& columns, double rel_tol = 1e-10);

// Runs body(0..count-1) on up to `threads` workers. Each index is processed
// exactly once; callers must write results into per-index slots so the
// outcome does not depend on scheduling.
void parallel_for(std::size_t count, int threads,
                  const std::function<void(std::size_t)>& body);

// Least-squares slope of log(y) against log(x); entries with non-positive or
// non-finite values are skipped. Returns 0 when fewer than two points remain.
double fit_loglog_slope(const std::vector<double>& x,
                        const std::vector<double>& y);

}  // namespace framelab
