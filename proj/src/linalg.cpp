#include "framelab/linalg.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include <Eigen/SVD>

namespace framelab {

Mat dual_basis(const Mat& basis) {
  if (basis.rows() != basis.cols())
    fail(ErrorKind::NotABasis, "dual basis needs a square system, got " +
                                   std::to_string(basis.rows()) + "x" +
                                   std::to_string(basis.cols()));
  Eigen::FullPivLU<Mat> lu(basis.adjoint());
  lu.setThreshold(1e-12);
  if (!lu.isInvertible())
    fail(ErrorKind::NotABasis, "system matrix is numerically singular");
  return lu.inverse();
}

namespace {

template <typename M>
int rank_impl(const M& m, double rel_tol) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::JacobiSVD<M> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) <= 0.0) return 0;
  const double cut = rel_tol * sv(0);
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cut) ++r;
  return r;
}

}  // namespace

int rank_of(const Mat& m, double rel_tol) { return rank_impl(m, rel_tol); }
int rank_of(const RealMat& m, double rel_tol) { return rank_impl(m, rel_tol); }

double largest_singular_value(const Mat& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  Eigen::JacobiSVD<Mat> svd(m);
  return svd.singularValues()(0);
}

RealMat left_null_space(const RealMat& columns, double rel_tol) {
  const Eigen::Index n = columns.rows();
  if (columns.cols() == 0) return RealMat::Identity(n, n);
  Eigen::JacobiSVD<RealMat> svd(columns, Eigen::ComputeFullU);
  const auto& sv = svd.singularValues();
  const double cut = (sv.size() > 0 && sv(0) > 0.0) ? rel_tol * sv(0) : 0.0;
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cut) ++r;
  return svd.matrixU().rightCols(n - r);
}

void parallel_for(std::size_t count, int threads,
                  const std::function<void(std::size_t)>& body) {
  if (threads <= 0) threads = 1;
  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(threads), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        body(i);
      }
    });
  }
  for (auto& t : pool) t.join();
}

double fit_loglog_slope(const std::vector<double>& x,
                        const std::vector<double>& y) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) continue;
    if (!std::isfinite(x[i]) || !std::isfinite(y[i])) continue;
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(y[i]));
  }
  const std::size_t n = lx.size();
  if (n < 2) return 0.0;
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (sxx <= 0.0) return 0.0;
  return sxy / sxx;
}

}  // namespace framelab
