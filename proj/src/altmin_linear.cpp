#include <Eigen/Dense>

#include "altmin_detail.hpp"
#include "structbandit/errors.hpp"

namespace structbandit::detail {

namespace {

Eigen::MatrixXd design(const Linear& linear) {
  const std::size_t K = linear.arms.size();
  const std::size_t d = linear.dimension();
  Eigen::MatrixXd A(K, d);
  for (std::size_t i = 0; i < K; ++i)
    for (std::size_t c = 0; c < d; ++c) A(i, c) = linear.arms[i][c];
  return A;
}

}  // namespace

// Gaussian divergences make this weighted least squares; the ordering
// constraint, when violated, is active and becomes an equality.
std::vector<double> altmin_linear(const Linear& linear, const Family& family,
                                  std::span<const double> mu,
                                  std::span<const double> w, std::size_t j,
                                  std::size_t k) {
  if (family.kind() != Family::Kind::Gaussian)
    throw DomainError("linear structure is implemented for the gaussian family only");
  const Eigen::MatrixXd A = design(linear);
  const Eigen::Index d = A.cols();
  Eigen::Map<const Eigen::VectorXd> y(mu.data(), mu.size());
  Eigen::Map<const Eigen::VectorXd> wv(w.data(), w.size());

  Eigen::MatrixXd gram = A.transpose() * wv.asDiagonal() * A;
  Eigen::VectorXd rhs = A.transpose() * wv.asDiagonal() * y;
  Eigen::VectorXd eta = gram.completeOrthogonalDecomposition().solve(rhs);
  Eigen::VectorXd lambda = A * eta;

  if (lambda(k) < lambda(j)) {
    Eigen::VectorXd c = (A.row(k) - A.row(j)).transpose();
    Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(d + 1, d + 1);
    kkt.topLeftCorner(d, d) = gram;
    kkt.topRightCorner(d, 1) = c;
    kkt.bottomLeftCorner(1, d) = c.transpose();
    Eigen::VectorXd b = Eigen::VectorXd::Zero(d + 1);
    b.head(d) = rhs;
    Eigen::VectorXd sol = kkt.completeOrthogonalDecomposition().solve(b);
    lambda = A * sol.head(d);
  }
  return {lambda.data(), lambda.data() + lambda.size()};
}

double linear_residual(const Linear& linear, std::span<const double> lambda) {
  const Eigen::MatrixXd A = design(linear);
  Eigen::Map<const Eigen::VectorXd> y(lambda.data(), lambda.size());
  Eigen::VectorXd eta = A.completeOrthogonalDecomposition().solve(y);
  return (A * eta - y).cwiseAbs().maxCoeff();
}

}  // namespace structbandit::detail
