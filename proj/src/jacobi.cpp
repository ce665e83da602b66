#include "conelab/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <vector>

namespace conelab {

namespace {

using Complex = std::complex<double>;

double off_diagonal_norm(const Eigen::MatrixXcd& h) {
  double sum = 0.0;
  for (Eigen::Index p = 0; p < h.rows(); ++p) {
    for (Eigen::Index q = 0; q < h.cols(); ++q) {
      if (p != q) sum += std::norm(h(p, q));
    }
  }
  return std::sqrt(sum);
}

}  // namespace

JacobiResult jacobi_hermitian(const Eigen::MatrixXcd& m, int max_sweeps) {
  const Eigen::Index n = m.rows();
  Eigen::MatrixXcd h = 0.5 * (m + m.adjoint().eval());
  Eigen::MatrixXcd v = Eigen::MatrixXcd::Identity(n, n);

  const double fro = h.norm();
  const double off_target = 1e-12 * fro;

  if (n > 1 && fro > 0.0) {
    bool converged = false;
    for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
      for (Eigen::Index p = 0; p < n - 1; ++p) {
        for (Eigen::Index q = p + 1; q < n; ++q) {
          const Complex gamma = h(p, q);
          const double g = std::abs(gamma);
          if (g <= off_target / static_cast<double>(n * n)) continue;

          // Phase-reduce the (p,q) pivot to a real symmetric 2x2, then
          // apply the classical rotation with the stable small-|t| root.
          const Complex phase = gamma / g;  // e^{i phi}
          const double alpha = h(p, p).real();
          const double beta = h(q, q).real();
          const double tau = (beta - alpha) / (2.0 * g);
          const double t = tau >= 0.0
                               ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                               : -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
          const double c = 1.0 / std::sqrt(1.0 + t * t);
          const double s = t * c;
          const Complex sp = s * std::conj(phase);  // s e^{-i phi}

          // Columns p,q of h and of the accumulated basis.
          for (Eigen::Index r = 0; r < n; ++r) {
            const Complex hp = h(r, p);
            const Complex hq = h(r, q);
            h(r, p) = c * hp - sp * hq;
            h(r, q) = s * hp + c * std::conj(phase) * hq;
            const Complex vp = v(r, p);
            const Complex vq = v(r, q);
            v(r, p) = c * vp - sp * vq;
            v(r, q) = s * vp + c * std::conj(phase) * vq;
          }
          // Rows p,q of h.
          for (Eigen::Index r = 0; r < n; ++r) {
            const Complex hp = h(p, r);
            const Complex hq = h(q, r);
            h(p, r) = c * hp - s * phase * hq;
            h(q, r) = s * hp + c * phase * hq;
          }
          h(p, q) = 0.0;
          h(q, p) = 0.0;
          h(p, p) = Complex(h(p, p).real(), 0.0);
          h(q, q) = Complex(h(q, q).real(), 0.0);
        }
      }
      converged = off_diagonal_norm(h) <= off_target;
    }
    if (!converged) {
      throw NoConvergence("jacobi_hermitian: no convergence after " +
                          std::to_string(max_sweeps) + " sweeps");
    }
  }

  Eigen::VectorXd eigenvalues(n);
  for (Eigen::Index i = 0; i < n; ++i) eigenvalues(i) = h(i, i).real();

  std::vector<Eigen::Index> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return eigenvalues(a) < eigenvalues(b);
  });

  JacobiResult result;
  result.eigenvalues.resize(n);
  result.vectors.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    result.eigenvalues(i) = eigenvalues(order[static_cast<size_t>(i)]);
    result.vectors.col(i) = v.col(order[static_cast<size_t>(i)]);
  }
  return result;
}

}  // namespace conelab
