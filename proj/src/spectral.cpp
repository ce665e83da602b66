#include "conelab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "conelab/jacobi.hpp"

namespace conelab {

double EigenSystem::min_eigenvalue() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& vals : eigenvalues) m = std::min(m, vals.minCoeff());
  return m;
}

double EigenSystem::max_eigenvalue() const {
  double m = -std::numeric_limits<double>::infinity();
  for (const auto& vals : eigenvalues) m = std::max(m, vals.maxCoeff());
  return m;
}

double EigenSystem::spectral_radius() const {
  return std::max(std::abs(min_eigenvalue()), std::abs(max_eigenvalue()));
}

std::vector<double> EigenSystem::sorted_eigenvalues() const {
  std::vector<double> all;
  for (const auto& vals : eigenvalues) {
    for (Eigen::Index i = 0; i < vals.size(); ++i) all.push_back(vals(i));
  }
  std::sort(all.begin(), all.end());
  return all;
}

EigenSystem hermitian_eig(const Element& a) {
  EigenSystem sys;
  sys.shape = a.shape;
  for (const Matrix& m : a.blocks) {
    JacobiResult r = jacobi_hermitian(m);
    sys.eigenvalues.push_back(std::move(r.eigenvalues));
    sys.vectors.push_back(std::move(r.vectors));
  }
  return sys;
}

namespace {

bool is_integral(double p) { return std::abs(p - std::round(p)) < 1e-12; }

double apply_scalar(double lambda, const ScalarFunction& f) {
  switch (f.kind) {
    case ScalarFunction::Kind::Power: return std::pow(lambda, f.exponent);
    case ScalarFunction::Kind::Sqrt: return std::sqrt(lambda);
    case ScalarFunction::Kind::Inverse: return 1.0 / lambda;
    case ScalarFunction::Kind::Log: return std::log(lambda);
    case ScalarFunction::Kind::Exp: return std::exp(lambda);
  }
  return lambda;
}

}  // namespace

Element func_calc(const Element& a, const ScalarFunction& f) {
  const EigenSystem sys = hermitian_eig(a);
  const double radius = sys.spectral_radius();
  const double min_eig = sys.min_eigenvalue();

  // Domain gates. Tiny negatives inside the classification band count as
  // zero; anything past it is a genuine domain violation.
  const double neg_band = kClassifyTol * radius;
  bool needs_positive = false;
  bool needs_invertible = false;
  switch (f.kind) {
    case ScalarFunction::Kind::Sqrt:
      needs_positive = true;
      break;
    case ScalarFunction::Kind::Power:
      if (f.exponent < 0.0) {
        needs_invertible = true;
        needs_positive = !is_integral(f.exponent);
      } else if (!is_integral(f.exponent)) {
        needs_positive = true;
      }
      break;
    case ScalarFunction::Kind::Inverse:
      needs_invertible = true;
      needs_positive = true;
      break;
    case ScalarFunction::Kind::Log:
      needs_positive = true;
      needs_invertible = true;
      break;
    case ScalarFunction::Kind::Exp:
      break;
  }

  if (needs_positive && min_eig < -neg_band) {
    throw DomainError("func_calc: negative eigenvalue " +
                      std::to_string(min_eig) + " outside the domain");
  }
  if (needs_invertible && min_eig < kInvertibilityFloor) {
    const std::string msg = "func_calc: eigenvalue " +
                            std::to_string(min_eig) +
                            " below the invertibility floor";
    if (f.kind == ScalarFunction::Kind::Log) throw DomainError(msg);
    throw SingularError(msg);
  }

  // Eigenvalues inside the classification band around 0 are cone
  // boundary plus rounding; fractional powers would amplify that noise
  // (eps^{1/4} of a pinned zero is ~1e-4), so they snap to an exact 0
  // whenever f(0) is finite. Inverse-like functions already raised above.
  const bool snap_to_zero = needs_positive && !needs_invertible;
  std::vector<Matrix> blocks;
  for (int b = 0; b < a.shape.block_count(); ++b) {
    const Eigen::VectorXd& vals = sys.eigenvalues[static_cast<size_t>(b)];
    const Matrix& u = sys.vectors[static_cast<size_t>(b)];
    Eigen::VectorXd mapped(vals.size());
    for (Eigen::Index i = 0; i < vals.size(); ++i) {
      double lambda = vals(i);
      if (snap_to_zero && std::abs(lambda) <= neg_band) lambda = 0.0;
      if (needs_positive && lambda < 0.0) lambda = 0.0;
      mapped(i) = apply_scalar(lambda, f);
    }
    Matrix out = u * mapped.asDiagonal() * u.adjoint();
    blocks.push_back(0.5 * (out + out.adjoint().eval()));
  }
  return Element(a.shape, std::move(blocks));
}

Element element_sqrt(const Element& a) { return func_calc(a, ScalarFunction::sqrt()); }
Element element_inverse(const Element& a) { return func_calc(a, ScalarFunction::inverse()); }
Element element_log(const Element& a) { return func_calc(a, ScalarFunction::log()); }
Element element_exp(const Element& a) { return func_calc(a, ScalarFunction::exp()); }
Element element_power(const Element& a, double p) {
  return func_calc(a, ScalarFunction::power(p));
}

double op_norm(const Element& a) {
  double best = 0.0;
  for (const Matrix& m : a.blocks) {
    const JacobiResult gram = jacobi_hermitian(m.adjoint() * m);
    const double top = gram.eigenvalues(gram.eigenvalues.size() - 1);
    best = std::max(best, std::sqrt(std::max(top, 0.0)));
  }
  return best;
}

double spectral_seminorm(const Element& a, double tol) {
  double skew_sq = 0.0;
  double norm_sq = 0.0;
  for (const Matrix& m : a.blocks) {
    skew_sq += (m - m.adjoint()).squaredNorm();
    norm_sq += m.squaredNorm();
  }
  if (std::sqrt(skew_sq) > tol * std::max(std::sqrt(norm_sq), 1e-300)) {
    throw UnsupportedElement(
        "spectral_seminorm: element is not self-adjoint; use the "
        "positive-product form for products of positives");
  }
  return hermitian_eig(a).spectral_radius();
}

namespace {

Element congruence_by_sqrt(const Element& x, const Element& y) {
  const Element rx = element_sqrt(x);
  return mul(mul(rx, y), rx);
}

}  // namespace

double spectral_seminorm_positive_product(const Element& x, const Element& y) {
  const EigenSystem sys = hermitian_eig(congruence_by_sqrt(x, y));
  return std::max(sys.max_eigenvalue(), 0.0);
}

std::vector<double> spectrum_of_positive_product(const Element& x,
                                                 const Element& y) {
  return hermitian_eig(congruence_by_sqrt(x, y)).sorted_eigenvalues();
}

bool positive_product_invertible(const Element& x, const Element& y) {
  const EigenSystem sys = hermitian_eig(congruence_by_sqrt(x, y));
  return sys.min_eigenvalue() > 1e-10 * (op_norm(x) * op_norm(y));
}

double inf_dominance(const Element& x, const Element& y) {
  const Element y_inv_sqrt = element_power(y, -0.5);
  return op_norm(mul(mul(y_inv_sqrt, x), y_inv_sqrt));
}

std::vector<double> spectrum_hermitian(const Element& a) {
  return hermitian_eig(a).sorted_eigenvalues();
}

}  // namespace conelab
