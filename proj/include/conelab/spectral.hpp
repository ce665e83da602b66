#pragma once

// Hermitian eigendecomposition, functional calculus, operator norm,
// spectral seminorm, and the order-dominance functional.

#include <vector>

#include "conelab/algebra.hpp"

namespace conelab {

struct EigenSystem {
  AlgebraShape shape;
  std::vector<Eigen::VectorXd> eigenvalues;  // ascending per block
  std::vector<Matrix> vectors;               // unitary per block

  double min_eigenvalue() const;
  double max_eigenvalue() const;
  // max |eigenvalue| over all blocks
  double spectral_radius() const;
  // all eigenvalues of all blocks, sorted ascending
  std::vector<double> sorted_eigenvalues() const;
};

// Symmetrizes (a + a*)/2 first; the skew part must be classification
// noise, not structure — callers pass self-adjoint elements.
EigenSystem hermitian_eig(const Element& a);

struct ScalarFunction {
  enum class Kind { Power, Sqrt, Inverse, Log, Exp };
  Kind kind;
  double exponent = 0.0;

  static ScalarFunction power(double p) { return {Kind::Power, p}; }
  static ScalarFunction sqrt() { return {Kind::Sqrt, 0.5}; }
  static ScalarFunction inverse() { return {Kind::Inverse, -1.0}; }
  static ScalarFunction log() { return {Kind::Log, 0.0}; }
  static ScalarFunction exp() { return {Kind::Exp, 0.0}; }
};

// U f(Λ) U*. Fractional powers and sqrt need Positive input; inverse,
// log and negative powers need PositiveInvertible. Near-singular input
// raises instead of clamping, so a suite failure cannot hide behind a
// silent cutoff.
Element func_calc(const Element& a, const ScalarFunction& f);

Element element_sqrt(const Element& a);
Element element_inverse(const Element& a);
Element element_log(const Element& a);
Element element_exp(const Element& a);
Element element_power(const Element& a, double p);

// Largest singular value: sqrt of the top eigenvalue of a*a.
double op_norm(const Element& a);

// Spectral seminorm of a (near-)self-adjoint element; throws
// UnsupportedElement otherwise. General non-normal spectra are out of
// scope; products of positives go through the dedicated routines below.
double spectral_seminorm(const Element& a, double tol = kClassifyTol);

// ||xy||_S for positive x, y, computed as the top eigenvalue of
// x^{1/2} y x^{1/2} (Jacobson: σ(xy) and σ(x^{1/2}yx^{1/2}) agree off 0,
// and everything here is nonnegative).
double spectral_seminorm_positive_product(const Element& x, const Element& y);

// Eigenvalues of x^{1/2} y x^{1/2}, sorted ascending over all blocks.
std::vector<double> spectrum_of_positive_product(const Element& x,
                                                 const Element& y);

// 0 ∉ σ(xy), decided with the scale-invariant cutoff
// min λ > 1e-10 ||x|| ||y||.
bool positive_product_invertible(const Element& x, const Element& y);

// inf{t : x ≤ ty} = ||y^{-1/2} x y^{-1/2}|| for positive invertible x, y.
double inf_dominance(const Element& x, const Element& y);

// Sorted spectrum of a self-adjoint element.
std::vector<double> spectrum_hermitian(const Element& a);

}  // namespace conelab
