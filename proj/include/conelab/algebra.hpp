#pragma once

// Finite-dimensional unital C*-algebras modeled as direct sums of full
// complex matrix blocks M_{n1} ⊕ ... ⊕ M_{nk}, together with exact
// blockwise arithmetic and element classification.

#include <Eigen/Dense>

#include <complex>
#include <string>
#include <vector>

#include "conelab/errors.hpp"
#include "conelab/rng.hpp"

namespace conelab {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

// Relative tolerance for classification decisions.
inline constexpr double kClassifyTol = 1e-9;
// Absolute eigenvalue floor below which an element counts as singular.
inline constexpr double kInvertibilityFloor = 1e-8;

class AlgebraShape {
 public:
  AlgebraShape() = default;
  explicit AlgebraShape(std::vector<int> dims);

  const std::vector<int>& dims() const { return dims_; }
  int block_count() const { return static_cast<int>(dims_.size()); }
  int dim(int block) const { return dims_[static_cast<size_t>(block)]; }
  // Σ n_i², the length of a packed coefficient vector.
  int packed_size() const;
  int total_matrix_dim() const;  // Σ n_i
  bool commutative() const;      // all blocks 1x1

  bool operator==(const AlgebraShape& other) const {
    return dims_ == other.dims_;
  }
  bool operator!=(const AlgebraShape& other) const {
    return !(*this == other);
  }

  std::string to_string() const;

 private:
  std::vector<int> dims_;
};

// Immutable value type; every operation returns a fresh element.
struct Element {
  AlgebraShape shape;
  std::vector<Matrix> blocks;

  Element() = default;
  Element(AlgebraShape s, std::vector<Matrix> b);

  const Matrix& block(int i) const { return blocks[static_cast<size_t>(i)]; }
  double frobenius_norm() const;
};

Element zero_element(const AlgebraShape& shape);
Element unit(const AlgebraShape& shape);

// Central element with one scalar per block.
Element central_element(const AlgebraShape& shape,
                        const std::vector<double>& scalars);

// Single-block diagonal helper, handy for small fixtures.
Element diagonal_element(const AlgebraShape& shape,
                         const std::vector<double>& entries);

Element add(const Element& a, const Element& b);
Element sub(const Element& a, const Element& b);
Element scale(const Element& a, Complex lambda);
Element mul(const Element& a, const Element& b);
Element adjoint(const Element& a);

// (ab + ba) / 2
Element jordan_product(const Element& a, const Element& b);
// aba
Element triple_product(const Element& a, const Element& b);

enum class ClassTag { General, SelfAdjoint, Positive, PositiveInvertible, Effect };

std::string to_string(ClassTag tag);
ClassTag class_tag_from_string(const std::string& name);

struct ElementClass {
  ClassTag tag = ClassTag::General;  // most specific class that holds
  bool self_adjoint = false;
  bool positive = false;
  bool positive_invertible = false;
  bool effect = false;
};

ElementClass classify(const Element& a, double tol = kClassifyTol);

// Haar-like unitary via QR of a Gaussian matrix.
Matrix random_unitary(int n, Rng& rng);

// Random element with the requested class and a uniform spectrum in
// [lo, hi]. pin_lo forces at least one eigenvalue per block to exactly
// lo (rank deficiency when lo == 0). General elements are h1 + i*h2
// with independent self-adjoint parts.
Element random_element(const AlgebraShape& shape, ClassTag cls, double lo,
                       double hi, Rng& rng, bool pin_lo = false);

// True iff every block is a scalar multiple of its identity (the center
// of a direct sum of full matrix algebras), cross-checked against
// commutators with matrix units.
bool is_central(const Element& a, double tol = kClassifyTol);

void require_same_shape(const Element& a, const Element& b,
                        const char* op_name);

}  // namespace conelab
