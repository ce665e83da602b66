#include "conelab/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "conelab/jacobi.hpp"

namespace conelab {

namespace {

bool all_finite(const Matrix& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const Complex v = m(i, j);
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    }
  }
  return true;
}

}  // namespace

AlgebraShape::AlgebraShape(std::vector<int> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) {
    throw ShapeMismatch("algebra shape needs at least one block");
  }
  for (int n : dims_) {
    if (n < 1) {
      throw ShapeMismatch("block dimensions must be >= 1");
    }
  }
}

int AlgebraShape::packed_size() const {
  int total = 0;
  for (int n : dims_) total += n * n;
  return total;
}

int AlgebraShape::total_matrix_dim() const {
  return std::accumulate(dims_.begin(), dims_.end(), 0);
}

bool AlgebraShape::commutative() const {
  return std::all_of(dims_.begin(), dims_.end(), [](int n) { return n == 1; });
}

std::string AlgebraShape::to_string() const {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < dims_.size(); ++i) {
    if (i) os << ",";
    os << dims_[i];
  }
  os << "]";
  return os.str();
}

Element::Element(AlgebraShape s, std::vector<Matrix> b)
    : shape(std::move(s)), blocks(std::move(b)) {
  if (static_cast<int>(blocks.size()) != shape.block_count()) {
    throw ShapeMismatch("block count does not match shape");
  }
  for (int i = 0; i < shape.block_count(); ++i) {
    const Matrix& m = blocks[static_cast<size_t>(i)];
    if (m.rows() != shape.dim(i) || m.cols() != shape.dim(i)) {
      throw ShapeMismatch("block " + std::to_string(i) +
                          " does not match shape " + shape.to_string());
    }
    if (!all_finite(m)) {
      throw ShapeMismatch("block " + std::to_string(i) +
                          " contains non-finite entries");
    }
  }
}

double Element::frobenius_norm() const {
  double sum = 0.0;
  for (const Matrix& m : blocks) sum += m.squaredNorm();
  return std::sqrt(sum);
}

void require_same_shape(const Element& a, const Element& b,
                        const char* op_name) {
  if (a.shape != b.shape) {
    throw ShapeMismatch(std::string(op_name) + ": shapes " +
                        a.shape.to_string() + " and " + b.shape.to_string() +
                        " differ");
  }
}

Element zero_element(const AlgebraShape& shape) {
  std::vector<Matrix> blocks;
  blocks.reserve(static_cast<size_t>(shape.block_count()));
  for (int i = 0; i < shape.block_count(); ++i) {
    blocks.push_back(Matrix::Zero(shape.dim(i), shape.dim(i)));
  }
  return Element(shape, std::move(blocks));
}

Element unit(const AlgebraShape& shape) {
  std::vector<Matrix> blocks;
  blocks.reserve(static_cast<size_t>(shape.block_count()));
  for (int i = 0; i < shape.block_count(); ++i) {
    blocks.push_back(Matrix::Identity(shape.dim(i), shape.dim(i)));
  }
  return Element(shape, std::move(blocks));
}

Element central_element(const AlgebraShape& shape,
                        const std::vector<double>& scalars) {
  if (static_cast<int>(scalars.size()) != shape.block_count()) {
    throw ShapeMismatch("central_element: one scalar per block required");
  }
  std::vector<Matrix> blocks;
  for (int i = 0; i < shape.block_count(); ++i) {
    blocks.push_back(scalars[static_cast<size_t>(i)] *
                     Matrix::Identity(shape.dim(i), shape.dim(i)));
  }
  return Element(shape, std::move(blocks));
}

Element diagonal_element(const AlgebraShape& shape,
                         const std::vector<double>& entries) {
  if (static_cast<int>(entries.size()) != shape.total_matrix_dim()) {
    throw ShapeMismatch("diagonal_element: entry count does not match shape");
  }
  std::vector<Matrix> blocks;
  size_t k = 0;
  for (int i = 0; i < shape.block_count(); ++i) {
    Matrix m = Matrix::Zero(shape.dim(i), shape.dim(i));
    for (int d = 0; d < shape.dim(i); ++d) m(d, d) = entries[k++];
    blocks.push_back(std::move(m));
  }
  return Element(shape, std::move(blocks));
}

Element add(const Element& a, const Element& b) {
  require_same_shape(a, b, "add");
  std::vector<Matrix> blocks;
  for (size_t i = 0; i < a.blocks.size(); ++i) {
    blocks.push_back(a.blocks[i] + b.blocks[i]);
  }
  return Element(a.shape, std::move(blocks));
}

Element sub(const Element& a, const Element& b) {
  require_same_shape(a, b, "sub");
  std::vector<Matrix> blocks;
  for (size_t i = 0; i < a.blocks.size(); ++i) {
    blocks.push_back(a.blocks[i] - b.blocks[i]);
  }
  return Element(a.shape, std::move(blocks));
}

Element scale(const Element& a, Complex lambda) {
  std::vector<Matrix> blocks;
  for (const Matrix& m : a.blocks) blocks.push_back(lambda * m);
  return Element(a.shape, std::move(blocks));
}

Element mul(const Element& a, const Element& b) {
  require_same_shape(a, b, "mul");
  std::vector<Matrix> blocks;
  for (size_t i = 0; i < a.blocks.size(); ++i) {
    blocks.push_back(a.blocks[i] * b.blocks[i]);
  }
  return Element(a.shape, std::move(blocks));
}

Element adjoint(const Element& a) {
  std::vector<Matrix> blocks;
  for (const Matrix& m : a.blocks) blocks.push_back(m.adjoint());
  return Element(a.shape, std::move(blocks));
}

Element jordan_product(const Element& a, const Element& b) {
  require_same_shape(a, b, "jordan_product");
  std::vector<Matrix> blocks;
  for (size_t i = 0; i < a.blocks.size(); ++i) {
    blocks.push_back(0.5 * (a.blocks[i] * b.blocks[i] +
                            b.blocks[i] * a.blocks[i]));
  }
  return Element(a.shape, std::move(blocks));
}

Element triple_product(const Element& a, const Element& b) {
  require_same_shape(a, b, "triple_product");
  std::vector<Matrix> blocks;
  for (size_t i = 0; i < a.blocks.size(); ++i) {
    blocks.push_back(a.blocks[i] * b.blocks[i] * a.blocks[i]);
  }
  return Element(a.shape, std::move(blocks));
}

std::string to_string(ClassTag tag) {
  switch (tag) {
    case ClassTag::General: return "General";
    case ClassTag::SelfAdjoint: return "SelfAdjoint";
    case ClassTag::Positive: return "Positive";
    case ClassTag::PositiveInvertible: return "PositiveInvertible";
    case ClassTag::Effect: return "Effect";
  }
  return "General";
}

ClassTag class_tag_from_string(const std::string& name) {
  if (name == "General") return ClassTag::General;
  if (name == "SelfAdjoint") return ClassTag::SelfAdjoint;
  if (name == "Positive") return ClassTag::Positive;
  if (name == "PositiveInvertible") return ClassTag::PositiveInvertible;
  if (name == "Effect") return ClassTag::Effect;
  throw UsageError("unknown element class '" + name + "'");
}

ElementClass classify(const Element& a, double tol) {
  ElementClass result;

  double skew_sq = 0.0;
  double norm_sq = 0.0;
  for (const Matrix& m : a.blocks) {
    skew_sq += (m - m.adjoint()).squaredNorm();
    norm_sq += m.squaredNorm();
  }
  const double scale = std::sqrt(norm_sq);
  result.self_adjoint = std::sqrt(skew_sq) <= tol * std::max(scale, 1e-300);
  if (scale == 0.0) result.self_adjoint = true;

  if (!result.self_adjoint) {
    result.tag = ClassTag::General;
    return result;
  }

  double min_eig = std::numeric_limits<double>::infinity();
  double max_eig = -std::numeric_limits<double>::infinity();
  for (const Matrix& m : a.blocks) {
    const JacobiResult eig = jacobi_hermitian(m);
    min_eig = std::min(min_eig, eig.eigenvalues(0));
    max_eig = std::max(max_eig, eig.eigenvalues(eig.eigenvalues.size() - 1));
  }
  const double op_scale = std::max(std::abs(min_eig), std::abs(max_eig));

  result.positive = min_eig >= -tol * op_scale;
  result.positive_invertible = result.positive && min_eig >= kInvertibilityFloor;
  result.effect = result.positive && max_eig <= 1.0 + tol;

  if (result.effect) {
    result.tag = ClassTag::Effect;
  } else if (result.positive_invertible) {
    result.tag = ClassTag::PositiveInvertible;
  } else if (result.positive) {
    result.tag = ClassTag::Positive;
  } else {
    result.tag = ClassTag::SelfAdjoint;
  }
  return result;
}

Matrix random_unitary(int n, Rng& rng) {
  Matrix g(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      g(i, j) = Complex(rng.normal(), rng.normal());
    }
  }
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  // Fix the phase of R's diagonal so the distribution is Haar-like and
  // the result does not depend on QR sign conventions.
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i) {
    const Complex d = r(i, i);
    const double mag = std::abs(d);
    const Complex phase = mag > 0 ? d / mag : Complex(1, 0);
    q.col(i) *= phase;
  }
  return q;
}

namespace {

Eigen::VectorXd random_spectrum(int n, double lo, double hi, Rng& rng,
                                bool pin_lo) {
  Eigen::VectorXd vals(n);
  for (int i = 0; i < n; ++i) vals(i) = rng.uniform(lo, hi);
  if (pin_lo) vals(rng.uniform_int(n)) = lo;
  std::sort(vals.data(), vals.data() + n);
  return vals;
}

Matrix hermitian_from_spectrum(int n, const Eigen::VectorXd& vals, Rng& rng) {
  const Matrix u = random_unitary(n, rng);
  Matrix m = u * vals.asDiagonal() * u.adjoint();
  // Round off the skew residue of the congruence.
  return 0.5 * (m + m.adjoint().eval());
}

}  // namespace

Element random_element(const AlgebraShape& shape, ClassTag cls, double lo,
                       double hi, Rng& rng, bool pin_lo) {
  if (lo > hi) throw InvalidRange("random_element: lo > hi");
  switch (cls) {
    case ClassTag::PositiveInvertible:
      if (lo <= 0) {
        throw InvalidRange("random_element: PositiveInvertible needs lo > 0");
      }
      break;
    case ClassTag::Effect:
      if (lo < 0 || hi > 1) {
        throw InvalidRange("random_element: Effect needs [lo,hi] within [0,1]");
      }
      break;
    case ClassTag::Positive:
      if (lo < 0) {
        throw InvalidRange("random_element: Positive needs lo >= 0");
      }
      break;
    default:
      break;
  }

  std::vector<Matrix> blocks;
  for (int b = 0; b < shape.block_count(); ++b) {
    const int n = shape.dim(b);
    if (cls == ClassTag::General) {
      const Eigen::VectorXd re = random_spectrum(n, lo, hi, rng, false);
      const Eigen::VectorXd im = random_spectrum(n, lo, hi, rng, false);
      blocks.push_back(hermitian_from_spectrum(n, re, rng) +
                       Complex(0, 1) * hermitian_from_spectrum(n, im, rng));
    } else {
      const Eigen::VectorXd vals = random_spectrum(n, lo, hi, rng, pin_lo);
      blocks.push_back(hermitian_from_spectrum(n, vals, rng));
    }
  }
  return Element(shape, std::move(blocks));
}

bool is_central(const Element& a, double tol) {
  const double scale = std::max(a.frobenius_norm(), 1e-300);

  bool structural = true;
  for (int b = 0; b < a.shape.block_count(); ++b) {
    const Matrix& m = a.block(b);
    const int n = a.shape.dim(b);
    const Complex mean = m.trace() / static_cast<double>(n);
    const double dev = (m - mean * Matrix::Identity(n, n)).norm();
    if (dev > tol * scale) {
      structural = false;
      break;
    }
  }

  // Commutators against matrix units e_{0j}; commuting with all of them
  // already forces a scalar block.
  bool commutator = true;
  for (int b = 0; b < a.shape.block_count() && commutator; ++b) {
    const Matrix& m = a.block(b);
    const int n = a.shape.dim(b);
    for (int j = 0; j < n && commutator; ++j) {
      Matrix unit_mat = Matrix::Zero(n, n);
      unit_mat(0, j) = 1.0;
      const double comm = (m * unit_mat - unit_mat * m).norm();
      if (comm > tol * std::max(m.norm(), 1e-300)) commutator = false;
    }
  }

  return structural && commutator;
}

}  // namespace conelab
