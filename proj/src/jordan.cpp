#include "conelab/jordan.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace conelab {

void JordanIso::validate() const {
  const int k = source.block_count();
  if (target.block_count() != k ||
      static_cast<int>(perm.size()) != k ||
      static_cast<int>(unitaries.size()) != k ||
      static_cast<int>(transpose.size()) != k) {
    throw ShapeMismatch("jordan iso: field sizes do not match block count");
  }
  std::vector<bool> hit(static_cast<size_t>(k), false);
  for (int i = 0; i < k; ++i) {
    const int j = perm[static_cast<size_t>(i)];
    if (j < 0 || j >= k || hit[static_cast<size_t>(j)]) {
      throw ShapeMismatch("jordan iso: perm is not a bijection");
    }
    hit[static_cast<size_t>(j)] = true;
    if (target.dim(j) != source.dim(i)) {
      throw ShapeMismatch("jordan iso: perm is not dimension-compatible");
    }
    const Matrix& u = unitaries[static_cast<size_t>(i)];
    const int n = source.dim(i);
    if (u.rows() != n || u.cols() != n) {
      throw ShapeMismatch("jordan iso: unitary size mismatch");
    }
    const double defect =
        (u.adjoint() * u - Matrix::Identity(n, n)).norm();
    if (defect > 1e-10 * std::sqrt(static_cast<double>(n))) {
      throw ShapeMismatch("jordan iso: block " + std::to_string(i) +
                          " is not unitary");
    }
  }
}

JordanIso identity_jordan(const AlgebraShape& shape) {
  JordanIso j;
  j.source = shape;
  j.target = shape;
  j.perm.resize(static_cast<size_t>(shape.block_count()));
  std::iota(j.perm.begin(), j.perm.end(), 0);
  for (int i = 0; i < shape.block_count(); ++i) {
    j.unitaries.push_back(Matrix::Identity(shape.dim(i), shape.dim(i)));
    j.transpose.push_back(false);
  }
  return j;
}

JordanIso random_jordan(const AlgebraShape& source, Rng& rng) {
  const int k = source.block_count();

  // Random bijection; blocks may land anywhere, dims permitting, so the
  // target shape is the permuted source shape.
  std::vector<int> perm(static_cast<size_t>(k));
  std::iota(perm.begin(), perm.end(), 0);
  for (int i = k - 1; i > 0; --i) {
    std::swap(perm[static_cast<size_t>(i)],
              perm[static_cast<size_t>(rng.uniform_int(i + 1))]);
  }

  std::vector<int> target_dims(static_cast<size_t>(k));
  for (int i = 0; i < k; ++i) {
    target_dims[static_cast<size_t>(perm[static_cast<size_t>(i)])] =
        source.dim(i);
  }

  JordanIso j;
  j.source = source;
  j.target = AlgebraShape(target_dims);
  j.perm = perm;
  for (int i = 0; i < k; ++i) {
    j.unitaries.push_back(random_unitary(source.dim(i), rng));
    j.transpose.push_back(rng.bernoulli(0.5));
  }
  j.validate();
  return j;
}

JordanIso inverse_jordan(const JordanIso& j) {
  const int k = j.source.block_count();
  JordanIso inv;
  inv.source = j.target;
  inv.target = j.source;
  inv.perm.resize(static_cast<size_t>(k));
  inv.unitaries.resize(static_cast<size_t>(k));
  inv.transpose.resize(static_cast<size_t>(k));
  for (int i = 0; i < k; ++i) {
    const int t = j.perm[static_cast<size_t>(i)];
    inv.perm[static_cast<size_t>(t)] = i;
    const bool flag = j.transpose[static_cast<size_t>(i)];
    inv.transpose[static_cast<size_t>(t)] = flag;
    const Matrix& u = j.unitaries[static_cast<size_t>(i)];
    // y = U x^T U*  =>  x = U^T y^T conj(U); without the flag, x = U* y U.
    inv.unitaries[static_cast<size_t>(t)] =
        flag ? Matrix(u.transpose()) : Matrix(u.adjoint());
  }
  return inv;
}

Element apply_jordan(const JordanIso& j, const Element& x) {
  if (x.shape != j.source) {
    throw ShapeMismatch("apply_jordan: element is not in the source algebra");
  }
  Element out = zero_element(j.target);
  for (int i = 0; i < j.source.block_count(); ++i) {
    const Matrix& u = j.unitaries[static_cast<size_t>(i)];
    Matrix b = x.block(i);
    if (j.transpose[static_cast<size_t>(i)]) b = b.transpose().eval();
    out.blocks[static_cast<size_t>(j.perm[static_cast<size_t>(i)])] =
        u * b * u.adjoint();
  }
  return out;
}

double JordanAxiomReport::max_violation() const {
  return std::max({additivity, homogeneity, squares, triple, unit, norm});
}

JordanAxiomReport verify_jordan(const BlackBoxMap& j_like, int sample_count,
                                std::uint64_t seed) {
  JordanAxiomReport report;
  report.samples = sample_count;

  const Element e_src = unit(j_like.source);
  const Element e_tgt = unit(j_like.target);
  report.unit = op_norm(sub(j_like(e_src), e_tgt));

  auto rel = [](double violation, double scale) {
    return violation / std::max(scale, 1e-300);
  };

  for (int s = 0; s < sample_count; ++s) {
    Rng rng = Rng::for_trial(seed, static_cast<std::uint64_t>(s));
    const Element x = random_element(j_like.source,
                                     ClassTag::PositiveInvertible, 0.2, 5.0,
                                     rng);
    const Element y = random_element(j_like.source,
                                     ClassTag::PositiveInvertible, 0.2, 5.0,
                                     rng);
    const Element fx = j_like(x);
    const Element fy = j_like(y);

    const Element f_sum = j_like(add(x, y));
    report.additivity = std::max(
        report.additivity,
        rel(op_norm(sub(f_sum, add(fx, fy))), op_norm(f_sum)));

    const double t = rng.uniform(0.25, 4.0);
    report.homogeneity = std::max(
        report.homogeneity,
        rel(op_norm(sub(j_like(scale(x, t)), scale(fx, t))),
            t * op_norm(fx)));

    const Element f_sq = j_like(mul(x, x));
    report.squares = std::max(
        report.squares, rel(op_norm(sub(f_sq, mul(fx, fx))), op_norm(f_sq)));

    const Element f_triple = j_like(triple_product(x, y));
    report.triple = std::max(
        report.triple,
        rel(op_norm(sub(f_triple, triple_product(fx, fy))),
            op_norm(f_triple)));

    report.norm = std::max(
        report.norm,
        rel(std::abs(op_norm(fx) - op_norm(x)), op_norm(x)));
  }
  return report;
}

ConeMap ConeMap::plain(JordanIso j) {
  j.validate();
  ConeMap m;
  m.kind_ = Kind::PlainJordan;
  m.jordan_ = std::move(j);
  return m;
}

namespace {

void require_weight(const JordanIso& j, const Element& a, const char* kind) {
  if (a.shape != j.target) {
    throw ShapeMismatch(std::string(kind) +
                        ": weight must live in the target algebra");
  }
  if (!classify(a).positive_invertible) {
    throw DomainError(std::string(kind) +
                      ": weight must be positive invertible");
  }
}

}  // namespace

ConeMap ConeMap::sandwich(JordanIso j, Element a) {
  j.validate();
  require_weight(j, a, "sandwich");
  ConeMap m;
  m.kind_ = Kind::Sandwich;
  m.jordan_ = std::move(j);
  m.weight_ = std::move(a);
  return m;
}

ConeMap ConeMap::sqrt_congruence(JordanIso j, Element a) {
  j.validate();
  require_weight(j, a, "sqrt_congruence");
  ConeMap m;
  m.kind_ = Kind::SqrtCongruence;
  m.jordan_ = std::move(j);
  m.weight_ = std::move(a);
  return m;
}

ConeMap ConeMap::inverse_sqrt_congruence(JordanIso j, Element a) {
  j.validate();
  require_weight(j, a, "inverse_sqrt_congruence");
  ConeMap m;
  m.kind_ = Kind::InverseSqrtCongruence;
  m.jordan_ = std::move(j);
  m.weight_ = std::move(a);
  return m;
}

ConeMap ConeMap::power_deformed(ConeMap inner, double p) {
  if (p <= 0.0) throw DomainError("power_deformed: p must be positive");
  ConeMap m;
  m.kind_ = Kind::PowerDeformed;
  m.jordan_ = inner.jordan_;
  m.power_ = p;
  m.inner_ = std::make_shared<const ConeMap>(std::move(inner));
  return m;
}

ConeMap ConeMap::unchecked(Kind kind, JordanIso j,
                           std::optional<Element> weight) {
  if (kind == Kind::PowerDeformed) {
    throw UnsupportedElement("unchecked: wrap with power_deformed instead");
  }
  ConeMap m;
  m.kind_ = kind;
  m.jordan_ = std::move(j);
  m.weight_ = std::move(weight);
  return m;
}

const JordanIso& ConeMap::jordan() const { return jordan_; }

const Element& ConeMap::weight() const {
  if (!weight_) throw UnsupportedElement("cone map carries no weight");
  return *weight_;
}

const AlgebraShape& ConeMap::source() const { return jordan_.source; }
const AlgebraShape& ConeMap::target() const { return jordan_.target; }

Element ConeMap::apply(const Element& x) const {
  switch (kind_) {
    case Kind::PlainJordan:
      return apply_jordan(jordan_, x);
    case Kind::Sandwich: {
      const Element r = element_sqrt(*weight_);
      return mul(mul(r, apply_jordan(jordan_, x)), r);
    }
    case Kind::SqrtCongruence: {
      const Element jx = apply_jordan(jordan_, x);
      return element_sqrt(mul(mul(*weight_, mul(jx, jx)), *weight_));
    }
    case Kind::InverseSqrtCongruence: {
      const Element a_inv = element_inverse(*weight_);
      const Element jx = apply_jordan(jordan_, x);
      return element_sqrt(mul(mul(a_inv, mul(jx, jx)), a_inv));
    }
    case Kind::PowerDeformed:
      return element_power(inner_->apply(element_power(x, 1.0 / power_)),
                           power_);
  }
  throw UnsupportedElement("cone map kind not handled");
}

Element ConeMap::unit_image() const { return apply(unit(source())); }

BlackBoxMap ConeMap::as_black_box() const {
  ConeMap copy = *this;
  return BlackBoxMap{source(), target(),
                     [copy](const Element& x) { return copy.apply(x); }};
}

Element apply_cone_map(const ConeMap& m, const Element& x) {
  return m.apply(x);
}

BlackBoxMap extract_jordan_sandwich(const BlackBoxMap& phi) {
  const Element phi_e = phi(unit(phi.source));
  if (!classify(phi_e).positive_invertible) {
    throw SingularError(
        "extract_jordan_sandwich: phi(e) is not positive invertible");
  }
  const Element r = element_power(phi_e, -0.5);
  auto fn = [phi, r](const Element& x) { return mul(mul(r, phi(x)), r); };
  return BlackBoxMap{phi.source, phi.target, std::move(fn)};
}

BlackBoxMap extract_jordan_sqrt_congruence(const BlackBoxMap& phi) {
  const Element phi_e = phi(unit(phi.source));
  if (!classify(phi_e).positive_invertible) {
    throw SingularError(
        "extract_jordan_sqrt_congruence: phi(e) is not positive invertible");
  }
  const Element c = element_inverse(phi_e);
  auto fn = [phi, c](const Element& x) {
    const Element px = phi(x);
    return element_sqrt(mul(mul(c, mul(px, px)), c));
  };
  return BlackBoxMap{phi.source, phi.target, std::move(fn)};
}

BlackBoxMap extract_jordan_square(const BlackBoxMap& phi) {
  auto fn = [phi](const Element& x) {
    const Element s = phi(element_sqrt(x));
    return mul(s, s);
  };
  return BlackBoxMap{phi.source, phi.target, std::move(fn)};
}

}  // namespace conelab
