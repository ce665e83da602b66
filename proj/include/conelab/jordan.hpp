#pragma once

// Jordan *-isomorphisms between direct sums of matrix blocks, the cone
// map constructors built on top of them, and extraction of Jordan
// candidates from black-box preservers.

#include <functional>
#include <memory>
#include <optional>

#include "conelab/cone.hpp"

namespace conelab {

// Structural representation: block permutation ⊗ per-block unitary ⊗
// optional per-block transpose. On direct sums of full matrix algebras
// these exhaust all Jordan *-isomorphisms.
struct JordanIso {
  AlgebraShape source;
  AlgebraShape target;
  std::vector<int> perm;          // source block i -> target block perm[i]
  std::vector<Matrix> unitaries;  // indexed by source block
  std::vector<bool> transpose;    // indexed by source block

  void validate() const;  // perm bijective + dim-compatible, U*U = I
};

JordanIso identity_jordan(const AlgebraShape& shape);
// Random block permutation (among equal-dimension blocks), Haar
// unitaries, random transpose flags. Target shape is the permuted source.
JordanIso random_jordan(const AlgebraShape& source, Rng& rng);
JordanIso inverse_jordan(const JordanIso& j);

Element apply_jordan(const JordanIso& j, const Element& x);

// Opaque map between cones. Suites that test reverse directions receive
// one of these and may only evaluate it pointwise.
struct BlackBoxMap {
  AlgebraShape source;
  AlgebraShape target;
  std::function<Element(const Element&)> fn;

  Element operator()(const Element& x) const { return fn(x); }
};

struct JordanAxiomReport {
  double additivity = 0.0;
  double homogeneity = 0.0;
  double squares = 0.0;
  double triple = 0.0;
  double unit = 0.0;
  double norm = 0.0;
  int samples = 0;

  double max_violation() const;
  bool all_within(double tol) const { return max_violation() <= tol; }
};

// Checks the Jordan *-isomorphism axioms on random positive invertible
// samples: additivity, positive homogeneity, square preservation,
// triple-product preservation, unit preservation, isometry. Violations
// are relative.
JordanAxiomReport verify_jordan(const BlackBoxMap& j_like, int sample_count,
                                std::uint64_t seed);

class ConeMap {
 public:
  enum class Kind {
    PlainJordan,            // x -> J(x)
    Sandwich,               // x -> a^{1/2} J(x) a^{1/2}
    SqrtCongruence,         // x -> (a J(x)^2 a)^{1/2}
    InverseSqrtCongruence,  // x -> (a^{-1} J(x)^2 a^{-1})^{1/2}
    PowerDeformed,          // x -> inner(x^{1/p})^p
  };

  static ConeMap plain(JordanIso j);
  static ConeMap sandwich(JordanIso j, Element a);
  static ConeMap sqrt_congruence(JordanIso j, Element a);
  static ConeMap inverse_sqrt_congruence(JordanIso j, Element a);
  static ConeMap power_deformed(ConeMap inner, double p);
  // Skips validation; negative-control runs need deliberately broken
  // structures (non-unitary blocks, mismatched weights).
  static ConeMap unchecked(Kind kind, JordanIso j,
                           std::optional<Element> weight);

  Kind kind() const { return kind_; }
  const JordanIso& jordan() const;
  const Element& weight() const;
  double power() const { return power_; }
  const AlgebraShape& source() const;
  const AlgebraShape& target() const;

  Element apply(const Element& x) const;
  Element unit_image() const;  // phi(e)
  BlackBoxMap as_black_box() const;

 private:
  ConeMap() = default;

  Kind kind_ = Kind::PlainJordan;
  JordanIso jordan_;
  std::optional<Element> weight_;
  double power_ = 1.0;
  std::shared_ptr<const ConeMap> inner_;
};

Element apply_cone_map(const ConeMap& m, const Element& x);

// x -> phi(e)^{-1/2} phi(x) phi(e)^{-1/2}; inverts the sandwich form.
BlackBoxMap extract_jordan_sandwich(const BlackBoxMap& phi);

// x -> (phi(e)^{-1} phi(x)^2 phi(e)^{-1})^{1/2}; inverts the
// sqrt-congruence form.
BlackBoxMap extract_jordan_sqrt_congruence(const BlackBoxMap& phi);

// x -> phi(x^{1/2})^2; the candidate that multiplicative-norm preservers
// reduce to.
BlackBoxMap extract_jordan_square(const BlackBoxMap& phi);

}  // namespace conelab
