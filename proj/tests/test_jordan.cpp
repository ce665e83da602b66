#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_support.hpp"

using namespace conelab;
using namespace conelab::testing;

TEST_CASE("identity and transpose application") {
  const AlgebraShape s({2});
  const JordanIso id = identity_jordan(s);
  const Element x = single_block(mat2(1, 2, 3, 4));
  CHECK(max_abs_diff(apply_jordan(id, x), x) == 0.0);
  CHECK(max_abs_diff(apply_jordan(id, unit(s)), unit(s)) == 0.0);

  JordanIso tr = identity_jordan(s);
  tr.transpose[0] = true;
  CHECK(max_abs_diff(apply_jordan(tr, x), single_block(mat2(1, 3, 2, 4))) ==
        0.0);
  CHECK(max_abs_diff(apply_jordan(tr, unit(s)), unit(s)) == 0.0);
}

TEST_CASE("jordan validation") {
  const AlgebraShape s({2, 3});
  Rng rng(83);
  JordanIso j = random_jordan(s, rng);
  CHECK_NOTHROW(j.validate());

  JordanIso broken = j;
  broken.unitaries[0] = 2.0 * broken.unitaries[0];
  CHECK_THROWS_AS(broken.validate(), ShapeMismatch);

  JordanIso bad_perm = j;
  bad_perm.perm = {0, 0};
  CHECK_THROWS_AS(bad_perm.validate(), ShapeMismatch);
}

TEST_CASE("inverse jordan composes to the identity") {
  const AlgebraShape s({2, 2, 3});
  for (int trial = 0; trial < 20; ++trial) {
    Rng rng = Rng::for_trial(89, trial);
    const JordanIso j = random_jordan(s, rng);
    const JordanIso inv = inverse_jordan(j);
    const Element x = random_element(s, ClassTag::General, -2.0, 2.0, rng);
    CHECK(max_abs_diff(apply_jordan(inv, apply_jordan(j, x)), x) < 1e-12);
  }
}

TEST_CASE("jordan maps preserve spectrum, norm and commutativity") {
  const AlgebraShape s({2, 3});
  for (int trial = 0; trial < 40; ++trial) {
    Rng rng = Rng::for_trial(97, trial);
    const JordanIso j = random_jordan(s, rng);
    const Element h = random_element(s, ClassTag::SelfAdjoint, -2.0, 2.0, rng);

    const std::vector<double> src = spectrum_hermitian(h);
    const std::vector<double> tgt = spectrum_hermitian(apply_jordan(j, h));
    REQUIRE(src.size() == tgt.size());
    for (size_t i = 0; i < src.size(); ++i) {
      CHECK(tgt[i] == doctest::Approx(src[i]).epsilon(1e-9));
    }

    const Element g = random_element(s, ClassTag::General, -2.0, 2.0, rng);
    CHECK(op_norm(apply_jordan(j, g)) ==
          doctest::Approx(op_norm(g)).epsilon(1e-10));

    // Commuting pairs stay commuting: p(h) commutes with h.
    const Element h2 = add(mul(h, h), scale(h, 0.5));
    const Element jh = apply_jordan(j, h);
    const Element jh2 = apply_jordan(j, h2);
    CHECK(op_norm(sub(mul(jh, jh2), mul(jh2, jh))) <=
          10.0 * kClassifyTol * std::max(op_norm(jh) * op_norm(jh2), 1.0));
  }
}

TEST_CASE("verify_jordan accepts genuine maps and rejects deformations") {
  const AlgebraShape s({2, 3});
  Rng rng(101);
  const JordanIso j = random_jordan(s, rng);

  const JordanAxiomReport good =
      verify_jordan(ConeMap::plain(j).as_black_box(), 60, 7);
  CHECK(good.max_violation() <= 1e-9);

  // (a J(x)^2 a)^{1/2} with a non-central weight: not additive.
  const Element a = [&] {
    for (;;) {
      Element cand = random_element(j.target, ClassTag::PositiveInvertible,
                                    0.5, 2.0, rng);
      if (!is_central(cand)) return cand;
    }
  }();
  const JordanAxiomReport deformed = verify_jordan(
      ConeMap::sqrt_congruence(j, a).as_black_box(), 60, 7);
  CHECK(deformed.additivity > 0.01);

  // Doubling breaks unit preservation.
  BlackBoxMap doubled = ConeMap::plain(j).as_black_box();
  auto base = doubled.fn;
  doubled.fn = [base](const Element& x) { return scale(base(x), 2.0); };
  const JordanAxiomReport scaled = verify_jordan(doubled, 20, 7);
  CHECK(scaled.unit > 0.5);
  CHECK(scaled.norm > 0.5);
}

TEST_CASE("cone map constructors and unit images") {
  const AlgebraShape s({2, 3});
  Rng rng(103);
  const JordanIso j = random_jordan(s, rng);
  const Element a = random_element(j.target, ClassTag::PositiveInvertible,
                                   0.5, 2.0, rng);
  const Element x = random_element(s, ClassTag::PositiveInvertible, 0.2, 4.0,
                                   rng);

  const ConeMap sandwich = ConeMap::sandwich(j, a);
  CHECK(max_abs_diff(sandwich.unit_image(), a) < 1e-10);
  const ConeMap sqrtc = ConeMap::sqrt_congruence(j, a);
  CHECK(max_abs_diff(sqrtc.unit_image(), a) < 1e-10);
  const ConeMap invc = ConeMap::inverse_sqrt_congruence(j, a);
  CHECK(max_abs_diff(invc.unit_image(), element_inverse(a)) < 1e-10);

  // Sandwich with unit weight is the plain map.
  const ConeMap trivial = ConeMap::sandwich(j, unit(j.target));
  CHECK(max_abs_diff(trivial.apply(x), apply_jordan(j, x)) < 1e-12);

  // Sqrt-congruence with the identity structure and unit weight fixes x.
  const ConeMap fixed =
      ConeMap::sqrt_congruence(identity_jordan(s), unit(s));
  CHECK(max_abs_diff(fixed.apply(x), x) <= 1e-10 * op_norm(x));

  // Central weight turns the sqrt-congruence into x -> a J(x).
  const Element central = central_element(j.target, {1.7, 0.6});
  const ConeMap central_map = ConeMap::sqrt_congruence(j, central);
  CHECK(max_abs_diff(central_map.apply(x),
                     mul(central, apply_jordan(j, x))) <= 1e-10);

  // Weight must be positive invertible and in the target algebra.
  CHECK_THROWS_AS(ConeMap::sandwich(j, diag2(1, 0)), Error);

  // Outputs stay in the cone.
  CHECK(classify(sqrtc.apply(x)).positive_invertible);
  CHECK(classify(invc.apply(x)).positive_invertible);
}

TEST_CASE("power deformation wraps a base map") {
  const AlgebraShape s({2});
  Rng rng(107);
  const JordanIso j = random_jordan(s, rng);
  const ConeMap base = ConeMap::plain(j);
  const ConeMap deformed = ConeMap::power_deformed(base, 2.0);
  const Element x =
      random_element(s, ClassTag::PositiveInvertible, 0.3, 2.0, rng);
  // phi(x^{1/p})^p with phi = J is J(x) again.
  CHECK(max_abs_diff(deformed.apply(x), apply_jordan(j, x)) <= 1e-10);
}

TEST_CASE("inverse sqrt-congruence is the inverse-composed map") {
  const AlgebraShape s({2, 3});
  for (int trial = 0; trial < 20; ++trial) {
    Rng rng = Rng::for_trial(109, trial);
    const JordanIso j = random_jordan(s, rng);
    const Element a = random_element(j.target, ClassTag::PositiveInvertible,
                                     0.5, 2.0, rng);
    const ConeMap phi1 = ConeMap::sqrt_congruence(j, a);
    const ConeMap phi2 = ConeMap::inverse_sqrt_congruence(j, a);
    const Element y =
        random_element(s, ClassTag::PositiveInvertible, 0.3, 3.0, rng);
    const Element composed = element_inverse(phi1.apply(element_inverse(y)));
    CHECK(max_abs_diff(phi2.apply(y), composed) <=
          1e-8 * op_norm(composed));
  }
}

TEST_CASE("sandwich maps are Thompson isometries") {
  const AlgebraShape s({2, 3});
  for (int trial = 0; trial < 20; ++trial) {
    Rng rng = Rng::for_trial(113, trial);
    const JordanIso j = random_jordan(s, rng);
    const Element a = random_element(j.target, ClassTag::PositiveInvertible,
                                     0.5, 2.0, rng);
    const ConeMap phi = ConeMap::sandwich(j, a);
    const Element x =
        random_element(s, ClassTag::PositiveInvertible, 0.2, 4.0, rng);
    const Element y =
        random_element(s, ClassTag::PositiveInvertible, 0.2, 4.0, rng);
    CHECK(thompson_distance(phi.apply(x), phi.apply(y)) ==
          doctest::Approx(thompson_distance(x, y)).epsilon(1e-8));
  }
}

TEST_CASE("extractions invert their construction") {
  const AlgebraShape s({2, 3});
  for (int trial = 0; trial < 10; ++trial) {
    Rng rng = Rng::for_trial(127, trial);
    const JordanIso j = random_jordan(s, rng);
    const Element a = random_element(j.target, ClassTag::PositiveInvertible,
                                     0.5, 2.0, rng);

    const BlackBoxMap from_sandwich =
        extract_jordan_sandwich(ConeMap::sandwich(j, a).as_black_box());
    const BlackBoxMap from_sqrt = extract_jordan_sqrt_congruence(
        ConeMap::sqrt_congruence(j, a).as_black_box());
    const BlackBoxMap from_square =
        extract_jordan_square(ConeMap::plain(j).as_black_box());

    for (int s_i = 0; s_i < 10; ++s_i) {
      const Element x =
          random_element(s, ClassTag::PositiveInvertible, 0.2, 4.0, rng);
      const Element jx = apply_jordan(j, x);
      CHECK(max_abs_diff(from_sandwich(x), jx) <= 1e-9 * op_norm(jx));
      CHECK(max_abs_diff(from_sqrt(x), jx) <= 1e-8 * op_norm(jx));
      CHECK(max_abs_diff(from_square(x), jx) <= 1e-9 * op_norm(jx));
    }
  }

  // Plain maps extract to themselves.
  Rng rng(131);
  const JordanIso id = identity_jordan(s);
  const BlackBoxMap recovered =
      extract_jordan_sandwich(ConeMap::plain(id).as_black_box());
  const Element x =
      random_element(s, ClassTag::PositiveInvertible, 0.2, 4.0, rng);
  CHECK(max_abs_diff(recovered(x), x) <= 1e-10);

  // phi(e) must be invertible.
  const AlgebraShape s2({2});
  const Element squash = diag2(1, 0);
  BlackBoxMap squashing{s2, s2, [squash](const Element& z) {
    return mul(mul(squash, z), squash);
  }};
  CHECK_THROWS_AS(extract_jordan_sandwich(squashing), SingularError);
}

TEST_CASE("sqrt-congruence of a non-central weight fails jordan axioms") {
  const AlgebraShape s({2});
  Rng rng(137);
  const JordanIso j = identity_jordan(s);
  const Element a = single_block(mat2(2, 1, 1, 1));
  REQUIRE_FALSE(is_central(a));
  const BlackBoxMap extracted =
      extract_jordan_sandwich(ConeMap::sqrt_congruence(j, a).as_black_box());
  const JordanAxiomReport report = verify_jordan(extracted, 40, 11);
  CHECK(report.additivity > 0.01);
}
