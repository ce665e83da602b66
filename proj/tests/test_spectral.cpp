#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_support.hpp"

using namespace conelab;
using namespace conelab::testing;

TEST_CASE("hermitian_eig on fixed matrices") {
  const EigenSystem s1 = hermitian_eig(diag2(3, 1));
  CHECK(s1.eigenvalues[0](0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s1.eigenvalues[0](1) == doctest::Approx(3.0).epsilon(1e-12));

  const EigenSystem s2 = hermitian_eig(single_block(mat2(0, 1, 1, 0)));
  CHECK(s2.eigenvalues[0](0) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(s2.eigenvalues[0](1) == doctest::Approx(1.0).epsilon(1e-12));

  // Characteristic polynomial of [[2, i], [-i, 2]] is l^2 - 4l + 3.
  const EigenSystem s3 = hermitian_eig(
      single_block(mat2(2, Complex(0, 1), Complex(0, -1), 2)));
  CHECK(s3.eigenvalues[0](0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s3.eigenvalues[0](1) == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("hermitian_eig matches the independent solver on random input") {
  const AlgebraShape s({2, 5, 3});
  for (int trial = 0; trial < 100; ++trial) {
    Rng rng = Rng::for_trial(23, trial);
    const Element a = random_element(s, ClassTag::SelfAdjoint, -3.0, 3.0, rng);
    const EigenSystem sys = hermitian_eig(a);

    const std::vector<double> mine = sys.sorted_eigenvalues();
    const std::vector<double> oracle = oracle_eigenvalues(a);
    REQUIRE(mine.size() == oracle.size());
    for (size_t i = 0; i < mine.size(); ++i) {
      CHECK(mine[i] == doctest::Approx(oracle[i]).epsilon(1e-11));
    }

    // Reconstruction and unitarity of the eigenbasis.
    const double scale = a.frobenius_norm();
    for (int b = 0; b < s.block_count(); ++b) {
      const Matrix& u = sys.vectors[static_cast<size_t>(b)];
      const Matrix recon =
          u * sys.eigenvalues[static_cast<size_t>(b)].asDiagonal() *
          u.adjoint();
      CHECK((recon - a.block(b)).norm() <= 1e-10 * std::max(scale, 1.0));
      CHECK((u.adjoint() * u -
             Matrix::Identity(s.dim(b), s.dim(b))).norm() <= 1e-10);
    }
  }
}

TEST_CASE("functional calculus on fixed matrices") {
  CHECK(max_abs_diff(element_sqrt(diag2(4, 9)), diag2(2, 3)) < 1e-12);
  CHECK(max_abs_diff(element_power(diag2(8, 27), 1.0 / 3.0), diag2(2, 3)) <
        1e-12);

  // det [[2,1],[1,1]] = 1, so the inverse is the adjugate.
  const Element a = single_block(mat2(2, 1, 1, 1));
  CHECK(max_abs_diff(element_inverse(a), single_block(mat2(1, -1, -1, 2))) <
        1e-12);

  CHECK(max_abs_diff(element_exp(zero_element(AlgebraShape({2}))),
                     unit(AlgebraShape({2}))) < 1e-15);
  CHECK(max_abs_diff(element_log(unit(AlgebraShape({2}))),
                     zero_element(AlgebraShape({2}))) < 1e-15);
}

TEST_CASE("functional calculus domain gates") {
  CHECK_THROWS_AS(element_sqrt(diag2(-1, 1)), DomainError);
  CHECK_THROWS_AS(element_power(diag2(-1, 1), 0.5), DomainError);
  CHECK_THROWS_AS(element_inverse(diag2(1, 0)), SingularError);
  CHECK_THROWS_AS(element_log(diag2(1, 0)), DomainError);
  CHECK_THROWS_AS(element_power(diag2(1, 0), -1.0), SingularError);
  // Integer powers of self-adjoint elements are unrestricted.
  CHECK(max_abs_diff(element_power(diag2(-2, 3), 2.0), diag2(4, 9)) < 1e-12);
}

TEST_CASE("operator norm") {
  CHECK(op_norm(diag2(1, -3)) == doctest::Approx(3.0));
  CHECK(op_norm(single_block(mat2(0, 2, 0, 0))) == doctest::Approx(2.0));
  // Eigenvalues of [[2,1],[1,1]] solve l^2 - 3l + 1 = 0.
  const double golden = (3.0 + std::sqrt(5.0)) / 2.0;
  CHECK(op_norm(single_block(mat2(2, 1, 1, 1))) ==
        doctest::Approx(golden).epsilon(1e-12));

  for (int trial = 0; trial < 50; ++trial) {
    Rng rng = Rng::for_trial(29, trial);
    const Element g =
        random_element(AlgebraShape({3, 2}), ClassTag::General, -2.0, 2.0, rng);
    CHECK(op_norm(g) == doctest::Approx(oracle_op_norm(g)).epsilon(1e-10));
    // C*-identity ||a* a|| = ||a||^2
    CHECK(op_norm(mul(adjoint(g), g)) ==
          doctest::Approx(op_norm(g) * op_norm(g)).epsilon(1e-10));
  }
}

TEST_CASE("spectral seminorm") {
  CHECK(spectral_seminorm(diag2(-2, 1)) == doctest::Approx(2.0));
  CHECK_THROWS_AS(spectral_seminorm(single_block(mat2(0, 1, 0, 0))),
                  UnsupportedElement);

  // Commuting diagonal product.
  CHECK(spectral_seminorm_positive_product(diag2(1, 2), diag2(3, 1)) ==
        doctest::Approx(3.0));
  // y^{1/2} x y^{1/2} = [[2,0],[0,0]] for x = [[2,1],[1,1]], y = diag(1,0).
  CHECK(spectral_seminorm_positive_product(diag2(1, 0),
                                           single_block(mat2(2, 1, 1, 1))) ==
        doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("spectrum of positive products") {
  const std::vector<double> commuting =
      spectrum_of_positive_product(diag2(1, 4), diag2(2, 0.5));
  CHECK(commuting.front() == doctest::Approx(2.0));
  CHECK(commuting.back() == doctest::Approx(2.0));

  Rng rng(31);
  const Element y =
      random_element(AlgebraShape({2}), ClassTag::PositiveInvertible, 0.5,
                     2.0, rng);
  const std::vector<double> via_unit =
      spectrum_of_positive_product(unit(y.shape), y);
  const std::vector<double> direct = spectrum_hermitian(y);
  for (size_t i = 0; i < via_unit.size(); ++i) {
    CHECK(via_unit[i] == doctest::Approx(direct[i]).epsilon(1e-12));
  }

  const std::vector<double> orthogonal =
      spectrum_of_positive_product(diag2(1, 0), diag2(0, 1));
  CHECK(std::abs(orthogonal.front()) < 1e-14);
  CHECK(std::abs(orthogonal.back()) < 1e-14);
  CHECK_FALSE(positive_product_invertible(diag2(1, 0), diag2(0, 1)));
  CHECK(positive_product_invertible(diag2(1, 4), diag2(2, 0.5)));
}

TEST_CASE("seminorm and spectrum invariants on random positives") {
  const AlgebraShape s({2, 3});
  for (int trial = 0; trial < 50; ++trial) {
    Rng rng = Rng::for_trial(37, trial);
    const Element x =
        random_element(s, ClassTag::PositiveInvertible, 0.2, 3.0, rng);
    const Element y =
        random_element(s, ClassTag::PositiveInvertible, 0.2, 3.0, rng);

    // Jacobson symmetry through both hint orders.
    CHECK(spectral_seminorm_positive_product(x, y) ==
          doctest::Approx(spectral_seminorm_positive_product(y, x))
              .epsilon(1e-10));
    // ||xy||_S <= ||xy||
    CHECK(spectral_seminorm_positive_product(x, y) <=
          op_norm(mul(x, y)) * (1.0 + 1e-10));
    // Self-adjoint elements: norm equals seminorm.
    const Element h = random_element(s, ClassTag::SelfAdjoint, -2.0, 2.0, rng);
    CHECK(spectral_seminorm(h) == doctest::Approx(op_norm(h)).epsilon(1e-10));
    // sqrt round-trip.
    const Element p = random_element(s, ClassTag::Positive, 0.0, 2.0, rng,
                                     trial % 3 == 0);
    const Element root = element_sqrt(p);
    CHECK(max_abs_diff(mul(root, root), p) <= 1e-9 * std::max(op_norm(p), 1.0));

    const std::vector<double> spec = spectrum_of_positive_product(x, y);
    CHECK(spec.front() > 0.0);
    const Element singular =
        random_element(s, ClassTag::Positive, 0.0, 2.0, rng, true);
    const std::vector<double> spec2 =
        spectrum_of_positive_product(singular, y);
    CHECK(spec2.front() >= -1e-10);
    CHECK_FALSE(positive_product_invertible(singular, y));
  }
}

TEST_CASE("dominance functional") {
  CHECK(inf_dominance(diag2(1, 4), unit(AlgebraShape({2}))) ==
        doctest::Approx(4.0));
  Rng rng(41);
  const Element x = random_element(AlgebraShape({2, 3}),
                                   ClassTag::PositiveInvertible, 0.3, 3.0,
                                   rng);
  CHECK(inf_dominance(x, x) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(inf_dominance(diag2(1, 4), diag2(2, 2)) == doctest::Approx(2.0));

  for (int trial = 0; trial < 30; ++trial) {
    Rng inner = Rng::for_trial(43, trial);
    const AlgebraShape s({2, 3});
    const Element a =
        random_element(s, ClassTag::PositiveInvertible, 0.2, 3.0, inner);
    const Element b =
        random_element(s, ClassTag::PositiveInvertible, 0.2, 3.0, inner);
    CHECK(inf_dominance(a, b) * inf_dominance(b, a) >= 1.0 - 1e-10);
    // Dominance really is the optimal constant: a <= t b at t, not below.
    const double t = inf_dominance(a, b);
    CHECK(loewner_leq(a, scale(b, t * (1.0 + 1e-9))).holds);
    CHECK_FALSE(loewner_leq(a, scale(b, t * (1.0 - 1e-6))).holds);
  }
}
