#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "conelab/io.hpp"
#include "test_support.hpp"

using namespace conelab;
using namespace conelab::testing;

namespace {

const AlgebraShape kShape({2, 3});

SuiteReport quick_run(const std::string& name, int trials = 60,
                      std::uint64_t seed = 3) {
  return run_suite(SuiteId::parse(name), kShape, trials, seed);
}

}  // namespace

TEST_CASE("every suite passes on the mixed shape") {
  for (const SuiteId& id : all_suite_ids()) {
    const SuiteReport r = run_suite(id, kShape, 40, 9);
    INFO(id.name(), " verdict ", to_string(r.verdict), " max_violation ",
         r.max_violation, " ", r.inconclusive_reason);
    CHECK(r.verdict == Verdict::Pass);
    CHECK(r.max_violation <= r.tol);
  }
}

TEST_CASE("suites pass on single-block shapes") {
  for (const char* name : {"GyoeNormIdentities", "QimEquivalence",
                           "HooEquivalence", "IneqSemidefinite",
                           "Semi13Equivalences:1", "EffectDiamond:2"}) {
    const SuiteReport r2 = run_suite(SuiteId::parse(name), AlgebraShape({2}),
                                     40, 11);
    INFO(name, " on [2]: ", to_string(r2.verdict));
    CHECK(r2.verdict == Verdict::Pass);
    const SuiteReport r3 = run_suite(SuiteId::parse(name), AlgebraShape({3}),
                                     40, 11);
    INFO(name, " on [3]: ", to_string(r3.verdict));
    CHECK(r3.verdict == Verdict::Pass);
  }
}

TEST_CASE("commutative shapes degrade gracefully") {
  // Everything is central in a commutative algebra; the example suite has
  // no content there and says so.
  const SuiteReport ex = run_suite(SuiteId::parse("Example38NonAdditive"),
                                   AlgebraShape({1, 1}), 20, 13);
  CHECK(ex.verdict == Verdict::Inconclusive);

  const SuiteReport ax = run_suite(SuiteId::parse("Ax2aCentrality"),
                                   AlgebraShape({1, 1}), 20, 13);
  CHECK(ax.verdict == Verdict::Pass);
}

TEST_CASE("replays are bit-identical") {
  const SuiteReport a = quick_run("HooEquivalence");
  const SuiteReport b = quick_run("HooEquivalence");
  CHECK(to_json(a) == to_json(b));
}

TEST_CASE("reports are independent of trial parallelism") {
#ifdef _WIN32
  return;
#else
  setenv("CONELAB_THREADS", "1", 1);
  const SuiteReport serial = quick_run("Thm36Equivalences:2");
  setenv("CONELAB_THREADS", "4", 1);
  const SuiteReport parallel = quick_run("Thm36Equivalences:2");
  unsetenv("CONELAB_THREADS");
  CHECK(to_json(serial) == to_json(parallel));
#endif
}

TEST_CASE("nonadditivity witness search") {
  // Central weights: additivity confirmed, no witness.
  const Element central = central_element(kShape, {2.0, 5.0});
  const WitnessSearchResult none =
      search_nonadditivity_witness(central, 200, 17);
  CHECK(none.conclusive);
  CHECK_FALSE(none.witness.has_value());
  CHECK(none.max_observed <= 1e-9);

  // The 2x2 example weight: a witness pair with a solid margin.
  Matrix m(2, 2);
  m << 2, 1, 1, 1;
  const Element a = single_block(m);
  const WitnessSearchResult found = search_nonadditivity_witness(a, 2000, 17);
  REQUIRE(found.witness.has_value());
  CHECK(found.witness->margin > 1e-3);

  // Per-block scalars are central even with distinct values.
  const Element scalars = central_element(AlgebraShape({2, 3}), {2.0, 5.0});
  CHECK(search_nonadditivity_witness(scalars, 100, 17).conclusive);

  CHECK_THROWS_AS(search_nonadditivity_witness(diag2(1, 0), 10, 1),
                  DomainError);
}

TEST_CASE("squaring witness search") {
  const Element central = scale(unit(kShape), 3.0);
  const WitnessSearchResult none = search_squaring_witness(central, 100, 19);
  CHECK(none.conclusive);
  CHECK_FALSE(none.witness.has_value());

  const Element a = diag2(1, 2);
  const WitnessSearchResult found = search_squaring_witness(a, 2000, 19);
  REQUIRE(found.witness.has_value());
  const Element& x = found.witness->elements[1].second;
  CHECK(loewner_leq(a, x).holds);
  CHECK(hermitian_eig(sub(mul(x, x), mul(a, a))).min_eigenvalue() < -1e-6);
}

TEST_CASE("seminorm gap witness search") {
  const Element central = central_element(kShape, {1.5, 0.7});
  const WitnessSearchResult none =
      search_seminorm_gap_witness(central, 100, 23);
  CHECK(none.conclusive);
  CHECK_FALSE(none.witness.has_value());
  CHECK(none.max_observed <= 1e-9);

  Matrix m(2, 2);
  m << 2, 1, 1, 1;
  const Element a = single_block(m);
  const WitnessSearchResult found =
      search_seminorm_gap_witness(a, 2000, 23);
  REQUIRE(found.witness.has_value());
  const Element& x0 = found.witness->elements[1].second;
  const double lhs = op_norm(mul(a, x0));
  const double rhs = spectral_seminorm_positive_product(a, x0);
  CHECK(lhs - rhs > 1e-8 * lhs);
}

TEST_CASE("mutation controls behave as negative controls") {
  const AlgebraShape shape({2, 3});

  SUBCASE("perturbed weight breaks the norm identities") {
    const MutationReport r = mutate_and_expect_failure(
        SuiteId::parse("GyoeNormIdentities"), Mutation::perturb_weight(0.01),
        shape, 60, 3);
    CHECK(r.expected_fail);
    CHECK(r.harness_ok);
    CHECK(r.rerun.verdict == Verdict::Fail);
    CHECK(r.rerun.max_violation >= 1e-3);
  }

  SUBCASE("perturbed unitary breaks the multiplicative identities") {
    const MutationReport r = mutate_and_expect_failure(
        SuiteId::parse("Thm36Equivalences:1"),
        Mutation::perturb_unitary(0.05), shape, 60, 3);
    CHECK(r.expected_fail);
    CHECK(r.harness_ok);
    CHECK(r.rerun.max_violation >= 5e-3);
    for (const char* name : {"mult_norm", "mult_seminorm", "p_deformed_norm"}) {
      REQUIRE(r.rerun.checks.count(name) == 1);
      CHECK(r.rerun.checks.at(name).violation >= 5e-3);
    }
    // Internal consistency: the four equivalent conditions fail together.
    CHECK(r.rerun.checks.at("mult_spectrum").violation > 1e-6);
  }

  SUBCASE("transpose flips keep every identity (expected pass)") {
    for (const char* name : {"HooEquivalence", "Thm36Equivalences:1",
                             "QimEquivalence"}) {
      const MutationReport r = mutate_and_expect_failure(
          SuiteId::parse(name), Mutation::break_transpose(), shape, 60, 3);
      INFO(name);
      CHECK_FALSE(r.expected_fail);
      CHECK(r.harness_ok);
      CHECK(r.rerun.verdict == Verdict::Pass);
    }
  }

  SUBCASE("swapped weight blocks are detected when dims repeat") {
    const MutationReport r = mutate_and_expect_failure(
        SuiteId::parse("QimEquivalence"), Mutation::swap_blocks(),
        AlgebraShape({2, 2}), 60, 3);
    CHECK(r.expected_fail);
    CHECK(r.harness_ok);
  }

  SUBCASE("inapplicable or malformed mutations are rejected") {
    CHECK_THROWS_AS(
        mutate_and_expect_failure(SuiteId::parse("OgasawaraLocal"),
                                  Mutation::perturb_weight(0.01), shape, 10,
                                  3),
        UsageError);
    CHECK_THROWS_AS(
        mutate_and_expect_failure(SuiteId::parse("GyoeNormIdentities"),
                                  Mutation::perturb_weight(1e-5), shape, 10,
                                  3),
        InvalidRange);
  }
}

TEST_CASE("fail verdicts carry replay data") {
  // A deliberately broken run: the mutated rerun must report the worst
  // trial and keep Pass <=> max_violation <= tol intact.
  const MutationReport r = mutate_and_expect_failure(
      SuiteId::parse("GyoeNormIdentities"), Mutation::perturb_weight(0.05),
      kShape, 40, 21);
  CHECK(r.rerun.verdict == Verdict::Fail);
  CHECK(r.rerun.max_violation > r.rerun.tol);
  bool has_worst_trial = false;
  for (const auto& [name, check] : r.rerun.checks) {
    if (check.worst_trial >= 0) has_worst_trial = true;
  }
  CHECK(has_worst_trial);
}

TEST_CASE("invalid run configs are rejected") {
  CHECK_THROWS_AS(run_suite(SuiteId::parse("GyoeNormIdentities"), kShape, 0,
                            1),
                  InvalidRange);
  CHECK_THROWS_AS(run_suite(SuiteId::parse("GyoeNormIdentities"), kShape, 10,
                            1, -1.0),
                  InvalidRange);
}
