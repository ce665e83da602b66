#pragma once

// One executable property suite per preserver statement, plus witness
// searches and mutation (negative-control) runs.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "conelab/jordan.hpp"

namespace conelab {

enum class SuiteKind {
  GyoeNormIdentities,
  Ax2aCentrality,
  QimEquivalence,
  HooEquivalence,
  NormEqualityLemma,
  SeminormOrderLemma,
  TripleNormJordan,
  Thm36Equivalences,
  HunaTwoMaps,
  Example38NonAdditive,
  AdditiveBijection,
  GeoMeanCentrality,
  OgasawaraLocal,
  CentralityCriteria,
  ExtheSemidefinite,
  IneqSemidefinite,
  Semi13Equivalences,
  EffectDiamond,
};

struct SuiteId {
  SuiteKind kind;
  std::optional<double> p;  // exponent for the power-deformed suites

  // "Thm36Equivalences:2" style token; also the CLI syntax.
  std::string name() const;
  // One-line statement of what the suite verifies.
  std::string statement() const;

  static bool kind_takes_p(SuiteKind kind);
  static SuiteId parse(const std::string& token);  // UsageError on bad token
};

// The full default battery, with the standard exponent expansions.
std::vector<SuiteId> all_suite_ids();

enum class Verdict { Pass, Fail, Inconclusive };

std::string to_string(Verdict v);

struct Witness {
  std::string label;
  std::vector<std::pair<std::string, Element>> elements;
  double quantity_lhs = 0.0;
  double quantity_rhs = 0.0;
  double margin = 0.0;  // > 0 for accepted witnesses
};

struct CheckResult {
  double violation = 0.0;
  // Per-check tolerance is tol_multiplier * suite tol (10 for sorted
  // spectrum comparisons and pointwise map agreement, 0.1 for the
  // tighter exact identities).
  double tol_multiplier = 1.0;
  int worst_trial = -1;
};

struct SuiteReport {
  SuiteId suite;
  AlgebraShape shape;
  int trials = 0;
  std::uint64_t seed = 0;
  double tol = 1e-8;
  Verdict verdict = Verdict::Pass;
  std::string inconclusive_reason;
  // max over checks of violation / tol_multiplier, so that
  // verdict == Pass  <=>  max_violation <= tol (witness budgets aside).
  double max_violation = 0.0;
  std::map<std::string, CheckResult> checks;
  std::vector<Witness> witnesses;
};

inline constexpr int kDefaultWitnessBudget = 2000;

struct WitnessSearchResult {
  std::optional<Witness> witness;
  // False only when the input is non-central (or the inequality fails)
  // and the budget ran out before a witness surfaced; existence is
  // guaranteed non-constructively, so this is Inconclusive, never Pass.
  bool conclusive = true;
  // Largest violation seen during a confirmation sweep (central case).
  double max_observed = 0.0;
  int samples_used = 0;
};

// Non-additivity of x -> (a x^2 a)^{1/2}. Central a: confirms additivity
// on the budget. Non-central: tries the proof substitution x = a^{-1}
// first, then random pairs.
WitnessSearchResult search_nonadditivity_witness(
    const Element& a, int budget = kDefaultWitnessBudget,
    std::uint64_t seed = 0);

// Local monotonicity of squaring at a. Non-central a: scans x = a + t vv*
// over a log grid of t and random directions v for a <= x with a^2 ≰ x^2.
WitnessSearchResult search_squaring_witness(
    const Element& a, int budget = kDefaultWitnessBudget,
    std::uint64_t seed = 0);

// Gap between ||ax|| and ||ax||_S. Non-central a: derives x0 from the
// squaring witness (x0 = y^{-1} with a <= y, a^2 ≰ y^2), then falls back
// to random search.
WitnessSearchResult search_seminorm_gap_witness(
    const Element& a, int budget = kDefaultWitnessBudget,
    std::uint64_t seed = 0);

SuiteReport run_suite(const SuiteId& id, const AlgebraShape& shape, int trials,
                      std::uint64_t seed, double tol = 1e-8);

struct Mutation {
  enum class Kind { PerturbWeight, PerturbUnitary, BreakTranspose, SwapBlocks };
  Kind kind = Kind::PerturbWeight;
  double delta = 0.0;

  static Mutation perturb_weight(double delta) {
    return {Kind::PerturbWeight, delta};
  }
  static Mutation perturb_unitary(double delta) {
    return {Kind::PerturbUnitary, delta};
  }
  static Mutation break_transpose() { return {Kind::BreakTranspose, 0.0}; }
  static Mutation swap_blocks() { return {Kind::SwapBlocks, 0.0}; }

  std::string to_string() const;
};

struct MutationReport {
  SuiteReport rerun;
  // BreakTranspose swaps in a different but genuine Jordan map, so the
  // value identities still hold and the expected verdict is Pass. Every
  // other mutation must flip the suite to Fail.
  bool expected_fail = true;
  bool harness_ok = false;
  std::string detail;
};

// Re-runs the forward value identities of a suite with a deliberately
// broken construction. delta must be >= 1e-3 for the perturbation kinds.
MutationReport mutate_and_expect_failure(const SuiteId& id, const Mutation& m,
                                         const AlgebraShape& shape, int trials,
                                         std::uint64_t seed, double tol = 1e-8);

// Trial parallelism cap from CONELAB_THREADS (>= 1); results do not
// depend on it.
int trial_thread_count();

}  // namespace conelab
