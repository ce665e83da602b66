#pragma once

// Order and metric geometry of the positive cones: Loewner comparison,
// Thompson metric, geometric mean, sequential products, and constructive
// order-violation witnesses.

#include <optional>

#include "conelab/spectral.hpp"

namespace conelab {

struct OrderVerdict {
  bool holds = false;
  // min eigenvalue of b - a, divided by max(||a||, ||b||).
  double margin = 0.0;
  // Rank-one direction vv* with v*(b-a)v < 0; present only when !holds.
  std::optional<Element> witness;
};

OrderVerdict loewner_leq(const Element& a, const Element& b,
                         double tol = kClassifyTol);

struct ThompsonRoutes {
  double congruence = 0.0;  // via ||y^{-1/2} x y^{-1/2}||
  double seminorm = 0.0;    // via the positive-product seminorm of x y^{-1}
};

ThompsonRoutes thompson_distance_routes(const Element& x, const Element& y);

// log max{inf{t : x ≤ ty}, inf{s : y ≤ sx}}. Evaluated by two
// independent routes (congruence norm and positive-product seminorm);
// disagreement beyond 1e-8 aborts with NumericalHealthFailure.
double thompson_distance(const Element& x, const Element& y);

// x # y = x^{1/2} (x^{-1/2} y x^{-1/2})^{1/2} x^{1/2}
Element geometric_mean(const Element& x, const Element& y);

// x ⋄_p y = (x^{p/2} y^p x^{p/2})^{1/p}; p = 1 is the sequential product.
Element diamond_p(const Element& x, const Element& y, double p);

// If a ≰ b, returns a positive invertible x with ||xax|| > ||xbx||,
// built as vv* + εI from the most negative direction of b - a and then
// normalized to unit norm (so it also serves the x ≤ e formulations).
// Returns nullopt when a ≤ b; throws WitnessNotFound if the ε sweep is
// exhausted.
std::optional<Element> order_witness_from_norms(const Element& a,
                                                const Element& b);

}  // namespace conelab
