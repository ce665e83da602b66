#include "conelab/cone.hpp"

#include <algorithm>
#include <cmath>

namespace conelab {

OrderVerdict loewner_leq(const Element& a, const Element& b, double tol) {
  require_same_shape(a, b, "loewner_leq");
  const Element diff = sub(b, a);
  const EigenSystem diff_sys = hermitian_eig(diff);

  double min_eig = std::numeric_limits<double>::infinity();
  int min_block = 0;
  for (int i = 0; i < diff.shape.block_count(); ++i) {
    const double block_min = diff_sys.eigenvalues[static_cast<size_t>(i)](0);
    if (block_min < min_eig) {
      min_eig = block_min;
      min_block = i;
    }
  }

  const double scale = std::max(hermitian_eig(a).spectral_radius(),
                                hermitian_eig(b).spectral_radius());

  OrderVerdict verdict;
  verdict.margin = scale > 0.0 ? min_eig / scale : min_eig;
  verdict.holds = verdict.margin >= -tol;
  if (!verdict.holds) {
    Element w = zero_element(a.shape);
    const Eigen::VectorXcd v =
        diff_sys.vectors[static_cast<size_t>(min_block)].col(0);
    w.blocks[static_cast<size_t>(min_block)] = v * v.adjoint();
    verdict.witness = std::move(w);
  }
  return verdict;
}

ThompsonRoutes thompson_distance_routes(const Element& x, const Element& y) {
  ThompsonRoutes routes;
  routes.congruence = std::log(
      std::max(inf_dominance(x, y), inf_dominance(y, x)));

  const Element x_inv = element_inverse(x);
  const Element y_inv = element_inverse(y);
  routes.seminorm = std::log(
      std::max(spectral_seminorm_positive_product(x, y_inv),
               spectral_seminorm_positive_product(y, x_inv)));
  return routes;
}

double thompson_distance(const Element& x, const Element& y) {
  const ThompsonRoutes routes = thompson_distance_routes(x, y);
  const double diff = std::abs(routes.congruence - routes.seminorm);
  if (diff > 1e-8 * std::max(1.0, std::abs(routes.congruence))) {
    throw NumericalHealthFailure(
        "thompson_distance: congruence and seminorm routes disagree by " +
        std::to_string(diff));
  }
  return routes.congruence;
}

Element geometric_mean(const Element& x, const Element& y) {
  const Element rx = element_sqrt(x);
  const Element rx_inv = element_inverse(rx);
  const Element middle = element_sqrt(mul(mul(rx_inv, y), rx_inv));
  return mul(mul(rx, middle), rx);
}

Element diamond_p(const Element& x, const Element& y, double p) {
  if (p <= 0.0) throw DomainError("diamond_p: p must be positive");
  const Element xp2 = element_power(x, p / 2.0);
  const Element yp = element_power(y, p);
  return element_power(mul(mul(xp2, yp), xp2), 1.0 / p);
}

std::optional<Element> order_witness_from_norms(const Element& a,
                                                const Element& b) {
  require_same_shape(a, b, "order_witness_from_norms");
  const OrderVerdict verdict = loewner_leq(a, b);
  if (verdict.holds) return std::nullopt;

  const Element& direction = *verdict.witness;  // vv*, block-embedded
  const Element identity = unit(a.shape);
  for (double eps = 1e-2; eps >= 0.5e-8; eps *= 0.1) {
    Element x = add(direction, scale(identity, eps));
    x = scale(x, 1.0 / op_norm(x));  // serve the x <= e formulations too
    const double lhs = op_norm(triple_product(x, a));
    const double rhs = op_norm(triple_product(x, b));
    if (lhs - rhs >= 1e-10 * std::max({lhs, rhs, 1e-300})) {
      return x;
    }
  }
  throw WitnessNotFound(
      "order_witness_from_norms: epsilon sweep exhausted without a "
      "strict norm gap");
}

}  // namespace conelab
