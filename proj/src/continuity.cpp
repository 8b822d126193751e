#include "ct2/continuity.hpp"

#include <stdexcept>

namespace ct2 {

std::vector<double> one_sided_weights(int k, int points) {
  if (k < 0 || points < k + 1)
    throw ContractViolation("one_sided_weights: need at least k+1 points");
  // Vandermonde system sum_m w_m m^p = k! delta_pk, p = 0..points-1, solved exactly.
  const auto n = static_cast<std::size_t>(points);
  Matrix<Rational> v(n, n);
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t m = 0; m < n; ++m)
      v(p, m) = detail::power(Rational(static_cast<long>(m)), static_cast<int>(p));
  const auto inv = inverse(v);
  if (!inv)
    throw std::logic_error("one_sided_weights: singular Vandermonde matrix");
  std::vector<Rational> rhs(n, Rational(0));
  rhs[static_cast<std::size_t>(k)] = Rational(detail::factorial(k));
  const auto w = inv->apply(rhs);
  std::vector<double> out;
  out.reserve(n);
  for (const auto &x : w)
    out.push_back(x.convert_to<double>());
  return out;
}

std::vector<double> sampled_cross_derivative_audit(const PointFunction &left,
                                                   const PointFunction &right,
                                                   const EdgeGeometry &edge, int r, int n,
                                                   double h, Stencil stencil) {
  if (n < 2)
    throw ContractViolation("sampled_cross_derivative_audit: need at least 2 samples");
  if (!(h > 0.0))
    throw ContractViolation("sampled_cross_derivative_audit: step must be positive");
  if (r < 0)
    throw ContractViolation("sampled_cross_derivative_audit: negative order");

  const Point2<double> t = edge.b - edge.a;
  const double len = std::hypot(t.x, t.y);
  if (!(len > 0.0))
    throw GeometryError("sampled_cross_derivative_audit: zero-length edge");
  Point2<double> nu{-t.y / len, t.x / len};
  if (nu.x * edge.toward_left.x + nu.y * edge.toward_left.y < 0.0)
    nu = Point2<double>{-nu.x, -nu.y};

  std::vector<std::vector<double>> weights;
  for (int k = 0; k <= r; ++k)
    weights.push_back(k == 0 ? std::vector<double>{1.0}
                             : one_sided_weights(k, stencil == Stencil::QuinticExact ? std::max(6, k + 1)
                                                                                     : k + 2));

  std::vector<double> worst(static_cast<std::size_t>(r + 1), 0.0);
  for (int j = 1; j <= n; ++j) {
    const double s = static_cast<double>(j) / (n + 1);
    const Point2<double> base{edge.a.x + s * t.x, edge.a.y + s * t.y};
    for (int k = 0; k <= r; ++k) {
      const auto &w = weights[static_cast<std::size_t>(k)];
      double dl = 0.0, dr = 0.0;
      for (std::size_t m = 0; m < w.size(); ++m) {
        const double off = static_cast<double>(m) * h;
        dl += w[m] * left({base.x + off * nu.x, base.y + off * nu.y});
        dr += w[m] * right({base.x - off * nu.x, base.y - off * nu.y});
      }
      const double hk = std::pow(h, k);
      dl /= hk;
      dr /= hk;
      if (k % 2 == 1)
        dr = -dr;
      worst[static_cast<std::size_t>(k)] = std::max(worst[static_cast<std::size_t>(k)], std::abs(dl - dr));
    }
  }
  return worst;
}

} // namespace ct2
