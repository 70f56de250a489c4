#include "mtbe/gumbel.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>

namespace mtbe {

double survival(const GumbelBveParams& params, const TbePair& y) {
  if (!(y.y1 >= 0.0) || !(y.y2 >= 0.0)) {
    throw std::invalid_argument("survival: coordinates must be nonnegative");
  }
  const double u1 = y.y1 / params.theta1();
  const double u2 = y.y2 / params.theta2();
  // Degenerate coordinates and the independence case reduce to plain
  // exponential survival; taking those branches keeps the marginals exact.
  if (u1 == 0.0) return std::exp(-u2);
  if (u2 == 0.0) return std::exp(-u1);
  if (params.independent()) return std::exp(-(u1 + u2));
  const double inv_delta = 1.0 / params.delta();
  const double s = std::pow(u1, inv_delta) + std::pow(u2, inv_delta);
  return std::exp(-std::pow(s, params.delta()));
}

double sample_positive_stable(double delta, Rng& rng) {
  if (!(delta > 0.0) || !(delta < 1.0)) {
    throw std::invalid_argument("sample_positive_stable: delta must lie in (0, 1)");
  }
  const double angle = M_PI * rng.uniform_open01();  // strictly inside (0, pi)
  const double w = rng.exponential(1.0);
  // S = (A(angle) / W)^((1-delta)/delta) with the Zolotarev function
  //   A = sin(delta a)^(delta/(1-delta)) sin((1-delta) a) / sin(a)^(1/(1-delta)),
  // evaluated in log space to avoid overflow for small delta.
  const double log_s = std::log(std::sin(delta * angle)) +
                       (1.0 - delta) / delta * std::log(std::sin((1.0 - delta) * angle)) -
                       1.0 / delta * std::log(std::sin(angle)) -
                       (1.0 - delta) / delta * std::log(w);
  return std::exp(log_s);
}

TbePair sample_pair(const GumbelBveParams& params, Rng& rng) {
  if (params.independent()) {
    const double y1 = rng.exponential(params.theta1());
    const double y2 = rng.exponential(params.theta2());
    return TbePair{y1, y2};
  }
  const double s = sample_positive_stable(params.delta(), rng);
  const double e1 = rng.exponential(1.0);
  const double e2 = rng.exponential(1.0);
  const double d = params.delta();
  return TbePair{params.theta1() * std::pow(e1 / s, d),
                 params.theta2() * std::pow(e2 / s, d)};
}

MomentSummary moments(const GumbelBveParams& params) {
  const double t1 = params.theta1();
  const double t2 = params.theta2();
  const double d = params.delta();
  double cross = 0.0;
  if (!params.independent()) {
    const double g = std::tgamma(d);
    cross = t1 * t2 * (d * g * g / std::tgamma(2.0 * d) - 1.0);
  }
  MomentSummary out;
  out.mean = {t1, t2};
  out.covariance = Sym2{t1 * t1, cross, t2 * t2};
  return out;
}

double numeric_cov_oracle(const GumbelBveParams& params, double tol) {
  if (!(tol > 0.0)) {
    throw std::invalid_argument("numeric_cov_oracle: tol must be positive");
  }
  using boost::math::quadrature::gauss_kronrod;
  const double t1 = params.theta1();
  const double t2 = params.theta2();

  // Integrate on unit scales: E[Y1 Y2] = t1 t2 * I where
  // I = integral of the unit-scale survival over the positive quadrant.
  // The substitution keeps the integrand's shape independent of the scales,
  // so the quadrature is equally well conditioned for any theta.
  const GumbelBveParams unit(1.0, 1.0, params.delta());
  const double scale = t1 * t2;  // unit integral I lies in [1, 2]

  // Truncation radius: the unit survival is bounded by the smaller marginal
  // survival, giving the tail bound 2 * exp(-a) * (a + 2).  Solve < tol/10.
  double a = 30.0;
  for (int i = 0; i < 4; ++i) {
    a = std::log(20.0 * (a + 2.0) / tol);
  }
  a = std::max(a, 15.0);

  double outer_err = 0.0;
  const auto inner = [&](double u) {
    double err = 0.0;
    return gauss_kronrod<double, 15>::integrate(
        [&](double v) { return survival(unit, TbePair{u, v}); }, 0.0, a, 12,
        1e-12, &err);
  };
  const double integral = gauss_kronrod<double, 15>::integrate(
      inner, 0.0, a, 12, tol / 10.0, &outer_err);
  if (!(outer_err <= tol / 2.0)) {
    throw QuadratureError("numeric_cov_oracle: quadrature failed to reach tolerance");
  }
  return scale * (integral - 1.0);
}

}  // namespace mtbe
