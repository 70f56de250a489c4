#pragma once

#include <array>
#include <stdexcept>

#include "mtbe/random.hpp"

namespace mtbe {

/// One bivariate time-between-events observation (both components >= 0).
struct TbePair {
  double y1 = 0.0;
  double y2 = 0.0;
};

/// Symmetric 2x2 matrix, stored as its upper triangle.
struct Sym2 {
  double v11 = 0.0;
  double v12 = 0.0;
  double v22 = 0.0;

  double determinant() const { return v11 * v22 - v12 * v12; }

  /// Closed-form inverse. Throws std::invalid_argument when the determinant
  /// is at or below the singularity tolerance of 1e-12.
  Sym2 inverse() const {
    const double det = determinant();
    if (!(det > 1e-12)) {
      throw std::invalid_argument("Sym2::inverse: matrix is singular");
    }
    return Sym2{v22 / det, -v12 / det, v11 / det};
  }
};

/// Parameters of Gumbel's bivariate exponential distribution: marginal mean
/// times-between-events theta1, theta2 and the dependence parameter delta.
/// delta = 1 is exact independence; smaller delta means stronger positive
/// dependence. delta below 0.05 is rejected because (y/theta)^(1/delta)
/// overflows double precision long before the distribution degenerates.
class GumbelBveParams {
 public:
  GumbelBveParams(double theta1, double theta2, double delta)
      : theta1_(theta1), theta2_(theta2), delta_(delta) {
    if (!(theta1 > 0.0) || !(theta2 > 0.0)) {
      throw std::invalid_argument("GumbelBveParams: scale parameters must be positive");
    }
    if (!(delta <= 1.0) || !(delta >= 0.05)) {
      throw std::invalid_argument("GumbelBveParams: delta must lie in [0.05, 1]");
    }
  }

  double theta1() const { return theta1_; }
  double theta2() const { return theta2_; }
  double delta() const { return delta_; }
  bool independent() const { return delta_ == 1.0; }

  /// Same dependence parameter, scale parameters multiplied per stream.
  GumbelBveParams scaled(double m1, double m2) const {
    return GumbelBveParams(theta1_ * m1, theta2_ * m2, delta_);
  }

 private:
  double theta1_;
  double theta2_;
  double delta_;
};

/// In-control mean vector and covariance matrix of the pair.
struct MomentSummary {
  std::array<double, 2> mean{};
  Sym2 covariance{};
};

/// Joint survival probability P(Y1 > y1, Y2 > y2). One at the origin,
/// nonincreasing in each coordinate, exponential marginals.
double survival(const GumbelBveParams& params, const TbePair& y);

/// Draws a positive stable variate S with Laplace transform
/// E[exp(-t S)] = exp(-t^delta), via the Kanter representation: an angle
/// uniform on (0, pi) and an independent unit-mean exponential combined
/// through the Zolotarev function. Requires 0 < delta < 1; the caller must
/// special-case delta = 1 (S degenerate at 1).
double sample_positive_stable(double delta, Rng& rng);

/// Draws one pair from the distribution. Independence (delta = 1) uses two
/// plain exponentials; otherwise a positive-stable frailty S is shared by
/// both components: Y_j = theta_j * (E_j / S)^delta with E_j unit-mean
/// exponentials.
TbePair sample_pair(const GumbelBveParams& params, Rng& rng);

/// Mean vector and covariance matrix. Marginals are exponential, so the
/// means are (theta1, theta2) and the variances their squares. The
/// cross-covariance is theta1 * theta2 * (delta * Gamma(delta)^2 /
/// Gamma(2 delta) - 1), which numeric_cov_oracle confirms by quadrature.
MomentSummary moments(const GumbelBveParams& params);

/// Raised when adaptive quadrature cannot meet the requested tolerance.
struct QuadratureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Independent estimate of Cov(Y1, Y2): integrates the survival function
/// over a truncated quadrant (E[Y1 Y2] for nonnegative variables) with
/// adaptive Gauss-Kronrod quadrature and subtracts theta1 * theta2. The
/// integral runs on unit scales, so tol is the error budget in units of
/// theta1 * theta2: the truncation radius keeps the discarded tail below
/// tol / 10 and the result is within tol * theta1 * theta2 of the true
/// covariance, or QuadratureError is thrown.
double numeric_cov_oracle(const GumbelBveParams& params, double tol);

}  // namespace mtbe
