#pragma once

// Gamma, incomplete gamma and error functions in plain double precision.
//
// Everything here is self-contained: Lanczos gamma, series / continued
// fraction incomplete gamma, and bracketed Newton inverses. The error
// function is the a = 1/2 special case of the incomplete gamma.

namespace binquant::special {

struct Accuracy {
  double rel_tol = 1e-10;
  int max_iter = 200;

  /// Throws DomainError when rel_tol <= 0 or max_iter < 1.
  void validate() const;
};

/// Gamma(x) for x > 0. Throws DomainError for x <= 0 and OverflowError past x ~ 171.6.
double gamma(double x, const Accuracy& acc = {});

/// log Gamma(x) for x > 0.
double log_gamma(double x, const Accuracy& acc = {});

/// Regularized lower incomplete gamma P(a, w) = gamma(a, w) / Gamma(a).
double reg_lower_inc_gamma(double a, double w, const Accuracy& acc = {});

/// Regularized upper incomplete gamma Q(a, w) = 1 - P(a, w), accurate in the upper tail.
double reg_upper_inc_gamma(double a, double w, const Accuracy& acc = {});

/// w >= 0 with P(a, w) = p, for 0 <= p < 1.
double inv_reg_lower_inc_gamma(double a, double p, const Accuracy& acc = {});

/// w >= 0 with Q(a, w) = q, for 0 < q <= 1. Keeps full relative accuracy for tiny q.
double inv_reg_upper_inc_gamma(double a, double q, const Accuracy& acc = {});

double erf(double x, const Accuracy& acc = {});
double erfc(double x, const Accuracy& acc = {});

/// Inverse of erf on (-1, 1). Throws DomainError for |y| >= 1.
double inv_erf(double y, const Accuracy& acc = {});

/// Inverse of erfc on (0, 2).
double inv_erfc(double y, const Accuracy& acc = {});

}  // namespace binquant::special
