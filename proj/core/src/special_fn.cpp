#include "binquant/special_fn.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "binquant/error.hpp"

namespace binquant::special {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1e-300;
constexpr double kLogSqrt2Pi = 0.91893853320467274178;
constexpr double kGammaOverflowArg = 171.6243769563027;

// Lanczos approximation, g = 7, n = 9.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7,
};

double lanczos_sum(double xm1) {
  double a = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) {
    a += kLanczos[i] / (xm1 + static_cast<double>(i));
  }
  return a;
}

void require_positive(double x, const char* what) {
  if (!(x > 0.0)) {
    throw DomainError(std::string(what) + ": argument must be > 0, got " + std::to_string(x));
  }
}

// log of w^a e^{-w} / Gamma(a), the common prefactor of both incomplete-gamma expansions.
double log_prefactor(double a, double w, const Accuracy& acc) {
  return a * std::log(w) - w - log_gamma(a, acc);
}

// Series for P(a, w); converges quickly for w < a + 1.
double lower_series(double a, double w, const Accuracy& acc) {
  double ap = a;
  double term = 1.0 / a;
  double sum = term;
  for (int n = 0; n < acc.max_iter; ++n) {
    ap += 1.0;
    term *= w / ap;
    sum += term;
    if (std::abs(term) < std::abs(sum) * kEps) {
      return sum * std::exp(log_prefactor(a, w, acc));
    }
  }
  if (std::abs(term) < std::abs(sum) * acc.rel_tol) {
    return sum * std::exp(log_prefactor(a, w, acc));
  }
  throw ConvergenceError("incomplete gamma series did not converge for a=" + std::to_string(a) +
                         ", w=" + std::to_string(w));
}

// Modified Lentz continued fraction for Q(a, w); converges quickly for w >= a + 1.
double upper_continued_fraction(double a, double w, const Accuracy& acc) {
  double b = w + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  double delta = 0.0;
  for (int i = 1; i <= acc.max_iter; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kEps) {
      return h * std::exp(log_prefactor(a, w, acc));
    }
  }
  if (std::abs(delta - 1.0) < acc.rel_tol) {
    return h * std::exp(log_prefactor(a, w, acc));
  }
  throw ConvergenceError("incomplete gamma continued fraction did not converge for a=" +
                         std::to_string(a) + ", w=" + std::to_string(w));
}

void check_inc_gamma_args(double a, double w, const char* what) {
  if (!(a > 0.0)) {
    throw DomainError(std::string(what) + ": shape a must be > 0");
  }
  if (!(w >= 0.0)) {
    throw DomainError(std::string(what) + ": w must be >= 0");
  }
}

// Solves P(a, w) = target (upper == false) or Q(a, w) = target (upper == true).
//
// Newton in t = log(w) inside a bracket [lo, hi] that always contains the root;
// any step that leaves the bracket is replaced by a geometric bisection.
double invert_inc_gamma(double a, double target, bool upper, const Accuracy& acc) {
  const auto residual = [&](double w) {
    return upper ? reg_upper_inc_gamma(a, w, acc) - target : reg_lower_inc_gamma(a, w, acc) - target;
  };
  // True when w lies left of the root.
  const auto left_of_root = [&](double w) {
    const double r = residual(w);
    return upper ? r > 0.0 : r < 0.0;
  };

  double hi = 1.0;
  while (left_of_root(hi)) {
    hi *= 2.0;
    if (!std::isfinite(hi)) {
      throw ConvergenceError("inverse incomplete gamma: cannot bracket root");
    }
  }
  double lo = hi * 0.5;
  if (!upper) {
    // Leading-order small-w behaviour P(a, w) ~ w^a / Gamma(a + 1).
    const double guess = std::exp((std::log(target) + log_gamma(a + 1.0, acc)) / a);
    if (guess > 0.0 && guess < lo) lo = guess;
  }
  while (!left_of_root(lo)) {
    lo *= 0.5;
    if (lo == 0.0) return 0.0;
  }

  double log_lo = std::log(lo);
  double log_hi = std::log(hi);
  double t = 0.5 * (log_lo + log_hi);
  const double log_gamma_a = log_gamma(a, acc);
  for (int iter = 0; iter < acc.max_iter; ++iter) {
    const double w = std::exp(t);
    const double r = residual(w);
    if (r == 0.0) return w;
    const bool left = upper ? r > 0.0 : r < 0.0;
    if (left) {
      log_lo = t;
    } else {
      log_hi = t;
    }
    // d/dt P(a, e^t) = w * density(w)
    const double slope = std::exp(a * std::log(w) - w - log_gamma_a);
    double step = (upper ? r : -r) / slope;
    double next = t + step;
    if (!std::isfinite(next) || next <= log_lo || next >= log_hi) {
      next = 0.5 * (log_lo + log_hi);
      step = next - t;
    }
    t = next;
    if (std::abs(step) <= 4.0 * kEps * std::max(1.0, std::abs(t)) ||
        (log_hi - log_lo) <= 4.0 * kEps * std::max(1.0, std::abs(t))) {
      return std::exp(t);
    }
  }
  if (log_hi - log_lo <= acc.rel_tol) {
    return std::exp(t);
  }
  throw ConvergenceError("inverse incomplete gamma did not converge for a=" + std::to_string(a) +
                         ", target=" + std::to_string(target));
}

}  // namespace

void Accuracy::validate() const {
  if (!(rel_tol > 0.0)) throw DomainError("Accuracy: rel_tol must be > 0");
  if (max_iter < 1) throw DomainError("Accuracy: max_iter must be >= 1");
}

double gamma(double x, const Accuracy& acc) {
  require_positive(x, "gamma");
  if (x > kGammaOverflowArg) {
    throw OverflowError("gamma: result overflows for x=" + std::to_string(x));
  }
  if (x < 0.5) {
    // Reflection keeps the Lanczos sum in its accurate range.
    const double r = std::numbers::pi / (std::sin(std::numbers::pi * x) * gamma(1.0 - x, acc));
    if (!std::isfinite(r)) throw OverflowError("gamma: result overflows for x=" + std::to_string(x));
    return r;
  }
  const double xm1 = x - 1.0;
  const double t = xm1 + kLanczosG + 0.5;
  // Split the power so t^(x-1/2) does not overflow before Gamma does.
  const double half_power = std::pow(t, 0.5 * (xm1 + 0.5));
  const double r = std::sqrt(2.0 * std::numbers::pi) * half_power * (half_power * std::exp(-t)) *
                   lanczos_sum(xm1);
  if (!std::isfinite(r)) throw OverflowError("gamma: result overflows for x=" + std::to_string(x));
  return r;
}

double log_gamma(double x, const Accuracy& acc) {
  require_positive(x, "log_gamma");
  if (x < 0.5) {
    return std::log(std::numbers::pi / std::sin(std::numbers::pi * x)) - log_gamma(1.0 - x, acc);
  }
  const double xm1 = x - 1.0;
  const double t = xm1 + kLanczosG + 0.5;
  return kLogSqrt2Pi + (xm1 + 0.5) * std::log(t) - t + std::log(lanczos_sum(xm1));
}

double reg_lower_inc_gamma(double a, double w, const Accuracy& acc) {
  check_inc_gamma_args(a, w, "reg_lower_inc_gamma");
  if (w == 0.0) return 0.0;
  if (std::isinf(w)) return 1.0;
  if (w < a + 1.0) return lower_series(a, w, acc);
  return 1.0 - upper_continued_fraction(a, w, acc);
}

double reg_upper_inc_gamma(double a, double w, const Accuracy& acc) {
  check_inc_gamma_args(a, w, "reg_upper_inc_gamma");
  if (w == 0.0) return 1.0;
  if (std::isinf(w)) return 0.0;
  if (w < a + 1.0) return 1.0 - lower_series(a, w, acc);
  return upper_continued_fraction(a, w, acc);
}

double inv_reg_lower_inc_gamma(double a, double p, const Accuracy& acc) {
  if (!(a > 0.0)) throw DomainError("inv_reg_lower_inc_gamma: shape a must be > 0");
  if (!(p >= 0.0 && p < 1.0)) throw DomainError("inv_reg_lower_inc_gamma: p must lie in [0, 1)");
  if (p == 0.0) return 0.0;
  // Work on whichever tail is smaller so the residual keeps relative precision.
  if (p > 0.5) return invert_inc_gamma(a, 1.0 - p, true, acc);
  return invert_inc_gamma(a, p, false, acc);
}

double inv_reg_upper_inc_gamma(double a, double q, const Accuracy& acc) {
  if (!(a > 0.0)) throw DomainError("inv_reg_upper_inc_gamma: shape a must be > 0");
  if (!(q > 0.0 && q <= 1.0)) throw DomainError("inv_reg_upper_inc_gamma: q must lie in (0, 1]");
  if (q == 1.0) return 0.0;
  if (q > 0.5) return invert_inc_gamma(a, 1.0 - q, false, acc);
  return invert_inc_gamma(a, q, true, acc);
}

double erf(double x, const Accuracy& acc) {
  if (std::isnan(x)) throw DomainError("erf: NaN argument");
  if (x == 0.0) return x;
  const double v = reg_lower_inc_gamma(0.5, x * x, acc);
  return x < 0.0 ? -v : v;
}

double erfc(double x, const Accuracy& acc) {
  if (std::isnan(x)) throw DomainError("erfc: NaN argument");
  if (x >= 0.0) return reg_upper_inc_gamma(0.5, x * x, acc);
  return 1.0 + reg_lower_inc_gamma(0.5, x * x, acc);
}

double inv_erf(double y, const Accuracy& acc) {
  if (!(std::abs(y) < 1.0)) throw DomainError("inv_erf: |y| must be < 1");
  if (y == 0.0) return y;
  const double ay = std::abs(y);
  const double w = ay < 0.5 ? inv_reg_lower_inc_gamma(0.5, ay, acc)
                            : inv_reg_upper_inc_gamma(0.5, 1.0 - ay, acc);
  const double x = std::sqrt(w);
  return y < 0.0 ? -x : x;
}

double inv_erfc(double y, const Accuracy& acc) {
  if (!(y > 0.0 && y < 2.0)) throw DomainError("inv_erfc: y must lie in (0, 2)");
  if (y == 1.0) return 0.0;
  if (y < 1.0) return std::sqrt(inv_reg_upper_inc_gamma(0.5, y, acc));
  return -std::sqrt(inv_reg_upper_inc_gamma(0.5, 2.0 - y, acc));
}

}  // namespace binquant::special
