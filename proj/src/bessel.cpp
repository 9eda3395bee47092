#include "cylsym/bessel.hpp"

#include <cmath>
#include <limits>

namespace cylsym {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kEulerGamma = 0.577215664901532860606512090082402431;
constexpr double kAsymptoticCut = 12.0;

bool near_integer(double nu, long long& n) {
  double r = std::nearbyint(nu);
  if (std::abs(nu - r) < 1e-8) {
    n = static_cast<long long>(r);
    return true;
  }
  return false;
}

double harmonic(int m) {
  double h = 0;
  for (int k = 1; k <= m; ++k) h += 1.0 / k;
  return h;
}

// ascending series, any real order with Gamma(m+nu+1) finite
double j_series(double nu, double x) {
  double h = x / 2.0;
  double t = std::pow(h, nu) / std::tgamma(nu + 1.0);
  double sum = t;
  double h2 = h * h;
  for (int m = 1; m <= 400; ++m) {
    t *= -h2 / (m * (m + nu));
    sum += t;
    if (std::abs(t) < 1e-18 * (std::abs(sum) + 1e-300)) break;
  }
  return sum;
}

// Hankel asymptotic expansion for large argument
void pq_asymptotic(double nu, double x, double& p, double& q) {
  double mu = 4.0 * nu * nu;
  double t8 = 8.0 * x;
  p = 1.0;
  q = (mu - 1.0) / t8;
  double term = q;
  double prev = std::abs(term);
  for (int k = 2; k <= 20; ++k) {
    term *= (mu - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (k * t8);
    if (std::abs(term) > prev) break;
    prev = std::abs(term);
    if (k % 2 == 0)
      p += (k % 4 == 0 ? term : -term);
    else
      q += (k % 4 == 1 ? term : -term);
    if (std::abs(term) < 1e-17) break;
  }
}

double j_asymptotic(double nu, double x) {
  double p, q;
  pq_asymptotic(nu, x, p, q);
  double chi = x - (0.5 * nu + 0.25) * kPi;
  return std::sqrt(2.0 / (kPi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

double y_asymptotic(double nu, double x) {
  double p, q;
  pq_asymptotic(nu, x, p, q);
  double chi = x - (0.5 * nu + 0.25) * kPi;
  return std::sqrt(2.0 / (kPi * x)) * (p * std::sin(chi) + q * std::cos(chi));
}

double y0_series(double x) {
  double h = x / 2.0;
  double h2 = h * h;
  double sum = 0;
  double t = 1.0;  // h^{2m} / (m!)^2
  for (int m = 1; m <= 400; ++m) {
    t *= h2 / (static_cast<double>(m) * m);
    double add = (m % 2 == 1 ? t : -t) * harmonic(m);
    sum += add;
    if (m > 4 && std::abs(add) < 1e-18 * (std::abs(sum) + 1e-300)) break;
  }
  return 2.0 / kPi * ((std::log(h) + kEulerGamma) * bessel_j(0.0, x) + sum);
}

double y1_series(double x) {
  double h = x / 2.0;
  double h2 = h * h;
  double sum = 0;
  double t = 1.0;  // (-h^2)^m / (m! (m+1)!)
  for (int m = 0; m <= 400; ++m) {
    if (m > 0) t *= -h2 / (static_cast<double>(m) * (m + 1));
    double add = t * (harmonic(m) + harmonic(m + 1) - 2.0 * kEulerGamma);
    sum += add;
    if (m > 4 && std::abs(add) < 1e-18 * (std::abs(sum) + 1e-300)) break;
  }
  return 2.0 / kPi * std::log(h) * bessel_j(1.0, x) - 2.0 / (kPi * x) - h / kPi * sum;
}

}  // namespace

double bessel_j(double nu, double x) {
  if (std::isnan(nu) || std::isnan(x)) return std::numeric_limits<double>::quiet_NaN();
  if (x < 0) {
    long long n;
    if (!near_integer(nu, n))
      throw BesselDomainError("BesselJ: negative argument with non-integer order");
    double v = bessel_j(static_cast<double>(n), -x);
    return n % 2 != 0 ? -v : v;
  }
  long long n;
  if (near_integer(nu, n)) {
    if (n < 0) {
      double v = bessel_j(static_cast<double>(-n), x);
      return n % 2 != 0 ? -v : v;
    }
    nu = static_cast<double>(n);
  }
  if (x == 0) {
    if (nu == 0) return 1.0;
    if (nu > 0) return 0.0;
    throw BesselDomainError("BesselJ: zero argument with negative order");
  }
  if (x > kAsymptoticCut) return j_asymptotic(nu, x);
  return j_series(nu, x);
}

double bessel_y(double nu, double x) {
  if (std::isnan(nu) || std::isnan(x)) return std::numeric_limits<double>::quiet_NaN();
  if (x <= 0) throw BesselDomainError("BesselY: argument must be positive");
  long long n;
  if (near_integer(nu, n)) {
    if (n < 0) {
      double v = bessel_y(static_cast<double>(-n), x);
      return n % 2 != 0 ? -v : v;
    }
    if (x > kAsymptoticCut) return y_asymptotic(static_cast<double>(n), x);
    double y0 = y0_series(x);
    if (n == 0) return y0;
    double y1 = y1_series(x);
    if (n == 1) return y1;
    double prev = y0, cur = y1;  // upward recurrence, stable for Y
    for (long long m = 1; m < n; ++m) {
      double next = (2.0 * m / x) * cur - prev;
      prev = cur;
      cur = next;
    }
    return cur;
  }
  if (x > kAsymptoticCut) return y_asymptotic(nu, x);
  double jp = j_series(nu, x);
  double jm = j_series(-nu, x);
  return (jp * std::cos(nu * kPi) - jm) / std::sin(nu * kPi);
}

}  // namespace cylsym
