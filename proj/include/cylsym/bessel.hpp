#pragma once

#include <stdexcept>

namespace cylsym {

struct BesselDomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// Bessel functions of the first and second kind for real order. Ascending
// series for |x| <= 12 (with the log series for integer-order Y), standard
// large-argument asymptotics beyond; good to ~1e-10 relative on that domain.
double bessel_j(double nu, double x);
double bessel_y(double nu, double x);  // requires x > 0

}  // namespace cylsym
