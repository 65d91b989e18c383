#pragma once

#include <vector>

namespace mbi {

// f(y) = sqrt(1/4 + y^2 - y*sqrt(1+y^2)) on [0, 1/(2 sqrt 2)].
// f(0) = 1/2, f(1/(2 sqrt 2)) = 0, f' <= -1 and decreasing on the domain.
// f' diverges like a reciprocal square root at the right endpoint; the
// u-parameterized forms below (u = sqrt(1 - 2 sqrt(2) y)) stay stable there.

/// Right end of the domain, 1/(2 sqrt 2).
double aux_domain_end();

double f_aux(double y);
double f_prime(double y);

/// Maclaurin coefficients of f'(y): orders 0..4 give (-1, 0, -3/2, -4, -75/8).
/// Throws std::invalid_argument for order > 4 (higher terms not tabulated).
std::vector<double> f_prime_taylor(int order);

/// (1 + f'(y))/y^2 evaluated without cancellation; finite at y = 0 (-> -3/2),
/// diverges ~ -8/(sqrt(3) u^2 ...) i.e. like 1/u near the right endpoint.
double one_plus_fprime_over_y2(double y);

// u-parameterization, y = (1 - u^2)/(2 sqrt 2), u in [0, 1]:
double f_aux_from_u(double u);
double one_plus_fprime_over_y2_from_u(double u);

/// (1 + f'(y))/y^2 * u/sqrt(2) with y = (1-u^2)/(2 sqrt 2): the integrand of
/// int (1+f')/y^2 dy after the endpoint substitution, finite on all of [0,1]
/// (value -8/sqrt(6) at u = 0, -3/(2 sqrt 2) at u = 1).
double substituted_endpoint_integrand(double u);

/// Stable 1 - 1/sqrt(1+x) for x >= 0 (series for small x).
double one_minus_rsqrt1p(double x);

}  // namespace mbi
