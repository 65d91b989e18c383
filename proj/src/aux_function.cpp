#include "mbi/aux_function.hpp"

#include <cmath>
#include <stdexcept>

namespace mbi {

namespace {
const double kEnd = 0.5 / std::sqrt(2.0);  // 1/(2 sqrt 2) = sqrt(2)/4
}

double aux_domain_end() { return kEnd; }

double f_aux(double y) {
    if (y < 0.0 || y > kEnd * (1.0 + 1e-12))
        throw std::domain_error("f_aux: y outside [0, 1/(2 sqrt 2)]");
    // near the right endpoint the direct formula cancels; switch variables
    if (y > 0.34) {
        double u2 = 1.0 - 2.0 * std::sqrt(2.0) * y;
        if (u2 < 0.0) u2 = 0.0;
        return f_aux_from_u(std::sqrt(u2));
    }
    const double s = std::sqrt(1.0 + y * y);
    return std::sqrt(0.25 + y * y - y * s);
}

double f_aux_from_u(double u) {
    if (u < 0.0 || u > 1.0) throw std::domain_error("f_aux_from_u: u outside [0,1]");
    const double a = u * u;
    const double S = std::sqrt(9.0 - 2.0 * a + a * a);
    // exact rewrite of f^2; no cancellation anywhere on [0,1]
    return std::sqrt(2.0 * a * (2.0 - a) / ((S + 1.0 - a) * (S + 3.0 - 3.0 * a)));
}

double f_prime(double y) {
    if (y < 0.0 || y >= kEnd)
        throw std::domain_error("f_prime: y outside [0, 1/(2 sqrt 2))");
    if (y < 1e-4) {
        // avoid the 0/0 arrangement near y = 0; series is ample here
        return -1.0 - 1.5 * y * y - 4.0 * y * y * y - 75.0 / 8.0 * y * y * y * y;
    }
    const double s = std::sqrt(1.0 + y * y);
    return (2.0 * y - s - y * y / s) / (2.0 * f_aux(y));
}

std::vector<double> f_prime_taylor(int order) {
    if (order < 0 || order > 4)
        throw std::invalid_argument("f_prime_taylor: only orders 0..4 are tabulated");
    static const double c[5] = {-1.0, 0.0, -1.5, -4.0, -75.0 / 8.0};
    return std::vector<double>(c, c + order + 1);
}

double one_plus_fprime_over_y2(double y) {
    if (y < 0.0 || y >= kEnd)
        throw std::domain_error("one_plus_fprime_over_y2: y outside domain");
    const double s = std::sqrt(1.0 + y * y);
    const double s2 = 1.0 + y * y;
    const double fa = f_aux(y);
    // (1+f')/y^2 = [4y/s - (3+4y^2)/(1+y^2)] / (2f (2f + (1+2y^2)/s - 2y))
    const double num = 4.0 * y / s - (3.0 + 4.0 * y * y) / s2;
    const double den = 2.0 * fa * (2.0 * fa + (1.0 + 2.0 * y * y) / s - 2.0 * y);
    return num / den;
}

double one_plus_fprime_over_y2_from_u(double u) {
    const double y = (1.0 - u * u) / (2.0 * std::sqrt(2.0));
    const double s = std::sqrt(1.0 + y * y);
    const double s2 = 1.0 + y * y;
    const double fa = f_aux_from_u(u);
    const double num = 4.0 * y / s - (3.0 + 4.0 * y * y) / s2;
    const double den = 2.0 * fa * (2.0 * fa + (1.0 + 2.0 * y * y) / s - 2.0 * y);
    return num / den;
}

double substituted_endpoint_integrand(double u) {
    if (u < 0.0 || u > 1.0)
        throw std::domain_error("substituted_endpoint_integrand: u outside [0,1]");
    const double a = u * u;
    const double y = (1.0 - a) / (2.0 * std::sqrt(2.0));
    const double s = std::sqrt(1.0 + y * y);
    const double s2 = 1.0 + y * y;
    const double S = std::sqrt(9.0 - 2.0 * a + a * a);
    const double fa = f_aux_from_u(u);
    // u/f stays finite as u -> 0
    const double u_over_f = std::sqrt((S + 1.0 - a) * (S + 3.0 - 3.0 * a) / (2.0 * (2.0 - a)));
    const double num = 4.0 * y / s - (3.0 + 4.0 * y * y) / s2;
    const double den = 2.0 * std::sqrt(2.0) * (2.0 * fa + (1.0 + 2.0 * y * y) / s - 2.0 * y);
    return num * u_over_f / den;
}

double one_minus_rsqrt1p(double x) {
    if (x < 0.0) throw std::domain_error("one_minus_rsqrt1p: x < 0");
    if (x < 1e-4) {
        // 1 - (1+x)^(-1/2) = x/2 - 3x^2/8 + 5x^3/16 - 35x^4/128 + O(x^5)
        return x * (0.5 + x * (-0.375 + x * (0.3125 - x * 0.2734375)));
    }
    return 1.0 - 1.0 / std::sqrt(1.0 + x);
}

}  // namespace mbi
