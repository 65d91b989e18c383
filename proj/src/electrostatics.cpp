#include "mbi/electrostatics.hpp"

#include <algorithm>
#include <cmath>

#include "mbi/aux_function.hpp"
#include "mbi/quadrature.hpp"

namespace mbi {

namespace {
constexpr double kTwoSqrt2 = 2.8284271247461903;

double series_bracket(double rb, int max_power) {
    // bracket of A0 = -(1/2 beta) [ (r/b) - (r/b)^5 C5 + (3/4)(r/b)^9 G2 - ... ]
    double s = rb;
    if (max_power >= 5) s -= std::pow(rb, 5) * constants::kSeriesC5;
    if (max_power >= 9) s += 0.75 * std::pow(rb, 9) * constants::kSeriesG2;
    return s;
}
}  // namespace

double Vec3::norm() const { return std::sqrt(x * x + y * y + z * z); }

double born_potential(double r, double beta, int sign) {
    if (r < 0.0) throw std::domain_error("born_potential: r < 0");
    if (beta <= 0.0) throw std::domain_error("born_potential: beta <= 0");
    if (sign != 1 && sign != -1) throw std::domain_error("born_potential: sign must be +-1");
    const auto tail = integrate_to_infinity(
        [](double x) { return 1.0 / std::sqrt(1.0 + x * x * x * x); }, r / beta, 1e-13);
    return sign * tail.value / beta;
}

Vec3 coulomb_pair_field(const Vec3& s, const Vec3& s1) {
    const double rs = s.norm();
    const double rd = (s - s1).norm();
    if (rs == 0.0 || rd == 0.0)
        throw SingularFieldPoint("coulomb_pair_field: evaluation at a charge location");
    // -grad(1/|s| - 1/|s-s1|)
    return s * (1.0 / (rs * rs * rs)) - (s - s1) * (1.0 / (rd * rd * rd));
}

Vec3 saturated_pair_field(const Vec3& s, const Vec3& s1, double beta) {
    const Vec3 d = coulomb_pair_field(s, s1);
    const double b4 = beta * beta * beta * beta;
    return d * (1.0 / std::sqrt(1.0 + b4 * d.dot(d)));
}

double a0_direct(double r, double beta, double abs_tol) {
    if (r <= 0.0) throw std::domain_error("a0_direct: r <= 0");
    if (beta <= 0.0) throw std::domain_error("a0_direct: beta <= 0");
    const double rb4 = std::pow(r / beta, 4);
    // scale the inner tolerance so the returned A0 honors abs_tol
    QuadratureOptions opt;
    opt.abs_tol = std::max(3e-16, abs_tol * beta * beta / r);
    auto integrand = [rb4](double xi) {
        const double p = xi * (1.0 - xi);
        const double q = p / (1.0 - 2.0 * p);
        return 1.0 / std::sqrt(1.0 + rb4 * q * q);
    };
    const auto integ = integrate_adaptive(integrand, 0.5, 1.0, opt);
    return -(r / (beta * beta)) * integ.value;
}

double a0_series(double r, double beta, int max_power) {
    if (beta <= 0.0) throw std::domain_error("a0_series: beta <= 0");
    if (max_power != 1 && max_power != 5)
        throw std::invalid_argument("a0_series: max_power must be 1 or 5");
    const double rb = r / beta;
    if (rb >= kTwoSqrt2)
        throw OutsideConvergenceRadius("a0_series: r >= 2 sqrt(2) beta");
    return -series_bracket(rb, max_power) / (2.0 * beta);
}

double u_of_zeta(double zeta) {
    if (zeta <= 0.0) throw std::domain_error("u_of_zeta: zeta <= 0");
    if (zeta > 10.0) {
        // defining relation with the convergent series for A0 (r < 2 sqrt2 beta):
        // U = 1 - I0/zeta + 1/(2 z^2) - C5/(2 z^6) + (3/8) G2 / z^10 + O(z^-14)
        const double z1 = 1.0 / zeta;
        const double z2 = z1 * z1;
        const double z6 = z2 * z2 * z2;
        return 1.0 - constants::kBornTailIntegral * z1 + 0.5 * z2 -
               0.5 * constants::kSeriesC5 * z6 + 0.375 * constants::kSeriesG2 * z6 * z2 * z2;
    }
    const double z4 = std::pow(zeta, 4);
    auto first = [z4](double xi) { return one_minus_rsqrt1p(z4 * std::pow(xi, 4)); };
    QuadratureOptions opt;
    opt.abs_tol = 1e-14 * std::max(1.0, z4);
    double i1;
    if (zeta > 1.0) {
        // integrand turns over near xi ~ 1/zeta
        const double brk = std::min(kTwoSqrt2, 2.0 / zeta);
        i1 = integrate_adaptive(first, 0.0, brk, opt).value +
             integrate_adaptive(first, brk, kTwoSqrt2, opt).value;
    } else {
        i1 = integrate_adaptive(first, 0.0, kTwoSqrt2, opt).value;
    }
    const double yend = aux_domain_end();
    auto second = [z4, yend](double u) {
        const double y = (1.0 - u * u) * yend;
        const double ratio = z4 / std::pow(y, 4);
        return one_minus_rsqrt1p(ratio) * substituted_endpoint_integrand(u);
    };
    const double i2 = integrate_adaptive(second, 0.0, 1.0, 1e-14).value;
    return i1 + i2;
}

double abar0(double r, double beta) {
    if (r <= 0.0) throw std::domain_error("abar0: r <= 0");
    if (beta < 0.0) throw std::domain_error("abar0: beta < 0");
    if (beta == 0.0) return 1.0 / r;
    return (1.0 - u_of_zeta(beta / r)) / r;
}

UZeroReport u_zero_locate() {
    UZeroReport rep;
    const int n = 161;  // log grid over [1e-4, 1e4]
    const double lo = -4.0, hi = 4.0;
    double prev_z = std::pow(10.0, lo);
    double prev_u = u_of_zeta(prev_z);
    for (int i = 1; i < n; ++i) {
        const double z = std::pow(10.0, lo + (hi - lo) * i / (n - 1));
        const double u = u_of_zeta(z);
        if ((prev_u < 0.0) != (u < 0.0)) {
            rep.sign_changes.push_back({prev_z, z});
            if (!rep.found) {
                double a = prev_z, b = z;
                double fa = prev_u;
                for (int it = 0; it < 200 && (b - a) > 1e-12 * b; ++it) {
                    const double m = 0.5 * (a + b);
                    const double fm = u_of_zeta(m);
                    if ((fa < 0.0) == (fm < 0.0)) {
                        a = m;
                        fa = fm;
                    } else {
                        b = m;
                    }
                }
                rep.found = true;
                rep.root = 0.5 * (a + b);
                rep.bracket_lo = prev_z;
                rep.bracket_hi = z;
            }
        }
        prev_z = z;
        prev_u = u;
    }
    return rep;
}

}  // namespace mbi
