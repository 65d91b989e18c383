#include "mbi/potential_table.hpp"

#include <cmath>
#include <stdexcept>

#include "mbi/constants.hpp"
#include "mbi/electrostatics.hpp"

namespace mbi {

CbiPotentialTable::CbiPotentialTable(double beta, int n_points,
                                     double r_lo_over_beta, double r_hi_over_beta)
    : beta_(beta) {
    if (beta <= 0.0) throw std::domain_error("CbiPotentialTable: beta <= 0");
    if (n_points < 8) throw std::invalid_argument("CbiPotentialTable: too few points");
    t_lo_ = std::log(r_lo_over_beta * beta);
    t_hi_ = std::log(r_hi_over_beta * beta);
    dt_ = (t_hi_ - t_lo_) / (n_points - 1);
    w_.resize(n_points);
    for (int i = 0; i < n_points; ++i) {
        const double r = std::exp(t_lo_ + i * dt_);
        w_[i] = 1.0 - u_of_zeta(beta_ / r);
    }
}

double CbiPotentialTable::abar0_at(double r) const {
    if (r <= 0.0) throw std::domain_error("CbiPotentialTable: r <= 0");
    const double t = std::log(r);
    if (t <= t_lo_) {
        // convergent series regime, r <= 1e-4 beta by default
        const double rb = r / beta_;
        const double rb4 = rb * rb * rb * rb;
        const double bracket =
            rb * (1.0 - rb4 * (constants::kSeriesC5 - 0.75 * rb4 * constants::kSeriesG2));
        return (constants::kBornTailIntegral - 0.5 * bracket) / beta_;
    }
    if (t >= t_hi_) {
        // leading asymptotics: U ~ -kUSlope * zeta
        return (1.0 + constants::kUSlope * beta_ / r) / r;
    }
    // local 4-point Lagrange cubic on the uniform log grid
    const int n = static_cast<int>(w_.size());
    double s = (t - t_lo_) / dt_;
    int i1 = static_cast<int>(std::floor(s));
    if (i1 < 1) i1 = 1;
    if (i1 > n - 3) i1 = n - 3;
    const double x = s - i1;  // in [0,1] away from the ends
    const double wm1 = w_[i1 - 1], w0 = w_[i1], w1 = w_[i1 + 1], w2 = w_[i1 + 2];
    const double c0 = -x * (x - 1.0) * (x - 2.0) / 6.0;
    const double c1 = (x + 1.0) * (x - 1.0) * (x - 2.0) / 2.0;
    const double c2 = -(x + 1.0) * x * (x - 2.0) / 2.0;
    const double c3 = (x + 1.0) * x * (x - 1.0) / 6.0;
    return (c0 * wm1 + c1 * w0 + c2 * w1 + c3 * w2) / r;
}

}  // namespace mbi
