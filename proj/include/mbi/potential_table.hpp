#pragma once

#include <memory>
#include <vector>

namespace mbi {

/// Provider of the effective radial attraction Abar0(r) (Compton units).
class RadialPotential {
public:
    virtual ~RadialPotential() = default;
    virtual double abar0_at(double r) const = 0;
};

/// Pure Coulomb limit, Abar0 = 1/r.
class CoulombPotential final : public RadialPotential {
public:
    double abar0_at(double r) const override { return 1.0 / r; }
};

/// Tabulated Coulomb-Born-Infeld Abar0 for a fixed beta.
///
/// w(r) = r * Abar0(r) = 1 - U(beta/r) is stored on a log-spaced r grid
/// (default 2000 points over [1e-4 beta, 1e6 beta]) and interpolated with a
/// local cubic in t = ln r; the Coulomb part is then exact by construction.
/// Below the table the convergent series takes over, above it the leading
/// asymptotic U ~ -kUSlope * beta/r (relative error O((beta/r)^2) there).
class CbiPotentialTable final : public RadialPotential {
public:
    explicit CbiPotentialTable(double beta, int n_points = 2000,
                               double r_lo_over_beta = 1e-4,
                               double r_hi_over_beta = 1e6);
    double abar0_at(double r) const override;
    double beta() const { return beta_; }

private:
    double beta_;
    double t_lo_, t_hi_, dt_;
    std::vector<double> w_;  // r * Abar0 at the grid nodes
};

}  // namespace mbi
