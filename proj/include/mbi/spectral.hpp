#pragma once

#include <stdexcept>
#include <vector>

#include "mbi/electrostatics.hpp"
#include "mbi/potential_table.hpp"

namespace mbi {

/// Radial bound-state problem for -1/2 u'' + [l(l+1)/2r^2 + V(r)] u = E u
/// in Compton units. The potential enters through Abar0.
struct RadialProblem {
    const RadialPotential* potential = nullptr;
    int ell = 0;
    double alpha = constants::kAlpha;
    double r_max = 0.0;  // 0: choose from a Coulomb-like estimate of the target state
    int n_grid = 0;      // 0: default resolution
};

struct Eigenpair {
    double energy = 0.0;       // rest-energy units; < 0 for bound states
    double epsilon_bar = 0.0;  // KG path only; 0 marks "not a KG solve"
    int nodes = 0;
    std::vector<double> r;  // radial grid (Compton units)
    std::vector<double> u;  // reduced wavefunction, L2-normalized
    double norm_residual = 0.0;
    bool normalized = false;
};

class NoBoundStateError : public std::runtime_error {
public:
    explicit NoBoundStateError(const std::string& what) : std::runtime_error(what) {}
};

/// Schroedinger path: V = -alpha Abar0 (the alpha^2 Abar0^2 term is dropped).
/// Shooting with outward node counting and energy bisection in (-1/2, 0).
Eigenpair solve_radial(const RadialProblem& problem, int target_nodes);

/// KG path at fixed epsilon_bar: V = -epsbar alpha Abar0 - (alpha^2/2) Abar0^2,
/// eigenvalue from the same machinery (no constraint imposed).
Eigenpair kg_solve_at(const RadialProblem& problem, double epsilon_bar,
                      int target_nodes);

/// Self-consistent KG level: bisection on epsilon_bar in (0,1) for
/// E_k(epsbar) = (epsbar^2 - 1)/2. beta = 0 uses the exact Coulomb potential.
Eigenpair kg_selfconsistent(const ModelParams& params, int ell, int target_nodes);

/// First-order beta-induced shift of the ground level:
/// deltaE0 = 4 alpha^4 int_0^inf r e^{-2 alpha r} U(beta/r) dr.
double delta_e_first_order(const ModelParams& params);

struct BetaBound {
    double allowed_fraction = 1.0;
    double K = 1.0;
    double beta_max = 0.0;  // = allowed_fraction * alpha / (16 K)
};

/// Bound on beta from 4 K alpha^3 beta <= allowed_fraction * (1/4) alpha^4.
BetaBound beta_upper_bound(double allowed_fraction, double K,
                           double alpha = constants::kAlpha);

struct ValidityRadius {
    double rel_err = 0.0;
    double certified = 0.0;       // 2 beta / rel_err, from the proven |U| < 2 zeta
    double first_crossing = 0.0;  // smallest r with |r Abar0 - 1| <= rel_err onward
};

/// Radius beyond which the pair potential is Coulombic within rel_err.
ValidityRadius validity_radius(double rel_err, double beta);

}  // namespace mbi
