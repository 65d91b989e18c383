#pragma once

#include <array>
#include <stdexcept>
#include <vector>

#include "mbi/constants.hpp"

namespace mbi {

/// Dimensionless model constants. Lengths are electron Compton wavelengths,
/// energies electron rest energies, charges elementary charges.
struct ModelParams {
    double alpha = constants::kAlpha;
    double beta = constants::kBetaBorn;
};

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;
    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double c) const { return {c * x, c * y, c * z}; }
    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    Vec3 cross(const Vec3& o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    double norm() const;
};

class SingularFieldPoint : public std::domain_error {
public:
    explicit SingularFieldPoint(const char* what) : std::domain_error(what) {}
};

class OutsideConvergenceRadius : public std::domain_error {
public:
    explicit OutsideConvergenceRadius(const char* what) : std::domain_error(what) {}
};

/// Born's single-charge electrostatic potential, sign/beta-scaled tail
/// integral of 1/sqrt(1+x^4) from r/beta.
double born_potential(double r, double beta, int sign);

/// Two-point-charge Coulomb field, +1 at the origin and -1 at s1.
Vec3 coulomb_pair_field(const Vec3& s, const Vec3& s1);

/// The same field pushed through the saturation map D -> D/sqrt(1+beta^4|D|^2).
Vec3 saturated_pair_field(const Vec3& s, const Vec3& s1, double beta);

/// Two-body potential at the electron, A0(r), from the one-dimensional
/// xi-integral over the joining line. Single code path for all r.
double a0_direct(double r, double beta, double abs_tol = 1e-12);

/// Convergent small-separation series, partial sum up to (r/beta)^max_power,
/// max_power in {1, 5}. Valid for r < 2 sqrt(2) beta.
double a0_series(double r, double beta, int max_power);

/// U(zeta), the dimensionless deviation of Abar0 from the Coulomb 1/r law:
/// A0(r) = A_Born(0) + (1/r)(1 - U(beta/r)).
double u_of_zeta(double zeta);

/// Abar0(r) = A0(r) - A_Born(0) = (1/r)(1 - U(beta/r)) > 0.
/// beta = 0 gives the pure Coulomb 1/r.
double abar0(double r, double beta);

struct UZeroReport {
    bool found = false;
    double root = 0.0;          // refined by bisection when found
    double bracket_lo = 0.0;    // sign-change bracket
    double bracket_hi = 0.0;
    std::vector<std::array<double, 2>> sign_changes;  // all brackets on the scan grid
};

/// Scan U on a log grid over zeta in [1e-4, 1e4] and bisect each sign change.
/// Reports findings; does not assert uniqueness of the zero.
UZeroReport u_zero_locate();

}  // namespace mbi
