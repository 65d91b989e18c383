#pragma once

#include <array>
#include <complex>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "mbi/electrostatics.hpp"
#include "mbi/potential_table.hpp"
#include "mbi/spectral.hpp"

namespace mbi {

using complexd = std::complex<double>;

struct BoxGrid {
    Vec3 origin;
    double h = 1.0;
    int nx = 0, ny = 0, nz = 0;
    std::size_t size() const { return static_cast<std::size_t>(nx) * ny * nz; }
    std::size_t idx(int i, int j, int k) const {
        return static_cast<std::size_t>(i) + nx * (static_cast<std::size_t>(j) + ny * k);
    }
    Vec3 point(int i, int j, int k) const {
        return {origin.x + i * h, origin.y + j * h, origin.z + k * h};
    }
};

/// Pointwise jet of a complex wave: value, time derivatives, gradient, Laplacian.
struct WaveJet {
    complexd psi{};
    complexd dpsi_dt{};
    complexd d2psi_dt2{};
    std::array<complexd, 3> grad{};
    complexd lap{};
};

/// Analytic or eigensolver-backed wave with exact jets and its potentials.
class AnalyticWave {
public:
    virtual ~AnalyticWave() = default;
    virtual WaveJet jet(double t, const Vec3& r) const = 0;
    virtual double scalar_potential(const Vec3& r) const { return 0.0; }
    virtual Vec3 vector_potential(const Vec3&) const { return {}; }
    virtual int charge_sign() const { return -1; }
    virtual double alpha() const { return constants::kAlpha; }
};

/// Sampled wave data on a box grid. psi and dpsi_dt are required by the KG
/// functionals; the remaining arrays are optional (empty when absent).
struct WaveGrid {
    BoxGrid grid;
    double time = 0.0;
    double alpha = constants::kAlpha;
    int charge_sign = -1;
    std::vector<complexd> psi, dpsi_dt, d2psi_dt2;
    std::array<std::vector<complexd>, 3> grad;  // analytic gradients, optional
    std::vector<complexd> lap;                  // analytic Laplacian, optional
    std::vector<double> pot_a;                  // scalar potential samples
    std::array<std::vector<double>, 3> pot_avec;
    std::vector<double> pot_divavec;

    bool has_grad() const { return !grad[0].empty(); }
    bool has_lap() const { return !lap.empty(); }
};

WaveGrid sample_wave(const AnalyticWave& w, const BoxGrid& g, double t,
                     bool with_spatial_derivs = true);

class SingularVelocity : public std::runtime_error {
public:
    SingularVelocity(const std::string& what, const Vec3& where)
        : std::runtime_error(what), location(where) {}
    Vec3 location;
};

class IncompleteWaveData : public std::invalid_argument {
public:
    explicit IncompleteWaveData(const std::string& what) : std::invalid_argument(what) {}
};

struct ScalarField {
    std::vector<double> values;
    int nonpositive_count = 0;  // rho <= 0 flags
};

struct VectorField {
    std::array<std::vector<double>, 3> values;
};

/// rho = Im(conj(psi) (-d/dt - (+-) i alpha A) psi); flags rho <= 0 points.
ScalarField rho_kg(const WaveGrid& w);
/// j = Im(conj(psi) (grad - (+-) i alpha Avec) psi).
VectorField current_kg(const WaveGrid& w);

struct VelocityField {
    VectorField v;
    std::vector<unsigned char> singular;  // rho == 0 markers
    int singular_count = 0;
    double superluminal_fraction = 0.0;  // |v| >= 1, reported, never clamped
};

/// v = current/rho pointwise; singular points are marked, not clamped.
VelocityField velocity_kg(const WaveGrid& w);
/// v at one grid point; throws SingularVelocity if rho vanishes there.
Vec3 velocity_kg_at(const WaveGrid& w, int i, int j, int k);

/// Schroedinger guiding field Im(grad Psi / Psi) from samples.
VectorField velocity_schrodinger(const WaveGrid& w);

struct Trajectory {
    std::vector<double> t;
    std::vector<Vec3> r;
    std::vector<Vec3> v;
    bool truncated = false;
    std::string truncation_reason;
};

/// Classic 4th-order one-step integration of dr/dt = v(t, r).
/// The provider may throw SingularVelocity; the trajectory is then truncated
/// with a diagnostic instead of extrapolating through the node.
Trajectory integrate_trajectory(const std::function<Vec3(double, const Vec3&)>& velocity,
                                const Vec3& r0, double t0, double t1, double dt);

struct ContinuityResidual {
    std::vector<double> residual;  // at the middle slice, interior points
    double linf = 0.0;
    double l2 = 0.0;
};

/// Discrete d rho/dt + div j over >= 3 equally spaced time slices.
ContinuityResidual continuity_residual(const std::vector<WaveGrid>& slices);

struct MadelungResiduals {
    std::vector<double> hamilton_jacobi;
    std::vector<double> continuity;
    std::vector<complexd> kg;  // complex KG residual, same points
    double hj_linf = 0.0;
    double cont_linf = 0.0;
    /// max |KG - (R e^{iPhi} HJ - i e^{iPhi}/R Cont)| over the region
    double identity_defect = 0.0;
};

/// Polar split psi = rho^(1/2) e^{i Phi}: quantum Hamilton-Jacobi and
/// continuity residuals, plus the complex KG residual from the same jet.
/// Throws std::domain_error if |psi| vanishes on the region.
MadelungResiduals madelung_roundtrip(const WaveGrid& w);

/// Static gauge transformation A -> A + grad Upsilon, psi -> e^{i q Upsilon} psi
/// applied analytically; returns the max-norm change of the KG velocity field.
double gauge_check(const AnalyticWave& w, const std::function<double(const Vec3&)>& upsilon,
                   const std::function<Vec3(const Vec3&)>& grad_upsilon, const BoxGrid& g,
                   double t);

/// Phase field by line integration of Im(grad psi / psi) from the grid origin
/// (axis sweeps x, then y, then z); avoids pointwise branch cuts.
std::vector<double> unwrap_phase(const WaveGrid& w);

// ---- concrete waves ----

/// Free plane wave e^{i(k.x - omega t)}, A = 0.
class PlaneWaveKG final : public AnalyticWave {
public:
    PlaneWaveKG(const Vec3& k, double omega, double alpha_ = constants::kAlpha)
        : k_(k), omega_(omega), a_(alpha_) {}
    WaveJet jet(double t, const Vec3& r) const override;
    double alpha() const override { return a_; }

private:
    Vec3 k_;
    double omega_;
    double a_;
};

/// Natural cubic spline on an ascending abscissa grid.
class CubicSpline {
public:
    CubicSpline() = default;
    CubicSpline(std::vector<double> x, std::vector<double> y);
    double value(double x) const;
    double deriv(double x) const;
    double deriv2(double x) const;

private:
    std::vector<double> x_, y_, m_;  // m = second derivatives
    int locate(double x) const;
};

/// Stationary KG eigenstate e^{-i epsbar t} u(r)/r Y_lm (m = 0, l in {0,1}),
/// built from a spectral Eigenpair; scalar potential is Abar0.
class StationaryStateWave final : public AnalyticWave {
public:
    StationaryStateWave(const Eigenpair& ep, int ell,
                        std::shared_ptr<const RadialPotential> pot, double alpha_);
    WaveJet jet(double t, const Vec3& r) const override;
    double scalar_potential(const Vec3& r) const override;
    double alpha() const override { return a_; }
    /// L2 norm of psi_stat (1 by construction) and the rho-functional norm.
    double rho_norm() const;

private:
    CubicSpline u_;  // u vs ln r
    double eps_;
    int ell_;
    std::shared_ptr<const RadialPotential> pot_;
    double a_;
    double r_lo_, r_hi_;
    friend class KgSuperpositionWave;
    double radial_u(double r, double* du = nullptr, double* d2u = nullptr) const;
};

/// Superposition of stationary KG states sharing one potential.
class KgSuperpositionWave final : public AnalyticWave {
public:
    KgSuperpositionWave(std::vector<std::shared_ptr<const StationaryStateWave>> parts,
                        std::vector<double> weights);
    WaveJet jet(double t, const Vec3& r) const override;
    double scalar_potential(const Vec3& r) const override;
    double alpha() const override;

private:
    std::vector<std::shared_ptr<const StationaryStateWave>> parts_;
    std::vector<double> w_;
};

/// Analytic nonrelativistic Coulomb 1s + 2p_z superposition (equal weights by
/// default); exposes the Schroedinger guiding data (value/grad/lap jets).
class Coulomb1s2pSuperposition final : public AnalyticWave {
public:
    explicit Coulomb1s2pSuperposition(double alpha_ = 1.0, double w1 = 1.0, double w2 = 1.0);
    WaveJet jet(double t, const Vec3& r) const override;
    double alpha() const override { return a_; }
    /// Guiding velocity Im(grad Psi / Psi); throws SingularVelocity at nodes.
    Vec3 velocity(double t, const Vec3& r) const;
    /// div v, for density-transport checks.
    double velocity_divergence(double t, const Vec3& r) const;
    double bohr_period() const;  // 2 pi / (E_2p - E_1s)

private:
    double a_, w1_, w2_, e1_, e2_;
};

}  // namespace mbi
