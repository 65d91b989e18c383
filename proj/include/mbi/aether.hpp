#pragma once

#include <string>
#include <vector>

#include "mbi/electrostatics.hpp"

namespace mbi {

/// Pointwise Born-Infeld constitutive maps.
/// E = [D - b^4 B x (B x D)] / sqrt(1 + b^4(|B|^2+|D|^2) + b^8 |B x D|^2),
/// H the same with B and D exchanged.
Vec3 constitutive_e(const Vec3& B, const Vec3& D, double beta);
Vec3 constitutive_h(const Vec3& B, const Vec3& D, double beta);

class CflViolation : public std::runtime_error {
public:
    explicit CflViolation(const std::string& what) : std::runtime_error(what) {}
};

/// Periodic staggered lattice. D components live on cell edges, B components
/// on cell faces (indices name the lower-left-front corner of the cell):
///   Dx(i,j,k) at (i+1/2, j,     k    )   Bx(i,j,k) at (i,     j+1/2, k+1/2)
///   Dy(i,j,k) at (i,     j+1/2, k    )   By(i,j,k) at (i+1/2, j,     k+1/2)
///   Dz(i,j,k) at (i,     j,     k+1/2)   Bz(i,j,k) at (i+1/2, j+1/2, k    )
struct FieldLattice {
    int nx = 0, ny = 0, nz = 0;
    double h = 1.0;       // spacing, Compton units
    double beta = 1.0;    // aether constant used by the evolver
    double time = 0.0;
    std::vector<double> dx, dy, dz, bx, by, bz;

    std::size_t size() const { return static_cast<std::size_t>(nx) * ny * nz; }
    std::size_t idx(int i, int j, int k) const {
        return static_cast<std::size_t>(i) + nx * (static_cast<std::size_t>(j) + ny * k);
    }
};

FieldLattice make_lattice(int nx, int ny, int nz, double h, double beta);

/// Circularly polarized null plane wave along z: D = a(cos kz, sin kz, 0),
/// B = z x D, sampled at the native staggered positions. k = 2 pi mode/(nz h).
FieldLattice make_null_plane_wave(int n, double h, double beta, double amplitude,
                                  int mode = 1, double phase = 0.0);

/// Advance one step (classic 4-stage one-step scheme; both fields co-timed).
/// Yee-staggered curls preserve both discrete divergences to roundoff.
/// Requires dt <= cfl * h; throws CflViolation otherwise.
FieldLattice mbi_step(const FieldLattice& lat, double dt, double cfl = 0.5);
void mbi_step_inplace(FieldLattice& lat, double dt, double cfl = 0.5);

struct DivergenceDiagnostics {
    double max_div_b = 0.0;
    double max_div_d = 0.0;
    double energy_proxy = 0.0;  // sum (|B|^2+|D|^2) h^3 / 8 pi, monitoring only
};

DivergenceDiagnostics divergence_diagnostics(const FieldLattice& lat);

/// Flat binary snapshot (header: dims, spacing, beta, time) + JSON sidecar.
void export_snapshot(const FieldLattice& lat, const std::string& path_base,
                     const std::string& meta_extra = "");
FieldLattice load_snapshot(const std::string& path_base);

// Frequency of the discrete circular mode: omega = (2/h) sin(k h / 2).
double lattice_mode_frequency(int n, double h, int mode);

}  // namespace mbi
