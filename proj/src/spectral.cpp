#include "mbi/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "mbi/aux_function.hpp"
#include "mbi/quadrature.hpp"

namespace mbi {

namespace {

// Internal scaling: lengths in Bohr radii (xt = alpha*r), energies in alpha^2.
// The reduced equation u'' = [l(l+1)/xt^2 + 2(Vt - Et)] u becomes, with
// x = ln(xt) and w = u/sqrt(xt),  w'' = Q(x) w,  Q = (l+1/2)^2 + 2 xt^2 (Vt - Et).
struct SolverCore {
    int n = 0;
    double h = 0.0;
    std::vector<double> xt;   // e^x on the uniform x grid
    std::vector<double> ab;   // Abar0(xt/alpha) cached
    std::vector<double> p;    // (l+1/2)^2 + 2 xt^2 Vt  (energy-independent part)
    std::vector<double> t2;   // 2 xt^2
    double lhalf_sq = 0.25;
    double alpha = 0.0;

    void build_grid(const RadialProblem& prob, int target_nodes, double q_min) {
        alpha = prob.alpha;
        const int n_eff = target_nodes + prob.ell + 1;
        double xt_max;
        if (prob.r_max > 0.0) {
            xt_max = prob.r_max * alpha;
        } else {
            xt_max = 2.0 * n_eff * n_eff / q_min + 34.0 * n_eff / q_min;
        }
        const double xt_min = 1e-7;
        n = prob.n_grid > 0 ? prob.n_grid : 40000;
        const double x_lo = std::log(xt_min), x_hi = std::log(xt_max);
        h = (x_hi - x_lo) / (n - 1);
        xt.resize(n);
        ab.resize(n);
        t2.resize(n);
        for (int i = 0; i < n; ++i) {
            xt[i] = std::exp(x_lo + i * h);
            ab[i] = prob.potential->abar0_at(xt[i] / alpha);
            t2[i] = 2.0 * xt[i] * xt[i];
        }
        const double lh = prob.ell + 0.5;
        lhalf_sq = lh * lh;
    }

    // Schroedinger: Vt = -ab/alpha. KG at epsbar: Vt = -epsbar*ab/alpha - ab^2/2.
    void build_p(double epsbar) {
        p.resize(n);
        if (epsbar < 0.0) {
            for (int i = 0; i < n; ++i) p[i] = lhalf_sq - t2[i] * (ab[i] / alpha);
        } else {
            for (int i = 0; i < n; ++i)
                p[i] = lhalf_sq - t2[i] * (epsbar * ab[i] / alpha + 0.5 * ab[i] * ab[i]);
        }
    }

    int ell_for_init = 0;

    // Outward Numerov sweep; returns the node count of the regular solution.
    int node_count(double et) const {
        const double h2_12 = h * h / 12.0;
        const double g = std::exp((ell_for_init + 0.5) * h);
        double q0 = p[0] - t2[0] * et;
        double q1 = p[1] - t2[1] * et;
        double w0 = 1e-20, w1 = 1e-20 * g;
        int nodes = 0;
        for (int i = 2; i < n; ++i) {
            const double q2 = p[i] - t2[i] * et;
            double w2 = (2.0 * w1 * (1.0 + 5.0 * h2_12 * q1) - w0 * (1.0 - h2_12 * q0)) /
                        (1.0 - h2_12 * q2);
            if (w2 * w1 < 0.0) ++nodes;
            const double aw = std::abs(w2);
            if (aw > 1e140) {
                w1 /= 1e140;
                w2 /= 1e140;
            }
            w0 = w1;
            w1 = w2;
            q0 = q1;
            q1 = q2;
        }
        return nodes;
    }

    // Full outward solution (renormalization-free caller must tolerate scale).
    void sweep_store(double et, std::vector<double>& w, bool inward) const {
        const double h2_12 = h * h / 12.0;
        w.assign(n, 0.0);
        if (!inward) {
            const double g = std::exp((ell_for_init + 0.5) * h);
            w[0] = 1e-20;
            w[1] = w[0] * g;
            for (int i = 2; i < n; ++i) {
                const double q2 = p[i] - t2[i] * et;
                const double q1 = p[i - 1] - t2[i - 1] * et;
                const double q0 = p[i - 2] - t2[i - 2] * et;
                w[i] = (2.0 * w[i - 1] * (1.0 + 5.0 * h2_12 * q1) -
                        w[i - 2] * (1.0 - h2_12 * q0)) /
                       (1.0 - h2_12 * q2);
                if (std::abs(w[i]) > 1e140) {
                    for (int j = 0; j <= i; ++j) w[j] /= 1e140;
                }
            }
        } else {
            const double qn = p[n - 1] - t2[n - 1] * et;
            const double kap = std::sqrt(std::max(qn, 1e-12));
            w[n - 1] = 1e-140;
            w[n - 2] = w[n - 1] * std::exp(kap * h);
            for (int i = n - 3; i >= 0; --i) {
                const double q2 = p[i] - t2[i] * et;
                const double q1 = p[i + 1] - t2[i + 1] * et;
                const double q0 = p[i + 2] - t2[i + 2] * et;
                w[i] = (2.0 * w[i + 1] * (1.0 + 5.0 * h2_12 * q1) -
                        w[i + 2] * (1.0 - h2_12 * q0)) /
                       (1.0 - h2_12 * q2);
                if (std::abs(w[i]) > 1e140) {
                    for (int j = i; j < n; ++j) w[j] /= 1e140;
                }
            }
        }
    }

    int outermost_allowed(double et) const {
        for (int i = n - 1; i >= 0; --i)
            if (p[i] - t2[i] * et < 0.0) return i;
        return -1;
    }
};

// Locate the node-count jump target -> target+1 by bisection. The jump energy
// is the grid eigenvalue with far Dirichlet data; the residual tail bias is
// O(exp(-2 kappa (x_max - x_turn))), far below the discretization error.
double bisect_eigenvalue(const SolverCore& core, int target_nodes, double et_lo,
                         double et_hi) {
    int c_lo = core.node_count(et_lo);
    int c_hi = core.node_count(et_hi);
    if (c_lo > target_nodes)
        throw NoBoundStateError("solve_radial: node count at window bottom exceeds target");
    if (c_hi <= target_nodes)
        throw NoBoundStateError("solve_radial: no node-count crossing in energy window");
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (et_lo + et_hi);
        if (mid <= et_lo || mid >= et_hi) break;
        if (core.node_count(mid) <= target_nodes)
            et_lo = mid;
        else
            et_hi = mid;
    }
    return 0.5 * (et_lo + et_hi);
}

Eigenpair assemble(const SolverCore& core, double et, double epsbar, double alpha) {
    Eigenpair ep;
    const int n = core.n;
    std::vector<double> wout, win;
    core.sweep_store(et, wout, false);
    core.sweep_store(et, win, true);
    int m = core.outermost_allowed(et);
    if (m < 2 || m > n - 3) m = std::max(2, std::min(n - 3, n / 2));
    double scale = (win[m] != 0.0) ? wout[m] / win[m] : 1.0;

    std::vector<double> w(n);
    for (int i = 0; i <= m; ++i) w[i] = wout[i];
    for (int i = m + 1; i < n; ++i) w[i] = win[i] * scale;

    // u(r) = sqrt(alpha * xt) * w;  int u^2 dr = int w^2 xt^2 dx
    ep.r.resize(n);
    ep.u.resize(n);
    double norm_simpson = 0.0;
    for (int i = 0; i < n; ++i) {
        const double f = w[i] * w[i] * core.xt[i] * core.xt[i];
        const double cw = (i == 0 || i == n - 1) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        norm_simpson += cw * f;
    }
    norm_simpson *= core.h / 3.0;
    const double inv = 1.0 / std::sqrt(norm_simpson);
    double norm_trapz = 0.0;
    for (int i = 0; i < n; ++i) {
        ep.r[i] = core.xt[i] / alpha;
        ep.u[i] = std::sqrt(alpha * core.xt[i]) * w[i] * inv;
        const double f = w[i] * w[i] * core.xt[i] * core.xt[i] * inv * inv;
        norm_trapz += (i == 0 || i == n - 1) ? 0.5 * f : f;
    }
    norm_trapz *= core.h;
    ep.norm_residual = std::abs(norm_trapz - 1.0);
    ep.normalized = true;

    int nodes = 0;
    for (int i = 2; i < n - 1; ++i)
        if (ep.u[i] * ep.u[i - 1] < 0.0) ++nodes;
    ep.nodes = nodes;
    ep.energy = et * alpha * alpha;
    ep.epsilon_bar = epsbar > 0.0 ? epsbar : 0.0;
    return ep;
}

Eigenpair solve_mode(const RadialProblem& problem, double epsbar, int target_nodes,
                     double q_min) {
    if (problem.potential == nullptr)
        throw std::invalid_argument("solve_radial: null potential");
    if (target_nodes < 0) throw std::invalid_argument("solve_radial: target_nodes < 0");
    SolverCore core;
    core.ell_for_init = problem.ell;
    core.build_grid(problem, target_nodes, q_min);
    core.build_p(epsbar);
    const double a2 = problem.alpha * problem.alpha;
    // spec window (-1/2, 0) in rest-energy units
    const double et_lo = -0.5 / a2;
    const double et_hi = -1e-10;
    const double et = bisect_eigenvalue(core, target_nodes, et_lo, et_hi);
    return assemble(core, et, epsbar, problem.alpha);
}

}  // namespace

Eigenpair solve_radial(const RadialProblem& problem, int target_nodes) {
    return solve_mode(problem, -1.0, target_nodes, 1.0);
}

Eigenpair kg_solve_at(const RadialProblem& problem, double epsilon_bar,
                      int target_nodes) {
    if (epsilon_bar <= 0.0 || epsilon_bar >= 1.0)
        throw std::invalid_argument("kg_solve_at: epsilon_bar outside (0,1)");
    return solve_mode(problem, epsilon_bar, target_nodes, std::min(epsilon_bar, 1.0));
}

Eigenpair kg_selfconsistent(const ModelParams& params, int ell, int target_nodes) {
    if (params.alpha <= 0.0) throw std::invalid_argument("kg_selfconsistent: alpha <= 0");
    if (params.beta < 0.0) throw std::invalid_argument("kg_selfconsistent: beta < 0");

    CoulombPotential coulomb;
    std::unique_ptr<CbiPotentialTable> table;
    RadialProblem prob;
    prob.ell = ell;
    prob.alpha = params.alpha;
    if (params.beta == 0.0) {
        prob.potential = &coulomb;
    } else {
        table = std::make_unique<CbiPotentialTable>(params.beta);
        prob.potential = table.get();
    }

    // One grid/cache for the whole epsilon_bar bisection; sized for the
    // smallest epsbar probed (Coulomb coupling q = epsbar).
    double eb_lo = 0.5, eb_hi = 1.0 - 1e-14;
    SolverCore core;
    core.ell_for_init = ell;
    core.build_grid(prob, target_nodes, eb_lo);
    const double a2 = params.alpha * params.alpha;
    const double et_lo = -0.5 / a2, et_hi = -1e-10;

    auto crossing_gap = [&](double eb) {
        core.build_p(eb);
        const double et = bisect_eigenvalue(core, target_nodes, et_lo, et_hi);
        // E_k(eb) - (eb^2-1)/2 in rest-energy units
        return et * a2 - 0.5 * (eb * eb - 1.0);
    };

    double g_lo = crossing_gap(eb_lo);
    double g_hi = crossing_gap(eb_hi);
    if (g_lo <= 0.0 || g_hi >= 0.0)
        throw NoBoundStateError("kg_selfconsistent: no crossing in (0,1)");
    double eb = 0.5 * (eb_lo + eb_hi);
    for (int it = 0; it < 120; ++it) {
        eb = 0.5 * (eb_lo + eb_hi);
        if (eb <= eb_lo || eb >= eb_hi) break;
        const double g = crossing_gap(eb);
        if (g > 0.0)
            eb_lo = eb;
        else
            eb_hi = eb;
    }
    core.build_p(eb);
    const double et = bisect_eigenvalue(core, target_nodes, et_lo, et_hi);
    Eigenpair ep = assemble(core, et, eb, params.alpha);
    return ep;
}

double delta_e_first_order(const ModelParams& params) {
    if (params.beta > 1.0)
        throw std::domain_error("delta_e_first_order: beta > 1 outside the bootstrap regime");
    if (params.beta == 0.0) return 0.0;
    const double a = params.alpha;
    const double ab = a * params.beta;
    auto integrand = [ab](double t) {
        if (t <= 0.0) return 0.0;
        return t * std::exp(-2.0 * t) * u_of_zeta(ab / t);
    };
    // split at the U sign structure scale and the exponential scale
    QuadratureOptions opt;
    opt.abs_tol = 1e-10 * std::max(1e-8, ab);
    double total = integrate_adaptive(integrand, 0.0, 1.0, opt).value;
    total += integrate_to_infinity(integrand, 1.0, opt).value;
    return 4.0 * a * a * total;
}

BetaBound beta_upper_bound(double allowed_fraction, double K, double alpha) {
    if (allowed_fraction <= 0.0 || allowed_fraction > 1.0)
        throw std::invalid_argument("beta_upper_bound: allowed_fraction outside (0,1]");
    if (K < 1.0) throw std::invalid_argument("beta_upper_bound: K < 1");
    BetaBound b;
    b.allowed_fraction = allowed_fraction;
    b.K = K;
    b.beta_max = allowed_fraction * alpha / (16.0 * K);
    return b;
}

ValidityRadius validity_radius(double rel_err, double beta) {
    if (rel_err <= 0.0 || rel_err >= 1.0)
        throw std::invalid_argument("validity_radius: rel_err outside (0,1)");
    if (beta <= 0.0) throw std::invalid_argument("validity_radius: beta <= 0");
    ValidityRadius vr;
    vr.rel_err = rel_err;
    vr.certified = 2.0 * beta / rel_err;  // |U(zeta)| < 2 zeta envelope

    auto dev = [beta](double r) { return std::abs(r * abar0(r, beta) - 1.0); };

    // walk down a log grid from the certified radius until the deviation
    // first exceeds rel_err, then refine the crossing by bisection
    const double step = std::pow(10.0, 1.0 / 40.0);
    double r_ok = vr.certified;
    double r_bad = 0.0;
    double r = r_ok;
    for (int i = 0; i < 400; ++i) {
        r /= step;
        if (dev(r) > rel_err) {
            r_bad = r;
            break;
        }
        r_ok = r;
    }
    if (r_bad == 0.0) {
        vr.first_crossing = 0.0;  // within rel_err over the whole scanned range
        return vr;
    }
    double lo = r_bad, hi = r_ok;
    for (int it = 0; it < 100 && (hi - lo) > 1e-10 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (dev(mid) > rel_err)
            lo = mid;
        else
            hi = mid;
    }
    vr.first_crossing = 0.5 * (lo + hi);
    return vr;
}

}  // namespace mbi
