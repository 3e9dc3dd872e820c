#include "dst/energy.hpp"

#include <cmath>

#include "dst/errors.hpp"
#include "dst/frames.hpp"

namespace dst {

Field<double> energy_density(const Field<double>& u, const Field<double>& H,
                             const Field<Complex>& xi) {
    Field<double> d(u.grid);
    for (std::size_t k = 0; k < d.values.size(); ++k)
        d.values[k] = 1.0 - H.values[k] * H.values[k] -
                      std::exp(-4.0 * u.values[k]) * std::norm(xi.values[k]);
    return d;
}

namespace {
Field<double> area_factor(const Field<double>& u) {
    Field<double> a(u.grid);
    for (std::size_t k = 0; k < a.values.size(); ++k)
        a.values[k] = 2.0 * std::exp(2.0 * u.values[k]);
    return a;
}
}  // namespace

double twistor_energy(const SurfaceData& data, const Field<double>& weight) {
    auto density = energy_density(data.u, data.H, data.xi);
    auto dA = area_factor(data.u);
    for (std::size_t k = 0; k < density.values.size(); ++k) density.values[k] *= dA.values[k];
    return integrate(density, weight);
}

double twistor_energy(const SurfaceData& data) {
    return twistor_energy(data, Field<double>(data.grid, 1.0));
}

double willmore_energy(const SurfaceData& data, const Field<double>& weight) {
    auto K = gaussian_curvature(data.u);
    auto dA = area_factor(data.u);
    Field<double> integrand(data.grid);
    for (std::size_t k = 0; k < integrand.values.size(); ++k)
        integrand.values[k] =
            (K.values[k] + data.H.values[k] * data.H.values[k] - 1.0) * dA.values[k];
    return integrate(integrand, weight);
}

double willmore_energy(const SurfaceData& data) {
    return willmore_energy(data, Field<double>(data.grid, 1.0));
}

Field<double> pointwise_identity_residual(const SurfaceData& data) {
    auto K = gaussian_curvature(data.u);
    auto density = energy_density(data.u, data.H, data.xi);
    Field<double> r(data.grid);
    for (std::size_t k = 0; k < r.values.size(); ++k) {
        const double w_term = K.values[k] + data.H.values[k] * data.H.values[k] - 1.0;
        r.values[k] = 2.0 * w_term + density.values[k] - K.values[k];
    }
    return r;
}

Field<double> disk_weight(const ChartGrid& grid, double radius) {
    return Field<double>::generate(grid, [radius](double x, double y) {
        return (x * x + y * y <= radius * radius) ? 1.0 : 0.0;
    });
}

double sphere_cap_area_bound(double c, double radius) {
    // chart area element 4(1+c^2)/(1+r^2)^2 integrated over |z| > radius
    return 4.0 * M_PI * (1.0 + c * c) / (1.0 + radius * radius);
}

EnergyReport energy_report(const SurfaceData& data, const Field<double>& weight,
                           std::optional<int> euler_char) {
    EnergyReport rep;
    rep.twistor_energy = twistor_energy(data, weight);
    rep.willmore_energy = willmore_energy(data, weight);
    auto density = energy_density(data.u, data.H, data.xi);
    const auto stats = interior_stats(density, 1);
    rep.density_max = stats.max;
    rep.density_min = rep.density_max;
    for_each_interior(data.grid, 1, [&](int i, int j) {
        rep.density_min = std::min(rep.density_min, density.at(i, j));
    });
    // interior_stats folds absolute values; recover the signed max
    rep.density_max = rep.density_min;
    for_each_interior(data.grid, 1, [&](int i, int j) {
        rep.density_max = std::max(rep.density_max, density.at(i, j));
    });
    if (euler_char) {
        rep.euler_char_used = euler_char;
        rep.identity_defect = std::abs(2.0 * rep.willmore_energy + rep.twistor_energy -
                                       2.0 * M_PI * *euler_char);
    }
    return rep;
}

// --- Gauss equation solver ----------------------------------------------------

namespace {

struct GaussProblem {
    const Field<double>& H;
    const Field<Complex>& xi;
    ChartGrid grid;

    bool unknown(int i, int j) const {
        const bool x_inner = grid.periodic_x || (i > 0 && i < grid.nx - 1);
        const bool y_inner = grid.periodic_y || (j > 0 && j < grid.ny - 1);
        return x_inner && y_inner;
    }

    double laplacian(const Field<double>& u, int i, int j) const {
        const int nx = grid.nx, ny = grid.ny;
        const int il = grid.periodic_x ? (i + nx - 1) % nx : i - 1;
        const int ir = grid.periodic_x ? (i + 1) % nx : i + 1;
        const int jd = grid.periodic_y ? (j + ny - 1) % ny : j - 1;
        const int ju = grid.periodic_y ? (j + 1) % ny : j + 1;
        return (u.at(ir, j) - 2.0 * u.at(i, j) + u.at(il, j)) / (grid.hx * grid.hx) +
               (u.at(i, ju) - 2.0 * u.at(i, j) + u.at(i, jd)) / (grid.hy * grid.hy);
    }

    // G(u) = 2 u_zzbar - (H^2-1) e^{2u} + |xi|^2 e^{-2u}, u_zzbar = Lap(u)/4
    Field<double> residual(const Field<double>& u) const {
        Field<double> r(grid);
        for (int j = 0; j < grid.ny; ++j)
            for (int i = 0; i < grid.nx; ++i) {
                if (!unknown(i, j)) continue;
                const double e2u = std::exp(2.0 * u.at(i, j));
                const double h2 = H.at(i, j) * H.at(i, j);
                r.at(i, j) = 0.5 * laplacian(u, i, j) - (h2 - 1.0) * e2u +
                             std::norm(xi.at(i, j)) / e2u;
            }
        return r;
    }

    double residual_max(const Field<double>& u) const {
        const auto r = residual(u);
        double m = 0.0;
        for (double v : r.values) m = std::max(m, std::abs(v));
        return m;
    }

    // Newton operator L(d) = -Lap(d)/2 + c d with
    // c = 2(H^2-1) e^{2u} + 2 |xi|^2 e^{-2u}; SPD in the monotone regime.
    Field<double> apply(const Field<double>& u, const Field<double>& d) const {
        Field<double> out(grid);
        for (int j = 0; j < grid.ny; ++j)
            for (int i = 0; i < grid.nx; ++i) {
                if (!unknown(i, j)) continue;
                const double e2u = std::exp(2.0 * u.at(i, j));
                const double h2 = H.at(i, j) * H.at(i, j);
                const double c = 2.0 * (h2 - 1.0) * e2u + 2.0 * std::norm(xi.at(i, j)) / e2u;
                out.at(i, j) = -0.5 * laplacian(d, i, j) + c * d.at(i, j);
            }
        return out;
    }

    double dot(const Field<double>& a, const Field<double>& b) const {
        double s = 0.0;
        for (int j = 0; j < grid.ny; ++j)
            for (int i = 0; i < grid.nx; ++i)
                if (unknown(i, j)) s += a.at(i, j) * b.at(i, j);
        return s;
    }

    // conjugate gradients for L d = rhs, d = 0 on Dirichlet nodes
    Field<double> solve_linear(const Field<double>& u, const Field<double>& rhs) const {
        Field<double> d(grid);
        Field<double> r = rhs;
        Field<double> p = r;
        double rr = dot(r, r);
        const double target = std::max(1e-26 * rr, 1e-32);
        const int max_cg = 20 * std::max(grid.nx, grid.ny);
        for (int it = 0; it < max_cg && rr > target; ++it) {
            const Field<double> Lp = apply(u, p);
            const double pLp = dot(p, Lp);
            if (!(pLp > 0.0)) break;  // lost definiteness (H^2 <= 1 regime)
            const double alpha = rr / pLp;
            for (std::size_t k = 0; k < d.values.size(); ++k) {
                d.values[k] += alpha * p.values[k];
                r.values[k] -= alpha * Lp.values[k];
            }
            const double rr_new = dot(r, r);
            const double beta = rr_new / rr;
            rr = rr_new;
            for (std::size_t k = 0; k < p.values.size(); ++k)
                p.values[k] = r.values[k] + beta * p.values[k];
        }
        return d;
    }
};

}  // namespace

SolveResult solve_gauss(const Field<double>& H, const Field<Complex>& xi,
                        const Field<double>& initial_u, const SolverConfig& cfg) {
    if (cfg.newton_tol <= 0.0) throw format_error("solve_gauss: newton_tol must be positive");
    const GaussProblem prob{H, xi, H.grid};

    SolveResult res;
    res.u = initial_u;
    for (std::size_t k = 0; k < H.values.size(); ++k) {
        if (H.values[k] * H.values[k] <= 1.0 && std::abs(xi.values[k]) > 0.0)
            res.monotone_regime = false;
    }

    double rmax = prob.residual_max(res.u);
    res.residual_history.push_back(rmax);
    for (int iter = 0; iter < cfg.max_iter; ++iter) {
        if (rmax < cfg.newton_tol) {
            res.converged = true;
            break;
        }
        const Field<double> rhs = prob.residual(res.u);
        const Field<double> delta = prob.solve_linear(res.u, rhs);

        double step = cfg.damping;
        Field<double> candidate = res.u;
        double best = rmax;
        for (int attempt = 0; attempt < 8; ++attempt) {
            Field<double> trial = res.u;
            for (std::size_t k = 0; k < trial.values.size(); ++k)
                trial.values[k] += step * delta.values[k];
            const double trial_res = prob.residual_max(trial);
            if (trial_res < best) {
                candidate = trial;
                best = trial_res;
                break;
            }
            step *= 0.5;
        }
        if (best >= rmax) {
            res.newton_iters = iter + 1;
            throw solver_error("solve_gauss: Newton stalled, residual " + std::to_string(rmax));
        }
        res.u = candidate;
        rmax = best;
        res.residual_history.push_back(rmax);
        res.newton_iters = iter + 1;
    }
    if (!res.converged && rmax < cfg.newton_tol) res.converged = true;
    if (!res.converged)
        throw solver_error("solve_gauss: no convergence after " + std::to_string(cfg.max_iter) +
                           " Newton steps, residual " + std::to_string(rmax));
    return res;
}

SolveResult solve_gauss(const Field<double>& H, const Field<Complex>& xi, const ChartGrid& grid,
                        const SolverConfig& cfg) {
    return solve_gauss(H, xi, Field<double>(grid, cfg.initial_u), cfg);
}

SinhGordonReport sinh_gordon_report(const Field<double>& u, double H, Complex xi) {
    if (H * H <= 1.0 || std::abs(xi) == 0.0)
        throw geometry_error("sinh_gordon_report: needs constant H^2 > 1 and xi != 0");
    SinhGordonReport rep;
    rep.offset = 0.25 * std::log(std::norm(xi) / (H * H - 1.0));
    rep.coefficient = 2.0 * std::abs(xi) * std::sqrt(H * H - 1.0);

    Field<double> v(u.grid);
    for (std::size_t k = 0; k < v.values.size(); ++k)
        v.values[k] = 2.0 * (u.values[k] - rep.offset);
    auto d2x = diff2_x(v);
    auto d2y = diff2_y(v);
    Field<double> resid(u.grid);
    for (std::size_t k = 0; k < resid.values.size(); ++k) {
        const double vzzb = 0.25 * (d2x.values[k] + d2y.values[k]);
        resid.values[k] = vzzb - rep.coefficient * std::sinh(v.values[k]);
    }
    rep.residual_max = interior_max(resid, 1);
    return rep;
}

PipelineResult cmc_pipeline(double H, Complex xi, const ChartGrid& grid,
                            const SolverConfig& cfg) {
    const Field<double> Hf(grid, H);
    const Field<Complex> xif(grid, xi);
    PipelineResult out{ConformalImmersion{}, SurfaceData{}, EnergyReport{},
                       solve_gauss(Hf, xif, grid, cfg)};
    out.surface = reconstruct_surface(out.solve.u, Hf, xif, grid.nx / 2, grid.ny / 2);
    out.data = analyze(out.surface);
    out.energy = energy_report(out.data, Field<double>(out.data.grid, 1.0), std::nullopt);
    return out;
}

}  // namespace dst
