#pragma once

#include <optional>
#include <vector>

#include "dst/chart.hpp"
#include "dst/surface.hpp"

namespace dst {

struct EnergyReport {
    double twistor_energy = 0.0;
    double willmore_energy = 0.0;
    /// |2W + E - 2 pi chi| when the Euler characteristic is provided
    std::optional<double> identity_defect;
    double density_min = 0.0, density_max = 0.0;
    std::optional<int> euler_char_used;
};

struct SolverConfig {
    int max_iter = 50;
    double newton_tol = 1e-10;
    double damping = 1.0;
    double initial_u = 0.0;
};

struct SolveResult {
    Field<double> u;
    int newton_iters = 0;
    bool converged = false;
    /// false when H^2 <= 1 with xi != 0 somewhere: the zeroth-order Newton
    /// coefficient loses its sign and uniqueness is not guaranteed
    bool monotone_regime = true;
    std::vector<double> residual_history;
};

/// Energy density of the twistor lift: 1 - H^2 - e^{-4u} |xi|^2.
Field<double> energy_density(const Field<double>& u, const Field<double>& H,
                             const Field<Complex>& xi);

/// E = integral of the density against dA = 2 e^{2u} dx dy, restricted by
/// the weight (1 = full chart).
double twistor_energy(const SurfaceData& data, const Field<double>& weight);
double twistor_energy(const SurfaceData& data);

/// W = integral of (K + H^2 - 1) dA with K = -2 e^{-2u} u_zzbar.
double willmore_energy(const SurfaceData& data, const Field<double>& weight);
double willmore_energy(const SurfaceData& data);

/// 2(K + H^2 - 1) + (1 - H^2 - e^{-4u}|xi|^2) - K per node: the density-level
/// form of the energy/Willmore identity, equal to the Gauss identity residual.
Field<double> pointwise_identity_residual(const SurfaceData& data);

/// indicator of the disk |z| <= radius, for truncated-chart integrals
Field<double> disk_weight(const ChartGrid& grid, double radius);

/// area of the omitted spherical cap beyond the |z| <= radius chart of the
/// umbilic sphere with parameter c
double sphere_cap_area_bound(double c, double radius);

EnergyReport energy_report(const SurfaceData& data, const Field<double>& weight,
                           std::optional<int> euler_char);

/// Damped Newton for the Gauss equation
///     2 u_zzbar = (H^2 - 1) e^{2u} - |xi|^2 e^{-2u}
/// on a periodic or Dirichlet chart (open-direction boundary nodes stay at
/// their initial values). Inner solves are matrix-free conjugate gradients
/// on the 5-point Laplacian plus the zeroth-order term.
SolveResult solve_gauss(const Field<double>& H, const Field<Complex>& xi,
                        const Field<double>& initial_u, const SolverConfig& cfg = {});
SolveResult solve_gauss(const Field<double>& H, const Field<Complex>& xi, const ChartGrid& grid,
                        const SolverConfig& cfg = {});

/// Normalized sinh-Gordon form of the Gauss equation for constant H^2 > 1,
/// xi != 0: v = 2(u - a) with e^{4a} = |xi|^2/(H^2-1) satisfies
/// v_zzbar = 2 |xi| sqrt(H^2-1) sinh v.
struct SinhGordonReport {
    double offset = 0.0;        // a
    double coefficient = 0.0;   // 2 |xi| sqrt(H^2 - 1)
    double residual_max = 0.0;  // max |v_zzbar - coefficient * sinh v| (interior)
};
SinhGordonReport sinh_gordon_report(const Field<double>& u, double H, Complex xi);

struct PipelineResult {
    ConformalImmersion surface;
    SurfaceData data;
    EnergyReport energy;
    SolveResult solve;
};

/// solve_gauss -> reconstruct_surface -> analyze -> energies, for constant
/// (H, xi) on the given chart.
PipelineResult cmc_pipeline(double H, Complex xi, const ChartGrid& grid,
                            const SolverConfig& cfg = {});

}  // namespace dst
