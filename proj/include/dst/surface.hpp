#pragma once

#include <optional>
#include <string>

#include "dst/chart.hpp"
#include "dst/lorentz.hpp"

namespace dst {

/// Conformal spacelike immersion into the unit pseudosphere S^3_1: per-node
/// position f with <f,f> = 1 and <f_z,f_z>^c = 0 up to discretization.
struct ConformalImmersion {
    ChartGrid grid;
    Field<Vec4> f;
};

struct ResidualSummary {
    FieldStats conformality;
    FieldStats gauss;
    FieldStats codazzi;
    FieldStats structure_i;       // f_zzbar + e^{2u} f - e^{2u} H n
    FieldStats gauss_identity;    // K - (1 - H^2 + |xi|^2 e^{-4u})
};

/// Everything the structure equations consume: conformal factor u, mean
/// curvature H, Hopf coefficient xi (q = xi dz^2), future unit normal n,
/// plus the immersion itself.
struct SurfaceData {
    ChartGrid grid;
    Field<Vec4> f;
    Field<Vec4> n;
    Field<double> u;
    Field<double> H;
    Field<Complex> xi;
    std::optional<int> euler_char;
    bool cmc_known_false = false;
    ResidualSummary residuals;
};

// --- pointwise residuals and curvature fields -------------------------------

/// |<f_z, f_z>^c| per node; near zero iff the chart is conformal.
Field<double> conformality_residual(const ConformalImmersion& imm);

/// u with e^{2u} = <f_z, f_zbar>^c. Fails when the pairing is ~0 (not an
/// immersion) or picks up an imaginary part above 1e-8.
Field<double> conformal_factor(const ConformalImmersion& imm);

/// The future-pointing unit timelike normal, from the orthogonality system
/// <n,f> = <n,f_x> = <n,f_y> = 0 solved by a Lorentzian triple cross
/// product. The structure-equation formula n = (2 u_z f_z - f_zz)/xi is
/// kept separately (normal_from_structure) since it fails at umbilics.
Field<Vec4> unit_normal(const ConformalImmersion& imm);

/// Cross-check route on umbilic-free data only.
Field<Vec4> normal_from_structure(const ConformalImmersion& imm, const Field<double>& u,
                                  const Field<Complex>& xi);

/// H = -e^{-2u} <f_zzbar, n>.
Field<double> mean_curvature(const ConformalImmersion& imm, const Field<Vec4>& n,
                             const Field<double>& u);

/// xi = -<f_zz, n>^c.
Field<Complex> hopf_xi(const ConformalImmersion& imm, const Field<Vec4>& n);

/// K = -2 e^{-2u} u_zzbar.
Field<double> gaussian_curvature(const Field<double>& u);

/// Gauss residual 2 u_zzbar - (H^2-1) e^{2u} + |xi|^2 e^{-2u}.
Field<double> gauss_residual(const Field<double>& u, const Field<double>& H,
                             const Field<Complex>& xi);

/// Codazzi residual xi_zbar - e^{2u} H_z.
Field<Complex> codazzi_residual(const Field<double>& u, const Field<double>& H,
                                const Field<Complex>& xi);

/// K - (1 - H^2 + |xi|^2 e^{-4u}).
Field<double> gauss_identity_residual(const Field<double>& K, const Field<double>& H,
                                      const Field<Complex>& xi, const Field<double>& u);

/// |xi|^2 e^{-4u} = (lambda1 - lambda2)^2 / 4.
Field<double> principal_gap(const Field<double>& u, const Field<Complex>& xi);

// --- generators --------------------------------------------------------------

/// Grid helpers for the standard charts.
ChartGrid sphere_grid(double radius, int n);
ChartGrid cylinder_grid(double rho, int nx, int ny, double ylen);

/// Totally umbilic CMC sphere: f = (sqrt(1+c^2) sigma(z), c) on a truncated
/// stereographic chart. H = c/sqrt(1+c^2), xi = 0, K = 1/(1+c^2).
ConformalImmersion gen_umbilic_sphere(double c, const ChartGrid& grid);

/// Umbilic-free flat CMC cylinder, periodic in x with period 2 pi r,
/// r = sqrt(1+rho^2):
/// f = (r cos(x/r), r sin(x/r), rho sinh(y/rho), rho cosh(y/rho)).
/// e^{2u} = 1/2, H = (rho/r + r/rho)/2, xi = (rho/r - r/rho)/4, K = 0.
ConformalImmersion gen_hyperbolic_cylinder(double rho, const ChartGrid& grid);

/// Closed-form fields of the generators, for exact chart output.
SurfaceData exact_sphere_data(double c, const ChartGrid& grid);
SurfaceData exact_cylinder_data(double rho, const ChartGrid& grid);

// --- analysis ----------------------------------------------------------------

/// Bundle (u, n, H, xi) from an immersion and attach the residual summary.
/// Second-order stencils throughout; statistics trim one node at open ends.
SurfaceData analyze(const ConformalImmersion& imm);

/// Negative-test factory: H -> H + eps*mode, leaving u and xi untouched.
/// Breaks Codazzi (and Gauss) on purpose; the result is flagged non-CMC.
enum class PerturbMode { SinX, Constant };
SurfaceData perturb_H(const SurfaceData& data, double eps, PerturbMode mode = PerturbMode::SinX);

/// Discretization-aware constancy test for H: interior (max-min) against
/// 10x the median Codazzi residual plus a rounding floor.
bool is_cmc(const SurfaceData& data);

}  // namespace dst
