#include "dst/surface.hpp"

#include <algorithm>
#include <cmath>

#include "dst/errors.hpp"

namespace dst {

namespace {

Field<CVec4> conj_field(const Field<CVec4>& f) {
    Field<CVec4> c(f.grid);
    for (std::size_t k = 0; k < f.values.size(); ++k) c.values[k] = f.values[k].conjugate();
    return c;
}

/// f_zzbar = (f_xx + f_yy)/4, real for real fields.
Field<Vec4> laplacian_quarter(const Field<Vec4>& f) {
    auto d2x = diff2_x(f);
    auto d2y = diff2_y(f);
    Field<Vec4> r(f.grid);
    for (std::size_t k = 0; k < r.values.size(); ++k)
        r.values[k] = 0.25 * (d2x.values[k] + d2y.values[k]);
    return r;
}

Field<double> laplacian_quarter(const Field<double>& u) {
    auto d2x = diff2_x(u);
    auto d2y = diff2_y(u);
    Field<double> r(u.grid);
    for (std::size_t k = 0; k < r.values.size(); ++k)
        r.values[k] = 0.25 * (d2x.values[k] + d2y.values[k]);
    return r;
}

/// f_zz = (f_xx - f_yy)/4 - (i/2) f_xy.
Field<CVec4> second_z(const Field<Vec4>& f, int order) {
    auto d2x = diff2_x(f);
    auto d2y = diff2_y(f);
    auto dxy = diff_x(diff_y(f, order), order);
    Field<CVec4> r(f.grid);
    const Complex half_i(0.0, 0.5);
    for (std::size_t k = 0; k < r.values.size(); ++k)
        r.values[k] = 0.25 * (d2x.values[k] - d2y.values[k]).cast<Complex>() -
                      half_i * dxy.values[k].cast<Complex>();
    return r;
}

void require_on_pseudosphere(const Field<Vec4>& f) {
    for (std::size_t k = 0; k < f.values.size(); ++k) {
        // relative to the Euclidean size: the quadratic form of a far-boosted
        // point cancels to ~eps * |f|^2 in doubles
        const double scale = std::max(1.0, f.values[k].squaredNorm());
        if (std::abs(minkowski_inner(f.values[k], f.values[k]) - 1.0) > 1e-10 * scale)
            throw geometry_error("immersion leaves S^3_1: |<f,f>-1| > 1e-10 at node " +
                                 std::to_string(k));
    }
}

}  // namespace

Field<double> conformality_residual(const ConformalImmersion& imm) {
    auto fz = d_dz(imm.f);
    Field<double> r(imm.grid);
    for (std::size_t k = 0; k < r.values.size(); ++k)
        r.values[k] = std::abs(complex_bilinear(fz.values[k], fz.values[k]));
    return r;
}

Field<double> conformal_factor(const ConformalImmersion& imm) {
    auto fz = d_dz(imm.f);
    Field<double> u(imm.grid);
    for (std::size_t k = 0; k < u.values.size(); ++k) {
        const Complex e2u = complex_bilinear(fz.values[k], fz.values[k].conjugate());
        if (e2u.real() <= 1e-12)
            throw geometry_error("conformal_factor: <f_z,f_zbar> <= 1e-12, not an immersion");
        if (std::abs(e2u.imag()) > 1e-8)
            throw geometry_error("conformal_factor: <f_z,f_zbar> not real, chart not conformal");
        u.values[k] = 0.5 * std::log(e2u.real());
    }
    return u;
}

Field<Vec4> unit_normal(const ConformalImmersion& imm) {
    auto fx = diff_x(imm.f);
    auto fy = diff_y(imm.f);
    Field<Vec4> n(imm.grid);
    for (std::size_t k = 0; k < n.values.size(); ++k) {
        const Vec4& a = imm.f.values[k];
        const Vec4& b = fx.values[k];
        const Vec4& c = fy.values[k];
        // Lorentzian triple cross product: <N,x> = det(a,b,c,x) for all x,
        // i.e. N = I_{3,1} * cofactor vector of the last row.
        Eigen::Matrix3d minor;
        Vec4 cof;
        for (int col = 0; col < 4; ++col) {
            int m = 0;
            for (int src = 0; src < 4; ++src) {
                if (src == col) continue;
                minor(0, m) = a(src);
                minor(1, m) = b(src);
                minor(2, m) = c(src);
                ++m;
            }
            cof(col) = ((col % 2 == 0) ? -1.0 : 1.0) * minor.determinant();
        }
        Vec4 nn = cof;
        nn(3) = -nn(3);
        const double q = minkowski_inner(nn, nn);
        const double scale = a.squaredNorm() * b.squaredNorm() * c.squaredNorm();
        if (-q <= 1e-20 * std::max(scale, 1e-300))
            throw geometry_error(q >= 0.0
                                     ? "unit_normal: orthogonal complement not timelike at node " +
                                           std::to_string(k)
                                     : "unit_normal: degenerate immersion at node " +
                                           std::to_string(k));
        nn /= std::sqrt(-q);
        if (nn(3) < 0.0) nn = -nn;
        n.values[k] = nn;
    }
    return n;
}

Field<Vec4> normal_from_structure(const ConformalImmersion& imm, const Field<double>& u,
                                  const Field<Complex>& xi) {
    auto fz = d_dz(imm.f);
    auto uz = d_dz(u);
    auto fzz = second_z(imm.f, 2);
    Field<Vec4> n(imm.grid);
    for (std::size_t k = 0; k < n.values.size(); ++k) {
        if (std::abs(xi.values[k]) < 1e-12)
            throw geometry_error("normal_from_structure: umbilic point, xi ~ 0");
        // from structure equation (ii), f_zz = 2 u_z f_z + xi n
        const CVec4 nc =
            (fzz.values[k] - 2.0 * uz.values[k] * fz.values[k]) / xi.values[k];
        n.values[k] = nc.real();
    }
    return n;
}

Field<double> mean_curvature(const ConformalImmersion& imm, const Field<Vec4>& n,
                             const Field<double>& u) {
    auto fzzb = laplacian_quarter(imm.f);
    Field<double> H(imm.grid);
    for (std::size_t k = 0; k < H.values.size(); ++k)
        H.values[k] = -std::exp(-2.0 * u.values[k]) *
                      minkowski_inner(fzzb.values[k], n.values[k]);
    return H;
}

Field<Complex> hopf_xi(const ConformalImmersion& imm, const Field<Vec4>& n) {
    auto fzz = second_z(imm.f, 2);
    Field<Complex> xi(imm.grid);
    for (std::size_t k = 0; k < xi.values.size(); ++k)
        xi.values[k] = -complex_bilinear(fzz.values[k], complexify(n.values[k]));
    return xi;
}

Field<double> gaussian_curvature(const Field<double>& u) {
    auto uzzb = laplacian_quarter(u);
    Field<double> K(u.grid);
    for (std::size_t k = 0; k < K.values.size(); ++k)
        K.values[k] = -2.0 * std::exp(-2.0 * u.values[k]) * uzzb.values[k];
    return K;
}

Field<double> gauss_residual(const Field<double>& u, const Field<double>& H,
                             const Field<Complex>& xi) {
    auto uzzb = laplacian_quarter(u);
    Field<double> r(u.grid);
    for (std::size_t k = 0; k < r.values.size(); ++k) {
        const double e2u = std::exp(2.0 * u.values[k]);
        r.values[k] = 2.0 * uzzb.values[k] - (H.values[k] * H.values[k] - 1.0) * e2u +
                      std::norm(xi.values[k]) / e2u;
    }
    return r;
}

Field<Complex> codazzi_residual(const Field<double>& u, const Field<double>& H,
                                const Field<Complex>& xi) {
    auto xizb = d_dzbar(xi);
    auto Hz = d_dz(H);
    Field<Complex> r(u.grid);
    for (std::size_t k = 0; k < r.values.size(); ++k)
        r.values[k] = xizb.values[k] - std::exp(2.0 * u.values[k]) * Hz.values[k];
    return r;
}

Field<double> gauss_identity_residual(const Field<double>& K, const Field<double>& H,
                                      const Field<Complex>& xi, const Field<double>& u) {
    Field<double> r(K.grid);
    for (std::size_t k = 0; k < r.values.size(); ++k)
        r.values[k] = K.values[k] - 1.0 + H.values[k] * H.values[k] -
                      std::norm(xi.values[k]) * std::exp(-4.0 * u.values[k]);
    return r;
}

Field<double> principal_gap(const Field<double>& u, const Field<Complex>& xi) {
    Field<double> r(u.grid);
    for (std::size_t k = 0; k < r.values.size(); ++k)
        r.values[k] = std::norm(xi.values[k]) * std::exp(-4.0 * u.values[k]);
    return r;
}

// --- generators --------------------------------------------------------------

ChartGrid sphere_grid(double radius, int n) {
    ChartGrid g;
    g.nx = g.ny = n;
    g.hx = g.hy = 2.0 * radius / (n - 1);
    g.x0 = g.y0 = -radius;
    g.chart_id = "stereographic";
    g.validate();
    return g;
}

ChartGrid cylinder_grid(double rho, int nx, int ny, double ylen) {
    const double r = std::sqrt(1.0 + rho * rho);
    ChartGrid g;
    g.nx = nx;
    g.ny = ny;
    g.hx = 2.0 * M_PI * r / nx;
    g.hy = ylen / (ny - 1);
    g.x0 = 0.0;
    g.y0 = -0.5 * ylen;
    g.periodic_x = true;
    g.chart_id = "cylinder";
    g.validate();
    return g;
}

namespace {
Eigen::Vector3d stereographic(double x, double y) {
    const double r2 = x * x + y * y;
    return Eigen::Vector3d(2.0 * x, 2.0 * y, 1.0 - r2) / (1.0 + r2);
}
}  // namespace

ConformalImmersion gen_umbilic_sphere(double c, const ChartGrid& grid) {
    if (grid.periodic_x || grid.periodic_y)
        throw format_error("gen_umbilic_sphere: stereographic chart must be open");
    const double a = std::sqrt(1.0 + c * c);
    ConformalImmersion imm{grid, Field<Vec4>::generate(grid, [&](double x, double y) {
                               const Eigen::Vector3d s = a * stereographic(x, y);
                               return Vec4(s(0), s(1), s(2), c);
                           })};
    return imm;
}

ConformalImmersion gen_hyperbolic_cylinder(double rho, const ChartGrid& grid) {
    if (!grid.periodic_x)
        throw format_error("gen_hyperbolic_cylinder: chart must be periodic in x");
    const double r = std::sqrt(1.0 + rho * rho);
    if (std::abs(grid.period_x() - 2.0 * M_PI * r) > 1e-9 * r)
        throw format_error("gen_hyperbolic_cylinder: x-period must be 2*pi*sqrt(1+rho^2)");
    ConformalImmersion imm{grid, Field<Vec4>::generate(grid, [&](double x, double y) {
                               return Vec4(r * std::cos(x / r), r * std::sin(x / r),
                                           rho * std::sinh(y / rho), rho * std::cosh(y / rho));
                           })};
    return imm;
}

SurfaceData exact_sphere_data(double c, const ChartGrid& grid) {
    const double a = std::sqrt(1.0 + c * c);
    SurfaceData d;
    d.grid = grid;
    d.f = gen_umbilic_sphere(c, grid).f;
    d.n = Field<Vec4>::generate(grid, [&](double x, double y) {
        const Eigen::Vector3d s = c * stereographic(x, y);
        return Vec4(s(0), s(1), s(2), a);
    });
    d.u = Field<double>::generate(grid, [&](double x, double y) {
        const double r2 = x * x + y * y;
        return 0.5 * std::log(2.0 * (1.0 + c * c)) - std::log(1.0 + r2);
    });
    d.H = Field<double>(grid, c / a);
    d.xi = Field<Complex>(grid);
    d.euler_char = 2;
    return d;
}

SurfaceData exact_cylinder_data(double rho, const ChartGrid& grid) {
    const double r = std::sqrt(1.0 + rho * rho);
    SurfaceData d;
    d.grid = grid;
    d.f = gen_hyperbolic_cylinder(rho, grid).f;
    d.n = Field<Vec4>::generate(grid, [&](double x, double y) {
        return Vec4(rho * std::cos(x / r), rho * std::sin(x / r), r * std::sinh(y / rho),
                    r * std::cosh(y / rho));
    });
    d.u = Field<double>(grid, 0.5 * std::log(0.5));
    d.H = Field<double>(grid, 0.5 * (rho / r + r / rho));
    d.xi = Field<Complex>(grid, Complex(0.25 * (rho / r - r / rho), 0.0));
    return d;
}

SurfaceData analyze(const ConformalImmersion& imm) {
    require_on_pseudosphere(imm.f);
    SurfaceData d;
    d.grid = imm.grid;
    d.f = imm.f;
    d.u = conformal_factor(imm);
    d.n = unit_normal(imm);
    d.H = mean_curvature(imm, d.n, d.u);
    d.xi = hopf_xi(imm, d.n);

    // Composed second-derivative chains feel the one-sided boundary stencils
    // one ring further in than single first derivatives; their statistics
    // trim two nodes at open ends to stay O(h^2).
    d.residuals.conformality = interior_stats(conformality_residual(imm), 1);
    d.residuals.gauss = interior_stats(gauss_residual(d.u, d.H, d.xi), 2);
    d.residuals.codazzi = interior_stats(codazzi_residual(d.u, d.H, d.xi), 2);
    d.residuals.gauss_identity =
        interior_stats(gauss_identity_residual(gaussian_curvature(d.u), d.H, d.xi, d.u), 2);

    // structure equation (i): f_zzbar + e^{2u} f - e^{2u} H n = 0
    auto fzzb = laplacian_quarter(imm.f);
    Field<double> defect(imm.grid);
    for (std::size_t k = 0; k < defect.values.size(); ++k) {
        const double e2u = std::exp(2.0 * d.u.values[k]);
        defect.values[k] =
            (fzzb.values[k] + e2u * imm.f.values[k] - e2u * d.H.values[k] * d.n.values[k]).norm();
    }
    d.residuals.structure_i = interior_stats(defect, 1);
    return d;
}

namespace {
void set_grid_everywhere(SurfaceData& d, const ChartGrid& g) {
    d.grid = g;
    d.f.grid = g;
    d.n.grid = g;
    d.u.grid = g;
    d.H.grid = g;
    d.xi.grid = g;
}
}  // namespace

SurfaceData perturb_H(const SurfaceData& data, double eps, PerturbMode mode) {
    SurfaceData out = data;
    for (int j = 0; j < out.grid.ny; ++j)
        for (int i = 0; i < out.grid.nx; ++i)
            out.H.at(i, j) += (mode == PerturbMode::SinX) ? eps * std::sin(out.grid.x(i)) : eps;
    if (mode == PerturbMode::SinX && eps != 0.0 && out.grid.periodic_x) {
        // sin(x) does not respect a 2*pi*r period; the perturbed data lives
        // on the chart opened in x
        ChartGrid g = out.grid;
        g.periodic_x = false;
        set_grid_everywhere(out, g);
    }
    out.cmc_known_false = (eps != 0.0);
    out.residuals.gauss = interior_stats(gauss_residual(out.u, out.H, out.xi), 2);
    out.residuals.codazzi = interior_stats(codazzi_residual(out.u, out.H, out.xi), 2);
    return out;
}

bool is_cmc(const SurfaceData& data) {
    if (data.cmc_known_false) return false;
    double lo = std::numeric_limits<double>::infinity(), hi = -lo, habs = 0.0;
    std::vector<double> cod;
    auto codazzi = codazzi_residual(data.u, data.H, data.xi);
    for_each_interior(data.grid, 1, [&](int i, int j) {
        lo = std::min(lo, data.H.at(i, j));
        hi = std::max(hi, data.H.at(i, j));
        habs = std::max(habs, std::abs(data.H.at(i, j)));
        cod.push_back(std::abs(codazzi.at(i, j)));
    });
    if (cod.empty()) return false;
    std::nth_element(cod.begin(), cod.begin() + cod.size() / 2, cod.end());
    const double median = cod[cod.size() / 2];
    return (hi - lo) <= 10.0 * median + 1e-8 * std::max(1.0, habs);
}

}  // namespace dst
