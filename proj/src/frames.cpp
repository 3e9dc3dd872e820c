#include "dst/frames.hpp"

#include <cmath>

#include "dst/errors.hpp"

namespace dst {

namespace {
constexpr double inv_sqrt2 = 0.70710678118654752440;
const Complex imag_unit(0.0, 1.0);
}  // namespace

AdaptedFrameField adapted_frame(const Field<Vec4>& f, const Field<Vec4>& n,
                                const Field<double>& u) {
    auto fx = diff_x(f);
    auto fy = diff_y(f);
    AdaptedFrameField out{f.grid, Field<Mat4>(f.grid)};
    for (std::size_t k = 0; k < f.values.size(); ++k) {
        const double scale = 1.0 / (std::sqrt(2.0) * std::exp(u.values[k]));
        Mat4 F;
        F.col(0) = f.values[k];
        F.col(1) = scale * fx.values[k];
        F.col(2) = scale * fy.values[k];
        F.col(3) = n.values[k];
        out.F.values[k] = lorentz_orthonormalize(F);
    }
    return out;
}

ConnectionForm analytic_connection(const Field<double>& u, const Field<double>& H,
                                   const Field<Complex>& xi) {
    auto uz = d_dz(u);
    ConnectionForm cf{u.grid, Field<CMat4>(u.grid), Field<CMat4>(u.grid)};
    for (std::size_t k = 0; k < u.values.size(); ++k) {
        const double eu = std::exp(u.values[k]);
        const double emu = 1.0 / eu;
        const Complex plus = (emu * xi.values[k] + eu * H.values[k]) * inv_sqrt2;
        const Complex minus = (emu * xi.values[k] - eu * H.values[k]) * inv_sqrt2;
        const Complex c = eu * inv_sqrt2;
        CMat4 A = CMat4::Zero();
        A(0, 1) = -c;
        A(0, 2) = imag_unit * c;
        A(1, 0) = c;
        A(2, 0) = -imag_unit * c;
        A(1, 2) = imag_unit * uz.values[k];
        A(2, 1) = -imag_unit * uz.values[k];
        A(1, 3) = plus;
        A(3, 1) = plus;
        A(2, 3) = imag_unit * minus;
        A(3, 2) = imag_unit * minus;
        cf.A.values[k] = A;
        cf.B.values[k] = A.conjugate();
    }
    return cf;
}

ConnectionForm numeric_connection(const AdaptedFrameField& frame) {
    auto Fz = d_dz(frame.F);
    ConnectionForm cf{frame.grid, Field<CMat4>(frame.grid), Field<CMat4>(frame.grid)};
    for (std::size_t k = 0; k < frame.F.values.size(); ++k) {
        const CMat4 Finv = lorentz_inverse(frame.F.values[k]).cast<Complex>();
        cf.A.values[k] = Finv * Fz.values[k];
        cf.B.values[k] = cf.A.values[k].conjugate();  // frame is real
    }
    return cf;
}

Field<CMat4> harmonicity_residual(const ConnectionForm& cf) {
    Field<CMat4> Ap(cf.grid);
    for (std::size_t k = 0; k < Ap.values.size(); ++k) Ap.values[k] = p_part(cf.A.values[k]);
    auto dAp = d_dzbar(Ap);
    Field<CMat4> r(cf.grid);
    for (std::size_t k = 0; k < r.values.size(); ++k)
        r.values[k] = dAp.values[k] + lie_bracket(k_part(cf.B.values[k]), Ap.values[k]);
    return r;
}

Field<double> harmonicity_norm(const Field<CMat4>& residual) {
    Field<double> n(residual.grid);
    for (std::size_t k = 0; k < n.values.size(); ++k) {
        const CMat4& r = residual.values[k];
        const Complex s1 = (r(1, 3) + r(3, 1)) * inv_sqrt2;
        const Complex s2 = (r(2, 3) + r(3, 2)) * inv_sqrt2 / imag_unit;
        n.values[k] = std::abs(s1) + std::abs(s2);
    }
    return n;
}

Field<double> structural_residual(const ConnectionForm& cf) {
    Field<double> r(cf.grid);
    for (std::size_t k = 0; k < r.values.size(); ++k) {
        const CMat4 Ap = p_part(cf.A.values[k]);
        const CMat4 Bp = p_part(cf.B.values[k]);
        r.values[k] = p_part(lie_bracket(Ap, Bp)).norm();
    }
    return r;
}

ConnectionForm lambda_connection(const ConnectionForm& cf, Complex lambda) {
    if (std::abs(std::abs(lambda) - 1.0) > 1e-12)
        throw format_error("lambda_connection: |lambda| must be 1");
    ConnectionForm out{cf.grid, Field<CMat4>(cf.grid), Field<CMat4>(cf.grid), lambda};
    const Complex inv = 1.0 / lambda;
    for (std::size_t k = 0; k < cf.A.values.size(); ++k) {
        out.A.values[k] = inv * p_part(cf.A.values[k]) + k_part(cf.A.values[k]);
        out.B.values[k] = lambda * p_part(cf.B.values[k]) + k_part(cf.B.values[k]);
    }
    return out;
}

Field<CMat4> zcc_residual(const ConnectionForm& cf) {
    auto dB = d_dz(cf.B);
    auto dA = d_dzbar(cf.A);
    Field<CMat4> r(cf.grid);
    for (std::size_t k = 0; k < r.values.size(); ++k)
        r.values[k] = dB.values[k] - dA.values[k] + lie_bracket(cf.A.values[k], cf.B.values[k]);
    return r;
}

Field<double> max_entry(const Field<CMat4>& m) {
    Field<double> r(m.grid);
    for (std::size_t k = 0; k < m.values.size(); ++k)
        r.values[k] = m.values[k].cwiseAbs().maxCoeff();
    return r;
}

namespace {

Mat4 rk4_step(const Mat4& F, double s, const Mat4& Ma, const Mat4& Mm, const Mat4& Mb) {
    const Mat4 k1 = F * Ma;
    const Mat4 k2 = (F + 0.5 * s * k1) * Mm;
    const Mat4 k3 = (F + 0.5 * s * k2) * Mm;
    const Mat4 k4 = (F + s * k3) * Mb;
    return lorentz_orthonormalize(F + (s / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
}

struct MarchData {
    Field<Mat4> Mx, My;  // dF/dx = F Mx, dF/dy = F My
};

MarchData march_matrices(const ConnectionForm& cf) {
    MarchData m{Field<Mat4>(cf.grid), Field<Mat4>(cf.grid)};
    for (std::size_t k = 0; k < cf.A.values.size(); ++k) {
        // A + B and i(A - B) are real whenever B = conj(A)
        m.Mx.values[k] = (cf.A.values[k] + cf.B.values[k]).real();
        m.My.values[k] = (imag_unit * (cf.A.values[k] - cf.B.values[k])).real();
    }
    return m;
}

void march_row(Field<Mat4>& F, const Field<Mat4>& M, int j, int from_i, double h) {
    const int nx = F.grid.nx;
    for (int i = from_i + 1; i < nx; ++i) {
        const Mat4& Ma = M.at(i - 1, j);
        const Mat4& Mb = M.at(i, j);
        F.at(i, j) = rk4_step(F.at(i - 1, j), h, Ma, 0.5 * (Ma + Mb), Mb);
    }
    for (int i = from_i - 1; i >= 0; --i) {
        const Mat4& Ma = M.at(i + 1, j);
        const Mat4& Mb = M.at(i, j);
        F.at(i, j) = rk4_step(F.at(i + 1, j), -h, Ma, 0.5 * (Ma + Mb), Mb);
    }
}

void march_col(Field<Mat4>& F, const Field<Mat4>& M, int i, int from_j, double h) {
    const int ny = F.grid.ny;
    for (int j = from_j + 1; j < ny; ++j) {
        const Mat4& Ma = M.at(i, j - 1);
        const Mat4& Mb = M.at(i, j);
        F.at(i, j) = rk4_step(F.at(i, j - 1), h, Ma, 0.5 * (Ma + Mb), Mb);
    }
    for (int j = from_j - 1; j >= 0; --j) {
        const Mat4& Ma = M.at(i, j + 1);
        const Mat4& Mb = M.at(i, j);
        F.at(i, j) = rk4_step(F.at(i, j + 1), -h, Ma, 0.5 * (Ma + Mb), Mb);
    }
}

Field<Mat4> integrate_x_first(const MarchData& m, const ChartGrid& g, int bi, int bj,
                              const Mat4& base) {
    Field<Mat4> F(g);
    F.at(bi, bj) = base;
    march_row(F, m.Mx, bj, bi, g.hx);
    for (int i = 0; i < g.nx; ++i) march_col(F, m.My, i, bj, g.hy);
    return F;
}

Field<Mat4> integrate_y_first(const MarchData& m, const ChartGrid& g, int bi, int bj,
                              const Mat4& base) {
    Field<Mat4> F(g);
    F.at(bi, bj) = base;
    march_col(F, m.My, bi, bj, g.hy);
    for (int j = 0; j < g.ny; ++j) march_row(F, m.Mx, j, bi, g.hx);
    return F;
}

}  // namespace

ExtendedFrameField integrate_frame(const ConnectionForm& cf, int base_i, int base_j,
                                   const Mat4& base_frame) {
    const ChartGrid& g = cf.grid;
    if (base_i < 0 || base_i >= g.nx || base_j < 0 || base_j >= g.ny)
        throw format_error("integrate_frame: base node outside the grid");
    const MarchData m = march_matrices(cf);

    ExtendedFrameField out;
    out.grid = g;
    out.lambda = cf.lambda;
    out.base_i = base_i;
    out.base_j = base_j;
    out.F = integrate_x_first(m, g, base_i, base_j, base_frame);

    // Transposed path order as a flatness diagnostic. The deviation is
    // measured away from open ends: the y-first order marches along boundary
    // rows whose connection entries carry one-sided stencil noise, which
    // would mask the curvature signal.
    const Field<Mat4> Fy = integrate_y_first(m, g, base_i, base_j, base_frame);
    double dev = 0.0;
    for_each_interior(g, 3, [&](int i, int j) {
        dev = std::max(dev, (out.F.at(i, j) - Fy.at(i, j)).norm());
    });
    out.path_dependence = dev;

    if (g.periodic_x) {
        const Mat4& Ma = m.Mx.at(g.nx - 1, base_j);
        const Mat4 Mm = midpoint(m.Mx, g.nx - 1, base_j, Direction::X);
        const Mat4& Mb = m.Mx.at(0, base_j);
        const Mat4 wrapped = rk4_step(out.F.at(g.nx - 1, base_j), g.hx, Ma, Mm, Mb);
        out.monodromy_x =
            (lorentz_inverse(out.F.at(0, base_j)) * wrapped - Mat4::Identity()).norm();
    }
    if (g.periodic_y) {
        const Mat4& Ma = m.My.at(base_i, g.ny - 1);
        const Mat4 Mm = midpoint(m.My, base_i, g.ny - 1, Direction::Y);
        const Mat4& Mb = m.My.at(base_i, 0);
        const Mat4 wrapped = rk4_step(out.F.at(base_i, g.ny - 1), g.hy, Ma, Mm, Mb);
        out.monodromy_y =
            (lorentz_inverse(out.F.at(base_i, 0)) * wrapped - Mat4::Identity()).norm();
    }
    return out;
}

SurfaceData associated_family(const SurfaceData& data, Complex lambda) {
    if (std::abs(std::abs(lambda) - 1.0) > 1e-12)
        throw format_error("associated_family: |lambda| must be 1");
    if (!is_cmc(data))
        throw solver_error("associated_family: input surface is not CMC, the twisted "
                           "connection would not be flat");

    const ConnectionForm cf = analytic_connection(data.u, data.H, data.xi);
    const ConnectionForm twisted = lambda_connection(cf, lambda);
    const int bi = data.grid.nx / 2, bj = data.grid.ny / 2;
    const ExtendedFrameField ext = integrate_frame(twisted, bi, bj);

    const ChartGrid out_grid = data.grid.open_copy();
    Field<Vec4> f(out_grid), n(out_grid);
    for (std::size_t k = 0; k < ext.F.values.size(); ++k) {
        f.values[k] = ext.F.values[k].col(0);
        n.values[k] = ext.F.values[k].col(3);
        if (n.values[k](3) <= 0.0)
            throw geometry_error("associated_family: deformed normal not future-pointing");
    }
    SurfaceData out = analyze(ConformalImmersion{out_grid, f});
    out.euler_char = data.euler_char;
    return out;
}

FamilyReport verify_family(const SurfaceData& original, const SurfaceData& deformed,
                           Complex lambda) {
    if (!original.grid.same_layout(deformed.grid))
        throw format_error("verify_family: charts do not match");
    const Complex factor = 1.0 / (lambda * lambda);
    Field<double> dH(deformed.grid), dxi(deformed.grid), du(deformed.grid), dK(deformed.grid);
    const Field<double> K0 = gaussian_curvature(original.u);
    const Field<double> K1 = gaussian_curvature(deformed.u);
    for (std::size_t k = 0; k < dH.values.size(); ++k) {
        dH.values[k] = std::abs(deformed.H.values[k] - original.H.values[k]);
        dxi.values[k] = std::abs(deformed.xi.values[k] - factor * original.xi.values[k]);
        du.values[k] = std::abs(deformed.u.values[k] - original.u.values[k]);
        dK.values[k] = std::abs(K1.values[k] - K0.values[k]);
    }
    FamilyReport rep;
    rep.dH = interior_max(dH, 2);
    rep.dxi = interior_max(dxi, 2);
    rep.du = interior_max(du, 2);
    rep.dK = interior_max(dK, 2);
    return rep;
}

ConformalImmersion reconstruct_surface(const Field<double>& u, const Field<double>& H,
                                       const Field<Complex>& xi, int base_i, int base_j,
                                       const Mat4& base_frame, double max_residual) {
    const double g_res = interior_max(gauss_residual(u, H, xi), 2);
    const double c_res = interior_max(codazzi_residual(u, H, xi), 2);
    if (g_res > max_residual || c_res > max_residual)
        throw solver_error("reconstruct_surface: Gauss/Codazzi residual " +
                           std::to_string(std::max(g_res, c_res)) + " exceeds " +
                           std::to_string(max_residual) + ", connection is not flat");

    const ConnectionForm cf = analytic_connection(u, H, xi);
    const ExtendedFrameField ext = integrate_frame(cf, base_i, base_j, base_frame);
    const ChartGrid out_grid = u.grid.open_copy();
    Field<Vec4> f(out_grid);
    for (std::size_t k = 0; k < ext.F.values.size(); ++k)
        f.values[k] = ext.F.values[k].col(0);
    return ConformalImmersion{out_grid, f};
}

}  // namespace dst
