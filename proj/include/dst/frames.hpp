#pragma once

#include <optional>

#include "dst/chart.hpp"
#include "dst/lorentz.hpp"
#include "dst/surface.hpp"

namespace dst {

/// SO_o(3,1)-valued frame adapted to an immersion: columns (f, F2, F3, n)
/// with F2, F3 spanning the tangent plane.
struct AdaptedFrameField {
    ChartGrid grid;
    Field<Mat4> F;
};

/// Maurer-Cartan data alpha = A dz + B dzbar of a frame, with the unit
/// loop parameter of the twist that produced it (1 for untwisted forms).
/// Reality: B = conj(A) nodewise.
struct ConnectionForm {
    ChartGrid grid;
    Field<CMat4> A, B;
    Complex lambda{1.0, 0.0};

    CMat4 A_p(int i, int j) const { return p_part(A.at(i, j)); }
    CMat4 A_k(int i, int j) const { return k_part(A.at(i, j)); }
    CMat4 B_p(int i, int j) const { return p_part(B.at(i, j)); }
    CMat4 B_k(int i, int j) const { return k_part(B.at(i, j)); }
};

struct ExtendedFrameField {
    ChartGrid grid;
    Field<Mat4> F;
    Complex lambda{1.0, 0.0};
    int base_i = 0, base_j = 0;
    /// max node deviation between the x-first and y-first integration orders
    double path_dependence = 0.0;
    /// holonomy defects across periodic directions, measured on the base
    /// row/column; absent on open directions
    std::optional<double> monodromy_x, monodromy_y;
};

/// F = [f | f_x/(sqrt2 e^u) | f_y/(sqrt2 e^u) | n], re-projected onto the
/// group nodewise.
AdaptedFrameField adapted_frame(const Field<Vec4>& f, const Field<Vec4>& n,
                                const Field<double>& u);

/// The structure-equation matrices A, B with F_z = F A, F_zbar = F B;
/// entries in terms of (u, H, xi, u_z), B = conj(A).
ConnectionForm analytic_connection(const Field<double>& u, const Field<double>& H,
                                   const Field<Complex>& xi);

/// A = F^{-1} dF/dz, B = F^{-1} dF/dzbar by finite differences.
ConnectionForm numeric_connection(const AdaptedFrameField& frame);

/// Harmonicity residual d/dzbar A_p + [B_k, A_p] per node.
Field<CMat4> harmonicity_residual(const ConnectionForm& cf);

/// Scalar reduction of the harmonicity residual: |s1| + |s2| where s1, s2
/// are the two independent fiber components
///   s1 = d/dzbar(e^{-u}xi + e^u H) + u_zbar (e^{-u}xi - e^u H),
///   s2 = d/dzbar(e^{-u}xi - e^u H) + u_zbar (e^{-u}xi + e^u H),
/// read off the matrix slots. For data satisfying Codazzi this collapses to
/// e^u |grad H|.
Field<double> harmonicity_norm(const Field<CMat4>& residual);

/// || [A_p, B_p]_p ||_F per node; vanishes identically for connections of
/// the structure-equation pattern.
Field<double> structural_residual(const ConnectionForm& cf);

/// lambda-twist: A -> lambda^{-1} A_p + A_k, B -> lambda B_p + B_k.
/// Rejects |lambda| != 1.
ConnectionForm lambda_connection(const ConnectionForm& cf, Complex lambda);

/// Zero-curvature residual d/dz B - d/dzbar A + [A, B] per node.
Field<CMat4> zcc_residual(const ConnectionForm& cf);

/// max |entry| per node, for matrix-valued residual fields.
Field<double> max_entry(const Field<CMat4>& m);

/// Solve dF = F (A dz + B dzbar) with F(base) = base_frame by RK4 along the
/// canonical path (the base row in x, then each column in y), with linear
/// midpoint interpolation of the connection and re-orthonormalization every
/// step. Periodic wraps are ignored (universal cover); holonomy across each
/// periodic direction is reported as a monodromy defect.
ExtendedFrameField integrate_frame(const ConnectionForm& cf, int base_i, int base_j,
                                   const Mat4& base_frame = Mat4::Identity());

/// The S^1 deformation of a CMC surface: twist the analytic connection by
/// lambda, integrate the extended frame, read f_lambda = F e1, n_lambda =
/// F e4, re-analyze. Output lives on the chart opened in the periodic
/// directions. Refuses non-CMC input.
SurfaceData associated_family(const SurfaceData& data, Complex lambda);

struct FamilyReport {
    double dH = 0.0;        // max |H_lambda - H|
    double dxi = 0.0;       // max |xi_lambda - lambda^{-2} xi|
    double du = 0.0;        // max |u_lambda - u|
    double dK = 0.0;        // max |K_lambda - K|
    double monodromy = 0.0; // holonomy defect of the twisted frame
};

FamilyReport verify_family(const SurfaceData& original, const SurfaceData& deformed,
                           Complex lambda);

/// Bonnet-type reconstruction: integrate the connection of (u, H, xi) at
/// lambda = 1 and read the surface off the frame. Rejects data whose Gauss
/// or Codazzi residual exceeds max_residual (the connection would not be
/// flat). Output lives on the chart opened in the periodic directions.
ConformalImmersion reconstruct_surface(const Field<double>& u, const Field<double>& H,
                                       const Field<Complex>& xi, int base_i, int base_j,
                                       const Mat4& base_frame = Mat4::Identity(),
                                       double max_residual = 1e-3);

}  // namespace dst
