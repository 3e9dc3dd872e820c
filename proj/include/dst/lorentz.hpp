#pragma once

#include <Eigen/Dense>
#include <complex>

namespace dst {

using Complex = std::complex<double>;
using Vec4 = Eigen::Vector4d;
using CVec4 = Eigen::Vector4cd;
using Mat4 = Eigen::Matrix4d;
using CMat4 = Eigen::Matrix4cd;

/// Lorentz metric I_{3,1} = diag(1,1,1,-1). Vectors live in R^4_1 with
/// pairing a1*b1 + a2*b2 + a3*b3 - a4*b4.
const Mat4& minkowski_metric();

double minkowski_inner(const Vec4& a, const Vec4& b);

/// Complex-bilinear (not Hermitian) extension of the pairing to C^4.
Complex complex_bilinear(const CVec4& z, const CVec4& w);

inline CVec4 complexify(const Vec4& v) { return v.cast<Complex>(); }

// --- so(3,1) and its reductive split ---------------------------------------
//
// X in so(3,1)  <=>  X^T I + I X = 0. The split so(3,1) = k (+) p places k in
// the (2,3)/(3,2) rotation block and p everywhere else; in the coordinates
// (x2,x3,x4,y2,y3) of the p pattern
//
//     [ 0    x2   x3   x4 ]
//     [ -x2  0    0    y2 ]
//     [ -x3  0    0    y3 ]
//     [ x4   y2   y3   0  ]
//
// the normal metric -1/2 tr(A.B) has the diagonal form
// x2^2 + x3^2 - x4^2 - y2^2 - y3^2, i.e. signature (+,+,-,-,-). The pairing
// of the named slots with the paper-style (x,y,c,z,w) variables is inferred
// from entry positions; the unit-timelike Hopf slot check (norm -1 on x4)
// pins it down.

double so31_defect(const Mat4& x);
bool is_so31(const Mat4& x, double tol = 1e-12);

/// Entry-pattern projections, usable on both real and complexified matrices.
/// No membership check; see project_p/project_k for the guarded variants.
template <typename Mat>
Mat p_part(const Mat& x) {
    Mat y = x;
    y(1, 2) = typename Mat::Scalar(0);
    y(2, 1) = typename Mat::Scalar(0);
    return y;
}

template <typename Mat>
Mat k_part(const Mat& x) {
    Mat y = Mat::Zero();
    y(1, 2) = x(1, 2);
    y(2, 1) = x(2, 1);
    return y;
}

/// Guarded projections: reject input whose so(3,1) membership defect
/// exceeds 1e-12.
Mat4 project_p(const Mat4& x);
Mat4 project_k(const Mat4& x);

/// Normal metric -1/2 trace(A.B); Ad(K)-invariant on p.
double normal_metric(const Mat4& a, const Mat4& b);
Complex normal_metric(const CMat4& a, const CMat4& b);

template <typename Mat>
Mat lie_bracket(const Mat& x, const Mat& y) {
    return x * y - y * x;
}

/// Basis of p in the (x2,x3,x4,y2,y3) slot order; slot 2 is the Hopf
/// direction (unit timelike), slots 3,4 span the fiber of the base
/// projection.
Mat4 p_basis(int slot);

/// Generator of k (the SO(2) isotropy algebra), normalized to a = 1.
Mat4 k_generator();

// --- SO_o(3,1) --------------------------------------------------------------

/// g^{-1} = I g^T I for g in O(3,1).
Mat4 lorentz_inverse(const Mat4& g);

/// Frobenius defect of g^T I g = I plus orientation guards.
double lorentz_group_defect(const Mat4& g);
bool is_lorentz(const Mat4& g, double tol = 1e-10);

/// Gram-Schmidt for the Minkowski pairing, columns in order 1..4, the last
/// normalized timelike. Fails (geometry_error) on a degenerate column, a
/// column of the wrong causal type, or a past-pointing/orientation-reversing
/// result. Fixed point on exact group elements to 1e-14.
Mat4 lorentz_orthonormalize(const Mat4& m);

/// exp via scaling-and-squaring (Eigen), re-projected onto the group.
Mat4 matrix_exp(const Mat4& x);

/// Ad(g) X = g X g^{-1}.
Mat4 adjoint(const Mat4& g, const Mat4& x);
CMat4 adjoint(const Mat4& g, const CMat4& x);

}  // namespace dst
