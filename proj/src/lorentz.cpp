#include "dst/lorentz.hpp"

#include <cmath>
#include <unsupported/Eigen/MatrixFunctions>

#include "dst/errors.hpp"

namespace dst {

const Mat4& minkowski_metric() {
    static const Mat4 metric = [] {
        Mat4 m = Mat4::Identity();
        m(3, 3) = -1.0;
        return m;
    }();
    return metric;
}

double minkowski_inner(const Vec4& a, const Vec4& b) {
    return a(0) * b(0) + a(1) * b(1) + a(2) * b(2) - a(3) * b(3);
}

Complex complex_bilinear(const CVec4& z, const CVec4& w) {
    return z(0) * w(0) + z(1) * w(1) + z(2) * w(2) - z(3) * w(3);
}

double so31_defect(const Mat4& x) {
    const Mat4& metric = minkowski_metric();
    return (x.transpose() * metric + metric * x).cwiseAbs().maxCoeff();
}

bool is_so31(const Mat4& x, double tol) { return so31_defect(x) <= tol; }

namespace {
void require_so31(const Mat4& x, const char* who) {
    if (!is_so31(x)) {
        throw geometry_error(std::string(who) + ": input is not in so(3,1), defect " +
                             std::to_string(so31_defect(x)));
    }
}
}  // namespace

Mat4 project_p(const Mat4& x) {
    require_so31(x, "project_p");
    return p_part(x);
}

Mat4 project_k(const Mat4& x) {
    require_so31(x, "project_k");
    return k_part(x);
}

double normal_metric(const Mat4& a, const Mat4& b) { return -0.5 * (a * b).trace(); }

Complex normal_metric(const CMat4& a, const CMat4& b) { return -0.5 * (a * b).trace(); }

Mat4 p_basis(int slot) {
    Mat4 m = Mat4::Zero();
    switch (slot) {
        case 0:  // x2
            m(0, 1) = 1.0;
            m(1, 0) = -1.0;
            break;
        case 1:  // x3
            m(0, 2) = 1.0;
            m(2, 0) = -1.0;
            break;
        case 2:  // x4, the Hopf direction
            m(0, 3) = 1.0;
            m(3, 0) = 1.0;
            break;
        case 3:  // y2
            m(1, 3) = 1.0;
            m(3, 1) = 1.0;
            break;
        case 4:  // y3
            m(2, 3) = 1.0;
            m(3, 2) = 1.0;
            break;
        default:
            throw std::out_of_range("p_basis: slot must be 0..4");
    }
    return m;
}

Mat4 k_generator() {
    Mat4 m = Mat4::Zero();
    m(1, 2) = -1.0;
    m(2, 1) = 1.0;
    return m;
}

Mat4 lorentz_inverse(const Mat4& g) {
    const Mat4& metric = minkowski_metric();
    return metric * g.transpose() * metric;
}

double lorentz_group_defect(const Mat4& g) {
    const Mat4& metric = minkowski_metric();
    return (g.transpose() * metric * g - metric).norm();
}

bool is_lorentz(const Mat4& g, double tol) {
    return lorentz_group_defect(g) <= tol && g(3, 3) > 0.0 && g.determinant() > 0.0;
}

Mat4 lorentz_orthonormalize(const Mat4& m) {
    constexpr double min_norm2 = 1e-16;  // column norm below 1e-8
    Mat4 r = m;
    for (int j = 0; j < 4; ++j) {
        Vec4 v = r.col(j);
        for (int k = 0; k < j; ++k) {
            const Vec4 e = r.col(k);
            const double ee = (k < 3) ? 1.0 : -1.0;
            v -= (minkowski_inner(v, e) / ee) * e;
        }
        const double q = minkowski_inner(v, v);
        if (j < 3) {
            if (q < min_norm2) {
                throw geometry_error("lorentz_orthonormalize: column " + std::to_string(j + 1) +
                                     " degenerate or not spacelike");
            }
            r.col(j) = v / std::sqrt(q);
        } else {
            if (q > -min_norm2) {
                throw geometry_error("lorentz_orthonormalize: column 4 degenerate or not timelike");
            }
            v /= std::sqrt(-q);
            if (v(3) <= 0.0) {
                throw geometry_error("lorentz_orthonormalize: column 4 past-pointing, (4,4) <= 0");
            }
            r.col(j) = v;
        }
    }
    if (r.determinant() <= 0.0) {
        throw geometry_error("lorentz_orthonormalize: orientation-reversing input");
    }
    return r;
}

Mat4 matrix_exp(const Mat4& x) { return lorentz_orthonormalize(x.exp()); }

Mat4 adjoint(const Mat4& g, const Mat4& x) { return g * x * lorentz_inverse(g); }

CMat4 adjoint(const Mat4& g, const CMat4& x) {
    return g.cast<Complex>() * x * lorentz_inverse(g).cast<Complex>();
}

}  // namespace dst
