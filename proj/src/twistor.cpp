#include "dst/twistor.hpp"

#include <cmath>

#include "dst/errors.hpp"

namespace dst {

double TwistorPoint::defect() const {
    const double dv = std::abs(minkowski_inner(v, v) - 1.0);
    const double dw = std::abs(minkowski_inner(w, w) + 1.0);
    const double dvw = std::abs(minkowski_inner(v, w));
    return std::max({dv, dw, dvw});
}

bool TwistorPoint::valid(double tol) const { return defect() <= tol && w(3) > 0.0; }

TwistorPoint twistor_base_point() { return TwistorPoint{Vec4::Unit(0), Vec4::Unit(3)}; }

TwistorLiftField lift(const Field<Vec4>& f, const Field<Vec4>& n) {
    for (std::size_t k = 0; k < f.values.size(); ++k) {
        const TwistorPoint p{f.values[k], n.values[k]};
        if (!p.valid()) {
            if (p.w(3) <= 0.0)
                throw geometry_error("lift: normal not future-pointing at node " +
                                     std::to_string(k));
            throw geometry_error("lift: twistor constraints violated at node " +
                                 std::to_string(k) + ", defect " + std::to_string(p.defect()));
        }
    }
    return TwistorLiftField{f.grid, f, n};
}

std::pair<Vec4, Vec4> hopf_vector(const TwistorPoint& p) { return {p.w, p.v}; }

TwistorPoint right_action(const TwistorPoint& p, double t) {
    const double c = std::cosh(t), s = std::sinh(t);
    return TwistorPoint{c * p.v + s * p.w, s * p.v + c * p.w};
}

TwistorPoint left_action(const Mat4& g, const TwistorPoint& p) {
    return TwistorPoint{g * p.v, g * p.w};
}

Vec4 project_base(const TwistorPoint& p) { return p.v; }
Vec4 project_hyperbolic(const TwistorPoint& p) { return p.w; }

Mat4 project_plane(const TwistorPoint& p) {
    const Mat4& metric = minkowski_metric();
    return Mat4::Identity() - p.v * (metric * p.v).transpose() +
           p.w * (metric * p.w).transpose();
}

namespace {
template <typename Mat>
bool horizontal_impl(const Mat& x, double tol) {
    auto mag = [](auto c) { return std::abs(c); };
    if (mag(x(0, 3)) > tol || mag(x(3, 0)) > tol) return false;  // no Hopf component
    if (mag(x(1, 2)) > tol || mag(x(2, 1)) > tol) return false;  // no k component
    // p-pattern symmetry
    if (mag(x(0, 1) + x(1, 0)) > tol || mag(x(0, 2) + x(2, 0)) > tol) return false;
    if (mag(x(1, 3) - x(3, 1)) > tol || mag(x(2, 3) - x(3, 2)) > tol) return false;
    if (mag(x(0, 0)) > tol || mag(x(1, 1)) > tol || mag(x(2, 2)) > tol || mag(x(3, 3)) > tol)
        return false;
    return true;
}

/// nearest horizontal-pattern matrix: slot averages of the p-symmetries
template <typename Mat>
Mat horizontal_project(const Mat& m) {
    using S = typename Mat::Scalar;
    Mat r = Mat::Zero();
    const S half(0.5);
    r(0, 1) = half * (m(0, 1) - m(1, 0));
    r(1, 0) = -r(0, 1);
    r(0, 2) = half * (m(0, 2) - m(2, 0));
    r(2, 0) = -r(0, 2);
    r(1, 3) = half * (m(1, 3) + m(3, 1));
    r(3, 1) = r(1, 3);
    r(2, 3) = half * (m(2, 3) + m(3, 2));
    r(3, 2) = r(2, 3);
    return r;
}

template <typename Mat>
Mat J_impl(const Mat& m, Structure which) {
    if (!horizontal_impl(m, 1e-12))
        throw geometry_error("J: input is not in the horizontal subspace");
    const auto x = m(0, 1), y = m(0, 2), z = m(1, 3), w = m(2, 3);
    const auto nx = -y, ny = x;
    const auto nz = (which == Structure::JPrime) ? -w : w;
    const auto nw = (which == Structure::JPrime) ? z : -z;
    Mat r = Mat::Zero();
    r(0, 1) = nx;
    r(1, 0) = -nx;
    r(0, 2) = ny;
    r(2, 0) = -ny;
    r(1, 3) = nz;
    r(3, 1) = nz;
    r(2, 3) = nw;
    r(3, 2) = nw;
    return r;
}
}  // namespace

bool is_horizontal(const Mat4& x, double tol) { return horizontal_impl(x, tol); }
bool is_horizontal(const CMat4& x, double tol) { return horizontal_impl(x, tol); }

Mat4 J_horizontal(const Mat4& x, Structure which) { return J_impl(x, which); }
CMat4 J_horizontal(const CMat4& x, Structure which) { return J_impl(x, which); }

Mat4 J_at(const Mat4& g, const Mat4& x, Structure which) {
    const Mat4 pulled = adjoint(lorentz_inverse(g), x);
    return adjoint(g, J_horizontal(pulled, which));
}

HolomorphicityReport holomorphicity_report(const SurfaceData& data) {
    HolomorphicityReport rep;
    const int margin = 2;
    for_each_interior(data.grid, margin, [&](int i, int j) {
        rep.j_prime_data = std::max(rep.j_prime_data, std::abs(data.xi.at(i, j)));
        rep.j_dprime_data = std::max(rep.j_dprime_data, std::abs(data.H.at(i, j)));
        rep.conformal_data = std::max(rep.conformal_data,
                                      2.0 * std::abs(data.xi.at(i, j)) * std::abs(data.H.at(i, j)));
    });

    // frame route: the same scalars from the numeric connection of the
    // adapted frame. The eigenvector defects of J' and J'' against i A_p sit
    // in the fiber slots with magnitude sqrt(2) e^{-u}|xi| resp.
    // sqrt(2) e^{u}|H| per entry, four entries each.
    const AdaptedFrameField frame = adapted_frame(data.f, data.n, data.u);
    const ConnectionForm cf = numeric_connection(frame);
    for_each_interior(data.grid, margin, [&](int i, int j) {
        // the numeric A_p sits O(h^2) off the exact pattern; project onto it
        const CMat4 Ap = horizontal_project(p_part(cf.A.at(i, j)));
        const double eu = std::exp(data.u.at(i, j));
        const CMat4 dj1 = J_impl(Ap, Structure::JPrime) - Complex(0.0, 1.0) * Ap;
        const CMat4 dj2 = J_impl(Ap, Structure::JDoublePrime) - Complex(0.0, 1.0) * Ap;
        rep.j_prime_frame = std::max(rep.j_prime_frame, eu * dj1.norm() / (2.0 * std::sqrt(2.0)));
        rep.j_dprime_frame =
            std::max(rep.j_dprime_frame, dj2.norm() / (2.0 * std::sqrt(2.0) * eu));
        rep.conformal_frame =
            std::max(rep.conformal_frame, std::abs(0.5 * (Ap * Ap).trace()));
    });
    return rep;
}

Field<double> horizontality_residual(const ConnectionForm& cf) {
    Field<double> r(cf.grid);
    for (std::size_t k = 0; k < r.values.size(); ++k)
        r.values[k] = std::abs(p_part(cf.A.values[k])(0, 3));
    return r;
}

Field<double> horizontality_residual(const SurfaceData& data) {
    return horizontality_residual(analytic_connection(data.u, data.H, data.xi));
}

}  // namespace dst
