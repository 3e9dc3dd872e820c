#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "dst/errors.hpp"
#include "dst/frames.hpp"
#include "dst/surface.hpp"
#include "dst/twistor.hpp"

using namespace dst;

namespace {

std::mt19937 rng(424242);

Mat4 random_group(double scale = 0.8) {
    std::uniform_real_distribution<double> dist(-scale, scale);
    Mat4 x = Mat4::Zero();
    x(0, 1) = dist(rng); x(1, 0) = -x(0, 1);
    x(0, 2) = dist(rng); x(2, 0) = -x(0, 2);
    x(1, 2) = dist(rng); x(2, 1) = -x(1, 2);
    x(0, 3) = dist(rng); x(3, 0) = x(0, 3);
    x(1, 3) = dist(rng); x(3, 1) = x(1, 3);
    x(2, 3) = dist(rng); x(3, 2) = x(2, 3);
    return matrix_exp(x);
}

Mat4 horizontal_vector(double x, double y, double z, double w) {
    Mat4 m = Mat4::Zero();
    m(0, 1) = x; m(1, 0) = -x;
    m(0, 2) = y; m(2, 0) = -y;
    m(1, 3) = z; m(3, 1) = z;
    m(2, 3) = w; m(3, 2) = w;
    return m;
}

Mat4 random_horizontal() {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    return horizontal_vector(dist(rng), dist(rng), dist(rng), dist(rng));
}

/// Oracle: pull a tangent (xdot, ydot) at the point g.o back to the algebra
/// model via the frame, i.e. the identif1 matrix of (g^{-1} xdot, g^{-1} ydot)
/// pushed forward by Ad(g).
Mat4 tangent_to_algebra(const Mat4& g, const Vec4& xdot, const Vec4& ydot) {
    const Vec4 a = lorentz_inverse(g) * xdot;
    const Vec4 b = lorentz_inverse(g) * ydot;
    REQUIRE(std::abs(a(0)) < 1e-10);          // tangent to S^3_1 at e1
    REQUIRE(std::abs(b(3)) < 1e-10);          // tangent to H^3_+ at e4
    REQUIRE(std::abs(a(3) - b(0)) < 1e-10);   // the coupling <x,w>+<v,y>=0
    Mat4 m = Mat4::Zero();
    m(0, 1) = a(1); m(1, 0) = -a(1);
    m(0, 2) = a(2); m(2, 0) = -a(2);
    m(0, 3) = a(3); m(3, 0) = a(3);
    m(1, 3) = b(1); m(3, 1) = b(1);
    m(2, 3) = b(2); m(3, 2) = b(2);
    return adjoint(g, m);
}

}  // namespace

TEST_CASE("twistor points: base point, validation, lift guards") {
    auto o = twistor_base_point();
    CHECK(o.defect() == 0.0);
    CHECK(o.valid());

    auto g = sphere_grid(3.0, 65);
    auto sph = analyze(gen_umbilic_sphere(0.75, g));
    auto lifted = lift(sph.f, sph.n);
    CHECK(lifted.v.values.size() == g.size());

    // past-pointing normal must be rejected at node 0
    Field<Vec4> flipped(sph.n);
    for (auto& w : flipped.values) w = -w;
    CHECK_THROWS_AS(lift(sph.f, flipped), geometry_error);

    // equator lift pairs the stereographic point with e4
    auto eq = analyze(gen_umbilic_sphere(0.0, g));
    auto leq = lift(eq.f, eq.n);
    for (auto& w : leq.w.values) CHECK((w - Vec4::Unit(3)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("Hopf vector field: value at o, unit timelike norm, boost consistency") {
    auto o = twistor_base_point();
    auto [hx, hy] = hopf_vector(o);
    CHECK(hx == Vec4::Unit(3));
    CHECK(hy == Vec4::Unit(0));

    // norm through the algebra model: -1 at o and at random g.o
    Mat4 h_alg = tangent_to_algebra(Mat4::Identity(), hx, hy);
    CHECK(normal_metric(h_alg, h_alg) == doctest::Approx(-1.0).epsilon(1e-14));
    for (int trial = 0; trial < 20; ++trial) {
        const Mat4 g = random_group();
        const TwistorPoint p = left_action(g, o);
        auto [px, py] = hopf_vector(p);
        const Mat4 alg = tangent_to_algebra(g, px, py);
        CHECK(normal_metric(alg, alg) == doctest::Approx(-1.0).epsilon(1e-9));
    }

    // derivative of the right action at t = 0 equals the Hopf vector
    const TwistorPoint p = left_action(random_group(), o);
    const double dt = 1e-6;
    const TwistorPoint plus = right_action(p, dt), minus = right_action(p, -dt);
    const Vec4 dv = (plus.v - minus.v) / (2.0 * dt);
    const Vec4 dw = (plus.w - minus.w) / (2.0 * dt);
    auto [ex, ey] = hopf_vector(p);
    CHECK((dv - ex).cwiseAbs().maxCoeff() < 1e-9);
    CHECK((dw - ey).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("right action: identity, group law, constraint preservation") {
    const TwistorPoint p = left_action(random_group(), twistor_base_point());
    const TwistorPoint same = right_action(p, 0.0);
    CHECK((same.v - p.v).cwiseAbs().maxCoeff() == 0.0);

    const TwistorPoint ab = right_action(right_action(p, 0.7), -0.3);
    const TwistorPoint once = right_action(p, 0.4);
    CHECK((ab.v - once.v).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((ab.w - once.w).cwiseAbs().maxCoeff() < 1e-12);

    CHECK(right_action(p, 2.5).defect() < 1e-9);
    CHECK(left_action(random_group(), p).defect() < 1e-9);
}

TEST_CASE("plane projector: base point, fiber constancy, algebraic identities") {
    auto o = twistor_base_point();
    Mat4 P = project_plane(o);
    Mat4 want = Mat4::Zero();
    want(1, 1) = want(2, 2) = 1.0;
    CHECK((P - want).cwiseAbs().maxCoeff() == 0.0);

    const TwistorPoint p = left_action(random_group(), o);
    const Mat4 Pp = project_plane(p);
    CHECK((Pp * Pp - Pp).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(Pp.trace() == doctest::Approx(2.0).epsilon(1e-10));
    CHECK((Pp * p.v).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((Pp * p.w).cwiseAbs().maxCoeff() < 1e-10);

    // pi'-fibers: the projector does not move along the right action
    const Mat4 Pq = project_plane(right_action(p, 1.3));
    CHECK((Pp - Pq).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("J' and J'': squares, orthogonality, horizontality guard") {
    const Mat4 basis[4] = {horizontal_vector(1, 0, 0, 0), horizontal_vector(0, 1, 0, 0),
                           horizontal_vector(0, 0, 1, 0), horizontal_vector(0, 0, 0, 1)};
    for (const auto& e : basis) {
        for (auto which : {Structure::JPrime, Structure::JDoublePrime}) {
            const Mat4 sq = J_horizontal(J_horizontal(e, which), which);
            CHECK((sq + e).cwiseAbs().maxCoeff() == 0.0);
        }
    }
    for (int trial = 0; trial < 25; ++trial) {
        const Mat4 X = random_horizontal(), Y = random_horizontal();
        for (auto which : {Structure::JPrime, Structure::JDoublePrime}) {
            CHECK(normal_metric(J_horizontal(X, which), J_horizontal(Y, which)) ==
                  doctest::Approx(normal_metric(X, Y)).epsilon(1e-12));
        }
    }
    CHECK_THROWS_AS(J_horizontal(p_basis(2), Structure::JPrime), geometry_error);
}

TEST_CASE("normal-metric geometry of the fibration at the base point") {
    // Ker dpi (fiber slots) is orthogonal to Ker dpi' (Hopf slot): exact
    CHECK(normal_metric(p_basis(2), p_basis(3)) == 0.0);
    CHECK(normal_metric(p_basis(2), p_basis(4)) == 0.0);

    // the Hopf direction is orthogonal to all of the horizontal space, and
    // does not lie inside it (its norm is -1, not 0)
    for (int trial = 0; trial < 100; ++trial) {
        const Mat4 g = random_group();
        const Mat4 h = adjoint(g, p_basis(2));
        const Mat4 X = adjoint(g, random_horizontal());
        CHECK(std::abs(normal_metric(h, X)) < 1e-9);
    }
    CHECK(normal_metric(p_basis(2), p_basis(2)) == doctest::Approx(-1.0));
}

TEST_CASE("J_at: base case, Ad(K)-equivariance, square") {
    const Mat4 X = random_horizontal();
    CHECK((J_at(Mat4::Identity(), X, Structure::JPrime) -
           J_horizontal(X, Structure::JPrime)).cwiseAbs().maxCoeff() == 0.0);

    std::uniform_real_distribution<double> angle(-3.0, 3.0);
    for (int trial = 0; trial < 20; ++trial) {
        Mat4 k = Mat4::Identity();
        const double t = angle(rng);
        k(1, 1) = std::cos(t); k(1, 2) = -std::sin(t);
        k(2, 1) = std::sin(t); k(2, 2) = std::cos(t);
        for (auto which : {Structure::JPrime, Structure::JDoublePrime}) {
            // the commutation lemma: J(Ad(k)X) = Ad(k) J(X) on the
            // horizontal space, and hence J_at(k, .) = J at the base point
            const Mat4 a = J_horizontal(adjoint(k, X), which);
            const Mat4 b = adjoint(k, J_horizontal(X, which));
            CHECK((a - b).cwiseAbs().maxCoeff() < 1e-12);
            const Mat4 c = J_at(k, adjoint(k, X), which);
            CHECK((c - a).cwiseAbs().maxCoeff() < 1e-12);
        }
    }

    const Mat4 g = random_group();
    const Mat4 Xg = adjoint(g, X);
    const Mat4 sq = J_at(g, J_at(g, Xg, Structure::JDoublePrime), Structure::JDoublePrime);
    CHECK((sq + Xg).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("holomorphicity trichotomy with the frame cross-route") {
    auto sg = sphere_grid(3.0, 121);
    auto sph = analyze(gen_umbilic_sphere(0.75, sg));
    auto rs = holomorphicity_report(sph);
    CHECK(rs.j_prime_data < 10.0 * sg.hx * sg.hx);          // umbilic: J'-holomorphic
    CHECK(rs.j_dprime_data == doctest::Approx(0.6).epsilon(1e-2));  // fails J''
    CHECK(std::abs(rs.j_prime_data - rs.j_prime_frame) < 10.0 * sg.hx * sg.hx);
    CHECK(std::abs(rs.j_dprime_data - rs.j_dprime_frame) < 10.0 * sg.hx * sg.hx);

    auto eq = analyze(gen_umbilic_sphere(0.0, sg));
    auto re = holomorphicity_report(eq);
    CHECK(re.j_prime_data < 10.0 * sg.hx * sg.hx);
    CHECK(re.j_dprime_data < 10.0 * sg.hx * sg.hx);
    CHECK(re.conformal_data < 10.0 * sg.hx * sg.hx);

    auto cyl = analyze(gen_hyperbolic_cylinder(1.0, cylinder_grid(1.0, 256, 65, 1.0)));
    auto rc = holomorphicity_report(cyl);
    const double xi0 = 1.0 / (4.0 * std::sqrt(2.0)), H0 = 3.0 * std::sqrt(2.0) / 4.0;
    CHECK(rc.j_prime_data == doctest::Approx(xi0).epsilon(1e-2));
    CHECK(rc.j_dprime_data == doctest::Approx(H0).epsilon(1e-2));
    CHECK(rc.conformal_data == doctest::Approx(0.375).epsilon(5e-3 / 0.375));
    CHECK(rc.conformal_frame == doctest::Approx(0.375).epsilon(2e-2));
    CHECK(std::abs(rc.conformal_data - rc.conformal_frame) < 1e-2);
}

TEST_CASE("horizontality: structural zero, injected defect, boost curve") {
    auto cyl = analyze(gen_hyperbolic_cylinder(1.0, cylinder_grid(1.0, 128, 65, 1.0)));
    CHECK(interior_max(horizontality_residual(cyl), 0) == 0.0);

    // synthetic connection with an injected Hopf component
    ConnectionForm cf = analytic_connection(cyl.u, cyl.H, cyl.xi);
    const double eps = 0.37;
    for (auto& A : cf.A.values) {
        A(0, 3) += eps;
        A(3, 0) += eps;
    }
    auto res = horizontality_residual(cf);
    CHECK(interior_max(res, 0) == doctest::Approx(eps).epsilon(1e-12));

    // a path moving along the pi'-fibers (varying boosts) is not horizontal
    ChartGrid g;
    g.nx = g.ny = 16;
    g.hx = g.hy = 0.05;
    AdaptedFrameField boosted{g, Field<Mat4>::generate(g, [](double x, double) {
                                  return matrix_exp(x * p_basis(2));
                              })};
    auto num = numeric_connection(boosted);
    auto hres = horizontality_residual(num);
    CHECK(interior_max(hres, 1) == doctest::Approx(0.5).epsilon(1e-3));
}
