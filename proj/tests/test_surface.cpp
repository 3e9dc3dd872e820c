#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dst/errors.hpp"
#include "dst/surface.hpp"

using namespace dst;

namespace {

// closed-form oracle values for the cylinder, independent of the library path
struct CylinderOracle {
    double rho, r, H, xi, e2u;
    explicit CylinderOracle(double rho_) : rho(rho_), r(std::sqrt(1.0 + rho_ * rho_)) {
        H = 0.5 * (rho / r + r / rho);
        xi = 0.25 * (rho / r - r / rho);
        e2u = 0.5;
    }
};

ChartGrid small_sphere_grid() { return sphere_grid(3.0, 121); }  // h = 0.05

ChartGrid small_cylinder_grid(double rho) { return cylinder_grid(rho, 128, 65, 1.0); }

}  // namespace

TEST_CASE("generators sit on the pseudosphere exactly") {
    auto sg = small_sphere_grid();
    auto sph = gen_umbilic_sphere(0.75, sg);
    for (auto& v : sph.f.values) CHECK(minkowski_inner(v, v) == doctest::Approx(1.0).epsilon(1e-15));

    auto cg = small_cylinder_grid(1.0);
    auto cyl = gen_hyperbolic_cylinder(1.0, cg);
    for (auto& v : cyl.f.values) CHECK(minkowski_inner(v, v) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("conformality residual: generators O(h^2), stretched chart fails") {
    auto sg = small_sphere_grid();
    auto sph = gen_umbilic_sphere(0.75, sg);
    CHECK(interior_max(conformality_residual(sph)) < 5.0 * sg.hx * sg.hx);

    auto cg = small_cylinder_grid(1.0);
    auto cyl = gen_hyperbolic_cylinder(1.0, cg);
    CHECK(interior_max(conformality_residual(cyl)) < 5.0 * cg.hx * cg.hx);

    // anisotropic stretch (x, 2y): residual must be a finite fraction of e^{2u}
    const double a = std::sqrt(1.0 + 0.75 * 0.75);
    ConformalImmersion stretched{sg, Field<Vec4>::generate(sg, [&](double x, double y) {
                                     const double ys = 2.0 * y;
                                     const double r2 = x * x + ys * ys;
                                     return Vec4(a * 2.0 * x / (1.0 + r2), a * 2.0 * ys / (1.0 + r2),
                                                 a * (1.0 - r2) / (1.0 + r2), 0.75);
                                 })};
    auto res = conformality_residual(stretched);
    auto fz = d_dz(stretched.f);
    bool big_somewhere = false;
    for_each_interior(sg, 1, [&](int i, int j) {
        const double e2u_like =
            std::abs(complex_bilinear(fz.at(i, j), fz.at(i, j).conjugate()));
        if (res.at(i, j) > 0.1 * e2u_like) big_somewhere = true;
    });
    CHECK(big_somewhere);
}

TEST_CASE("conformal factor closed forms; degenerate map rejected") {
    auto cg = small_cylinder_grid(1.0);
    auto cyl = gen_hyperbolic_cylinder(1.0, cg);
    auto u = conformal_factor(cyl);
    const double want = 0.5 * std::log(0.5);
    for_each_interior(cg, 1, [&](int i, int j) {
        CHECK(u.at(i, j) == doctest::Approx(want).epsilon(1e-3));
    });

    auto sg = small_sphere_grid();
    auto sph = gen_umbilic_sphere(0.75, sg);
    auto us = conformal_factor(sph);
    const double c = 0.75;
    for_each_interior(sg, 1, [&](int i, int j) {
        const double r2 = sg.x(i) * sg.x(i) + sg.y(j) * sg.y(j);
        const double want_u = 0.5 * std::log(2.0 * (1.0 + c * c)) - std::log(1.0 + r2);
        CHECK(us.at(i, j) == doctest::Approx(want_u).epsilon(2e-3));
    });

    ConformalImmersion degenerate{sg, Field<Vec4>(sg, Vec4(0, 0, 1, 0))};
    CHECK_THROWS_AS(conformal_factor(degenerate), geometry_error);
}

TEST_CASE("unit normal: equator, sphere, cylinder closed forms") {
    auto sg = small_sphere_grid();
    auto eq = gen_umbilic_sphere(0.0, sg);
    auto neq = unit_normal(eq);
    for_each_interior(sg, 1, [&](int i, int j) {
        CHECK((neq.at(i, j) - Vec4(0, 0, 0, 1)).cwiseAbs().maxCoeff() < 1e-10);
    });

    const double c = 0.75, a = std::sqrt(1.0 + c * c);
    auto sph = gen_umbilic_sphere(c, sg);
    auto n = unit_normal(sph);
    for_each_interior(sg, 1, [&](int i, int j) {
        const double x = sg.x(i), y = sg.y(j), r2 = x * x + y * y;
        Vec4 want(c * 2.0 * x / (1.0 + r2), c * 2.0 * y / (1.0 + r2), c * (1.0 - r2) / (1.0 + r2),
                  a);
        CHECK((n.at(i, j) - want).cwiseAbs().maxCoeff() < 50.0 * sg.hx * sg.hx);
    });

    auto cg = small_cylinder_grid(1.0);
    auto cyl = gen_hyperbolic_cylinder(1.0, cg);
    auto ncyl = unit_normal(cyl);
    const double rho = 1.0, r = std::sqrt(2.0);
    for_each_interior(cg, 1, [&](int i, int j) {
        const double x = cg.x(i), y = cg.y(j);
        Vec4 want(rho * std::cos(x / r), rho * std::sin(x / r), r * std::sinh(y / rho),
                  r * std::cosh(y / rho));
        CHECK((ncyl.at(i, j) - want).cwiseAbs().maxCoeff() < 1e-6);
        // defining constraints
        CHECK(minkowski_inner(ncyl.at(i, j), ncyl.at(i, j)) == doctest::Approx(-1.0).epsilon(1e-10));
        CHECK(minkowski_inner(ncyl.at(i, j), cyl.f.at(i, j)) == doctest::Approx(0.0).epsilon(1e-10));
        CHECK(ncyl.at(i, j)(3) > 0.0);
    });

    ConformalImmersion degenerate{sg, Field<Vec4>(sg, Vec4(0, 0, 1, 0))};
    CHECK_THROWS_AS(unit_normal(degenerate), geometry_error);
}

TEST_CASE("normal via structure equation agrees off umbilics") {
    auto cg = small_cylinder_grid(1.0);
    auto cyl = gen_hyperbolic_cylinder(1.0, cg);
    auto u = conformal_factor(cyl);
    auto n = unit_normal(cyl);
    auto xi = hopf_xi(cyl, n);
    auto n2 = normal_from_structure(cyl, u, xi);
    double worst = 0.0;
    for_each_interior(cg, 1, [&](int i, int j) {
        worst = std::max(worst, (n.at(i, j) - n2.at(i, j)).cwiseAbs().maxCoeff());
    });
    CHECK(worst < 3.0 * cg.hx * cg.hx);

    auto sg = small_sphere_grid();
    auto sph = gen_umbilic_sphere(0.75, sg);
    auto us = conformal_factor(sph);
    auto xis = hopf_xi(sph, unit_normal(sph));
    CHECK_THROWS_AS(normal_from_structure(sph, us, xis), geometry_error);
}

TEST_CASE("mean curvature: equator 0, sphere 0.6, cylinder closed form") {
    auto sg = small_sphere_grid();
    auto eq = gen_umbilic_sphere(0.0, sg);
    auto du = analyze(eq);
    for_each_interior(sg, 1, [&](int i, int j) { CHECK(std::abs(du.H.at(i, j)) < 2e-3); });

    auto sph = analyze(gen_umbilic_sphere(0.75, sg));
    for_each_interior(sg, 1, [&](int i, int j) {
        CHECK(sph.H.at(i, j) == doctest::Approx(0.6).epsilon(5e-3));
    });

    CylinderOracle oc(1.0);
    auto cyl = analyze(gen_hyperbolic_cylinder(1.0, small_cylinder_grid(1.0)));
    for_each_interior(cyl.grid, 1, [&](int i, int j) {
        CHECK(cyl.H.at(i, j) == doctest::Approx(oc.H).epsilon(1e-3));
    });
}

TEST_CASE("Hopf coefficient: umbilic sphere ~0, cylinder closed form") {
    auto sg = small_sphere_grid();
    auto sph = analyze(gen_umbilic_sphere(0.75, sg));
    CHECK(interior_max(sph.xi) < 5.0 * sg.hx * sg.hx);

    CylinderOracle oc(1.0);
    auto cyl = analyze(gen_hyperbolic_cylinder(1.0, small_cylinder_grid(1.0)));
    for_each_interior(cyl.grid, 1, [&](int i, int j) {
        CHECK(cyl.xi.at(i, j).real() == doctest::Approx(oc.xi).epsilon(1e-4));
        CHECK(std::abs(cyl.xi.at(i, j).imag()) < 1e-6);
    });
    CHECK(oc.xi == doctest::Approx(-1.0 / (4.0 * std::sqrt(2.0))));
}

TEST_CASE("gaussian curvature: sphere 0.64, cylinder 0, constant u -> 0") {
    auto sg = small_sphere_grid();
    auto sph = analyze(gen_umbilic_sphere(0.75, sg));
    auto K = gaussian_curvature(sph.u);
    for_each_interior(sg, 2, [&](int i, int j) {
        CHECK(K.at(i, j) == doctest::Approx(0.64).epsilon(1e-2));
    });

    auto cyl = analyze(gen_hyperbolic_cylinder(1.0, small_cylinder_grid(1.0)));
    auto Kc = gaussian_curvature(cyl.u);
    CHECK(interior_max(Kc, 2) < 1e-4);

    Field<double> flat(sg, 1.37);
    CHECK(interior_max(gaussian_curvature(flat), 0) == 0.0);
}

TEST_CASE("Gauss and Codazzi residuals") {
    auto sg = small_sphere_grid();
    auto sph = analyze(gen_umbilic_sphere(0.75, sg));
    CHECK(sph.residuals.gauss.max < 50.0 * sg.hx * sg.hx);
    CHECK(sph.residuals.codazzi.max < 50.0 * sg.hx * sg.hx);

    auto cyl = analyze(gen_hyperbolic_cylinder(1.0, small_cylinder_grid(1.0)));
    CHECK(cyl.residuals.gauss.max < 1e-3);
    CHECK(cyl.residuals.codazzi.max < 1e-3);

    // constant-shift of H on the sphere: the Gauss residual moves by exactly
    // -e^{2u}(0.2 H + 0.01) since the u and xi terms cancel node by node
    auto shifted = perturb_H(sph, 0.1, PerturbMode::Constant);
    auto g = gauss_residual(shifted.u, shifted.H, shifted.xi);
    auto g0 = gauss_residual(sph.u, sph.H, sph.xi);
    for_each_interior(sg, 1, [&](int i, int j) {
        const double e2u = std::exp(2.0 * sph.u.at(i, j));
        const double want = e2u * (2.0 * 0.1 * sph.H.at(i, j) + 0.01);
        CHECK(std::abs((g.at(i, j) - g0.at(i, j)) + want) < 1e-12 * std::max(1.0, e2u));
    });
    auto cod = codazzi_residual(shifted.u, shifted.H, shifted.xi);
    auto cod0 = codazzi_residual(sph.u, sph.H, sph.xi);
    double cod_shift = 0.0;
    for_each_interior(sg, 1, [&](int i, int j) {
        cod_shift = std::max(cod_shift, std::abs(cod.at(i, j) - cod0.at(i, j)));
    });
    CHECK(cod_shift < 1e-12);  // constant shift leaves H_z unchanged

    // constant balance (u,H,xi) = (0, sqrt(2), 1): both residuals exactly zero
    ChartGrid pg;
    pg.nx = pg.ny = 16;
    pg.hx = pg.hy = 2.0 * M_PI / 16;
    pg.periodic_x = pg.periodic_y = true;
    Field<double> u0(pg, 0.0), H0(pg, std::sqrt(2.0));
    Field<Complex> xi0(pg, Complex(1.0, 0.0));
    // exact up to the rounding of sqrt(2)^2
    CHECK(interior_max(gauss_residual(u0, H0, xi0), 0) <= 1e-15);
    CHECK(interior_max(codazzi_residual(u0, H0, xi0), 0) == 0.0);
}

TEST_CASE("Gauss identity and principal gap closed forms") {
    // cylinder rho=1: K = 0 = 1 - 9/8 + 1/8 exactly
    CylinderOracle oc(1.0);
    CHECK(1.0 - oc.H * oc.H + oc.xi * oc.xi * 4.0 == doctest::Approx(0.0).epsilon(1e-15));

    auto cyl = analyze(gen_hyperbolic_cylinder(1.0, small_cylinder_grid(1.0)));
    CHECK(cyl.residuals.gauss_identity.max < 1e-3);

    auto gap = principal_gap(cyl.u, cyl.xi);
    for_each_interior(cyl.grid, 1, [&](int i, int j) {
        CHECK(gap.at(i, j) == doctest::Approx(0.125).epsilon(1e-3));  // (1/32)*4
        CHECK(gap.at(i, j) >= 0.0);
    });

    auto sg = small_sphere_grid();
    auto sph = analyze(gen_umbilic_sphere(0.75, sg));
    CHECK(interior_max(principal_gap(sph.u, sph.xi)) < 1e-6);

    // cross-check against K + H^2 - 1
    auto K = gaussian_curvature(cyl.u);
    for_each_interior(cyl.grid, 2, [&](int i, int j) {
        const double lhs = K.at(i, j) + cyl.H.at(i, j) * cyl.H.at(i, j) - 1.0;
        CHECK(std::abs(lhs - gap.at(i, j)) < 1e-3);
    });
}

TEST_CASE("analyze residual summary is O(h^2) with measured order >= 1.8") {
    auto run = [&](int n) {
        auto g = sphere_grid(3.0, n);
        auto d = analyze(gen_umbilic_sphere(0.75, g));
        struct Out {
            double structure, gauss, codazzi, identity, h;
        };
        return Out{d.residuals.structure_i.max, d.residuals.gauss.max, d.residuals.codazzi.max,
                   d.residuals.gauss_identity.max, g.hx};
    };
    auto coarse = run(121), fine = run(241);
    CHECK(coarse.structure / fine.structure >= 3.2);
    CHECK(coarse.gauss / fine.gauss >= 3.2);
    CHECK(coarse.identity / fine.identity >= 3.2);
}

TEST_CASE("perturb_H: identity at eps=0, Codazzi prediction, non-CMC flag") {
    auto cyl = analyze(gen_hyperbolic_cylinder(1.0, small_cylinder_grid(1.0)));
    auto same = perturb_H(cyl, 0.0);
    CHECK(same.cmc_known_false == false);
    CHECK(interior_max(codazzi_residual(same.u, same.H, same.xi)) ==
          doctest::Approx(interior_max(codazzi_residual(cyl.u, cyl.H, cyl.xi))));

    const double eps = 1e-2;
    auto pert = perturb_H(cyl, eps, PerturbMode::SinX);
    CHECK(pert.cmc_known_false);
    CHECK(is_cmc(cyl));
    CHECK(!is_cmc(pert));

    // analytic oracle: Codazzi residual = -e^{2u} dH/dz = -e^{2u} eps cos(x)/2
    auto cod = codazzi_residual(pert.u, pert.H, pert.xi);
    double worst = 0.0;
    for_each_interior(pert.grid, 2, [&](int i, int j) {
        const double e2u = std::exp(2.0 * pert.u.at(i, j));
        const Complex want(-e2u * eps * 0.5 * std::cos(pert.grid.x(i)), 0.0);
        worst = std::max(worst, std::abs(cod.at(i, j) - want));
    });
    CHECK(worst < 0.05 * 0.5 * eps);  // within a few percent of the peak
}

TEST_CASE("sphere family: analyzed xi -> 0 and K + H^2 -> 1 as h -> 0") {
    auto measure = [&](int n) {
        auto g = sphere_grid(3.0, n);
        auto d = analyze(gen_umbilic_sphere(0.6, g));
        auto K = gaussian_curvature(d.u);
        double xi_max = interior_max(d.xi), kh = 0.0;
        for_each_interior(g, 2, [&](int i, int j) {
            kh = std::max(kh, std::abs(K.at(i, j) + d.H.at(i, j) * d.H.at(i, j) - 1.0));
        });
        return std::make_pair(xi_max, kh);
    };
    auto [xi1, kh1] = measure(121);
    auto [xi2, kh2] = measure(241);
    CHECK(xi2 < xi1);
    CHECK(kh2 < kh1);
    CHECK(xi1 / xi2 > 3.0);
}
