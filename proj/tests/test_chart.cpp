#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dst/chart.hpp"

using namespace dst;

namespace {

ChartGrid open_grid(int n, double lo, double hi) {
    ChartGrid g;
    g.nx = g.ny = n;
    g.hx = g.hy = (hi - lo) / (n - 1);
    g.x0 = g.y0 = lo;
    g.chart_id = "open";
    g.validate();
    return g;
}

ChartGrid periodic_grid(int n, double period) {
    ChartGrid g;
    g.nx = g.ny = n;
    g.hx = g.hy = period / n;
    g.x0 = g.y0 = 0.0;
    g.periodic_x = g.periodic_y = true;
    g.chart_id = "periodic";
    g.validate();
    return g;
}

}  // namespace

TEST_CASE("derivatives of constants vanish") {
    auto g = open_grid(16, 0.0, 1.0);
    Field<double> c(g, 3.25);
    CHECK(interior_max(diff_x(c), 0) == 0.0);
    auto dz = d_dz(c);
    CHECK(interior_max(dz, 0) == 0.0);
}

TEST_CASE("holomorphic linear field: d_dz = 1, d_dzbar = 0") {
    auto g = open_grid(32, -1.0, 1.0);
    auto f = Field<Complex>::generate(g, [](double x, double y) { return Complex(x, y); });
    auto fz = d_dz(f);
    auto fzb = d_dzbar(f);
    for_each_interior(g, 1, [&](int i, int j) {
        CHECK(std::abs(fz.at(i, j) - Complex(1.0, 0.0)) < 1e-12);
        CHECK(std::abs(fzb.at(i, j)) < 1e-12);
    });
}

TEST_CASE("convergence order: halving h divides the d_dz error by ~4") {
    // non-holomorphic cubic: for holomorphic fields the leading x/y stencil
    // errors cancel against each other, so those are unusable as an order probe
    auto fn = [](double x, double y) { return Complex(x * x * x + x * y * y, 0.0); };
    auto exact = [](double x, double y) {
        return 0.5 * Complex(3.0 * x * x + y * y, -2.0 * x * y);
    };
    auto err = [&](int n) {
        auto g = open_grid(n, -1.0, 1.0);
        auto f = Field<Complex>::generate(g, fn);
        auto fz = d_dz(f);
        double e = 0.0;
        for_each_interior(g, 1, [&](int i, int j) {
            e = std::max(e, std::abs(fz.at(i, j) - exact(g.x(i), g.y(j))));
        });
        return e;
    };
    const double e1 = err(33), e2 = err(65);
    CHECK(e1 / e2 >= 3.5);
    CHECK(e1 / e2 <= 4.5);
}

TEST_CASE("fourth-order stencils gain two orders") {
    auto quint = [](double x, double y) {
        Complex z(x, y);
        return z * z * z * z * z;
    };
    auto err = [&](int n) {
        auto g = open_grid(n, -1.0, 1.0);
        auto f = Field<Complex>::generate(g, quint);
        auto fz = d_dz(f, 4);
        double e = 0.0;
        for_each_interior(g, 2, [&](int i, int j) {
            Complex z(g.x(i), g.y(j));
            e = std::max(e, std::abs(fz.at(i, j) - 5.0 * z * z * z * z));
        });
        return e;
    };
    const double e1 = err(33), e2 = err(65);
    CHECK(e1 / e2 >= 12.0);
}

TEST_CASE("conj(d_dz(f)) equals d_dzbar(conj(f)) exactly") {
    auto g = open_grid(16, -1.0, 1.0);
    auto f = Field<Complex>::generate(
        g, [](double x, double y) { return Complex(std::sin(x + 2 * y), x * y - y); });
    Field<Complex> fc(g);
    for (std::size_t k = 0; k < f.values.size(); ++k) fc.values[k] = std::conj(f.values[k]);
    auto a = d_dz(f);
    auto b = d_dzbar(fc);
    for (std::size_t k = 0; k < a.values.size(); ++k)
        CHECK(std::conj(a.values[k]) == b.values[k]);
}

TEST_CASE("mixed derivatives commute to O(h^2)") {
    auto g = open_grid(65, -1.0, 1.0);
    auto f = Field<double>::generate(
        g, [](double x, double y) { return std::sin(2.0 * x) * std::cos(y) + x * x * y; });
    auto ab = d_dzbar(d_dz(f));
    auto ba = d_dz(d_dzbar(f));
    double e = 0.0;
    for_each_interior(g, 2, [&](int i, int j) { e = std::max(e, std::abs(ab.at(i, j) - ba.at(i, j))); });
    CHECK(e < 5.0 * g.hx * g.hx);
}

TEST_CASE("integrate: unit box, periodic trapezoid, zero field") {
    auto g = open_grid(33, 0.0, 1.0);
    CHECK(integrate(Field<double>(g, 1.0)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(integrate(Field<double>(g)) == 0.0);

    // periodic sum of sin^2 x over [0,2pi)^2: exactly pi * 2pi per direction
    auto p = periodic_grid(16, 2.0 * M_PI);
    auto s = Field<double>::generate(p, [](double x, double) { return std::sin(x) * std::sin(x); });
    CHECK(integrate(s) == doctest::Approx(M_PI * 2.0 * M_PI).epsilon(1e-13));
}

TEST_CASE("midpoint: constants, linear fields, periodic wrap") {
    auto g = open_grid(8, 0.0, 1.0);
    Field<double> c(g, 2.5);
    CHECK(midpoint(c, 3, 4, Direction::X) == 2.5);

    auto lin = Field<double>::generate(g, [](double x, double y) { return 3.0 * x - y; });
    CHECK(midpoint(lin, 2, 5, Direction::X) ==
          doctest::Approx(3.0 * (g.x(2) + 0.5 * g.hx) - g.y(5)));

    CHECK_THROWS_AS(midpoint(lin, g.nx - 1, 0, Direction::X), format_error);

    auto p = periodic_grid(8, 1.0);
    auto saw = Field<double>::generate(p, [](double x, double) { return x; });
    // wrap averages the last node with the first
    CHECK(midpoint(saw, p.nx - 1, 0, Direction::X) ==
          doctest::Approx(0.5 * (p.x(p.nx - 1) + p.x(0))));
}

TEST_CASE("grid validation") {
    ChartGrid g;
    g.nx = 4;
    g.ny = 16;
    g.hx = g.hy = 0.1;
    CHECK_THROWS_AS(g.validate(), format_error);
    g.nx = 16;
    g.hx = 0.0;
    CHECK_THROWS_AS(g.validate(), format_error);
}
