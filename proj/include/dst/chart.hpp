#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "dst/errors.hpp"
#include "dst/lorentz.hpp"

namespace dst {

/// Uniform rectangular chart for a local complex coordinate z = x + iy.
/// A periodic direction wraps with period n*h (the node at n*h is the node
/// at 0); an open direction carries its end nodes.
struct ChartGrid {
    int nx = 0, ny = 0;
    double hx = 0.0, hy = 0.0;
    double x0 = 0.0, y0 = 0.0;
    bool periodic_x = false, periodic_y = false;
    std::string chart_id;

    void validate() const {
        if (nx < 8 || ny < 8) throw format_error("ChartGrid: nx, ny must be >= 8");
        if (hx <= 0.0 || hy <= 0.0) throw format_error("ChartGrid: hx, hy must be > 0");
    }

    std::size_t size() const { return static_cast<std::size_t>(nx) * ny; }
    int index(int i, int j) const { return j * nx + i; }
    double x(int i) const { return x0 + i * hx; }
    double y(int j) const { return y0 + j * hy; }
    double period_x() const { return nx * hx; }
    double period_y() const { return ny * hy; }

    bool same_layout(const ChartGrid& o) const {
        return nx == o.nx && ny == o.ny && hx == o.hx && hy == o.hy;
    }

    ChartGrid open_copy() const {
        ChartGrid g = *this;
        g.periodic_x = false;
        g.periodic_y = false;
        return g;
    }
};

namespace detail {
template <typename T>
struct zero_value {
    static T get() { return T::Zero(); }
};
template <>
struct zero_value<double> {
    static double get() { return 0.0; }
};
template <>
struct zero_value<Complex> {
    static Complex get() { return Complex(0.0, 0.0); }
};

template <typename T>
struct complexified {
    using type = T;
};
template <>
struct complexified<double> {
    using type = Complex;
};
template <>
struct complexified<Vec4> {
    using type = CVec4;
};
template <>
struct complexified<Mat4> {
    using type = CMat4;
};

template <typename T>
typename complexified<T>::type to_complex(const T& v) {
    if constexpr (std::is_same_v<T, double>) {
        return Complex(v, 0.0);
    } else if constexpr (std::is_same_v<T, Complex>) {
        return v;
    } else if constexpr (std::is_same_v<T, Vec4> || std::is_same_v<T, Mat4>) {
        return v.template cast<Complex>();
    } else {
        return v;
    }
}
}  // namespace detail

template <typename T>
using complexified_t = typename detail::complexified<T>::type;

/// Per-node values over a chart; node (i,j) sits at index j*nx + i.
template <typename T>
struct Field {
    ChartGrid grid;
    std::vector<T> values;

    Field() = default;
    explicit Field(const ChartGrid& g) : grid(g), values(g.size(), detail::zero_value<T>::get()) {}
    Field(const ChartGrid& g, const T& fill) : grid(g), values(g.size(), fill) {}

    T& at(int i, int j) { return values[grid.index(i, j)]; }
    const T& at(int i, int j) const { return values[grid.index(i, j)]; }

    template <typename Fn>
    static Field generate(const ChartGrid& g, Fn&& fn) {
        Field f(g);
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) f.at(i, j) = fn(g.x(i), g.y(j));
        return f;
    }
};

// --- finite differences ------------------------------------------------------
//
// Second order by default: central stencils inside, one-sided second order at
// open ends. The optional fourth-order variant widens the stencils; residual
// statistics then trim two nodes instead of one at open ends.

template <typename T>
Field<T> diff_x(const Field<T>& f, int order = 2);
template <typename T>
Field<T> diff_y(const Field<T>& f, int order = 2);
template <typename T>
Field<T> diff2_x(const Field<T>& f);
template <typename T>
Field<T> diff2_y(const Field<T>& f);

/// d/dz = (d/dx - i d/dy)/2 and d/dzbar = (d/dx + i d/dy)/2, componentwise.
template <typename T>
Field<complexified_t<T>> d_dz(const Field<T>& f, int order = 2);
template <typename T>
Field<complexified_t<T>> d_dzbar(const Field<T>& f, int order = 2);

/// sum f*w*hx*hy with trapezoid end weights on open directions, plain sum on
/// periodic ones; deterministic pairwise reduction.
double integrate(const Field<double>& f, const Field<double>& weight);
double integrate(const Field<double>& f);

enum class Direction { X, Y };

/// Average of the node value and its +1 neighbour in the given direction,
/// wrapping on periodic grids. Out of range on an open boundary.
template <typename T>
T midpoint(const Field<T>& f, int i, int j, Direction dir);

/// Stencil margin to trim from residual statistics at open ends.
inline int stat_margin(int order) { return order <= 2 ? 1 : 2; }

struct FieldStats {
    double max = 0.0, mean = 0.0, l2 = 0.0;
};

/// |.|-statistics over interior nodes (open directions trimmed by margin).
FieldStats interior_stats(const Field<double>& f, int margin = 1);
FieldStats interior_stats(const Field<Complex>& f, int margin = 1);
double interior_max(const Field<double>& f, int margin = 1);
double interior_max(const Field<Complex>& f, int margin = 1);

template <typename Fn>
void for_each_interior(const ChartGrid& g, int margin, Fn&& fn) {
    const int ilo = g.periodic_x ? 0 : margin;
    const int ihi = g.periodic_x ? g.nx : g.nx - margin;
    const int jlo = g.periodic_y ? 0 : margin;
    const int jhi = g.periodic_y ? g.ny : g.ny - margin;
    for (int j = jlo; j < jhi; ++j)
        for (int i = ilo; i < ihi; ++i) fn(i, j);
}

}  // namespace dst
