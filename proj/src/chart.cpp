#include "dst/chart.hpp"

#include <cmath>

namespace dst {

namespace {

// Value of f at (i + off, j) resp. (i, j + off), wrapping when periodic.
// Callers keep offsets inside the grid on open directions.
template <typename T>
const T& shifted_x(const Field<T>& f, int i, int j, int off) {
    int k = i + off;
    if (f.grid.periodic_x) k = (k % f.grid.nx + f.grid.nx) % f.grid.nx;
    return f.at(k, j);
}

template <typename T>
const T& shifted_y(const Field<T>& f, int i, int j, int off) {
    int k = j + off;
    if (f.grid.periodic_y) k = (k % f.grid.ny + f.grid.ny) % f.grid.ny;
    return f.at(i, k);
}

template <typename T, typename Shift>
T stencil_1d(const Field<T>& f, int i, int j, int pos, int n, bool periodic, double h, int order,
             Shift&& sh) {
    if (periodic || (pos >= order / 2 && pos < n - order / 2)) {
        if (order == 2) return (sh(f, i, j, +1) - sh(f, i, j, -1)) * (0.5 / h);
        return (sh(f, i, j, -2) - sh(f, i, j, +2) + 8.0 * (sh(f, i, j, +1) - sh(f, i, j, -1))) *
               (1.0 / (12.0 * h));
    }
    // one-sided stencils at open ends, same order as the interior
    const int s = (pos < n / 2) ? +1 : -1;  // direction pointing into the grid
    auto v = [&](int off) -> const T& { return sh(f, i, j, s * off); };
    if (order == 2) {
        return (-3.0 * v(0) + 4.0 * v(1) - v(2)) * (s * 0.5 / h);
    }
    const int edge = (s > 0) ? pos : n - 1 - pos;
    if (edge == 0) {
        return (-25.0 * v(0) + 48.0 * v(1) - 36.0 * v(2) + 16.0 * v(3) - 3.0 * v(4)) *
               (s / (12.0 * h));
    }
    return (-3.0 * v(-1) - 10.0 * v(0) + 18.0 * v(1) - 6.0 * v(2) + v(3)) * (s / (12.0 * h));
}

template <typename T, typename Shift>
T stencil2_1d(const Field<T>& f, int i, int j, int pos, int n, bool periodic, double h,
              Shift&& sh) {
    const double ih2 = 1.0 / (h * h);
    if (periodic || (pos >= 1 && pos < n - 1)) {
        return (sh(f, i, j, +1) - 2.0 * sh(f, i, j, 0) + sh(f, i, j, -1)) * ih2;
    }
    const int s = (pos == 0) ? +1 : -1;
    auto v = [&](int off) -> const T& { return sh(f, i, j, s * off); };
    return (2.0 * v(0) - 5.0 * v(1) + 4.0 * v(2) - v(3)) * ih2;
}

}  // namespace

template <typename T>
Field<T> diff_x(const Field<T>& f, int order) {
    Field<T> d(f.grid);
    const auto& g = f.grid;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            d.at(i, j) = stencil_1d(f, i, j, i, g.nx, g.periodic_x, g.hx, order,
                                    [](const Field<T>& ff, int a, int b, int off) -> const T& {
                                        return shifted_x(ff, a, b, off);
                                    });
    return d;
}

template <typename T>
Field<T> diff_y(const Field<T>& f, int order) {
    Field<T> d(f.grid);
    const auto& g = f.grid;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            d.at(i, j) = stencil_1d(f, i, j, j, g.ny, g.periodic_y, g.hy, order,
                                    [](const Field<T>& ff, int a, int b, int off) -> const T& {
                                        return shifted_y(ff, a, b, off);
                                    });
    return d;
}

template <typename T>
Field<T> diff2_x(const Field<T>& f) {
    Field<T> d(f.grid);
    const auto& g = f.grid;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            d.at(i, j) = stencil2_1d(f, i, j, i, g.nx, g.periodic_x, g.hx,
                                     [](const Field<T>& ff, int a, int b, int off) -> const T& {
                                         return shifted_x(ff, a, b, off);
                                     });
    return d;
}

template <typename T>
Field<T> diff2_y(const Field<T>& f) {
    Field<T> d(f.grid);
    const auto& g = f.grid;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            d.at(i, j) = stencil2_1d(f, i, j, j, g.ny, g.periodic_y, g.hy,
                                     [](const Field<T>& ff, int a, int b, int off) -> const T& {
                                         return shifted_y(ff, a, b, off);
                                     });
    return d;
}

template <typename T>
Field<complexified_t<T>> d_dz(const Field<T>& f, int order) {
    const Field<T> fx = diff_x(f, order);
    const Field<T> fy = diff_y(f, order);
    Field<complexified_t<T>> d(f.grid);
    const Complex half(0.5, 0.0), mhalf_i(0.0, -0.5);
    for (std::size_t k = 0; k < d.values.size(); ++k)
        d.values[k] = half * detail::to_complex(fx.values[k]) +
                      mhalf_i * detail::to_complex(fy.values[k]);
    return d;
}

template <typename T>
Field<complexified_t<T>> d_dzbar(const Field<T>& f, int order) {
    const Field<T> fx = diff_x(f, order);
    const Field<T> fy = diff_y(f, order);
    Field<complexified_t<T>> d(f.grid);
    const Complex half(0.5, 0.0), half_i(0.0, 0.5);
    for (std::size_t k = 0; k < d.values.size(); ++k)
        d.values[k] =
            half * detail::to_complex(fx.values[k]) + half_i * detail::to_complex(fy.values[k]);
    return d;
}

namespace {
double pairwise_sum(const double* v, std::size_t n) {
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t k = 0; k < n; ++k) s += v[k];
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(v, half) + pairwise_sum(v + half, n - half);
}
}  // namespace

double integrate(const Field<double>& f, const Field<double>& weight) {
    const auto& g = f.grid;
    if (!g.same_layout(weight.grid)) throw format_error("integrate: grid mismatch");
    std::vector<double> terms(g.size());
    for (int j = 0; j < g.ny; ++j) {
        double wj = 1.0;
        if (!g.periodic_y && (j == 0 || j == g.ny - 1)) wj = 0.5;
        for (int i = 0; i < g.nx; ++i) {
            double wi = 1.0;
            if (!g.periodic_x && (i == 0 || i == g.nx - 1)) wi = 0.5;
            terms[g.index(i, j)] = f.at(i, j) * weight.at(i, j) * wi * wj;
        }
    }
    return pairwise_sum(terms.data(), terms.size()) * g.hx * g.hy;
}

double integrate(const Field<double>& f) { return integrate(f, Field<double>(f.grid, 1.0)); }

template <typename T>
T midpoint(const Field<T>& f, int i, int j, Direction dir) {
    const auto& g = f.grid;
    if (dir == Direction::X) {
        if (i + 1 >= g.nx && !g.periodic_x)
            throw format_error("midpoint: +x neighbour out of range on open boundary");
        return 0.5 * (f.at(i, j) + shifted_x(f, i, j, +1));
    }
    if (j + 1 >= g.ny && !g.periodic_y)
        throw format_error("midpoint: +y neighbour out of range on open boundary");
    return 0.5 * (f.at(i, j) + shifted_y(f, i, j, +1));
}

namespace {
template <typename T>
FieldStats stats_impl(const Field<T>& f, int margin) {
    FieldStats s;
    double sum = 0.0, sum2 = 0.0;
    std::size_t count = 0;
    for_each_interior(f.grid, margin, [&](int i, int j) {
        const double a = std::abs(f.at(i, j));
        s.max = std::max(s.max, a);
        sum += a;
        sum2 += a * a;
        ++count;
    });
    if (count > 0) {
        s.mean = sum / count;
        s.l2 = std::sqrt(sum2 / count);
    }
    return s;
}
}  // namespace

FieldStats interior_stats(const Field<double>& f, int margin) { return stats_impl(f, margin); }
FieldStats interior_stats(const Field<Complex>& f, int margin) { return stats_impl(f, margin); }
double interior_max(const Field<double>& f, int margin) { return stats_impl(f, margin).max; }
double interior_max(const Field<Complex>& f, int margin) { return stats_impl(f, margin).max; }

// instantiations for the value types the library carries on charts
#define DST_INSTANTIATE_DIFF(T)                                   \
    template Field<T> diff_x<T>(const Field<T>&, int);            \
    template Field<T> diff_y<T>(const Field<T>&, int);            \
    template Field<T> diff2_x<T>(const Field<T>&);                \
    template Field<T> diff2_y<T>(const Field<T>&);                \
    template T midpoint<T>(const Field<T>&, int, int, Direction);

DST_INSTANTIATE_DIFF(double)
DST_INSTANTIATE_DIFF(Complex)
DST_INSTANTIATE_DIFF(Vec4)
DST_INSTANTIATE_DIFF(CVec4)
DST_INSTANTIATE_DIFF(Mat4)
DST_INSTANTIATE_DIFF(CMat4)
#undef DST_INSTANTIATE_DIFF

#define DST_INSTANTIATE_DZ(T)                                             \
    template Field<complexified_t<T>> d_dz<T>(const Field<T>&, int);      \
    template Field<complexified_t<T>> d_dzbar<T>(const Field<T>&, int);

DST_INSTANTIATE_DZ(double)
DST_INSTANTIATE_DZ(Complex)
DST_INSTANTIATE_DZ(Vec4)
DST_INSTANTIATE_DZ(CVec4)
DST_INSTANTIATE_DZ(Mat4)
DST_INSTANTIATE_DZ(CMat4)
#undef DST_INSTANTIATE_DZ

}  // namespace dst
