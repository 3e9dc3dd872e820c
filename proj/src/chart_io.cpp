#include "dst/chart_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "dst/errors.hpp"

namespace dst {

namespace {

constexpr const char* kMagic = "dstwist-chart";
constexpr int kFormatVersion = 1;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double parse_double(const std::string& tok, const char* what) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(tok, &pos);
        if (pos != tok.size()) throw format_error("");
        if (!std::isfinite(v)) throw format_error("");
        return v;
    } catch (...) {
        throw format_error(std::string("chart: bad ") + what + " value '" + tok + "'");
    }
}

}  // namespace

ChartFile ChartFile::from_surface_data(const SurfaceData& data, bool with_f) {
    ChartFile c;
    c.grid = data.grid;
    c.euler_char = data.euler_char;
    if (with_f) c.f = data.f;
    c.n = data.n;
    c.u = data.u;
    c.H = data.H;
    c.xi = data.xi;
    return c;
}

SurfaceData ChartFile::to_surface_data() const {
    if (!f || !n || !u || !H || !xi)
        throw format_error("chart: surface data requires the f, n, u, H, xi fields");
    SurfaceData d;
    d.grid = grid;
    d.f = *f;
    d.n = *n;
    d.u = *u;
    d.H = *H;
    d.xi = *xi;
    d.euler_char = euler_char;
    return d;
}

void write_chart(const std::string& path, const ChartFile& chart) {
    std::ofstream out(path);
    if (!out) throw format_error("chart: cannot open '" + path + "' for writing");
    const ChartGrid& g = chart.grid;

    out << kMagic << ' ' << kFormatVersion << '\n';
    out << "chart_id " << (g.chart_id.empty() ? "unnamed" : g.chart_id) << '\n';
    out << "nx " << g.nx << '\n' << "ny " << g.ny << '\n';
    out << "hx " << fmt(g.hx) << '\n' << "hy " << fmt(g.hy) << '\n';
    out << "x0 " << fmt(g.x0) << '\n' << "y0 " << fmt(g.y0) << '\n';
    out << "periodic_x " << (g.periodic_x ? 1 : 0) << '\n';
    out << "periodic_y " << (g.periodic_y ? 1 : 0) << '\n';
    if (chart.euler_char) out << "euler_char " << *chart.euler_char << '\n';
    out << "fields";
    if (chart.f) out << " f";
    if (chart.n) out << " n";
    if (chart.u) out << " u";
    if (chart.H) out << " H";
    if (chart.xi) out << " xi";
    out << '\n' << "data\n";

    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            out << fmt(g.x(i)) << ' ' << fmt(g.y(j));
            if (chart.f) {
                const Vec4& v = chart.f->at(i, j);
                for (int c = 0; c < 4; ++c) out << ' ' << fmt(v(c));
            }
            if (chart.n) {
                const Vec4& v = chart.n->at(i, j);
                for (int c = 0; c < 4; ++c) out << ' ' << fmt(v(c));
            }
            if (chart.u) out << ' ' << fmt(chart.u->at(i, j));
            if (chart.H) out << ' ' << fmt(chart.H->at(i, j));
            if (chart.xi) {
                out << ' ' << fmt(chart.xi->at(i, j).real()) << ' '
                    << fmt(chart.xi->at(i, j).imag());
            }
            out << '\n';
        }
    }
    if (!out) throw format_error("chart: write failure on '" + path + "'");
}

ChartFile read_chart(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw format_error("chart: cannot open '" + path + "'");

    std::string magic;
    int version = 0;
    if (!(in >> magic >> version) || magic != kMagic)
        throw format_error("chart: missing '" + std::string(kMagic) + "' signature");
    if (version != kFormatVersion)
        throw format_error("chart: unsupported format version " + std::to_string(version));

    ChartFile chart;
    ChartGrid& g = chart.grid;
    bool has_f = false, has_n = false, has_u = false, has_H = false, has_xi = false;

    std::string key;
    while (in >> key) {
        if (key == "data") break;
        if (key == "chart_id") {
            in >> g.chart_id;
        } else if (key == "nx") {
            in >> g.nx;
        } else if (key == "ny") {
            in >> g.ny;
        } else if (key == "hx" || key == "hy" || key == "x0" || key == "y0") {
            std::string tok;
            in >> tok;
            const double v = parse_double(tok, key.c_str());
            if (key == "hx") g.hx = v;
            else if (key == "hy") g.hy = v;
            else if (key == "x0") g.x0 = v;
            else g.y0 = v;
        } else if (key == "periodic_x" || key == "periodic_y") {
            int v = 0;
            in >> v;
            (key == "periodic_x" ? g.periodic_x : g.periodic_y) = (v != 0);
        } else if (key == "euler_char") {
            int v = 0;
            in >> v;
            chart.euler_char = v;
        } else if (key == "fields") {
            std::string line;
            std::getline(in, line);
            std::istringstream fl(line);
            std::string name;
            while (fl >> name) {
                if (name == "f") has_f = true;
                else if (name == "n") has_n = true;
                else if (name == "u") has_u = true;
                else if (name == "H") has_H = true;
                else if (name == "xi") has_xi = true;
                else throw format_error("chart: unknown field '" + name + "'");
            }
        } else {
            throw format_error("chart: unknown header key '" + key + "'");
        }
        if (!in) throw format_error("chart: malformed header near '" + key + "'");
    }
    if (key != "data") throw format_error("chart: missing data section");
    g.validate();

    const int cols = 2 + (has_f ? 4 : 0) + (has_n ? 4 : 0) + (has_u ? 1 : 0) + (has_H ? 1 : 0) +
                     (has_xi ? 2 : 0);
    if (has_f) chart.f.emplace(g);
    if (has_n) chart.n.emplace(g);
    if (has_u) chart.u.emplace(g);
    if (has_H) chart.H.emplace(g);
    if (has_xi) chart.xi.emplace(g);

    std::string line;
    std::getline(in, line);  // finish the sentinel line
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            if (!std::getline(in, line))
                throw format_error("chart: truncated data section at node (" +
                                   std::to_string(i) + "," + std::to_string(j) + ")");
            std::istringstream ls(line);
            std::vector<double> v;
            std::string tok;
            while (ls >> tok) v.push_back(parse_double(tok, "data"));
            if (static_cast<int>(v.size()) != cols)
                throw format_error("chart: expected " + std::to_string(cols) + " columns, got " +
                                   std::to_string(v.size()));
            std::size_t c = 2;  // the leading x y pair is informational
            if (has_f) {
                chart.f->at(i, j) = Vec4(v[c], v[c + 1], v[c + 2], v[c + 3]);
                c += 4;
            }
            if (has_n) {
                chart.n->at(i, j) = Vec4(v[c], v[c + 1], v[c + 2], v[c + 3]);
                c += 4;
            }
            if (has_u) chart.u->at(i, j) = v[c++];
            if (has_H) chart.H->at(i, j) = v[c++];
            if (has_xi) {
                chart.xi->at(i, j) = Complex(v[c], v[c + 1]);
                c += 2;
            }
        }
    }
    return chart;
}

void write_summary_csv(const std::string& path, const std::vector<SummaryRow>& rows) {
    std::ofstream out(path);
    if (!out) throw format_error("summary: cannot open '" + path + "' for writing");
    out << "summary_version,stat,max,mean,l2\n";
    for (const auto& r : rows)
        out << 1 << ',' << r.stat << ',' << fmt(r.max) << ',' << fmt(r.mean) << ',' << fmt(r.l2)
            << '\n';
}

std::vector<SummaryRow> summary_rows(const ResidualSummary& r) {
    auto row = [](const char* name, const FieldStats& s) {
        return SummaryRow{name, s.max, s.mean, s.l2};
    };
    return {row("conformality", r.conformality), row("gauss", r.gauss),
            row("codazzi", r.codazzi), row("structure_i", r.structure_i),
            row("gauss_identity", r.gauss_identity)};
}

}  // namespace dst
