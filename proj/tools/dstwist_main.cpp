#include <CLI11.hpp>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "dst/chart_io.hpp"
#include "dst/energy.hpp"
#include "dst/errors.hpp"
#include "dst/frames.hpp"
#include "dst/surface.hpp"
#include "dst/twistor.hpp"

using namespace dst;

namespace {

// exit codes: 0 pass, 2 I/O or format, 3 geometry validation,
// 4 residual-test failure, 5 solver/consistency failure
constexpr int kExitFormat = 2;
constexpr int kExitGeometry = 3;
constexpr int kExitResidual = 4;
constexpr int kExitSolver = 5;

struct Thresholds {
    double j1 = 10.0, j2 = 10.0, conformal = 10.0, harmonic = 25.0, zcc = 25.0;  // * h^2
    double horizontal_abs = 1e-10;
    double conformality_rel = 0.05;
    double reconstruct_max_residual = 1e-3;
};

Thresholds load_thresholds(const std::string& path) {
    Thresholds t;
    if (path.empty()) return t;  // compiled defaults mirror config/thresholds.json
    std::ifstream in(path);
    if (!in) throw format_error("config: cannot open '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw format_error("config: parse failure: " + std::string(e.what()));
    }
    if (j.value("version", 0) != 1) throw format_error("config: unsupported version");
    const auto& c = j.at("h2_coefficients");
    t.j1 = c.value("j1", t.j1);
    t.j2 = c.value("j2", t.j2);
    t.conformal = c.value("conformal", t.conformal);
    t.harmonic = c.value("harmonic", t.harmonic);
    t.zcc = c.value("zcc", t.zcc);
    t.horizontal_abs = j.at("absolute").value("horizontal", t.horizontal_abs);
    t.conformality_rel = j.value("conformality_rel", t.conformality_rel);
    t.reconstruct_max_residual = j.value("reconstruct_max_residual", t.reconstruct_max_residual);
    return t;
}

Complex parse_complex(std::string s) {
    auto fail = [&] { throw format_error("cannot parse complex number '" + s + "'"); };
    std::erase(s, ' ');
    if (s.empty()) fail();
    if (s == "i" || s == "+i") return Complex(0.0, 1.0);
    if (s == "-i") return Complex(0.0, -1.0);

    const bool has_i = s.back() == 'i';
    if (has_i) s.pop_back();
    // split at the last top-level +/- (not an exponent sign, not leading)
    std::size_t split = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;) {
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    try {
        if (!has_i) {
            std::size_t pos = 0;
            const double re = std::stod(s, &pos);
            if (pos != s.size()) fail();
            return Complex(re, 0.0);
        }
        if (split == std::string::npos) {
            std::size_t pos = 0;
            const double im = std::stod(s, &pos);
            if (pos != s.size()) fail();
            return Complex(0.0, im);
        }
        std::size_t pos = 0;
        const double re = std::stod(s.substr(0, split), &pos);
        if (pos != split) fail();
        std::string imtok = s.substr(split);
        if (imtok == "+") imtok = "1";
        if (imtok == "-") imtok = "-1";
        const double im = std::stod(imtok, &pos);
        if (pos != imtok.size()) fail();
        return Complex(re, im);
    } catch (const format_error&) {
        throw;
    } catch (...) {
        fail();
    }
    return {};
}

std::vector<Complex> parse_lambda_list(const std::string& arg) {
    std::vector<Complex> out;
    std::size_t start = 0;
    while (start <= arg.size()) {
        const std::size_t comma = arg.find(',', start);
        const std::string tok = arg.substr(start, comma == std::string::npos
                                                      ? std::string::npos
                                                      : comma - start);
        if (tok == "roots8") {
            for (int k = 0; k < 8; ++k) out.push_back(std::polar(1.0, 2.0 * M_PI * k / 8.0));
        } else if (!tok.empty()) {
            out.push_back(parse_complex(tok));
        }
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (out.empty()) throw format_error("empty lambda list");
    return out;
}

/// Surface data from a chart file: stored fields when complete, otherwise
/// analyzed from the immersion.
SurfaceData surface_from_chart(const ChartFile& chart) {
    if (chart.f && chart.n && chart.u && chart.H && chart.xi) return chart.to_surface_data();
    if (!chart.f) throw format_error("chart does not carry the immersion field f");
    SurfaceData d = analyze(ConformalImmersion{chart.grid, *chart.f});
    d.euler_char = chart.euler_char;
    return d;
}

void print_summary(const SurfaceData& d) {
    auto line = [](const char* name, const FieldStats& s) {
        std::printf("  %-14s max %.3e  mean %.3e  l2 %.3e\n", name, s.max, s.mean, s.l2);
    };
    std::printf("residual summary (interior):\n");
    line("conformality", d.residuals.conformality);
    line("gauss", d.residuals.gauss);
    line("codazzi", d.residuals.codazzi);
    line("structure(i)", d.residuals.structure_i);
    line("gauss_ident", d.residuals.gauss_identity);
}

// --- subcommands ---------------------------------------------------------------

int cmd_generate(const std::string& kind, double c, double rho, int n, double radius, int nx,
                 int ny, double ylen, bool exact, const std::string& out) {
    ChartFile chart;
    if (kind == "sphere") {
        const ChartGrid grid = sphere_grid(radius, n);
        if (exact) {
            chart = ChartFile::from_surface_data(exact_sphere_data(c, grid));
        } else {
            chart.grid = grid;
            chart.f = gen_umbilic_sphere(c, grid).f;
            chart.euler_char = 2;
        }
        chart.grid.chart_id = "sphere";
    } else if (kind == "cylinder") {
        const ChartGrid grid = cylinder_grid(rho, nx, ny, ylen);
        if (exact) {
            chart = ChartFile::from_surface_data(exact_cylinder_data(rho, grid));
        } else {
            chart.grid = grid;
            chart.f = gen_hyperbolic_cylinder(rho, grid).f;
        }
        chart.grid.chart_id = "cylinder";
    } else {
        throw format_error("unknown generator kind '" + kind + "' (sphere|cylinder)");
    }
    write_chart(out, chart);
    std::printf("wrote %s (%dx%d nodes%s)\n", out.c_str(), chart.grid.nx, chart.grid.ny,
                exact ? ", exact fields" : "");
    return 0;
}

int cmd_analyze(const std::string& in, const std::string& out, const std::string& summary,
                const Thresholds& thr) {
    const ChartFile chart = read_chart(in);
    if (!chart.f) throw format_error("analyze: chart does not carry the immersion field f");
    const ConformalImmersion imm{chart.grid, *chart.f};
    SurfaceData d = analyze(imm);
    d.euler_char = chart.euler_char;
    print_summary(d);

    if (!out.empty()) write_chart(out, ChartFile::from_surface_data(d));
    auto rows = summary_rows(d.residuals);

    // conformality is judged relative to the metric scale e^{2u}
    auto conf = conformality_residual(imm);
    double rel = 0.0;
    for_each_interior(d.grid, 1, [&](int i, int j) {
        rel = std::max(rel, conf.at(i, j) * std::exp(-2.0 * d.u.at(i, j)));
    });
    rows.push_back({"conformality_rel", rel, rel, rel});
    if (!summary.empty()) write_summary_csv(summary, rows);

    if (rel > thr.conformality_rel) {
        std::printf("FLAG: chart is not conformal, relative residual %.3e > %.3e\n", rel,
                    thr.conformality_rel);
        return kExitGeometry;
    }
    return 0;
}

int cmd_check(const std::string& in, const std::string& tests_arg, const std::string& lambda_arg,
              const Thresholds& thr) {
    const ChartFile chart = read_chart(in);
    const SurfaceData d = surface_from_chart(chart);
    const double h = std::max(d.grid.hx, d.grid.hy);
    const double h2 = h * h;

    std::vector<std::string> tests;
    {
        std::size_t start = 0;
        while (start <= tests_arg.size()) {
            const std::size_t comma = tests_arg.find(',', start);
            const std::string tok = tests_arg.substr(start, comma == std::string::npos
                                                               ? std::string::npos
                                                               : comma - start);
            if (!tok.empty()) tests.push_back(tok);
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
    }
    if (tests.empty()) tests = {"j1", "j2", "conformal", "horizontal", "harmonic", "zcc"};

    std::optional<HolomorphicityReport> holo;
    auto holo_report = [&]() -> const HolomorphicityReport& {
        if (!holo) holo = holomorphicity_report(d);
        return *holo;
    };

    bool all_pass = true;
    auto judge = [&](const std::string& name, double value, double threshold) {
        const bool ok = value <= threshold;
        all_pass = all_pass && ok;
        std::printf("%-11s %.6e  threshold %.6e  %s\n", name.c_str(), value, threshold,
                    ok ? "PASS" : "FAIL");
    };

    for (const auto& t : tests) {
        if (t == "j1") {
            judge(t, holo_report().j_prime_data, thr.j1 * h2);
        } else if (t == "j2") {
            judge(t, holo_report().j_dprime_data, thr.j2 * h2);
        } else if (t == "conformal") {
            judge(t, holo_report().conformal_data, thr.conformal * h2);
        } else if (t == "horizontal") {
            judge(t, interior_max(horizontality_residual(d), 0), thr.horizontal_abs);
        } else if (t == "harmonic") {
            const auto cf = analytic_connection(d.u, d.H, d.xi);
            judge(t, interior_max(harmonicity_norm(harmonicity_residual(cf)), 3),
                  thr.harmonic * h2);
        } else if (t == "zcc") {
            const auto cf = analytic_connection(d.u, d.H, d.xi);
            double worst = 0.0;
            for (const Complex lam : parse_lambda_list(lambda_arg)) {
                const auto res = zcc_residual(lambda_connection(cf, lam));
                double m = 0.0;
                for_each_interior(d.grid, 3, [&](int i, int j) {
                    m = std::max(m, res.at(i, j).cwiseAbs().maxCoeff());
                });
                worst = std::max(worst, m);
            }
            judge(t, worst, thr.zcc * h2);
        } else {
            throw format_error("unknown check '" + t +
                               "' (j1,j2,conformal,horizontal,harmonic,zcc)");
        }
    }
    return all_pass ? 0 : kExitResidual;
}

int cmd_deform(const std::string& in, const std::string& lambda_arg, const std::string& out) {
    const Complex lambda = parse_complex(lambda_arg);
    if (std::abs(std::abs(lambda) - 1.0) > 1e-12)
        throw format_error("deform: |lambda| must be 1");
    const SurfaceData d = surface_from_chart(read_chart(in));
    const SurfaceData def = associated_family(d, lambda);
    if (!out.empty()) write_chart(out, ChartFile::from_surface_data(def));

    const FamilyReport rep = verify_family(d, def, lambda);
    const Complex factor = 1.0 / (lambda * lambda);
    std::printf("associated family at lambda = %g%+gi (xi factor %g%+gi)\n", lambda.real(),
                lambda.imag(), factor.real(), factor.imag());
    std::printf("  |H_l - H|          max %.3e\n", rep.dH);
    std::printf("  |xi_l - l^-2 xi|   max %.3e\n", rep.dxi);
    std::printf("  |u_l - u|          max %.3e\n", rep.du);
    std::printf("  |K_l - K|          max %.3e\n", rep.dK);
    const int ci = d.grid.nx / 2, cj = d.grid.ny / 2;
    std::printf("  xi at chart centre: %+.6f%+.6fi -> %+.6f%+.6fi\n", d.xi.at(ci, cj).real(),
                d.xi.at(ci, cj).imag(), def.xi.at(ci, cj).real(), def.xi.at(ci, cj).imag());
    return 0;
}

int cmd_solve(double Hval, const std::string& xi_arg, int nx, int ny, double Lx, double Ly,
              bool open_x, bool open_y, int max_iter, double tol, double damping, double u0,
              const std::string& out, const Thresholds& thr) {
    const Complex xi = parse_complex(xi_arg);
    ChartGrid g;
    g.nx = nx;
    g.ny = ny;
    g.periodic_x = !open_x;
    g.periodic_y = !open_y;
    g.hx = g.periodic_x ? Lx / nx : Lx / (nx - 1);
    g.hy = g.periodic_y ? Ly / ny : Ly / (ny - 1);
    g.x0 = 0.0;
    g.y0 = 0.0;
    g.chart_id = "solved";
    g.validate();

    const Field<double> Hf(g, Hval);
    const Field<Complex> xif(g, xi);
    SolverConfig cfg{max_iter, tol, damping, u0};
    const SolveResult sres = solve_gauss(Hf, xif, g, cfg);
    std::printf("solve_gauss: converged in %d Newton steps, residual %.3e%s\n", sres.newton_iters,
                sres.residual_history.back(),
                sres.monotone_regime ? "" : "  [H^2 <= 1 regime: uniqueness not guaranteed]");
    if (Hval * Hval > 1.0 && std::abs(xi) > 0.0) {
        const auto sg = sinh_gordon_report(sres.u, Hval, xi);
        std::printf("sinh-Gordon normalization: offset %.6f, coefficient %.6f, residual %.3e\n",
                    sg.offset, sg.coefficient, sg.residual_max);
    }

    const ConformalImmersion imm =
        reconstruct_surface(sres.u, Hf, xif, g.nx / 2, g.ny / 2, Mat4::Identity(),
                            thr.reconstruct_max_residual);
    const SurfaceData d = analyze(imm);
    double dH = 0.0;
    for_each_interior(d.grid, 2, [&](int i, int j) {
        dH = std::max(dH, std::abs(d.H.at(i, j) - Hval));
    });
    std::printf("reconstructed surface: analyzed |H - %.6f| max %.3e\n", Hval, dH);
    if (!out.empty()) write_chart(out, ChartFile::from_surface_data(d));
    return 0;
}

int cmd_reconstruct(const std::string& in, const std::string& out, const Thresholds& thr) {
    const ChartFile chart = read_chart(in);
    if (!chart.u || !chart.H || !chart.xi)
        throw format_error("reconstruct: chart must carry the u, H, xi fields");
    const ConformalImmersion imm =
        reconstruct_surface(*chart.u, *chart.H, *chart.xi, chart.grid.nx / 2, chart.grid.ny / 2,
                            Mat4::Identity(), thr.reconstruct_max_residual);
    const SurfaceData d = analyze(imm);
    print_summary(d);
    if (!out.empty()) write_chart(out, ChartFile::from_surface_data(d));
    return 0;
}

int cmd_energy(const std::string& in, std::optional<int> chi, std::optional<double> disk,
               const std::string& csv) {
    const SurfaceData d = surface_from_chart(read_chart(in));
    const Field<double> weight =
        disk ? disk_weight(d.grid, *disk) : Field<double>(d.grid, 1.0);
    if (!chi && d.euler_char) chi = d.euler_char;
    const EnergyReport rep = energy_report(d, weight, chi);

    std::printf("twistor energy  E = %.8f\n", rep.twistor_energy);
    std::printf("willmore energy W = %.8f\n", rep.willmore_energy);
    std::printf("density range [%.6f, %.6f]\n", rep.density_min, rep.density_max);
    if (rep.identity_defect)
        std::printf("identity |2W + E - 2 pi chi| = %.6e (chi = %d)\n", *rep.identity_defect,
                    *rep.euler_char_used);

    if (!csv.empty()) {
        std::vector<SummaryRow> rows{{"twistor_energy", rep.twistor_energy, 0, 0},
                                     {"willmore_energy", rep.willmore_energy, 0, 0},
                                     {"density_min", rep.density_min, 0, 0},
                                     {"density_max", rep.density_max, 0, 0}};
        if (rep.identity_defect) rows.push_back({"identity_defect", *rep.identity_defect, 0, 0});
        write_summary_csv(csv, rows);
    }
    return 0;
}

int cmd_roundtrip(const std::string& in) {
    const ChartFile chart = read_chart(in);
    if (!chart.f) throw format_error("roundtrip: chart does not carry the immersion field f");
    const ConformalImmersion imm{chart.grid, *chart.f};
    const SurfaceData d = analyze(imm);

    const int bi = d.grid.nx / 2, bj = d.grid.ny / 2;
    const AdaptedFrameField frame = adapted_frame(d.f, d.n, d.u);
    const ConformalImmersion rec =
        reconstruct_surface(d.u, d.H, d.xi, bi, bj, frame.F.at(bi, bj));
    const SurfaceData rean = analyze(rec);

    double dist_all = 0.0, dist_int = 0.0, du = 0.0, dH = 0.0, dxi = 0.0;
    for (std::size_t k = 0; k < rec.f.values.size(); ++k)
        dist_all = std::max(dist_all, (rec.f.values[k] - d.f.values[k]).norm());
    for_each_interior(d.grid, 3, [&](int i, int j) {
        dist_int = std::max(dist_int, (rec.f.at(i, j) - d.f.at(i, j)).norm());
        du = std::max(du, std::abs(rean.u.at(i, j) - d.u.at(i, j)));
        dH = std::max(dH, std::abs(rean.H.at(i, j) - d.H.at(i, j)));
        dxi = std::max(dxi, std::abs(rean.xi.at(i, j) - d.xi.at(i, j)));
    });
    std::printf("roundtrip analyze -> reconstruct -> analyze\n");
    std::printf("  node distance max: %.3e interior, %.3e full chart\n", dist_int, dist_all);
    std::printf("  drift: u %.3e  H %.3e  xi %.3e\n", du, dH, dxi);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spacelike CMC surfaces in de Sitter 3-space via twistor lifts"};
    app.require_subcommand(1);
    std::string config_path;
    app.add_option("--config", config_path, "thresholds JSON (defaults compiled in)");

    // generate
    auto* gen = app.add_subcommand("generate", "write a generator surface chart");
    std::string gen_kind, gen_out;
    double gen_c = 0.0, gen_rho = 1.0, gen_radius = 100.0, gen_ylen = 1.0;
    int gen_n = 256, gen_nx = 256, gen_ny = 65;
    bool gen_exact = false;
    gen->add_option("kind", gen_kind, "sphere|cylinder")->required();
    gen->add_option("--c", gen_c, "sphere 4th-coordinate parameter, H = c/sqrt(1+c^2)");
    gen->add_option("--rho", gen_rho, "cylinder parameter, H = (rho/r + r/rho)/2");
    gen->add_option("--n", gen_n, "sphere nodes per side");
    gen->add_option("--radius", gen_radius, "sphere chart truncation radius");
    gen->add_option("--nx", gen_nx, "cylinder nodes around the period");
    gen->add_option("--ny", gen_ny, "cylinder nodes across the strip");
    gen->add_option("--ylen", gen_ylen, "cylinder strip height");
    gen->add_flag("--exact", gen_exact, "write closed-form n, u, H, xi columns");
    gen->add_option("-o,--out", gen_out, "output chart")->required();

    // analyze
    auto* ana = app.add_subcommand("analyze", "compute (u, n, H, xi) and all residuals");
    std::string ana_in, ana_out, ana_summary;
    ana->add_option("-i,--in", ana_in)->required();
    ana->add_option("-o,--out", ana_out, "augmented chart output");
    ana->add_option("--summary", ana_summary, "summary CSV output");

    // check (alias lift)
    std::string chk_in, chk_tests, chk_lambda = "roots8";
    auto add_check = [&](const char* name, const char* desc) {
        auto* c = app.add_subcommand(name, desc);
        c->add_option("-i,--in", chk_in)->required();
        c->add_option("--tests", chk_tests, "comma list: j1,j2,conformal,horizontal,harmonic,zcc");
        c->add_option("--lambda", chk_lambda, "lambda list for zcc (token roots8 expands)");
        return c;
    };
    auto* chk = add_check("check", "run twistor/frame residual tests against thresholds");
    auto* lft = add_check("lift", "alias of check");

    // deform
    auto* def = app.add_subcommand("deform", "associated-family deformation");
    std::string def_in, def_lambda = "i", def_out;
    def->add_option("-i,--in", def_in)->required();
    def->add_option("--lambda", def_lambda, "unit-modulus a+bi")->required();
    def->add_option("-o,--out", def_out, "deformed chart output");

    // solve
    auto* sol = app.add_subcommand("solve", "Gauss-equation solve + reconstruction");
    double sol_H = std::sqrt(2.0), sol_Lx = 2.0 * M_PI, sol_Ly = 2.0 * M_PI, sol_tol = 1e-10,
           sol_damping = 1.0, sol_u0 = 0.0;
    std::string sol_xi = "1", sol_out;
    int sol_nx = 128, sol_ny = 128, sol_maxit = 50;
    bool sol_open_x = false, sol_open_y = false;
    sol->add_option("--H", sol_H, "constant mean curvature")->required();
    sol->add_option("--xi", sol_xi, "constant Hopf coefficient a+bi")->required();
    sol->add_option("--nx", sol_nx);
    sol->add_option("--ny", sol_ny);
    sol->add_option("--Lx", sol_Lx, "chart extent in x");
    sol->add_option("--Ly", sol_Ly, "chart extent in y");
    sol->add_flag("--open-x", sol_open_x, "Dirichlet in x instead of periodic");
    sol->add_flag("--open-y", sol_open_y, "Dirichlet in y instead of periodic");
    sol->add_option("--max-iter", sol_maxit);
    sol->add_option("--tol", sol_tol, "Newton residual tolerance");
    sol->add_option("--damping", sol_damping);
    sol->add_option("--u0", sol_u0, "initial constant u");
    sol->add_option("-o,--out", sol_out, "surface chart output");

    // reconstruct
    auto* rec = app.add_subcommand("reconstruct", "Bonnet reconstruction from (u, H, xi)");
    std::string rec_in, rec_out;
    rec->add_option("-i,--in", rec_in)->required();
    rec->add_option("-o,--out", rec_out);

    // energy
    auto* ene = app.add_subcommand("energy", "twistor and Willmore energies");
    std::string ene_in, ene_csv;
    int ene_chi = 0;
    double ene_disk = 0.0;
    bool ene_has_chi = false, ene_has_disk = false;
    ene->add_option("-i,--in", ene_in)->required();
    ene->add_option("--chi", ene_chi, "Euler characteristic for the energy identity")
        ->each([&ene_has_chi](const std::string&) { ene_has_chi = true; });
    ene->add_option("--disk", ene_disk, "restrict to the disk |z| <= R")
        ->each([&ene_has_disk](const std::string&) { ene_has_disk = true; });
    ene->add_option("--csv", ene_csv, "energy summary CSV output");

    // roundtrip
    auto* rtr = app.add_subcommand("roundtrip", "analyze -> reconstruct -> analyze drift");
    std::string rtr_in;
    rtr->add_option("-i,--in", rtr_in)->required();

    try {
        app.parse(argc, argv);
        const Thresholds thr = load_thresholds(config_path);
        if (gen->parsed())
            return cmd_generate(gen_kind, gen_c, gen_rho, gen_n, gen_radius, gen_nx, gen_ny,
                                gen_ylen, gen_exact, gen_out);
        if (ana->parsed()) return cmd_analyze(ana_in, ana_out, ana_summary, thr);
        if (chk->parsed() || lft->parsed()) return cmd_check(chk_in, chk_tests, chk_lambda, thr);
        if (def->parsed()) return cmd_deform(def_in, def_lambda, def_out);
        if (sol->parsed())
            return cmd_solve(sol_H, sol_xi, sol_nx, sol_ny, sol_Lx, sol_Ly, sol_open_x,
                             sol_open_y, sol_maxit, sol_tol, sol_damping, sol_u0, sol_out, thr);
        if (rec->parsed()) return cmd_reconstruct(rec_in, rec_out, thr);
        if (ene->parsed())
            return cmd_energy(ene_in, ene_has_chi ? std::optional<int>(ene_chi) : std::nullopt,
                              ene_has_disk ? std::optional<double>(ene_disk) : std::nullopt,
                              ene_csv);
        if (rtr->parsed()) return cmd_roundtrip(rtr_in);
        return 0;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitFormat;
    } catch (const format_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitFormat;
    } catch (const geometry_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitGeometry;
    } catch (const solver_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitSolver;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
