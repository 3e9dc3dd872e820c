#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dst/chart.hpp"
#include "dst/lorentz.hpp"
#include "dst/surface.hpp"

namespace dst {

/// Self-describing text chart: a key/value header, a `fields` list naming
/// the per-node columns, then one line per node in row-major order (y outer,
/// x inner) with columns x y [f1..f4] [n1..n4] [u] [H] [xi_re xi_im].
/// Values are written with 17 significant digits so write/read round-trips
/// are value-exact.
struct ChartFile {
    ChartGrid grid;
    std::optional<int> euler_char;
    std::optional<Field<Vec4>> f;
    std::optional<Field<Vec4>> n;
    std::optional<Field<double>> u;
    std::optional<Field<double>> H;
    std::optional<Field<Complex>> xi;

    static ChartFile from_surface_data(const SurfaceData& data, bool with_f = true);
    SurfaceData to_surface_data() const;  // requires all fields present
};

void write_chart(const std::string& path, const ChartFile& chart);
ChartFile read_chart(const std::string& path);

struct SummaryRow {
    std::string stat;
    double max = 0.0, mean = 0.0, l2 = 0.0;
};

/// CSV with the fixed versioned header `summary_version,stat,max,mean,l2`.
void write_summary_csv(const std::string& path, const std::vector<SummaryRow>& rows);

std::vector<SummaryRow> summary_rows(const ResidualSummary& residuals);

}  // namespace dst
