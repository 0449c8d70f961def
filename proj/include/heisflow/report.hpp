#pragma once

#include "heisflow/curvature.hpp"
#include "heisflow/flow.hpp"
#include "heisflow/patch.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace heisflow {

/// One grid node. nu1, nu2 and H are NaN at characteristic nodes.
struct GridRow {
    double u = 0.0;
    double v = 0.0;
    double x = 0.0;
    double y = 0.0;
    double t = 0.0;
    double nu1 = 0.0;
    double nu2 = 0.0;
    double H = 0.0;
    double normal_norm = 0.0;
    bool characteristic = false;
};

struct GridReport {
    std::string surface;
    int nu = 0;
    int nv = 0;
    std::vector<GridRow> rows;  ///< u outer, v fastest
    double max_abs_h = 0.0;     ///< over non-characteristic rows
    int characteristic_count = 0;
};

GridReport evaluate_grid(const SurfaceHandle& s, GridSpec grid, const CurvatureOptions& opts = {});

/// Recomputes max_abs_h and characteristic_count from the rows.
void summarize(GridReport& report);

/// "%.17g"; NaN prints as "nan".
std::string format_number(double x);

std::string grid_to_json(const GridReport& r);
std::string grid_to_csv(const GridReport& r);
GridReport grid_from_json(std::string_view text);
GridReport grid_from_csv(std::string_view text);

std::string trace_to_json(const FlowTrace& t, std::string_view surface);
std::string trace_to_csv(const FlowTrace& t);

} // namespace heisflow
