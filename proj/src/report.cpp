#include "heisflow/report.hpp"

#include "heisflow/error.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <sstream>

namespace heisflow {

namespace {

// "-0" would read back as the integer 0.
std::string json_number(double x)
{
    if (!std::isfinite(x))
        return "null";
    if (x == 0.0 && std::signbit(x))
        return "-0.0";
    return format_number(x);
}

std::string json_string(std::string_view s) { return nlohmann::json(std::string(s)).dump(); }

double parse_double(std::string_view field)
{
    const std::string s(field);
    if (s == "nan" || s == "-nan")
        return std::numeric_limits<double>::quiet_NaN();
    char* end = nullptr;
    const double x = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0')
        throw Error(ErrorCode::ParseError, "bad number '" + s + "'");
    return x;
}

double json_double(const nlohmann::json& v)
{
    return v.is_null() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>();
}

} // namespace

std::string format_number(double x)
{
    if (std::isnan(x))
        return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

GridReport evaluate_grid(const SurfaceHandle& s, GridSpec grid, const CurvatureOptions& opts)
{
    const Domain& d = s.domain();
    GridReport r;
    r.surface = s.name();
    r.nu = grid.nu;
    r.nv = grid.nv;
    r.rows.reserve(static_cast<std::size_t>(grid.nu) * grid.nv);
    for (int i = 0; i < grid.nu; ++i) {
        const double u = grid_coordinate(d.u_min, d.u_max, i, grid.nu);
        for (int k = 0; k < grid.nv; ++k) {
            const double v = grid_coordinate(d.v_min, d.v_max, k, grid.nv);
            const Jet2 j = s.eval_jet2(u, v);
            const CharacteristicTest c = is_characteristic(j, opts.eps_char);
            GridRow row{u, v, j.value.x, j.value.y, j.value.t, 0.0, 0.0, 0.0, c.norm, c.characteristic};
            if (c.characteristic) {
                row.nu1 = row.nu2 = row.H = std::numeric_limits<double>::quiet_NaN();
            } else {
                const HorizontalVec nu = unit_horizontal_normal(j, opts.eps_char);
                row.nu1 = nu.h1;
                row.nu2 = nu.h2;
                row.H = mean_curvature_local(s, u, v, opts).H;
            }
            r.rows.push_back(row);
        }
    }
    summarize(r);
    return r;
}

void summarize(GridReport& report)
{
    report.max_abs_h = 0.0;
    report.characteristic_count = 0;
    for (const GridRow& row : report.rows) {
        if (row.characteristic) {
            ++report.characteristic_count;
            continue;
        }
        if (!(std::abs(row.H) <= report.max_abs_h))
            report.max_abs_h = std::isnan(report.max_abs_h) ? report.max_abs_h : std::abs(row.H);
    }
}

std::string grid_to_json(const GridReport& r)
{
    std::ostringstream os;
    os << "{\n  \"surface\": " << json_string(r.surface) << ",\n";
    os << "  \"grid\": {\"nu\": " << r.nu << ", \"nv\": " << r.nv << "},\n";
    os << "  \"summary\": {\"rows\": " << r.rows.size() << ", \"max_abs_h\": " << json_number(r.max_abs_h)
       << ", \"characteristic_count\": " << r.characteristic_count << "},\n";
    os << "  \"rows\": [";
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
        const GridRow& g = r.rows[i];
        os << (i ? ",\n    " : "\n    ");
        os << "{\"u\": " << json_number(g.u) << ", \"v\": " << json_number(g.v) << ", \"x\": " << json_number(g.x)
           << ", \"y\": " << json_number(g.y) << ", \"t\": " << json_number(g.t) << ", \"nu1\": " << json_number(g.nu1)
           << ", \"nu2\": " << json_number(g.nu2) << ", \"H\": " << json_number(g.H)
           << ", \"norm_nh\": " << json_number(g.normal_norm)
           << ", \"char_flag\": " << (g.characteristic ? "true" : "false") << "}";
    }
    os << "\n  ]\n}\n";
    return os.str();
}

std::string grid_to_csv(const GridReport& r)
{
    std::ostringstream os;
    os << "u,v,x,y,t,nu1,nu2,H,norm_nh,char_flag\n";
    for (const GridRow& g : r.rows) {
        os << format_number(g.u) << ',' << format_number(g.v) << ',' << format_number(g.x) << ',' << format_number(g.y)
           << ',' << format_number(g.t) << ',' << format_number(g.nu1) << ',' << format_number(g.nu2) << ','
           << format_number(g.H) << ',' << format_number(g.normal_norm) << ',' << (g.characteristic ? 1 : 0) << '\n';
    }
    return os.str();
}

GridReport grid_from_json(std::string_view text)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text.begin(), text.end());
        GridReport r;
        r.surface = doc.at("surface").get<std::string>();
        r.nu = doc.at("grid").at("nu").get<int>();
        r.nv = doc.at("grid").at("nv").get<int>();
        for (const auto& row : doc.at("rows")) {
            r.rows.push_back({json_double(row.at("u")), json_double(row.at("v")), json_double(row.at("x")),
                              json_double(row.at("y")), json_double(row.at("t")), json_double(row.at("nu1")),
                              json_double(row.at("nu2")), json_double(row.at("H")), json_double(row.at("norm_nh")),
                              row.at("char_flag").get<bool>()});
        }
        summarize(r);
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
}

GridReport grid_from_csv(std::string_view text)
{
    std::istringstream is{std::string(text)};
    std::string line;
    if (!std::getline(is, line))
        throw Error(ErrorCode::ParseError, "empty CSV");
    GridReport r;
    while (std::getline(is, line)) {
        if (line.empty())
            continue;
        std::vector<std::string> f;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ','))
            f.push_back(cell);
        if (f.size() != 10)
            throw Error(ErrorCode::ParseError, "expected 10 columns, got " + std::to_string(f.size()));
        r.rows.push_back({parse_double(f[0]), parse_double(f[1]), parse_double(f[2]), parse_double(f[3]),
                          parse_double(f[4]), parse_double(f[5]), parse_double(f[6]), parse_double(f[7]),
                          parse_double(f[8]), f[9] == "1"});
    }
    summarize(r);
    return r;
}

std::string trace_to_json(const FlowTrace& t, std::string_view surface)
{
    std::ostringstream os;
    os << "{\n  \"surface\": " << json_string(surface) << ",\n";
    os << "  \"ds\": " << json_number(t.ds) << ",\n";
    os << "  \"seed_index\": " << t.seed_index << ",\n";
    os << "  \"stop_reason\": {\"backward\": \"" << to_string(t.stop_backward) << "\", \"forward\": \""
       << to_string(t.stop_forward) << "\"},\n";
    const double residual = t.size() >= 3 ? horizontality_residual(t) : 0.0;
    os << "  \"horizontality_residual\": " << json_number(residual) << ",\n";
    os << "  \"samples\": [";
    for (std::size_t i = 0; i < t.size(); ++i) {
        os << (i ? ",\n    " : "\n    ");
        os << "{\"u\": " << json_number(t.params[i][0]) << ", \"v\": " << json_number(t.params[i][1])
           << ", \"x\": " << json_number(t.points[i].x) << ", \"y\": " << json_number(t.points[i].y)
           << ", \"t\": " << json_number(t.points[i].t) << ", \"arc\": " << json_number(t.arc[i]) << "}";
    }
    os << "\n  ]\n}\n";
    return os.str();
}

std::string trace_to_csv(const FlowTrace& t)
{
    std::ostringstream os;
    os << "u,v,x,y,t,arc\n";
    for (std::size_t i = 0; i < t.size(); ++i) {
        os << format_number(t.params[i][0]) << ',' << format_number(t.params[i][1]) << ',' << format_number(t.points[i].x)
           << ',' << format_number(t.points[i].y) << ',' << format_number(t.points[i].t) << ','
           << format_number(t.arc[i]) << '\n';
    }
    return os.str();
}

} // namespace heisflow
