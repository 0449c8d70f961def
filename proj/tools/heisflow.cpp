// heisflow: horizontal geometry of surfaces in the Heisenberg group.
//
//   heisflow eval   (--spec FILE | --catalog NAME) [--grid NxM] [--format json|csv] [--out PATH]
//   heisflow locus  (--spec FILE | --catalog NAME) [--grid NxM] [--refine N] [--format json|csv] [--out PATH]
//   heisflow flow   (--spec FILE | --catalog NAME) --start u,v [--ds H] [--steps N] [--format json|csv] [--out PATH]
//   heisflow verify [--suite core|examples|minimal|all] [--seed N] [--out PATH]
//
// Exit codes: 0 ok, 1 verification failure, 2 input error.
#include "heisflow/builders.hpp"
#include "heisflow/error.hpp"
#include "heisflow/flow.hpp"
#include "heisflow/locus.hpp"
#include "heisflow/report.hpp"
#include "heisflow/surface_spec.hpp"
#include "heisflow/verify.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

using namespace heisflow;

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitInput = 2;

struct SurfaceArgs {
    std::string spec_path;
    std::string catalog;
    double radius = 1.0;
};

struct OutputArgs {
    std::string out;
    std::string format = "json";
};

void add_surface_options(CLI::App* cmd, SurfaceArgs& a)
{
    auto* spec = cmd->add_option("--spec", a.spec_path, "surface description (JSON file)")->check(CLI::ExistingFile);
    auto* cat = cmd->add_option("--catalog", a.catalog, "built-in surface name");
    spec->excludes(cat);
    cmd->add_option("--radius", a.radius, "radius for --catalog cylinder");
}

void add_output_options(CLI::App* cmd, OutputArgs& o)
{
    cmd->add_option("--out", o.out, "output path (default: stdout)");
    cmd->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
}

SurfaceHandle load_surface(const SurfaceArgs& a)
{
    if (!a.catalog.empty()) {
        CatalogParams p;
        p.radius = a.radius;
        return catalog_get(a.catalog, p);
    }
    if (a.spec_path.empty())
        throw Error(ErrorCode::InvalidSpec, "give --spec FILE or --catalog NAME");
    std::ifstream in(a.spec_path);
    if (!in)
        throw Error(ErrorCode::ParseError, "cannot read " + a.spec_path);
    std::ostringstream text;
    text << in.rdbuf();
    return build_surface(parse_surface_spec(text.str()));
}

GridSpec parse_grid(const std::string& s)
{
    const auto x = s.find('x');
    try {
        if (x == std::string::npos)
            throw std::invalid_argument(s);
        std::size_t end1 = 0, end2 = 0;
        const std::string a = s.substr(0, x), b = s.substr(x + 1);
        const int nu = std::stoi(a, &end1), nv = std::stoi(b, &end2);
        if (end1 != a.size() || end2 != b.size() || nu < 1 || nv < 1)
            throw std::invalid_argument(s);
        return {nu, nv};
    } catch (const std::logic_error&) {
        throw Error(ErrorCode::InvalidSpec, "--grid expects NxM with positive N and M, got '" + s + "'");
    }
}

std::array<double, 2> parse_start(const std::string& s)
{
    const auto comma = s.find(',');
    try {
        if (comma == std::string::npos)
            throw std::invalid_argument(s);
        std::size_t e1 = 0, e2 = 0;
        const std::string a = s.substr(0, comma), b = s.substr(comma + 1);
        const double u = std::stod(a, &e1), v = std::stod(b, &e2);
        if (e1 != a.size() || e2 != b.size())
            throw std::invalid_argument(s);
        return {u, v};
    } catch (const std::logic_error&) {
        throw Error(ErrorCode::InvalidSpec, "--start expects u,v, got '" + s + "'");
    }
}

EpsChar eps_char_from_env()
{
    const char* raw = std::getenv("HEISFLOW_EPS_CHAR");
    if (!raw || !*raw)
        return std::nullopt;
    char* end = nullptr;
    const double eps = std::strtod(raw, &end);
    if (end == raw || *end != '\0' || !(eps > 0.0) || !std::isfinite(eps))
        throw Error(ErrorCode::InvalidSpec, std::string("HEISFLOW_EPS_CHAR must be a positive number, got '") + raw + "'");
    return eps;
}

void write_output(const OutputArgs& o, const std::string& text)
{
    if (o.out.empty() || o.out == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(o.out, std::ios::binary);
    if (!f)
        throw Error(ErrorCode::InvalidSpec, "cannot write " + o.out);
    f << text;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Horizontal geometry of surfaces in the Heisenberg group"};
    app.require_subcommand(1);

    SurfaceArgs surf;
    OutputArgs out;
    std::string grid = "21x21";
    int refine = 60;
    std::string start;
    double ds = 1e-2;
    int steps = 1000;
    std::string suite = "all";
    std::uint64_t seed = 0;

    auto* eval = app.add_subcommand("eval", "evaluate nu^h and H^h on a parameter grid");
    add_surface_options(eval, surf);
    add_output_options(eval, out);
    eval->add_option("--grid", grid, "grid size NxM (u by v)");

    auto* locus = app.add_subcommand("locus", "detect the characteristic locus");
    add_surface_options(locus, surf);
    add_output_options(locus, out);
    auto* locus_grid = locus->add_option("--grid", grid, "grid size NxM (default 41x41)");
    locus->add_option("--refine", refine, "bisection iterations per crossing")->check(CLI::Range(1, 200));

    auto* flow = app.add_subcommand("flow", "trace one leaf of the horizontal flow");
    add_surface_options(flow, surf);
    add_output_options(flow, out);
    flow->add_option("--start", start, "seed point u,v")->required();
    flow->add_option("--ds", ds, "step in horizontal arc length")->check(CLI::PositiveNumber);
    flow->add_option("--steps", steps, "maximum steps each way")->check(CLI::Range(1, 10000000));

    auto* verify = app.add_subcommand("verify", "run the acceptance checks");
    verify->add_option("--suite", suite, "core, examples, minimal or all")
        ->check(CLI::IsMember({"core", "examples", "minimal", "all"}));
    verify->add_option("--seed", seed, "seed for the random suites");
    verify->add_option("--out", out.out, "output path (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }

    try {
        const EpsChar eps = eps_char_from_env();

        if (*eval) {
            CurvatureOptions opts;
            opts.eps_char = eps;
            const GridReport r = evaluate_grid(load_surface(surf), parse_grid(grid), opts);
            write_output(out, out.format == "csv" ? grid_to_csv(r) : grid_to_json(r));
        } else if (*locus) {
            LocusOptions opts;
            if (locus_grid->count() > 0)
                opts.grid = parse_grid(grid);
            opts.bisect_iterations = refine;
            opts.eps_char = eps;
            const LocusResult r = find_characteristic_locus(load_surface(surf), opts);
            write_output(out, out.format == "csv" ? locus_to_csv(r) : locus_to_json(r));
        } else if (*flow) {
            const SurfaceHandle s = load_surface(surf);
            const auto [u, v] = parse_start(start);
            const FlowTrace t = integrate_flow(s, u, v, ds, steps, eps);
            write_output(out, out.format == "csv" ? trace_to_csv(t) : trace_to_json(t, s.name()));
        } else if (*verify) {
            const VerifyReport r = run_suite(suite, seed);
            write_output(out, report_to_json(r));
            for (const CheckResult& c : r.checks)
                if (!c.passed)
                    std::cerr << "FAIL criterion " << c.criterion << ": " << c.name << " = " << c.value
                              << " (tolerance " << c.tolerance << ")\n";
            return r.passed() ? kExitOk : kExitFailed;
        }
    } catch (const Error& e) {
        std::cerr << "heisflow: ";
        if (e.code() == ErrorCode::ParseError && !surf.spec_path.empty())
            std::cerr << surf.spec_path << ": ";
        std::cerr << e.what() << "\n";
        return kExitInput;
    }
    return kExitOk;
}
