#include "heisflow/flow.hpp"

#include "heisflow/curvature.hpp"
#include "heisflow/error.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <variant>

namespace heisflow {

std::string_view to_string(StopReason r)
{
    switch (r) {
    case StopReason::DomainExit: return "domain-exit";
    case StopReason::CharacteristicProximity: return "characteristic-proximity";
    case StopReason::StepLimit: return "step-limit";
    }
    return "unknown";
}

namespace {

using Param = std::array<double, 2>;

class FlowField {
public:
    FlowField(const SurfaceHandle& s, EpsChar eps) : s_(s), eps_(eps) {}

    // Velocity at (u, v), or the reason it cannot be evaluated there.
    std::variant<Param, StopReason> operator()(const Param& p, double sign) const
    {
        if (!s_.domain().contains(p[0], p[1]))
            return StopReason::DomainExit;
        const Jet2 j = s_.eval_jet2(p[0], p[1]);
        const double stop = 10.0 * resolve_eps_char(j, eps_);
        if (!(horizontal_normal(j).norm >= stop))
            return StopReason::CharacteristicProximity;
        const FlowDirection f = flow_direction(j, 0.0);
        return Param{sign * f.du, sign * f.dv};
    }

private:
    const SurfaceHandle& s_;
    EpsChar eps_;
};

std::variant<Param, StopReason> rk4_step(const FlowField& field, const Param& p, double ds, double sign)
{
    std::array<Param, 4> k{};
    const std::array<double, 4> offsets{0.0, 0.5 * ds, 0.5 * ds, ds};
    for (int stage = 0; stage < 4; ++stage) {
        Param q = p;
        if (stage > 0) {
            q[0] += offsets[stage] * k[stage - 1][0];
            q[1] += offsets[stage] * k[stage - 1][1];
        }
        auto r = field(q, sign);
        if (auto* why = std::get_if<StopReason>(&r))
            return *why;
        k[stage] = std::get<Param>(r);
        // A reversal within one step means the leaf ran into the locus.
        if (stage > 0 && k[stage][0] * k[0][0] + k[stage][1] * k[0][1] <= 0.0)
            return StopReason::CharacteristicProximity;
    }
    Param next{
        p[0] + ds / 6.0 * (k[0][0] + 2.0 * k[1][0] + 2.0 * k[2][0] + k[3][0]),
        p[1] + ds / 6.0 * (k[0][1] + 2.0 * k[1][1] + 2.0 * k[2][1] + k[3][1]),
    };
    return next;
}

struct HalfTrace {
    std::vector<Param> params;
    StopReason stop = StopReason::StepLimit;
};

HalfTrace trace_half(const FlowField& field, const SurfaceHandle& s, Param seed, double ds, int max_steps, double sign)
{
    HalfTrace h;
    Param p = seed;
    for (int n = 0; n < max_steps; ++n) {
        auto r = rk4_step(field, p, ds, sign);
        if (auto* why = std::get_if<StopReason>(&r)) {
            h.stop = *why;
            return h;
        }
        p = std::get<Param>(r);
        if (!s.domain().contains(p[0], p[1])) {
            h.stop = StopReason::DomainExit;
            return h;
        }
        h.params.push_back(p);
    }
    h.stop = StopReason::StepLimit;
    return h;
}

double fd_first(std::span<const double> f, std::size_t i, double h)
{
    const std::size_t n = f.size();
    if (n >= 5) {
        if (i >= 2 && i + 2 < n)
            return (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) / (12.0 * h);
        if (i == 0)
            return (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) / (12.0 * h);
        if (i == 1)
            return (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]) / (12.0 * h);
        if (i == n - 1)
            return (25.0 * f[n - 1] - 48.0 * f[n - 2] + 36.0 * f[n - 3] - 16.0 * f[n - 4] + 3.0 * f[n - 5]) / (12.0 * h);
        return (3.0 * f[n - 1] + 10.0 * f[n - 2] - 18.0 * f[n - 3] + 6.0 * f[n - 4] - f[n - 5]) / (12.0 * h);
    }
    if (i > 0 && i + 1 < n)
        return (f[i + 1] - f[i - 1]) / (2.0 * h);
    if (i == 0)
        return (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
    return (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h);
}

} // namespace

FlowTrace integrate_flow(const SurfaceHandle& s, double u0, double v0, double ds, int max_steps, EpsChar eps_char)
{
    if (!(ds > 0.0))
        throw Error(ErrorCode::InvalidSpec, "flow step must be positive");
    // Validates the seed (domain and characteristic).
    flow_direction(s.eval_jet2(u0, v0), eps_char);

    const FlowField field(s, eps_char);
    const Param seed{u0, v0};
    const HalfTrace back = trace_half(field, s, seed, ds, max_steps, -1.0);
    const HalfTrace fwd = trace_half(field, s, seed, ds, max_steps, 1.0);

    FlowTrace t;
    t.ds = ds;
    t.stop_backward = back.stop;
    t.stop_forward = fwd.stop;
    t.params.assign(back.params.rbegin(), back.params.rend());
    t.seed_index = t.params.size();
    t.params.push_back(seed);
    t.params.insert(t.params.end(), fwd.params.begin(), fwd.params.end());
    t.points.reserve(t.params.size());
    t.arc.reserve(t.params.size());
    for (std::size_t i = 0; i < t.params.size(); ++i) {
        t.points.push_back(s.eval(t.params[i][0], t.params[i][1]));
        t.arc.push_back(static_cast<double>(i) * ds);
    }
    return t;
}

std::vector<Vec3> sample_velocity(std::span<const Point3> points, double h)
{
    if (points.size() < 3)
        throw Error(ErrorCode::TooFewSamples, "need at least three samples");
    const std::size_t n = points.size();
    std::vector<double> xs(n), ys(n), ts(n);
    for (std::size_t i = 0; i < n; ++i) {
        xs[i] = points[i].x;
        ys[i] = points[i].y;
        ts[i] = points[i].t;
    }
    std::vector<Vec3> vel(n);
    for (std::size_t i = 0; i < n; ++i)
        vel[i] = {fd_first(xs, i, h), fd_first(ys, i, h), fd_first(ts, i, h)};
    return vel;
}

double horizontality_residual(std::span<const Point3> points, double h)
{
    const std::vector<Vec3> vel = sample_velocity(points, h);
    double worst = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i)
        worst = std::max(worst, std::abs(contact_eval(points[i], vel[i])));
    return worst;
}

double horizontality_residual(const FlowTrace& trace) { return horizontality_residual(trace.points, trace.ds); }

double cc_length(std::span<const Point3> points, double h, double tolerance)
{
    const double residual = horizontality_residual(points, h);
    if (!(residual <= tolerance))
        throw Error(ErrorCode::NotHorizontal,
                    "horizontality residual " + std::to_string(residual) + " exceeds " + std::to_string(tolerance));
    const std::vector<Vec3> vel = sample_velocity(points, h);
    std::vector<double> speed(vel.size());
    for (std::size_t i = 0; i < vel.size(); ++i)
        speed[i] = std::hypot(vel[i].x, vel[i].y);

    // Composite Simpson; an odd interval count closes with Simpson's 3/8 rule.
    const std::size_t intervals = speed.size() - 1;
    double total = 0.0;
    std::size_t end = intervals;
    if (intervals % 2 == 1) {
        if (intervals == 1)
            return 0.5 * h * (speed[0] + speed[1]);
        end = intervals - 3;
        total += 3.0 * h / 8.0 * (speed[end] + 3.0 * speed[end + 1] + 3.0 * speed[end + 2] + speed[end + 3]);
    }
    for (std::size_t i = 0; i + 2 <= end; i += 2)
        total += h / 3.0 * (speed[i] + 4.0 * speed[i + 1] + speed[i + 2]);
    return total;
}

double cc_length(const FlowTrace& trace, double tolerance) { return cc_length(trace.points, trace.ds, tolerance); }

double projected_signed_curvature(const FlowTrace& trace, std::size_t i)
{
    const auto& p = trace.points;
    const double h = trace.ds;
    const std::size_t n = p.size();
    if (i == 0 || i + 1 >= n)
        throw Error(ErrorCode::TooFewSamples, "curvature needs a neighbour on each side");
    std::array<double, 2> d1{}, d2{};
    if (i >= 2 && i + 2 < n) {
        d1 = {(p[i - 2].x - 8.0 * p[i - 1].x + 8.0 * p[i + 1].x - p[i + 2].x) / (12.0 * h),
              (p[i - 2].y - 8.0 * p[i - 1].y + 8.0 * p[i + 1].y - p[i + 2].y) / (12.0 * h)};
        d2 = {(-p[i - 2].x + 16.0 * p[i - 1].x - 30.0 * p[i].x + 16.0 * p[i + 1].x - p[i + 2].x) / (12.0 * h * h),
              (-p[i - 2].y + 16.0 * p[i - 1].y - 30.0 * p[i].y + 16.0 * p[i + 1].y - p[i + 2].y) / (12.0 * h * h)};
    } else {
        d1 = {(p[i + 1].x - p[i - 1].x) / (2.0 * h), (p[i + 1].y - p[i - 1].y) / (2.0 * h)};
        d2 = {(p[i + 1].x - 2.0 * p[i].x + p[i - 1].x) / (h * h), (p[i + 1].y - 2.0 * p[i].y + p[i - 1].y) / (h * h)};
    }
    return signed_curvature_plane(d1, d2);
}

std::vector<double> projected_second_derivative(const FlowTrace& trace)
{
    const auto& p = trace.points;
    const double h2 = trace.ds * trace.ds;
    std::vector<double> out;
    for (std::size_t i = 1; i + 1 < p.size(); ++i) {
        const double ax = (p[i + 1].x - 2.0 * p[i].x + p[i - 1].x) / h2;
        const double ay = (p[i + 1].y - 2.0 * p[i].y + p[i - 1].y) / h2;
        out.push_back(std::hypot(ax, ay));
    }
    return out;
}

} // namespace heisflow
