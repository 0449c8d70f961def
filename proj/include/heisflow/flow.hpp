#pragma once

#include "heisflow/heisenberg.hpp"
#include "heisflow/horizontal.hpp"
#include "heisflow/patch.hpp"

#include <array>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace heisflow {

enum class StopReason {
    DomainExit,
    CharacteristicProximity,
    StepLimit,
};

std::string_view to_string(StopReason r);

/// One leaf of the horizontal flow, traced both ways from a seed. Samples
/// are spaced `ds` apart in horizontal arc length; `arc` starts at 0 on the
/// first sample and the seed sits at `seed_index`.
struct FlowTrace {
    std::vector<std::array<double, 2>> params;
    std::vector<Point3> points;
    std::vector<double> arc;
    double ds = 0.0;
    std::size_t seed_index = 0;
    StopReason stop_backward = StopReason::StepLimit;
    StopReason stop_forward = StopReason::StepLimit;

    std::size_t size() const { return points.size(); }
};

/// Fixed-step classical RK4 on (u', v') = (beta, -alpha), run for at most
/// `max_steps` in each direction from (u0, v0). A direction stops at the
/// domain boundary, when |N^h| drops below 10 eps_char at any stage, or when
/// the direction field reverses inside a step (a characteristic curve was
/// crossed). Throws CharacteristicPoint if the seed itself is characteristic.
FlowTrace integrate_flow(const SurfaceHandle& s, double u0, double v0, double ds, int max_steps,
                         EpsChar eps_char = {});

/// Finite-difference velocity of uniformly spaced samples: fourth order when
/// at least five samples are given, second order otherwise.
std::vector<Vec3> sample_velocity(std::span<const Point3> points, double h);

/// max |omega(gamma')| over the samples. Requires at least three samples.
double horizontality_residual(std::span<const Point3> points, double h);
double horizontality_residual(const FlowTrace& trace);

/// Carnot-Caratheodory length of a horizontal curve given by uniformly
/// spaced samples. Throws NotHorizontal when the horizontality residual
/// exceeds `tolerance`.
double cc_length(std::span<const Point3> points, double h, double tolerance = 1e-6);
double cc_length(const FlowTrace& trace, double tolerance = 1e-6);

/// Signed curvature of the projection to C at sample i, using five-point
/// stencils where the trace allows and three-point ones otherwise.
double projected_signed_curvature(const FlowTrace& trace, std::size_t i);

/// |pi''| at every interior sample of the projection to C (second differences).
std::vector<double> projected_second_derivative(const FlowTrace& trace);

} // namespace heisflow
