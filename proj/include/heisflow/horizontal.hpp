#pragma once

#include "heisflow/heisenberg.hpp"
#include "heisflow/patch.hpp"

#include <optional>

namespace heisflow {

/// Threshold on |N^h| below which a point counts as characteristic.
/// nullopt selects the scale-aware default 1e-9 (1 + |d sigma|).
using EpsChar = std::optional<double>;

double default_eps_char(const Jet2& j);
double resolve_eps_char(const Jet2& j, EpsChar eps);

/// Horizontal part of sigma_u ^H sigma_v: n1 X + n2 Y.
struct HorizontalNormal {
    double n1 = 0.0;
    double n2 = 0.0;
    double norm = 0.0;
    Point3 base;
};

HorizontalNormal horizontal_normal(const Jet2& j);

/// N^h components and their first parameter derivatives (needs the 2-jet).
struct HorizontalNormalJet {
    double n1 = 0.0;
    double n2 = 0.0;
    double n1_u = 0.0;
    double n1_v = 0.0;
    double n2_u = 0.0;
    double n2_v = 0.0;
};

HorizontalNormalJet horizontal_normal_jet(const Jet2& j);

/// N^h as a Euclidean vector, (n1, n2, 2y n1 - 2x n2).
Vec3 horizontal_normal_euclidean(const HorizontalNormal& n);

/// Throws CharacteristicPoint when |N^h| < eps.
HorizontalVec unit_horizontal_normal(const Jet2& j, EpsChar eps = {});

struct CharacteristicTest {
    bool characteristic = false;
    double norm = 0.0;
    double threshold = 0.0;
};

CharacteristicTest is_characteristic(const Jet2& j, EpsChar eps = {});

/// Coefficients of the pulled-back contact form p_u du + p_v dv.
struct InducedFormCoeffs {
    double p_u = 0.0;
    double p_v = 0.0;
};

InducedFormCoeffs induced_form(const Jet2& j);

/// Parameter-space velocity (du, dv) = (beta, -alpha) of the horizontal flow,
/// where (alpha, beta) = (p_u, p_v) / |N^h|.
struct FlowDirection {
    double du = 0.0;
    double dv = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
};

FlowDirection flow_direction(const Jet2& j, EpsChar eps = {});

/// Horizontal components of sigma_*(du d/du + dv d/dv).
HorizontalVec pushforward_horizontal(const Jet2& j, double du, double dv);

/// (alpha, beta) recovered from nu^h and the projection Jacobian
/// D = d(x,y)/d(u,v); only defined when D != 0.
struct AlphaBeta {
    double alpha = 0.0;
    double beta = 0.0;
};

std::optional<AlphaBeta> alpha_beta_projected(const Jet2& j, double eps_jacobian = 1e-10, EpsChar eps = {});

/// Euclidean dot product N . N^h with N = sigma_u x sigma_v.
double normal_compatibility(const Jet2& j);

} // namespace heisflow
