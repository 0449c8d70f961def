#pragma once

#include "heisflow/horizontal.hpp"
#include "heisflow/patch.hpp"

#include <array>

namespace heisflow {

/// nu^h and its first parameter derivatives.
struct NormalJet {
    double nu1 = 0.0;
    double nu2 = 0.0;
    double nu1_u = 0.0;
    double nu1_v = 0.0;
    double nu2_u = 0.0;
    double nu2_v = 0.0;
    double norm = 0.0;  ///< |N^h|
};

/// Exact chain-rule derivatives from the patch 2-jet.
NormalJet normal_jet(const Jet2& j, EpsChar eps = {});

/// Central differences of nu^h over (u, v) with step 1e-5 * domain span
/// (one-sided near the boundary).
NormalJet normal_jet_fd(const SurfaceHandle& s, double u, double v, EpsChar eps = {});

/// (d(nu1,y) + d(x,nu2)) / d(x,y). Meaningless when d(x,y) ~ 0.
double mean_curvature_jacobian_formula(const Jet2& j, const NormalJet& n);

/// Signed curvature of the projected flow leaf, nu1 D nu2 - nu2 D nu1 with
/// D = beta d/du - alpha d/dv. Valid at every non-characteristic point.
double mean_curvature_leaf_formula(const Jet2& j, const NormalJet& n);

enum class CurvatureMethod { LocalFormula, FlowOracle };
enum class NormalDerivatives { Exact, FiniteDifference };

/// Which expression produced H: the Jacobian quotient, or (|d(x,y)| < eps_J,
/// tangent plane vertical) the leaf expression.
enum class CurvatureBranch { Jacobian, VerticalTangent, Trace };

struct CurvatureOptions {
    EpsChar eps_char;
    double eps_jacobian = 1e-10;
    NormalDerivatives derivatives = NormalDerivatives::Exact;
    /// With exact derivatives, use the surface's binary128 jets when it has them.
    bool extended_precision = true;
};

struct CurvatureSample {
    double u = 0.0;
    double v = 0.0;
    double H = 0.0;
    CurvatureMethod method = CurvatureMethod::LocalFormula;
    CurvatureBranch branch = CurvatureBranch::Jacobian;
    bool characteristic = false;
    /// |N^h| < 100 eps_char: the quotient loses accuracy this close to the locus.
    bool near_characteristic = false;
    double normal_norm = 0.0;
};

/// The same two-branch evaluation carried out in binary128 on a binary128 jet.
/// Assumes the point is not characteristic.
double mean_curvature_precise(const JetQ& j, double eps_jacobian = 1e-10, CurvatureBranch* branch = nullptr);

/// Horizontal mean curvature X nu1 + Y nu2 at sigma(u, v).
/// Throws CharacteristicPoint.
CurvatureSample mean_curvature_local(const SurfaceHandle& s, double u, double v, const CurvatureOptions& opts = {});

/// (x'y'' - y'x'') / (x'^2 + y'^2)^(3/2). Throws ZeroSpeed.
double signed_curvature_plane(std::array<double, 2> d1, std::array<double, 2> d2);

/// Integrates the flow leaf through (u, v) for `n_steps` each way, projects
/// it to C and differentiates the polyline. Throws CharacteristicPoint or
/// FlowEscapedDomain when the leaf cannot be traced on both sides.
CurvatureSample mean_curvature_flow_oracle(const SurfaceHandle& s, double u, double v, double ds = 1e-3,
                                           int n_steps = 2, EpsChar eps_char = {});

struct GridSpec {
    int nu = 21;
    int nv = 21;
};

/// Node i of an n-point closed grid over [lo, hi] (midpoint when n == 1).
double grid_coordinate(double lo, double hi, int i, int n);

struct HMinimalReport {
    double max_abs_h = 0.0;
    double argmax_u = 0.0;
    double argmax_v = 0.0;
    int evaluated = 0;
    int skipped_characteristic = 0;
    int near_characteristic = 0;
    double tolerance = 0.0;
    bool pass = false;
    bool empty() const { return evaluated == 0; }
};

/// Evaluates mean_curvature_local on a closed grid. Points that are
/// characteristic, or whose |N^h| is below `min_normal_norm`, are skipped.
/// An empty evaluation reports pass = false.
HMinimalReport is_h_minimal(const SurfaceHandle& s, GridSpec grid, double tol, const CurvatureOptions& opts = {},
                            double min_normal_norm = 0.0);

} // namespace heisflow
