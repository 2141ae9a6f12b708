#pragma once

#include "intersect.hpp"
#include "kronecker.hpp"

namespace cantorlab {

/// Local foliation charts near the tangency: graphs over z parameterized by
/// the leaf label w,
///   unstable leaf:  z -> w + b_u z^2 + p_u(z) + sigma_u w z
///   stable leaf:    z -> w + b_s z^2 + p_s(z) + sigma_s w z + c_tan * mu.
/// The graph difference at leaf 0 is (b_u - b_s) z^2 + c_tan mu + (p_u - p_s)(z).
struct TangencyChart {
    cplx b_u{0.5, 0.0};
    cplx b_s{-0.5, 0.0};
    cplx c_tan{1.0, 0.0};
    cplx sigma_u{0.0};
    cplx sigma_s{0.0};
    std::vector<cplx> p_u;  // polynomial coefficients, constant term first
    std::vector<cplx> p_s;

    cplx b_tan() const { return b_u - b_s; }
    json to_json() const;
    static TangencyChart from_json(const json& j);
};

/// Model unfolding of a quadratic tangency: two expanding Markov disk systems
/// with marked fixed-point letters, base configurations of the tangency-disk
/// coordinate, saddle eigenvalues with optional linear drift in mu, and the
/// relative motion c^u(mu) = B mu + r_coeff mu^2 of the unstable configuration
/// (the stable one is pinned at 0).
struct UnfoldingModel {
    CantorSystem sys_u, sys_s;
    int theta_u = 0, theta_s = 0;  // fixed-point letters; constant tails live here
    MapExpr hu0, hs0;              // base configurations at mu = 0
    cplx lambda_u, lambda_s;       // |lambda_u| > 1 > |lambda_s| > 0
    cplx drift_u{0.0}, drift_s{0.0};  // lambda(mu) = lambda * (1 + drift * mu)
    Mat2 B;
    cplx r_coeff{0.0};
    TangencyChart chart;
    double validity_radius = 0.25;
    bool aligned = true;  // tangency normalization hu0(c_u) = hs0(c_s) = 0

    enum class ZetaMode { Auto, Generic, Resonant };
    ZetaMode zeta_mode = ZetaMode::Auto;
    cplx zeta{1.0, 0.0};  // used in Generic mode

    // Derived at construction:
    cplx dh_u0{1.0}, dh_s0{1.0};  // base configuration derivatives at the base points
    cplx dcomp{1.0};              // D((h^u)^{-1} o h^s)(0) = dh_s0 / dh_u0

    cplx lambda_u_at(cplx mu) const { return lambda_u * (1.0 + drift_u * mu); }
    cplx lambda_s_at(cplx mu) const { return lambda_s * (1.0 + drift_s * mu); }
    cplx c_u(cplx mu) const { return B.apply(mu) + r_coeff * mu * mu; }

    /// Resolves the zeta branch: Generic keeps zeta and targets
    /// v = zeta / dcomp; Resonant sets zeta = dcomp and targets v = 1; Auto
    /// decides by a genericity check of the eigenvalues.
    struct ZetaChoice {
        bool generic = false;
        cplx zeta;
        cplx target;
    };
    ZetaChoice resolve_zeta(double tol = 1e-9, int coeff_bound = 50) const;

    json to_json() const;
    static UnfoldingModel from_json(const json& j);
};

/// Builds and validates a model from its JSON description (see from_json);
/// eigenvalues default to the branch multipliers at the fixed points, and a
/// perturbation polynomial a z^2 prod (z - q_i)^k may be folded into the
/// unstable chart.
UnfoldingModel make_generic_family(const json& params);

struct TangencyPoint {
    cplx w;         // leaf-plane sample
    cplx z;         // solved tangency coordinate
    double residual = 0.0;
    bool converged = false;
};

struct TangencyDiskResult {
    std::vector<TangencyPoint> points;
    cplx second_derivative_difference;  // at the first solved point
    json to_json() const;
};

/// Newton-solves the equal-slope equation of the two foliations for z = a(w)
/// over a deterministic spread of w samples in the window disk.
TangencyDiskResult tangency_disk(const UnfoldingModel& model, cplx mu, int w_count = 64,
                                 double w_radius = 0.5);

/// Configurations at parameter mu: (hu0 shifted by c^u(mu), hs0).
std::pair<Configuration, Configuration> configurations_at(const UnfoldingModel& model, cplx mu);

/// Renormalized configuration pair at depths (m, n) together with the exact
/// affine comparison map A_u o A_s^{-1} and its frozen-coefficient
/// approximation
///   z -> lambda_u^m lambda_s^n dcomp z - lambda_u^m (B mu) / dh_u0.
struct RenormalizedPair {
    int m = 0, n = 0;
    Configuration exact_u, exact_s;
    AffineMap comparison;  // exact, from the computed normalizations
    AffineMap approx;      // closed form at mu-independent eigenvalues
    double scale_rel_err = 0.0;
    double trans_abs_err = 0.0;
    double error = 0.0;  // scale_rel_err + trans_abs_err
    double residual_u = 0.0;  // sup distance of the scaled configuration to the limit geometry
    double residual_s = 0.0;
    json to_json() const;
};

RenormalizedPair renormalized_pair(const UnfoldingModel& model, cplx mu, int m, int n,
                                   bool with_residuals = false, int grid_n = 17);

/// Preimage of the ball B_delta(nu) under the translation part of the
/// comparison map, mu -> -lambda_u^m (B mu) / dh_u0: an ellipse described by
/// its center and inscribed/circumscribed radii.
struct ParamRegion {
    cplx center;
    double radius = 0.0;        // inscribed (certified) radius
    double radius_outer = 0.0;  // circumscribed radius
    json to_json() const;
};

ParamRegion select_parameters(const UnfoldingModel& model, cplx nu, double delta, int m);

/// Tangency-parameter scan over a grid of the eps-disk. Cell centers with a
/// RobustNonempty verdict are marked; Unknown cells are counted separately.
struct ScanRow {
    double eps = 0.0;
    int grid = 0;
    int depth = 0;
    double margin = 0.0;
    int cells_inside = 0;
    int cells_marked = 0;
    int cells_unknown = 0;
    double fraction = 0.0;
    double unknown_fraction = 0.0;
    std::vector<std::uint8_t> mask;  // row-major; 0 outside, 1 empty, 2 marked, 3 unknown
    json to_json(bool with_mask = false) const;
};

ScanRow scan_tangency_set(const UnfoldingModel& model, double eps, int grid_res, int depth,
                          double margin);

/// Measure lower bound from disjoint selected parameter regions along the
/// exponent pairs, normalized by the area of the eps-disk.
struct DensityBound {
    double eps = 0.0;
    double bound = 0.0;  // sum of selected-disk areas / (pi eps^2)
    int pairs_used = 0;
    std::vector<int> pairs_dropped;  // m values dropped to restore disjointness or fit
    json to_json() const;
};

DensityBound density_lower_bound(const UnfoldingModel& model, cplx nu, double delta,
                                 const PairSearch& pairs, double eps);

/// Closed-form geometric ladder sum_{j>=0} |lambda_u|^{-2(m0 + M j)}.
double geometric_ladder_sum(double abs_lambda_u, int m0, int gap);

}  // namespace cantorlab
