#include "unfolding.hpp"

#include <algorithm>
#include <cmath>

#include "builtin.hpp"
#include "errors.hpp"
#include "parallel.hpp"

namespace cantorlab {

namespace {

cplx poly_eval(const std::vector<cplx>& p, cplx z) {
    cplx acc = 0.0;
    for (std::size_t i = p.size(); i-- > 0;) acc = acc * z + p[i];
    return acc;
}

std::vector<cplx> poly_deriv(const std::vector<cplx>& p) {
    std::vector<cplx> d;
    if (p.size() <= 1) return d;
    d.resize(p.size() - 1);
    for (std::size_t k = 1; k < p.size(); ++k) d[k - 1] = static_cast<double>(k) * p[k];
    return d;
}

std::vector<cplx> poly_mul(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<cplx> out(a.size() + b.size() - 1, cplx(0.0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    }
    return out;
}

std::vector<cplx> poly_add(std::vector<cplx> a, const std::vector<cplx>& b) {
    if (a.size() < b.size()) a.resize(b.size(), cplx(0.0));
    for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
    return a;
}

json poly_to_json(const std::vector<cplx>& p) {
    json out = json::array();
    for (cplx c : p) out.push_back(cplx_to_json(c));
    return out;
}

std::vector<cplx> poly_from_json(const json& j) {
    std::vector<cplx> out;
    for (const auto& c : j) out.push_back(cplx_from_json(c));
    return out;
}

/// Branch at letter `a` with the multiplier scaled by `factor` about the
/// fixed point (the base point).
MapExpr drifted_branch(const CantorSystem& sys, int a, cplx factor) {
    if (factor == cplx(1.0)) return sys.branches[a];
    cplx c = sys.base_points[a];
    return MapExpr::compose(MapExpr::affine(factor, c * (1.0 - factor)), sys.branches[a]);
}

MapExpr iterate_inverse(const CantorSystem& sys, int a, cplx factor, int times) {
    MapExpr forward = drifted_branch(sys, a, factor);
    MapExpr f;
    if (auto aff = forward.as_affine()) {
        AffineMap inv = aff->inverse();
        f = MapExpr::affine(inv.scale, inv.offset);
    } else {
        f = MapExpr::inverse_on(forward, sys.pieces[a]);
    }
    MapExpr acc = MapExpr::identity();
    for (int i = 0; i < times; ++i) acc = MapExpr::compose(acc, f);
    return acc;
}

}  // namespace

json TangencyChart::to_json() const {
    return json{{"b_u", cplx_to_json(b_u)},       {"b_s", cplx_to_json(b_s)},
                {"c_tan", cplx_to_json(c_tan)},   {"sigma_u", cplx_to_json(sigma_u)},
                {"sigma_s", cplx_to_json(sigma_s)}, {"p_u", poly_to_json(p_u)},
                {"p_s", poly_to_json(p_s)}};
}

TangencyChart TangencyChart::from_json(const json& j) {
    TangencyChart c;
    if (j.contains("b_u")) c.b_u = cplx_from_json(j.at("b_u"));
    if (j.contains("b_s")) c.b_s = cplx_from_json(j.at("b_s"));
    if (j.contains("c_tan")) c.c_tan = cplx_from_json(j.at("c_tan"));
    if (j.contains("sigma_u")) c.sigma_u = cplx_from_json(j.at("sigma_u"));
    if (j.contains("sigma_s")) c.sigma_s = cplx_from_json(j.at("sigma_s"));
    if (j.contains("p_u")) c.p_u = poly_from_json(j.at("p_u"));
    if (j.contains("p_s")) c.p_s = poly_from_json(j.at("p_s"));
    return c;
}

UnfoldingModel::ZetaChoice UnfoldingModel::resolve_zeta(double tol, int coeff_bound) const {
    ZetaChoice out;
    switch (zeta_mode) {
        case ZetaMode::Generic: out.generic = true; break;
        case ZetaMode::Resonant: out.generic = false; break;
        case ZetaMode::Auto:
            out.generic = genericity_check(lambda_u, lambda_s, tol, coeff_bound).generic;
            break;
    }
    if (out.generic) {
        out.zeta = zeta;
        out.target = zeta / dcomp;
    } else {
        out.zeta = dcomp;
        out.target = cplx(1.0, 0.0);
    }
    return out;
}

namespace {

void finalize_model(UnfoldingModel& m, bool derive_lambda) {
    auto check_letter = [](const CantorSystem& sys, int theta, const char* side) {
        if (theta < 0 || theta >= static_cast<int>(sys.size())) {
            throw DomainError(std::string(side) + " letter out of range");
        }
        if (!sys.adm[theta][theta]) {
            throw DomainError(std::string(side) + " letter must carry an admissible self-loop");
        }
        cplx c = sys.base_points[theta];
        if (std::abs(sys.branches[theta](c) - c) > 1e-8 * (1.0 + std::abs(c))) {
            throw DomainError(std::string(side) + " base point is not a fixed point of its branch");
        }
    };
    check_letter(m.sys_u, m.theta_u, "unstable");
    check_letter(m.sys_s, m.theta_s, "stable");

    cplx cu = m.sys_u.base_points[m.theta_u];
    cplx cs = m.sys_s.base_points[m.theta_s];
    cplx mult_u = m.sys_u.branches[m.theta_u].deriv(cu);
    cplx mult_s = m.sys_s.branches[m.theta_s].deriv(cs);
    if (derive_lambda) {
        m.lambda_u = mult_u;
        m.lambda_s = 1.0 / mult_s;
    } else {
        if (std::abs(m.lambda_u - mult_u) > 1e-6 * (1.0 + std::abs(mult_u))) {
            throw DomainError("lambda_u disagrees with the unstable branch multiplier");
        }
        if (std::abs(m.lambda_s - 1.0 / mult_s) > 1e-6 * (1.0 + std::abs(1.0 / mult_s))) {
            throw DomainError("lambda_s disagrees with the stable branch multiplier");
        }
    }
    if (!(std::abs(m.lambda_u) > 1.0)) throw DomainError("|lambda_u| must exceed 1");
    if (!(std::abs(m.lambda_s) < 1.0) || m.lambda_s == cplx(0.0)) {
        throw DomainError("|lambda_s| must lie in (0, 1)");
    }
    if (m.B.det() == 0.0) throw DomainError("B must be invertible");
    if (m.chart.b_tan() == cplx(0.0)) throw DomainError("tangency must be quadratic (b_u != b_s)");

    if (m.aligned) {
        if (std::abs(m.hu0(cu)) > 1e-8) throw DomainError("hu0 must vanish at the unstable base point");
        if (std::abs(m.hs0(cs)) > 1e-8) throw DomainError("hs0 must vanish at the stable base point");
    }
    m.dh_u0 = m.hu0.deriv(cu);
    m.dh_s0 = m.hs0.deriv(cs);
    if (m.dh_u0 == cplx(0.0) || m.dh_s0 == cplx(0.0)) {
        throw DomainError("base configurations need nonvanishing derivative at the base points");
    }
    m.dcomp = m.dh_s0 / m.dh_u0;
    if (!(m.validity_radius > 0.0)) throw DomainError("validity radius must be positive");
}

CantorSystem load_system(const json& j) {
    if (j.is_object() && j.contains("builtin")) {
        return builtin_system(j.at("builtin").get<std::string>());
    }
    return CantorSystem::from_json(j);
}

}  // namespace

json UnfoldingModel::to_json() const {
    const char* zm = zeta_mode == ZetaMode::Auto ? "auto"
                     : zeta_mode == ZetaMode::Generic ? "generic"
                                                      : "resonant";
    return json{{"systems", json{{"unstable", sys_u.to_json()}, {"stable", sys_s.to_json()}}},
                {"letters", json{{"unstable", sys_u.letters[theta_u]}, {"stable", sys_s.letters[theta_s]}}},
                {"configs", json{{"unstable", hu0.to_json()}, {"stable", hs0.to_json()}}},
                {"lambda_u", cplx_to_json(lambda_u)},
                {"lambda_s", cplx_to_json(lambda_s)},
                {"drift", json{{"u", cplx_to_json(drift_u)}, {"s", cplx_to_json(drift_s)}}},
                {"B", mat2_to_json(B)},
                {"r_coeff", cplx_to_json(r_coeff)},
                {"chart", chart.to_json()},
                {"validity_radius", validity_radius},
                {"aligned", aligned},
                {"zeta_mode", zm},
                {"zeta", cplx_to_json(zeta)}};
}

UnfoldingModel UnfoldingModel::from_json(const json& j) { return make_generic_family(j); }

UnfoldingModel make_generic_family(const json& params) {
    UnfoldingModel m;
    try {
        if (params.is_object() && params.contains("builtin")) {
            return builtin_model(params.at("builtin").get<std::string>());
        }
        m.sys_u = load_system(params.at("systems").at("unstable"));
        m.sys_s = load_system(params.at("systems").at("stable"));
        const auto& letters = params.at("letters");
        m.theta_u = m.sys_u.letter_index(letters.at("unstable").get<std::string>());
        m.theta_s = m.sys_s.letter_index(letters.at("stable").get<std::string>());
        if (m.theta_u < 0 || m.theta_s < 0) throw DomainError("model names an unknown letter");

        m.hu0 = MapExpr::identity();
        m.hs0 = MapExpr::identity();
        if (params.contains("configs")) {
            if (params.at("configs").contains("unstable")) {
                m.hu0 = MapExpr::from_json(params.at("configs").at("unstable"));
            }
            if (params.at("configs").contains("stable")) {
                m.hs0 = MapExpr::from_json(params.at("configs").at("stable"));
            }
        }
        bool derive = !(params.contains("lambda_u") && params.contains("lambda_s"));
        if (!derive) {
            m.lambda_u = cplx_from_json(params.at("lambda_u"));
            m.lambda_s = cplx_from_json(params.at("lambda_s"));
        }
        if (params.contains("drift")) {
            if (params.at("drift").contains("u")) m.drift_u = cplx_from_json(params.at("drift").at("u"));
            if (params.at("drift").contains("s")) m.drift_s = cplx_from_json(params.at("drift").at("s"));
        }
        if (params.contains("B")) m.B = mat2_from_json(params.at("B"));
        if (params.contains("r_coeff")) m.r_coeff = cplx_from_json(params.at("r_coeff"));
        if (params.contains("chart")) m.chart = TangencyChart::from_json(params.at("chart"));
        if (params.contains("validity_radius")) m.validity_radius = params.at("validity_radius").get<double>();
        if (params.contains("aligned")) m.aligned = params.at("aligned").get<bool>();
        if (params.contains("zeta_mode")) {
            const std::string zm = params.at("zeta_mode").get<std::string>();
            if (zm == "auto") m.zeta_mode = UnfoldingModel::ZetaMode::Auto;
            else if (zm == "generic") m.zeta_mode = UnfoldingModel::ZetaMode::Generic;
            else if (zm == "resonant") m.zeta_mode = UnfoldingModel::ZetaMode::Resonant;
            else throw ParseError("unknown zeta_mode '" + zm + "'");
        }
        if (params.contains("zeta")) m.zeta = cplx_from_json(params.at("zeta"));
        if (m.zeta == cplx(0.0)) throw DomainError("zeta must be nonzero");

        // Optional perturbation a z^2 prod (z - q_i)^k folded into the
        // unstable chart polynomial.
        if (params.contains("perturbation")) {
            const auto& pert = params.at("perturbation");
            double amp = pert.at("a").get<double>();
            int k = pert.value("k", 1);
            std::vector<cplx> p{cplx(0.0), cplx(0.0), cplx(amp)};
            if (pert.contains("roots")) {
                for (const auto& rj : pert.at("roots")) {
                    cplx q = cplx_from_json(rj);
                    std::vector<cplx> factor{-q, cplx(1.0)};
                    for (int rep = 0; rep < k; ++rep) p = poly_mul(p, factor);
                }
            }
            m.chart.p_u = poly_add(m.chart.p_u, p);
        }
        finalize_model(m, derive);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad model document: ") + e.what());
    }
    return m;
}

json TangencyDiskResult::to_json() const {
    json pts = json::array();
    for (const auto& p : points) {
        pts.push_back(json{{"w", cplx_to_json(p.w)},
                           {"z", cplx_to_json(p.z)},
                           {"residual", p.residual},
                           {"converged", p.converged}});
    }
    return json{{"points", pts},
                {"second_derivative_difference", cplx_to_json(second_derivative_difference)}};
}

TangencyDiskResult tangency_disk(const UnfoldingModel& model, cplx mu, int w_count,
                                 double w_radius) {
    if (std::abs(mu) > model.validity_radius) throw DomainError("mu outside the validity radius");
    const TangencyChart& ch = model.chart;
    const std::vector<cplx> pu_d = poly_deriv(ch.p_u);
    const std::vector<cplx> pu_dd = poly_deriv(pu_d);
    const std::vector<cplx> ps_d = poly_deriv(ch.p_s);
    const std::vector<cplx> ps_dd = poly_deriv(ps_d);

    auto leaf_label_u = [&](cplx z, cplx w) {
        return (w - ch.b_u * z * z - poly_eval(ch.p_u, z)) / (1.0 + ch.sigma_u * z);
    };
    auto leaf_label_s = [&](cplx z, cplx w) {
        return (w - ch.b_s * z * z - poly_eval(ch.p_s, z) - ch.c_tan * mu) / (1.0 + ch.sigma_s * z);
    };
    auto slope_gap = [&](cplx z, cplx w) {
        cplx su = 2.0 * ch.b_u * z + poly_eval(pu_d, z) + ch.sigma_u * leaf_label_u(z, w);
        cplx ss = 2.0 * ch.b_s * z + poly_eval(ps_d, z) + ch.sigma_s * leaf_label_s(z, w);
        return su - ss;
    };
    auto slope_gap_dz = [&](cplx z, cplx w) {
        cplx den_u = 1.0 + ch.sigma_u * z;
        cplx w0u = leaf_label_u(z, w);
        cplx dw0u = (-2.0 * ch.b_u * z - poly_eval(pu_d, z) - ch.sigma_u * w0u) / den_u;
        cplx den_s = 1.0 + ch.sigma_s * z;
        cplx w0s = leaf_label_s(z, w);
        cplx dw0s = (-2.0 * ch.b_s * z - poly_eval(ps_d, z) - ch.sigma_s * w0s) / den_s;
        cplx du = 2.0 * ch.b_u + poly_eval(pu_dd, z) + ch.sigma_u * dw0u;
        cplx ds = 2.0 * ch.b_s + poly_eval(ps_dd, z) + ch.sigma_s * dw0s;
        return du - ds;
    };

    TangencyDiskResult out;
    out.points.reserve(w_count);
    cplx seed(0.02, 0.01);
    const double golden = kPi * (3.0 - std::sqrt(5.0));
    for (int k = 0; k < w_count; ++k) {
        double r = w_radius * std::sqrt((k + 0.5) / w_count);
        double t = golden * k;
        cplx w = r * cplx(std::cos(t), std::sin(t));
        TangencyPoint pt;
        pt.w = w;
        cplx zz = seed;
        for (int it = 0; it < 60; ++it) {
            cplx f = slope_gap(zz, w);
            if (std::abs(f) < 1e-12) break;
            cplx fp = slope_gap_dz(zz, w);
            if (fp == cplx(0.0)) break;
            zz -= f / fp;
        }
        pt.z = zz;
        pt.residual = std::abs(slope_gap(zz, w));
        pt.converged = pt.residual < 1e-10;
        out.points.push_back(pt);
        if (pt.converged) seed = zz;  // continuation along the sample spiral
    }
    cplx zstar = out.points.empty() ? cplx(0.0) : out.points.front().z;
    out.second_derivative_difference =
        2.0 * ch.b_tan() + poly_eval(pu_dd, zstar) - poly_eval(ps_dd, zstar);
    return out;
}

std::pair<Configuration, Configuration> configurations_at(const UnfoldingModel& model, cplx mu) {
    if (std::abs(mu) > model.validity_radius) throw DomainError("mu outside the validity radius");
    Configuration hu{model.theta_u, MapExpr::compose(MapExpr::affine(1.0, model.c_u(mu)), model.hu0)};
    Configuration hs{model.theta_s, model.hs0};
    return {hu, hs};
}

json RenormalizedPair::to_json() const {
    return json{{"m", m},
                {"n", n},
                {"comparison", json{{"scale", cplx_to_json(comparison.scale)},
                                    {"offset", cplx_to_json(comparison.offset)}}},
                {"approx", json{{"scale", cplx_to_json(approx.scale)},
                                {"offset", cplx_to_json(approx.offset)}}},
                {"scale_rel_err", scale_rel_err},
                {"trans_abs_err", trans_abs_err},
                {"error", error},
                {"residual_u", residual_u},
                {"residual_s", residual_s}};
}

RenormalizedPair renormalized_pair(const UnfoldingModel& model, cplx mu, int m, int n,
                                   bool with_residuals, int grid_n) {
    if (m < 0 || n < 0 || m > 64 || n > 64) throw DomainError("depths must lie in [0, 64]");
    auto [hu, hs] = configurations_at(model, mu);

    cplx factor_u = 1.0 + model.drift_u * mu;
    cplx factor_s = 1.0 + model.drift_s * mu;
    MapExpr fm = iterate_inverse(model.sys_u, model.theta_u, factor_u, m);
    MapExpr fn = iterate_inverse(model.sys_s, model.theta_s, factor_s, n);

    RenormalizedPair out;
    out.m = m;
    out.n = n;
    out.exact_u = Configuration{model.theta_u, MapExpr::compose(hu.map, fm)};
    out.exact_s = Configuration{model.theta_s, MapExpr::compose(hs.map, fn)};

    cplx cu = model.sys_u.base_points[model.theta_u];
    cplx cs = model.sys_s.base_points[model.theta_s];
    auto [au, norm_u] = normalize_affine(out.exact_u, cu);
    auto [as, norm_s] = normalize_affine(out.exact_s, cs);
    out.comparison = AffineMap::compose(au, as.inverse());

    cplx lu_m = std::pow(model.lambda_u, m);
    cplx ls_n = std::pow(model.lambda_s, n);
    out.approx.scale = lu_m * ls_n * model.dcomp;
    out.approx.offset = -lu_m * model.B.apply(mu) / model.dh_u0;

    out.scale_rel_err = std::abs(out.comparison.scale / out.approx.scale - 1.0);
    out.trans_abs_err = std::abs(out.comparison.offset - out.approx.offset);
    out.error = out.scale_rel_err + out.trans_abs_err;

    if (with_residuals) {
        auto residual_against_limit = [grid_n](const CantorSystem& sys, int theta, cplx factor,
                                               const Configuration& scaled) {
            CantorSystem drifted = sys;
            drifted.branches[theta] = drifted_branch(sys, theta, factor);
            TailSequence tail{{theta}, {}};
            LimitGeometryApprox k = limit_geometry(drifted, tail, 1e-11);
            double worst = 0.0;
            for (cplx z : config_grid(sys, theta, grid_n)) {
                worst = std::max(worst, std::abs(scaled.map(z) - k.composed(z)));
            }
            return worst;
        };
        out.residual_u = residual_against_limit(model.sys_u, model.theta_u, factor_u, norm_u);
        out.residual_s = residual_against_limit(model.sys_s, model.theta_s, factor_s, norm_s);
    }
    return out;
}

json ParamRegion::to_json() const {
    return json{{"center", cplx_to_json(center)}, {"radius", radius}, {"radius_outer", radius_outer}};
}

ParamRegion select_parameters(const UnfoldingModel& model, cplx nu, double delta, int m) {
    if (!(delta > 0.0)) throw DomainError("delta must be positive");
    cplx lu_m = std::pow(model.lambda_u, m);
    Mat2 linear = Mat2::mul(Mat2::from_cplx(-lu_m / model.dh_u0), model.B);
    if (linear.det() == 0.0) throw DomainError("translation map is singular");
    auto [smin, smax] = linear.singular_values();
    ParamRegion out;
    out.center = linear.inverse().apply(nu);
    out.radius = delta / smax;
    out.radius_outer = delta / smin;
    return out;
}

json ScanRow::to_json(bool with_mask) const {
    json j{{"eps", eps},
           {"grid", grid},
           {"depth", depth},
           {"margin", margin},
           {"cells_inside", cells_inside},
           {"cells_marked", cells_marked},
           {"cells_unknown", cells_unknown},
           {"fraction", fraction},
           {"unknown_fraction", unknown_fraction}};
    if (with_mask) {
        json rows = json::array();
        for (int r = 0; r < grid; ++r) {
            std::string line(grid, '0');
            for (int c = 0; c < grid; ++c) line[c] = static_cast<char>('0' + mask[r * grid + c]);
            rows.push_back(line);
        }
        j["mask"] = rows;
    }
    return j;
}

ScanRow scan_tangency_set(const UnfoldingModel& model, double eps, int grid_res, int depth,
                          double margin) {
    if (grid_res < 1) throw DomainError("grid resolution must be positive");
    if (!(eps > 0.0) || eps > model.validity_radius) {
        throw DomainError("eps must lie in (0, validity_radius]");
    }

    ConfiguredSet base_u{model.sys_u, model.theta_u, model.hu0};
    ConfiguredSet base_s{model.sys_s, model.theta_s, model.hs0};
    ImageCoverLevels lu = image_cover_levels(base_u, depth);
    ImageCoverLevels ls = image_cover_levels(base_s, depth);

    ScanRow row;
    row.eps = eps;
    row.grid = grid_res;
    row.depth = depth;
    row.margin = margin;
    row.mask.assign(static_cast<std::size_t>(grid_res) * grid_res, 0);

    const double step = 2.0 * eps / grid_res;
    parallel_for(static_cast<std::size_t>(grid_res) * grid_res, [&](std::size_t idx) {
        int r = static_cast<int>(idx) / grid_res;
        int c = static_cast<int>(idx) % grid_res;
        cplx mu(-eps + (c + 0.5) * step, -eps + (r + 0.5) * step);
        if (std::abs(mu) > eps) return;  // cell outside the eps-disk
        IntersectionVerdict v = intersection_test_prebuilt(lu, model.c_u(mu), ls, depth, margin);
        switch (v.kind) {
            case VerdictKind::RobustNonempty: row.mask[idx] = 2; break;
            case VerdictKind::CertifiedEmpty: row.mask[idx] = 1; break;
            case VerdictKind::Unknown: row.mask[idx] = 3; break;
        }
    });

    for (std::uint8_t v : row.mask) {
        if (v == 0) continue;
        ++row.cells_inside;
        if (v == 2) ++row.cells_marked;
        if (v == 3) ++row.cells_unknown;
    }
    if (row.cells_inside > 0) {
        row.fraction = static_cast<double>(row.cells_marked) / row.cells_inside;
        row.unknown_fraction = static_cast<double>(row.cells_unknown) / row.cells_inside;
    }
    return row;
}

json DensityBound::to_json() const {
    json dropped = json::array();
    for (int m : pairs_dropped) dropped.push_back(m);
    return json{{"eps", eps}, {"bound", bound}, {"pairs_used", pairs_used}, {"pairs_dropped", dropped}};
}

DensityBound density_lower_bound(const UnfoldingModel& model, cplx nu, double delta,
                                 const PairSearch& pairs, double eps) {
    if (pairs.pairs.empty()) throw DomainError("no exponent pairs to select parameters from");
    DensityBound out;
    out.eps = eps;

    std::vector<int> ms;
    for (const auto& p : pairs.pairs) {
        if (ms.empty() || ms.back() != p.m) ms.push_back(p.m);
    }

    std::vector<ParamRegion> kept;
    for (int m : ms) {
        ParamRegion reg = select_parameters(model, nu, delta, m);
        if (std::abs(reg.center) + reg.radius_outer > eps) {
            out.pairs_dropped.push_back(m);  // not inside the eps-disk
            continue;
        }
        bool clash = false;
        for (const auto& k : kept) {
            if (std::abs(k.center - reg.center) <= k.radius_outer + reg.radius_outer) {
                clash = true;
                break;
            }
        }
        if (clash) {
            out.pairs_dropped.push_back(m);
            continue;
        }
        kept.push_back(reg);
    }
    double area = 0.0;
    for (const auto& k : kept) area += k.radius * k.radius;
    out.bound = area / (eps * eps);
    out.pairs_used = static_cast<int>(kept.size());
    return out;
}

double geometric_ladder_sum(double abs_lambda_u, int m0, int gap) {
    if (!(abs_lambda_u > 1.0) || gap < 1) throw DomainError("need |lambda_u| > 1 and gap >= 1");
    double q = std::pow(abs_lambda_u, -2.0 * gap);
    return std::pow(abs_lambda_u, -2.0 * m0) / (1.0 - q);
}

}  // namespace cantorlab
