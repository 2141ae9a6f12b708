#include "builtin.hpp"

#include <cmath>

#include "errors.hpp"
#include "unfolding.hpp"

namespace cantorlab {

namespace {

std::vector<std::vector<bool>> full_shift(std::size_t n) {
    return std::vector<std::vector<bool>>(n, std::vector<bool>(n, true));
}

}  // namespace

CantorSystem middle_thirds() {
    CantorSystem sys;
    sys.letters = {"a", "b"};
    sys.adm = full_shift(2);
    sys.pieces = {Disk{cplx(1.0 / 6.0, 0.0), 1.0 / 6.0}, Disk{cplx(5.0 / 6.0, 0.0), 1.0 / 6.0}};
    sys.branches = {MapExpr::affine(3.0, 0.0), MapExpr::affine(3.0, -2.0)};
    sys.base_points = {cplx(0.0), cplx(1.0)};
    return sys;
}

CantorSystem wide_thirds(double radius) {
    CantorSystem sys = middle_thirds();
    sys.pieces[0].radius = radius;
    sys.pieces[1].radius = radius;
    return sys;
}

CantorSystem wide_thirds_quadratic(double gamma, double radius) {
    CantorSystem sys = wide_thirds(radius);
    // g_a(z) = 3z + gamma z^2 keeps the fixed point at 0 with multiplier 3;
    // g_b bends symmetrically about its piece center.
    sys.branches[0] = MapExpr::polynomial({cplx(0.0), cplx(3.0), cplx(gamma)});
    cplx c(5.0 / 6.0, 0.0);
    // 3z - 2 + gamma (z - c)^2
    sys.branches[1] = MapExpr::polynomial(
        {-2.0 + gamma * c * c, 3.0 - 2.0 * gamma * c, cplx(gamma)});
    sys.base_points[0] = default_base_point(sys, 0);
    sys.base_points[1] = default_base_point(sys, 1);
    return sys;
}

CantorSystem four_corner(double alpha, double phi, double spacing, double hull_radius) {
    CantorSystem sys;
    sys.letters = {"a", "b", "c", "d"};
    sys.adm = full_shift(4);
    const cplx rot = alpha * cplx(std::cos(phi), std::sin(phi));
    const cplx offsets[4] = {cplx(0.0), cplx(spacing, 0.0), cplx(0.0, spacing),
                             cplx(spacing, spacing)};
    const cplx mean = 0.5 * cplx(spacing, spacing);
    const cplx hull_center = mean / (1.0 - rot);
    for (int j = 0; j < 4; ++j) {
        sys.pieces.push_back(Disk{rot * hull_center + offsets[j], alpha * hull_radius});
        // g_j(z) = (z - t_j) / (alpha e^{i phi})
        sys.branches.push_back(MapExpr::affine(1.0 / rot, -offsets[j] / rot));
        sys.base_points.push_back(0.0);  // fixed up below
    }
    for (int j = 0; j < 4; ++j) sys.base_points[j] = default_base_point(sys, j);
    return sys;
}

CantorSystem translate_system(const CantorSystem& sys, cplx t) {
    CantorSystem out = sys;
    MapExpr shift = MapExpr::affine(1.0, t);
    MapExpr unshift = MapExpr::affine(1.0, -t);
    for (std::size_t i = 0; i < out.size(); ++i) {
        out.pieces[i].center += t;
        out.branches[i] = MapExpr::compose(shift, MapExpr::compose(sys.branches[i], unshift));
        out.base_points[i] += t;
    }
    return out;
}

bool is_builtin_system(const std::string& name) {
    return name == "middle-thirds" || name == "wide-thirds" || name == "wide-thirds-quadratic" ||
           name == "four-corner" || name == "four-corner-spiral" || name == "sparse-corner";
}

CantorSystem builtin_system(const std::string& name) {
    if (name == "middle-thirds") return middle_thirds();
    if (name == "wide-thirds") return wide_thirds();
    if (name == "wide-thirds-quadratic") return wide_thirds_quadratic();
    if (name == "four-corner") return four_corner();
    if (name == "four-corner-spiral") return four_corner(0.36, 0.7);
    if (name == "sparse-corner") return four_corner(0.30);
    throw DomainError("unknown builtin system '" + name + "'");
}

namespace {

json base_model_json(const std::string& sys_u, const std::string& sys_s) {
    return json{{"systems", json{{"unstable", json{{"builtin", sys_u}}},
                                 {"stable", json{{"builtin", sys_s}}}}},
                {"letters", json{{"unstable", "a"}, {"stable", "a"}}}};
}

}  // namespace

bool is_builtin_model(const std::string& name) {
    return name == "fat-default" || name == "separated" || name == "affine-exact" ||
           name == "nonlinear-drift" || name == "spiral-generic" || name == "sparse";
}

UnfoldingModel builtin_model(const std::string& name) {
    if (name == "fat-default" || name == "affine-exact") {
        json j = base_model_json("four-corner", "four-corner");
        j["validity_radius"] = 0.3;
        return make_generic_family(j);
    }
    if (name == "sparse") {
        json j = base_model_json("sparse-corner", "sparse-corner");
        j["validity_radius"] = 0.3;
        return make_generic_family(j);
    }
    if (name == "separated") {
        json j = base_model_json("four-corner", "four-corner");
        j["validity_radius"] = 0.3;
        j["aligned"] = false;
        // Push the stable configuration far from the unstable one.
        j["configs"] = json{{"stable", MapExpr::affine(1.0, cplx(7.0, 0.0)).to_json()}};
        return make_generic_family(j);
    }
    if (name == "nonlinear-drift") {
        json j = base_model_json("wide-thirds-quadratic", "wide-thirds-quadratic");
        j["validity_radius"] = 0.1;
        j["drift"] = json{{"u", cplx_to_json(cplx(0.5, 0.0))}, {"s", cplx_to_json(cplx(0.3, 0.0))}};
        j["r_coeff"] = cplx_to_json(cplx(0.2, 0.0));
        // Nonlinear base configuration on the unstable side.
        j["configs"] = json{{"unstable", MapExpr::polynomial({cplx(0.0), cplx(1.0), cplx(0.1)}).to_json()}};
        return make_generic_family(j);
    }
    if (name == "spiral-generic") {
        json j = json{{"systems", json{{"unstable", json{{"builtin", "four-corner-spiral"}}},
                                       {"stable", four_corner(0.30, 0.4).to_json()}}},
                      {"letters", json{{"unstable", "a"}, {"stable", "a"}}}};
        j["validity_radius"] = 0.25;
        return make_generic_family(j);
    }
    throw DomainError("unknown builtin model '" + name + "'");
}

}  // namespace cantorlab
