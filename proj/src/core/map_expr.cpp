#include "map_expr.hpp"

#include <cmath>
#include <limits>

#include "errors.hpp"

namespace cantorlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<cplx> poly_deriv(const std::vector<cplx>& p) {
    std::vector<cplx> d;
    if (p.size() <= 1) {
        d.push_back(0.0);
        return d;
    }
    d.resize(p.size() - 1);
    for (std::size_t k = 1; k < p.size(); ++k) d[k - 1] = static_cast<double>(k) * p[k];
    return d;
}

cplx poly_eval(const std::vector<cplx>& p, cplx z) {
    cplx acc = 0.0;
    for (std::size_t i = p.size(); i-- > 0;) acc = acc * z + p[i];
    return acc;
}

}  // namespace

struct MapExpr::Node {
    enum class Kind { Affine, Poly, Moebius, Compose, Inverse } kind;

    // Affine / Moebius entries
    cplx a{0.0}, b{0.0}, c{0.0}, d{0.0};
    // Poly
    std::vector<cplx> coeffs;
    // Compose / Inverse
    std::shared_ptr<const Node> outer, inner;  // inverse uses `inner` as the forward map
    Disk range{};                              // inverse: disk the values live in

    cplx eval(cplx z) const;
    cplx deriv(cplx z) const;
    cplx deriv2(cplx z) const;
    DerivBounds abs_deriv_bounds(const Disk& disk) const;
    cplx solve(cplx w) const;  // inverse node only
};

namespace {

/// Taylor shift: returns q with p(c + u) = sum_k q[k] u^k, by repeated
/// synthetic division.
std::vector<cplx> shift_poly(std::vector<cplx> p, cplx c) {
    const std::size_t n = p.size();
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = n - 1; i-- > k;) p[i] += c * p[i + 1];
    }
    return p;
}

double poly_sup_bound_impl(const std::vector<cplx>& p, const Disk& d) {
    std::vector<cplx> q = shift_poly(p, d.center);
    double acc = 0.0;
    double rp = 1.0;
    for (std::size_t k = 0; k < q.size(); ++k) {
        acc += std::abs(q[k]) * rp;
        rp *= d.radius;
    }
    return acc;
}

double poly_inf_bound_impl(const std::vector<cplx>& p, const Disk& d) {
    std::vector<cplx> q = shift_poly(p, d.center);
    if (q.empty()) return 0.0;
    double acc = std::abs(q[0]);
    double rp = d.radius;
    for (std::size_t k = 1; k < q.size(); ++k) {
        acc -= std::abs(q[k]) * rp;
        rp *= d.radius;
    }
    return acc > 0.0 ? acc : 0.0;
}

}  // namespace

cplx MapExpr::Node::eval(cplx z) const {
    switch (kind) {
        case Kind::Affine: return a * z + b;
        case Kind::Poly: return poly_eval(coeffs, z);
        case Kind::Moebius: return (a * z + b) / (c * z + d);
        case Kind::Compose: return outer->eval(inner->eval(z));
        case Kind::Inverse: return solve(z);
    }
    return 0.0;
}

cplx MapExpr::Node::deriv(cplx z) const {
    switch (kind) {
        case Kind::Affine: return a;
        case Kind::Poly: return poly_eval(poly_deriv(coeffs), z);
        case Kind::Moebius: {
            cplx den = c * z + d;
            return (a * d - b * c) / (den * den);
        }
        case Kind::Compose: {
            cplx g = inner->eval(z);
            return outer->deriv(g) * inner->deriv(z);
        }
        case Kind::Inverse: {
            cplx x = solve(z);
            return 1.0 / inner->deriv(x);
        }
    }
    return 0.0;
}

cplx MapExpr::Node::deriv2(cplx z) const {
    switch (kind) {
        case Kind::Affine: return 0.0;
        case Kind::Poly: return poly_eval(poly_deriv(poly_deriv(coeffs)), z);
        case Kind::Moebius: {
            cplx den = c * z + d;
            return -2.0 * c * (a * d - b * c) / (den * den * den);
        }
        case Kind::Compose: {
            cplx g = inner->eval(z);
            cplx gi = inner->deriv(z);
            return outer->deriv2(g) * gi * gi + outer->deriv(g) * inner->deriv2(z);
        }
        case Kind::Inverse: {
            cplx x = solve(z);
            cplx gp = inner->deriv(x);
            return -inner->deriv2(x) / (gp * gp * gp);
        }
    }
    return 0.0;
}

cplx MapExpr::Node::solve(cplx w) const {
    // Newton solve of forward(x) = w, seeded from the range disk. The leash
    // rejects roots of other branches of the same forward map.
    const double tol = 1e-13 * (1.0 + std::abs(w));
    const double leash = 2.0 * range.radius + 1e-12;
    cplx seeds[9];
    seeds[0] = range.center;
    for (int k = 0; k < 8; ++k) {
        seeds[k + 1] = range.center + 0.6 * range.radius *
                                          cplx(std::cos(kPi * k / 4.0), std::sin(kPi * k / 4.0));
    }
    for (cplx seed : seeds) {
        cplx x = seed;
        for (int iter = 0; iter < 80; ++iter) {
            cplx f = inner->eval(x) - w;
            if (std::abs(f) < tol) {
                if (std::abs(x - range.center) <= leash) return x;
                break;
            }
            cplx fp = inner->deriv(x);
            if (fp == cplx(0.0)) break;
            cplx step = f / fp;
            // Keep the iterate near the branch domain.
            if (std::abs(step) > 2.0 * range.radius + 1.0) step *= (2.0 * range.radius + 1.0) / std::abs(step);
            x -= step;
            if (std::abs(x - range.center) > leash) break;
        }
    }
    throw ConvergenceError("branch inversion failed to converge (target " + fmt_cplx(w) + ")");
}

DerivBounds MapExpr::Node::abs_deriv_bounds(const Disk& disk) const {
    switch (kind) {
        case Kind::Affine: {
            double m = std::abs(a);
            return {m, m};
        }
        case Kind::Poly: {
            std::vector<cplx> dp = poly_deriv(coeffs);
            return {poly_inf_bound_impl(dp, disk), poly_sup_bound_impl(dp, disk)};
        }
        case Kind::Moebius: {
            double num = std::abs(a * d - b * c);
            double mid = std::abs(c * disk.center + d);
            double spread = std::abs(c) * disk.radius;
            double lo_den = mid - spread;
            double hi_den = mid + spread;
            if (lo_den <= 0.0) return {0.0, kInf};  // pole inside the disk
            return {num / (hi_den * hi_den), num / (lo_den * lo_den)};
        }
        case Kind::Compose: {
            DerivBounds bi = inner->abs_deriv_bounds(disk);
            if (!std::isfinite(bi.hi)) return {0.0, kInf};
            Disk image{inner->eval(disk.center), bi.hi * disk.radius};
            DerivBounds bo = outer->abs_deriv_bounds(image);
            return {bo.lo * bi.lo, bo.hi * bi.hi};
        }
        case Kind::Inverse: {
            // f = forward^{-1}; |f'| = 1/|forward' o f|, and f(disk) lies in
            // `range`. One refinement pass tightens the region.
            DerivBounds g0 = inner->abs_deriv_bounds(range);
            if (g0.lo <= 0.0) return {0.0, kInf};
            cplx x0 = solve(disk.center);
            Disk refined{x0, disk.radius / g0.lo};
            if (!range.contains_disk(refined, 1e-12)) refined = range;
            DerivBounds g1 = inner->abs_deriv_bounds(refined);
            if (g1.lo <= 0.0) return {0.0, kInf};
            return {1.0 / g1.hi, 1.0 / g1.lo};
        }
    }
    return {0.0, kInf};
}

MapExpr::MapExpr() {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::Affine;
    n->a = 1.0;
    n->b = 0.0;
    node_ = std::move(n);
}

MapExpr MapExpr::identity() { return MapExpr(); }

MapExpr MapExpr::affine(cplx a, cplx b) {
    if (a == cplx(0.0)) throw DomainError("affine map must have nonzero scale");
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::Affine;
    n->a = a;
    n->b = b;
    return MapExpr(std::move(n));
}

MapExpr MapExpr::polynomial(std::vector<cplx> coeffs) {
    if (coeffs.empty()) coeffs.push_back(0.0);
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::Poly;
    n->coeffs = std::move(coeffs);
    return MapExpr(std::move(n));
}

MapExpr MapExpr::moebius(cplx a, cplx b, cplx c, cplx d) {
    if (a * d - b * c == cplx(0.0)) throw DomainError("degenerate Moebius map");
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::Moebius;
    n->a = a;
    n->b = b;
    n->c = c;
    n->d = d;
    return MapExpr(std::move(n));
}

MapExpr MapExpr::compose(MapExpr outer, MapExpr inner) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::Compose;
    n->outer = outer.node_;
    n->inner = inner.node_;
    return MapExpr(std::move(n));
}

MapExpr MapExpr::inverse_on(MapExpr forward, Disk range) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::Inverse;
    n->inner = forward.node_;
    n->range = range;
    return MapExpr(std::move(n));
}

cplx MapExpr::eval(cplx z) const { return node_->eval(z); }
cplx MapExpr::deriv(cplx z) const { return node_->deriv(z); }
cplx MapExpr::deriv2(cplx z) const { return node_->deriv2(z); }

DerivBounds MapExpr::abs_deriv_bounds(const Disk& d) const { return node_->abs_deriv_bounds(d); }

Disk MapExpr::enclose_image(const Disk& d) const {
    DerivBounds b = node_->abs_deriv_bounds(d);
    return Disk{node_->eval(d.center), b.hi * d.radius};
}

namespace {

std::optional<AffineMap> node_as_affine(const MapExpr::Node& n) {
    using Kind = MapExpr::Node::Kind;
    switch (n.kind) {
        case Kind::Affine: return AffineMap{n.a, n.b};
        case Kind::Poly: {
            for (std::size_t k = 2; k < n.coeffs.size(); ++k) {
                if (n.coeffs[k] != cplx(0.0)) return std::nullopt;
            }
            cplx a = n.coeffs.size() > 1 ? n.coeffs[1] : cplx(0.0);
            if (a == cplx(0.0)) return std::nullopt;
            return AffineMap{a, n.coeffs[0]};
        }
        case Kind::Moebius: {
            if (n.c != cplx(0.0)) return std::nullopt;
            return AffineMap{n.a / n.d, n.b / n.d};
        }
        case Kind::Compose: {
            auto o = node_as_affine(*n.outer);
            auto i = node_as_affine(*n.inner);
            if (!o || !i) return std::nullopt;
            return AffineMap::compose(*o, *i);
        }
        case Kind::Inverse: {
            auto f = node_as_affine(*n.inner);
            if (!f) return std::nullopt;
            return f->inverse();
        }
    }
    return std::nullopt;
}

std::shared_ptr<const MapExpr::Node> perturb_node(const MapExpr::Node& n,
                                                  const std::function<cplx()>& draw) {
    using Kind = MapExpr::Node::Kind;
    auto out = std::make_shared<MapExpr::Node>(n);
    switch (n.kind) {
        case Kind::Affine:
            out->a = n.a + draw();
            out->b = n.b + draw();
            break;
        case Kind::Poly:
            for (auto& c : out->coeffs) c += draw();
            break;
        case Kind::Moebius:
            out->a = n.a + draw();
            out->b = n.b + draw();
            out->c = n.c + draw();
            out->d = n.d + draw();
            break;
        case Kind::Compose:
            out->outer = perturb_node(*n.outer, draw);
            out->inner = perturb_node(*n.inner, draw);
            break;
        case Kind::Inverse:
            out->inner = perturb_node(*n.inner, draw);
            break;
    }
    return out;
}

json node_to_json(const MapExpr::Node& n) {
    using Kind = MapExpr::Node::Kind;
    switch (n.kind) {
        case Kind::Affine:
            return json{{"op", "affine"}, {"a", cplx_to_json(n.a)}, {"b", cplx_to_json(n.b)}};
        case Kind::Poly: {
            json cs = json::array();
            for (const auto& c : n.coeffs) cs.push_back(cplx_to_json(c));
            return json{{"op", "poly"}, {"coeffs", cs}};
        }
        case Kind::Moebius:
            return json{{"op", "moebius"},
                        {"a", cplx_to_json(n.a)},
                        {"b", cplx_to_json(n.b)},
                        {"c", cplx_to_json(n.c)},
                        {"d", cplx_to_json(n.d)}};
        case Kind::Compose:
            return json{{"op", "compose"}, {"outer", node_to_json(*n.outer)}, {"inner", node_to_json(*n.inner)}};
        case Kind::Inverse:
            return json{{"op", "inverse"}, {"of", node_to_json(*n.inner)}, {"range", disk_to_json(n.range)}};
    }
    return json();
}

}  // namespace

std::optional<AffineMap> MapExpr::as_affine() const { return node_as_affine(*node_); }

MapExpr MapExpr::perturb_coeffs(const std::function<cplx()>& draw) const {
    return MapExpr(perturb_node(*node_, draw));
}

json MapExpr::to_json() const { return node_to_json(*node_); }

MapExpr MapExpr::from_json(const json& j) {
    try {
        const std::string op = j.at("op").get<std::string>();
        if (op == "affine") return affine(cplx_from_json(j.at("a")), cplx_from_json(j.at("b")));
        if (op == "identity") return identity();
        if (op == "poly") {
            std::vector<cplx> cs;
            for (const auto& c : j.at("coeffs")) cs.push_back(cplx_from_json(c));
            return polynomial(std::move(cs));
        }
        if (op == "moebius") {
            return moebius(cplx_from_json(j.at("a")), cplx_from_json(j.at("b")),
                           cplx_from_json(j.at("c")), cplx_from_json(j.at("d")));
        }
        if (op == "compose") return compose(from_json(j.at("outer")), from_json(j.at("inner")));
        if (op == "inverse") return inverse_on(from_json(j.at("of")), disk_from_json(j.at("range")));
        throw ParseError("unknown map op '" + op + "'");
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad map expression: ") + e.what());
    }
}

}  // namespace cantorlab
