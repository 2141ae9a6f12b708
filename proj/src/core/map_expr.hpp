#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "affine.hpp"
#include "complex_util.hpp"

namespace cantorlab {

/// Two-sided bound on |f'| over a disk: lo <= inf |f'| <= sup |f'| <= hi.
struct DerivBounds {
    double lo = 0.0;
    double hi = 0.0;
};

/// Immutable expression tree of holomorphic maps on C: affine maps,
/// polynomials, Moebius transformations, compositions, and Newton-backed
/// local inverses. Supports evaluation, first and second derivatives, and
/// disk enclosures of |f'| (true outer/inner bounds up to rounding).
class MapExpr {
  public:
    MapExpr();  // identity

    static MapExpr identity();
    static MapExpr affine(cplx a, cplx b);
    static MapExpr affine(const AffineMap& m) { return affine(m.scale, m.offset); }
    /// coeffs[k] is the coefficient of z^k.
    static MapExpr polynomial(std::vector<cplx> coeffs);
    /// (a z + b) / (c z + d), ad - bc != 0.
    static MapExpr moebius(cplx a, cplx b, cplx c, cplx d);
    static MapExpr compose(MapExpr outer, MapExpr inner);
    /// Local inverse of `forward` whose values lie in `range`; evaluation is a
    /// Newton solve seeded from the range disk. The caller is responsible for
    /// only evaluating at points that have a preimage in `range`.
    static MapExpr inverse_on(MapExpr forward, Disk range);

    cplx operator()(cplx z) const { return eval(z); }
    cplx eval(cplx z) const;
    cplx deriv(cplx z) const;
    cplx deriv2(cplx z) const;

    DerivBounds abs_deriv_bounds(const Disk& d) const;
    /// Outer disk enclosure of f(d): center f(c), radius sup|f'| * r.
    Disk enclose_image(const Disk& d) const;

    /// Exact affine content, when the whole tree reduces to an affine map.
    std::optional<AffineMap> as_affine() const;

    /// New tree with `draw()` added to every leaf coefficient (affine a/b,
    /// polynomial coefficients, Moebius entries; inverse nodes perturb the
    /// forward map). Draw order is the fixed tree traversal order.
    MapExpr perturb_coeffs(const std::function<cplx()>& draw) const;

    json to_json() const;
    static MapExpr from_json(const json& j);

    struct Node;

  private:
    explicit MapExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

}  // namespace cantorlab
