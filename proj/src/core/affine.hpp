#pragma once

#include <array>
#include <cmath>

#include "complex_util.hpp"
#include "errors.hpp"

namespace cantorlab {

/// z -> scale*z + offset, scale != 0.
struct AffineMap {
    cplx scale{1.0, 0.0};
    cplx offset{0.0, 0.0};

    cplx operator()(cplx z) const { return scale * z + offset; }

    AffineMap inverse() const {
        if (scale == cplx(0.0)) throw DomainError("affine map with zero scale is not invertible");
        return AffineMap{1.0 / scale, -offset / scale};
    }
    /// outer(inner(z))
    static AffineMap compose(const AffineMap& outer, const AffineMap& inner) {
        return AffineMap{outer.scale * inner.scale, outer.scale * inner.offset + outer.offset};
    }
    Disk map_disk(const Disk& d) const {
        return Disk{(*this)(d.center), std::abs(scale) * d.radius};
    }
};

/// Real 2x2 matrix acting on C identified with R^2.
struct Mat2 {
    double a11 = 1, a12 = 0, a21 = 0, a22 = 1;

    cplx apply(cplx z) const {
        return cplx(a11 * z.real() + a12 * z.imag(), a21 * z.real() + a22 * z.imag());
    }
    double det() const { return a11 * a22 - a12 * a21; }
    Mat2 inverse() const {
        double d = det();
        if (d == 0.0) throw DomainError("singular 2x2 matrix");
        return Mat2{a22 / d, -a12 / d, -a21 / d, a11 / d};
    }
    static Mat2 mul(const Mat2& l, const Mat2& r) {
        return Mat2{l.a11 * r.a11 + l.a12 * r.a21, l.a11 * r.a12 + l.a12 * r.a22,
                    l.a21 * r.a11 + l.a22 * r.a21, l.a21 * r.a12 + l.a22 * r.a22};
    }
    /// Matrix of multiplication by the complex number c.
    static Mat2 from_cplx(cplx c) { return Mat2{c.real(), -c.imag(), c.imag(), c.real()}; }

    /// Singular values {smin, smax}.
    std::array<double, 2> singular_values() const {
        double s = a11 * a11 + a12 * a12 + a21 * a21 + a22 * a22;
        double d = det();
        double disc = s * s - 4.0 * d * d;
        if (disc < 0) disc = 0;
        double root = std::sqrt(disc);
        double hi2 = 0.5 * (s + root);
        double lo2 = 0.5 * (s - root);
        if (lo2 < 0) lo2 = 0;
        return {std::sqrt(lo2), std::sqrt(hi2)};
    }
    bool is_conformal(double tol = 1e-12) const {
        return std::abs(a11 - a22) <= tol && std::abs(a12 + a21) <= tol;
    }
};

inline json mat2_to_json(const Mat2& m) {
    return json::array({json::array({m.a11, m.a12}), json::array({m.a21, m.a22})});
}

inline Mat2 mat2_from_json(const json& j) {
    return Mat2{j.at(0).at(0).get<double>(), j.at(0).at(1).get<double>(),
                j.at(1).at(0).get<double>(), j.at(1).at(1).get<double>()};
}

}  // namespace cantorlab
