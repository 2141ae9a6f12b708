// Test-only oracles, kept independent of the library code paths they check:
// plain affine endpoint arithmetic for intersection verdicts, an exhaustive
// exponent-lattice scan, and stencil-based holomorphy checks.
#pragma once

#include <complex>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;

/// Two-letter affine system description in raw numbers.
struct AffineSystem {
    cplx piece_center[2];
    double piece_radius[2];
    cplx branch_a[2];  // branch z -> a z + b per letter
    cplx branch_b[2];
};

struct OracleDisk {
    cplx center;
    double radius = 0.0;
};

/// Exact disks of all words of length depth+1 from letter `start`, under the
/// configuration z -> ca z + cb. Affine arithmetic only.
inline std::vector<OracleDisk> affine_word_disks(const AffineSystem& sys, int start, int depth,
                                                 cplx ca, cplx cb) {
    struct Node {
        int letter;
        cplx fa, fb;  // composed inverse branch so far, z -> fa z + fb
    };
    std::vector<Node> level{{start, cplx(1.0), cplx(0.0)}};
    for (int d = 0; d < depth; ++d) {
        std::vector<Node> next;
        next.reserve(level.size() * 2);
        for (const Node& nd : level) {
            for (int b = 0; b < 2; ++b) {
                // Inverse of the branch at nd.letter, then the previous chain.
                cplx ia = 1.0 / sys.branch_a[nd.letter];
                cplx ib = -sys.branch_b[nd.letter] / sys.branch_a[nd.letter];
                next.push_back({b, nd.fa * ia, nd.fa * ib + nd.fb});
            }
        }
        level = std::move(next);
    }
    std::vector<OracleDisk> out;
    out.reserve(level.size());
    for (const Node& nd : level) {
        cplx center = ca * (nd.fa * sys.piece_center[nd.letter] + nd.fb) + cb;
        double radius = std::abs(ca) * std::abs(nd.fa) * sys.piece_radius[nd.letter];
        out.push_back({center, radius});
    }
    return out;
}

/// True iff some pair of depth-(depth+1) word disks still meets. Since the
/// disks are exact for affine data, "false" certifies emptiness of the
/// intersection of the two configured sets.
inline bool affine_intersection_survives(const AffineSystem& A, int la, cplx caa, cplx cab,
                                         const AffineSystem& B, int lb, cplx cba, cplx cbb,
                                         int depth) {
    auto da = affine_word_disks(A, la, depth, caa, cab);
    auto db = affine_word_disks(B, lb, depth, cba, cbb);
    for (const auto& x : da) {
        for (const auto& y : db) {
            double tol = 1e-12 * (std::abs(x.center) + std::abs(y.center) + x.radius + y.radius);
            if (std::abs(x.center - y.center) <= x.radius + y.radius + tol) return true;
        }
    }
    return false;
}

struct LatticeHit {
    int m, n;
    cplx value;
    double error;
};

/// Exhaustive scan of (m, n) in [1, m_max] x [1, n_max] by incremental
/// products.
inline std::vector<LatticeHit> lattice_scan(cplx z, cplx w, cplx v, double delta, int m_max,
                                            int n_max) {
    std::vector<LatticeHit> hits;
    cplx zm = 1.0;
    for (int m = 1; m <= m_max; ++m) {
        zm *= z;
        cplx val = zm;
        for (int n = 1; n <= n_max; ++n) {
            val *= w;
            double err = std::abs(val - v);
            if (err < delta) hits.push_back({m, n, val, err});
        }
    }
    return hits;
}

/// Fourth-order directional finite difference of f at z along u (|u| = 1).
template <typename F>
cplx directional_derivative(F&& f, cplx z, cplx u, double h) {
    return (-f(z + 2.0 * h * u) + 8.0 * f(z + h * u) - 8.0 * f(z - h * u) + f(z - 2.0 * h * u)) /
           (12.0 * h * u);
}

/// Cauchy-Riemann residual: difference of directional derivatives along 1 and
/// i. Vanishes to stencil accuracy iff f is holomorphic at z.
template <typename F>
double conformality_residual(F&& f, cplx z, double h) {
    cplx dx = directional_derivative(f, z, cplx(1.0, 0.0), h);
    cplx dy = directional_derivative(f, z, cplx(0.0, 1.0), h);
    return std::abs(dx - dy);
}

/// Roots of q2 x^2 + q1 x + q0 = 0; the one closer to `near` first.
inline std::pair<cplx, cplx> quadratic_roots(cplx q2, cplx q1, cplx q0, cplx near_pt) {
    cplx disc = std::sqrt(q1 * q1 - 4.0 * q2 * q0);
    cplx r1 = (-q1 + disc) / (2.0 * q2);
    cplx r2 = (-q1 - disc) / (2.0 * q2);
    if (std::abs(r1 - near_pt) > std::abs(r2 - near_pt)) std::swap(r1, r2);
    return {r1, r2};
}

}  // namespace oracle
