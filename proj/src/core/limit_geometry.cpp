#include "limit_geometry.hpp"

#include <cmath>

#include "errors.hpp"

namespace cantorlab {

Configuration renormalize(const CantorSystem& sys, const Configuration& h, const Word& w) {
    if (w.letters.size() < 1) throw DomainError("empty word");
    if (h.letter != w.front()) {
        throw DomainError("configuration lives on " + sys.letters[h.letter] +
                          " but the word starts at " + sys.letters[w.front()]);
    }
    if (w.letters.size() == 1) return h;
    MapExpr f = compose_branches(sys, w);
    return Configuration{w.back(), MapExpr::compose(h.map, f)};
}

std::pair<AffineMap, Configuration> normalize_affine(const Configuration& h, cplx base) {
    cplx value = h.map(base);
    cplx slope = h.map.deriv(base);
    if (slope == cplx(0.0)) throw DomainError("configuration has vanishing derivative at the base point");
    AffineMap a{1.0 / slope, -value / slope};
    return {a, Configuration{h.letter, MapExpr::compose(MapExpr::affine(a.scale, a.offset), h.map)}};
}

std::vector<cplx> config_grid(const CantorSystem& sys, int letter, int grid_n) {
    return disk_grid(sys.pieces[letter], grid_n);
}

namespace {

bool system_is_affine(const CantorSystem& sys) {
    for (const auto& b : sys.branches) {
        if (!b.as_affine()) return false;
    }
    return true;
}

/// Normalized depth-n stage of the tail: values of A_n o f_{word_n} on the grid.
struct Stage {
    MapExpr composed;
    AffineMap normalizer;
    std::vector<cplx> values;
};

Stage stage_at(const CantorSystem& sys, const TailSequence& tail, int depth,
               const std::vector<cplx>& grid) {
    Word w = tail.expand(depth);
    MapExpr f = compose_branches(sys, w);
    cplx base = sys.base_points[tail.last()];
    auto [a, norm] = normalize_affine(Configuration{tail.last(), f}, base);
    Stage s{norm.map, a, {}};
    s.values.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) s.values[i] = s.composed(grid[i]);
    return s;
}

double sup_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

/// Least-squares slope of log d_n against n, reported as the rate e^slope.
double fit_rate(const std::vector<double>& d, int n0) {
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (d[i] > 0.0) pts.emplace_back(static_cast<double>(n0 + static_cast<int>(i)), std::log(d[i]));
    }
    if (pts.size() < 2) return 0.0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [x, y] : pts) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double n = static_cast<double>(pts.size());
    double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return std::exp(slope);
}

}  // namespace

LimitGeometryApprox limit_geometry(const CantorSystem& sys, const TailSequence& tail, double tol,
                                   int max_depth, int grid_n) {
    if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
    tail.check_admissible(sys);

    LimitGeometryApprox out;
    out.tail = tail;
    out.letter = tail.last();

    std::vector<cplx> grid = config_grid(sys, out.letter, grid_n);

    if (system_is_affine(sys)) {
        // Affine branches compose to affine maps, and normalization leaves
        // exactly z - base at every depth.
        Stage s = stage_at(sys, tail, 1, grid);
        out.depth = 1;
        out.composed = s.composed;
        out.normalizer = s.normalizer;
        out.error_bound = 0.0;
        out.contraction_ratio = 0.0;
        out.eta_fit = 0.0;
        return out;
    }

    Stage prev = stage_at(sys, tail, 1, grid);
    double last_d = 0.0;
    for (int n = 2; n <= max_depth; ++n) {
        Stage cur = stage_at(sys, tail, n, grid);
        double d = sup_diff(cur.values, prev.values);
        out.step_distances.push_back(d);
        double ratio = last_d > 0.0 ? d / last_d : 0.0;
        if (d < tol) {
            out.depth = n;
            out.composed = cur.composed;
            out.normalizer = cur.normalizer;
            out.contraction_ratio = ratio;
            out.eta_fit = fit_rate(out.step_distances, 2);
            if (d == 0.0) {
                out.error_bound = 0.0;
            } else if (ratio > 0.0 && ratio < 1.0) {
                out.error_bound = tol / (1.0 - ratio);
            } else {
                out.error_bound = tol;  // first step already below tol
            }
            return out;
        }
        last_d = d;
        prev = std::move(cur);
    }
    std::string ratios;
    for (std::size_t i = 1; i < out.step_distances.size(); ++i) {
        if (out.step_distances[i - 1] > 0.0) {
            ratios += fmt_double(out.step_distances[i] / out.step_distances[i - 1]) + " ";
        }
    }
    throw ConvergenceError("limit geometry did not reach tol " + fmt_double(tol) + " by depth " +
                           std::to_string(max_depth) + "; step ratios: " + ratios);
}

AffineMap affine_transfer(const CantorSystem& sys, const TailSequence& tail, int next_letter,
                          double tol, double* residual) {
    int t0 = tail.last();
    if (!sys.adm[t0][next_letter]) {
        throw DomainError("(" + sys.letters[t0] + "," + sys.letters[next_letter] +
                          ") does not extend the tail admissibly");
    }
    LimitGeometryApprox k1 = limit_geometry(sys, tail, tol);
    TailSequence ext = tail.append(next_letter);
    LimitGeometryApprox k2 = limit_geometry(sys, ext, tol);

    MapExpr edge = inverse_branch(sys, t0, next_letter);
    cplx base2 = sys.base_points[next_letter];
    cplx x = edge(base2);

    // T(k1) = k1 o edge equals F o k2 with k2(base2) = 0, k2'(base2) = 1,
    // so F is read off at the base point.
    AffineMap f;
    f.scale = k1.composed.deriv(x) * edge.deriv(base2);
    f.offset = k1.composed(x);

    if (residual) {
        double worst = 0.0;
        for (cplx z : config_grid(sys, next_letter)) {
            cplx lhs = k1.composed(edge(z));
            cplx rhs = f(k2.composed(z));
            worst = std::max(worst, std::abs(lhs - rhs));
        }
        *residual = worst;
    }
    return f;
}

json LimitGeometryApprox::to_json(const CantorSystem& sys) const {
    json steps = json::array();
    for (double d : step_distances) steps.push_back(d);
    json grid = json::array();
    for (cplx z : config_grid(sys, letter)) {
        grid.push_back(json{{"z", cplx_to_json(z)}, {"k", cplx_to_json(composed(z))}});
    }
    return json{{"tail", tail.str(sys)},
                {"letter", sys.letters[letter]},
                {"depth", depth},
                {"error_bound", error_bound},
                {"contraction_ratio", contraction_ratio},
                {"eta_fit", eta_fit},
                {"step_distances", steps},
                {"normalizer", json{{"scale", cplx_to_json(normalizer.scale)},
                                    {"offset", cplx_to_json(normalizer.offset)}}},
                {"grid", grid}};
}

}  // namespace cantorlab
