#pragma once

#include "cantor_system.hpp"

namespace cantorlab {

/// A conformal embedding of one piece into C.
struct Configuration {
    int letter = 0;
    MapExpr map;
};

/// h o f_word. Requires h to live on the word's first letter; the result
/// lives on the last letter.
Configuration renormalize(const CantorSystem& sys, const Configuration& h, const Word& w);

/// The affine A with (A o h)(base) = 0 and (A o h)'(base) = 1, plus the
/// normalized configuration. Throws DomainError when h'(base) = 0.
std::pair<AffineMap, Configuration> normalize_affine(const Configuration& h, cplx base);

/// Truncated limit geometry along a backward tail: the composed inverse
/// branch of the depth-n truncation, normalized at the base point of the
/// tail's final letter.
struct LimitGeometryApprox {
    TailSequence tail;
    int letter = 0;       // tail's final letter; the embedding's domain piece
    int depth = 0;
    MapExpr composed;     // normalizer o f_word, the embedding itself
    AffineMap normalizer;
    double error_bound = 0.0;       // estimated sup distance to the limit
    double contraction_ratio = 0.0; // last measured ratio of successive steps
    double eta_fit = 0.0;           // least-squares rate of the step decay
    std::vector<double> step_distances;  // d_n for n = 2..depth

    cplx eval(cplx z) const { return composed(z); }
    json to_json(const CantorSystem& sys) const;
};

/// Iterates depths until successive normalized stages differ by < tol in
/// sup-norm on a fixed grid of the final letter's piece. All-affine systems
/// resolve exactly at depth 1 with error 0.
LimitGeometryApprox limit_geometry(const CantorSystem& sys, const TailSequence& tail, double tol,
                                   int max_depth = 40, int grid_n = 33);

/// The affine F with T_{(t0, b)}(k^tail) = F o k^{tail b}, where t0 is the
/// tail's final letter and b extends the tail. Writes the sup residual of the
/// identity on the grid into *residual when given.
AffineMap affine_transfer(const CantorSystem& sys, const TailSequence& tail, int next_letter,
                          double tol = 1e-10, double* residual = nullptr);

/// Fixed evaluation grid used for configuration sup-norms.
std::vector<cplx> config_grid(const CantorSystem& sys, int letter, int grid_n = 33);

}  // namespace cantorlab
