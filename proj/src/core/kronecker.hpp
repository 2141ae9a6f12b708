#pragma once

#include <array>
#include <optional>
#include <vector>

#include "complex_util.hpp"

namespace cantorlab {

/// Rational-independence probe for the three reals
///   X = arg(z)*log|w| - arg(w)*log|z|, Y = pi*log|z|, Z = pi*log|w|.
/// Resonant means an integer relation p X + q Y + s Z vanished within tol for
/// coefficients bounded by coeff_bound.
struct GenericityReport {
    double x = 0, y = 0, z = 0;
    bool generic = false;
    std::array<int, 3> relation{0, 0, 0};
    double relation_value = 0.0;
    double tol = 0.0;
    int coeff_bound = 0;
    // Kronecker vector entries 2*pi*log|w| / X and 2*pi*log|z| / X, defined
    // away from the degenerate X = 0.
    double c = 0.0, d = 0.0;
    bool cd_valid = false;
    json to_json() const;
};

/// Requires |z| > 1 > |w| > 0.
GenericityReport genericity_check(cplx z, cplx w, double tol = 1e-9, int coeff_bound = 50);

struct ExponentPair {
    int m = 0, n = 0;
    cplx value;  // z^m * w^n
    double error = 0.0;
};

struct PairSearch {
    std::vector<ExponentPair> pairs;  // sorted by (m, n)
    std::optional<ExponentPair> best_miss;  // closest reject, when pairs is empty
    cplx target;
    double delta = 0.0;
    int m_max = 0, n_max = 0;
};

/// All pairs (m, n) in [1, m_max] x [1, n_max] with |z^m w^n - v| < delta.
/// Per m, only the n-window compatible with the modulus is examined; values
/// are computed in log-polar form. n_max defaults to m_max.
PairSearch find_pairs(cplx z, cplx w, cplx v, double delta, int m_max, int n_max = -1);

struct RecurrenceGap {
    int max_gap = 0;      // M: largest gap between consecutive hit m values
    int pairs_checked = 0;
    int m_first = 0, m_last = 0;
    int max_n_gap = 0;
    bool bounded_within_range = false;  // trailing gap smaller than the max interior gap
    json to_json() const;
};

/// Empirical recurrence bound from the found pairs; requires at least three
/// hits.
RecurrenceGap recurrence_gap(cplx z, cplx w, cplx v, double delta, int m_max, int n_max = -1);
RecurrenceGap recurrence_gap(const PairSearch& search);

}  // namespace cantorlab
