#include "kronecker.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"

namespace cantorlab {

namespace {

void check_regime(cplx z, cplx w) {
    if (!(std::abs(z) > 1.0)) throw DomainError("|z| must exceed 1");
    if (!(std::abs(w) < 1.0) || !(std::abs(w) > 0.0)) throw DomainError("|w| must lie in (0, 1)");
}

}  // namespace

json GenericityReport::to_json() const {
    json j{{"x", x},
           {"y", y},
           {"z", z},
           {"verdict", generic ? "generic" : "resonant"},
           {"tol", tol},
           {"coeff_bound", coeff_bound}};
    if (!generic) {
        j["relation"] = json::array({relation[0], relation[1], relation[2]});
        j["relation_value"] = relation_value;
    }
    if (cd_valid) {
        j["c"] = c;
        j["d"] = d;
    }
    return j;
}

GenericityReport genericity_check(cplx z, cplx w, double tol, int coeff_bound) {
    check_regime(z, w);
    if (!(tol > 0.0) || coeff_bound < 1) throw DomainError("bad tolerance or coefficient bound");

    GenericityReport rep;
    rep.tol = tol;
    rep.coeff_bound = coeff_bound;
    const double log_big = std::log(std::abs(z));
    const double log_small = std::log(std::abs(w));
    const double arg_big = std::arg(z);
    const double arg_small = std::arg(w);
    rep.x = arg_big * log_small - arg_small * log_big;
    rep.y = kPi * log_big;
    rep.z = kPi * log_small;

    if (std::abs(rep.x) > tol) {
        rep.c = 2.0 * kPi * log_small / rep.x;
        rep.d = 2.0 * kPi * log_big / rep.x;
        rep.cd_valid = true;
    }

    // Exhaustive small-relation search; the first (smallest) violating triple
    // in lexicographic |p|,|q|,|s| growth order is reported.
    double best = std::abs(rep.x) + std::abs(rep.y) + std::abs(rep.z) + 1.0;
    std::array<int, 3> best_rel{0, 0, 0};
    for (int p = -coeff_bound; p <= coeff_bound; ++p) {
        for (int q = -coeff_bound; q <= coeff_bound; ++q) {
            for (int s = -coeff_bound; s <= coeff_bound; ++s) {
                if (p == 0 && q == 0 && s == 0) continue;
                double v = std::abs(p * rep.x + q * rep.y + s * rep.z);
                int size = std::abs(p) + std::abs(q) + std::abs(s);
                int best_size = std::abs(best_rel[0]) + std::abs(best_rel[1]) + std::abs(best_rel[2]);
                if (v < tol && (best >= tol || size < best_size)) {
                    best = v;
                    best_rel = {p, q, s};
                }
            }
        }
    }
    if (best < tol) {
        rep.generic = false;
        // Canonical sign: first nonzero coefficient positive.
        for (int v : best_rel) {
            if (v == 0) continue;
            if (v < 0) {
                for (auto& r : best_rel) r = -r;
            }
            break;
        }
        rep.relation = best_rel;
        rep.relation_value = best;
    } else {
        rep.generic = true;
    }
    return rep;
}

PairSearch find_pairs(cplx z, cplx w, cplx v, double delta, int m_max, int n_max) {
    check_regime(z, w);
    if (v == cplx(0.0)) throw DomainError("target must be nonzero");
    if (!(delta > 0.0) || m_max < 1) throw DomainError("bad delta or m_max");
    if (n_max < 0) n_max = m_max;

    PairSearch out;
    out.target = v;
    out.delta = delta;
    out.m_max = m_max;
    out.n_max = n_max;

    const cplx log_z = std::log(z);
    const cplx log_w = std::log(w);
    const double lr = log_w.real();  // log|w| < 0
    const double lz = log_z.real();  // log|z| > 0
    const double lv = std::log(std::abs(v));

    double best_err = std::numeric_limits<double>::infinity();
    for (int m = 1; m <= m_max; ++m) {
        // Modulus window: |z|^m |w|^n within [|v| - delta, |v| + delta].
        double hi_log = std::log(std::abs(v) + delta);
        double lo_n, hi_n;
        if (std::abs(v) - delta > 0.0) {
            double lo_log = std::log(std::abs(v) - delta);
            // n increases as the modulus decreases (lr < 0).
            lo_n = (hi_log - m * lz) / lr;
            hi_n = (lo_log - m * lz) / lr;
        } else {
            lo_n = (hi_log - m * lz) / lr;
            hi_n = static_cast<double>(n_max);
        }
        int n0 = std::max(1, static_cast<int>(std::floor(lo_n)) - 1);
        int n1 = std::min(n_max, static_cast<int>(std::ceil(hi_n)) + 1);
        for (int n = n0; n <= n1; ++n) {
            cplx value = std::exp(static_cast<double>(m) * log_z + static_cast<double>(n) * log_w);
            double err = std::abs(value - v);
            if (err < delta) {
                out.pairs.push_back({m, n, value, err});
            } else if (err < best_err) {
                best_err = err;
                out.best_miss = ExponentPair{m, n, value, err};
            }
        }
    }
    if (!out.pairs.empty()) out.best_miss.reset();
    (void)lv;
    return out;
}

json RecurrenceGap::to_json() const {
    return json{{"max_gap", max_gap},
                {"pairs_checked", pairs_checked},
                {"m_first", m_first},
                {"m_last", m_last},
                {"max_n_gap", max_n_gap},
                {"bounded_within_range", bounded_within_range}};
}

RecurrenceGap recurrence_gap(const PairSearch& search) {
    if (search.pairs.size() < 3) {
        throw DomainError("insufficient pairs to estimate a recurrence gap (" +
                          std::to_string(search.pairs.size()) + " found)");
    }
    std::vector<int> ms, ns;
    for (const auto& p : search.pairs) {
        if (ms.empty() || ms.back() != p.m) ms.push_back(p.m);
        ns.push_back(p.n);
    }
    std::sort(ns.begin(), ns.end());
    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());

    RecurrenceGap gap;
    gap.pairs_checked = static_cast<int>(search.pairs.size());
    gap.m_first = ms.front();
    gap.m_last = ms.back();
    for (std::size_t i = 1; i < ms.size(); ++i) {
        gap.max_gap = std::max(gap.max_gap, ms[i] - ms[i - 1]);
    }
    for (std::size_t i = 1; i < ns.size(); ++i) {
        gap.max_n_gap = std::max(gap.max_n_gap, ns[i] - ns[i - 1]);
    }
    if (gap.max_gap == 0) gap.max_gap = 1;  // single m value hit repeatedly
    // The bound only counts when the tail of the scan does not end in a gap
    // larger than anything seen inside it.
    gap.bounded_within_range = (search.m_max - gap.m_last) < gap.max_gap;
    return gap;
}

RecurrenceGap recurrence_gap(cplx z, cplx w, cplx v, double delta, int m_max, int n_max) {
    return recurrence_gap(find_pairs(z, w, v, delta, m_max, n_max));
}

}  // namespace cantorlab
