#include "intersect.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"

namespace cantorlab {

const char* verdict_name(VerdictKind k) {
    switch (k) {
        case VerdictKind::CertifiedEmpty: return "certified_empty";
        case VerdictKind::RobustNonempty: return "robust_nonempty";
        case VerdictKind::Unknown: return "unknown";
    }
    return "unknown";
}

json IntersectionVerdict::to_json() const {
    json j{{"kind", verdict_name(kind)}, {"depth", depth}, {"final_pairs", final_pairs}};
    if (witness) j["witness"] = cplx_to_json(*witness);
    if (kind != VerdictKind::CertifiedEmpty) j["overlap"] = overlap;
    return j;
}

namespace {

/// Relative overlap of two intersecting disks: penetration depth against the
/// smaller radius. 0 for tangent disks, up to 2 for concentric equal ones.
double relative_overlap(const Disk& a, const Disk& b) {
    double pen = a.radius + b.radius - std::abs(a.center - b.center);
    double scale = std::min(a.radius, b.radius);
    if (scale <= 0.0) return 0.0;
    return pen / scale;
}

/// A point in the intersection of two overlapping disks.
cplx lens_point(const Disk& a, const Disk& b) {
    double d = std::abs(b.center - a.center);
    if (d <= std::abs(a.radius - b.radius)) {
        return a.radius < b.radius ? a.center : b.center;
    }
    cplx dir = (b.center - a.center) / d;
    double t = 0.5 * (d + (a.radius * a.radius - b.radius * b.radius) / d);
    // Clamp into both disks against rounding.
    t = std::clamp(t, d - b.radius, a.radius);
    return a.center + dir * t;
}

}  // namespace

ImageCoverLevels image_cover_levels(const ConfiguredSet& cs, int depth, std::size_t word_cap) {
    CoverTree tree = cover_tree(cs.system, cs.letter, depth, word_cap);
    ImageCoverLevels out;
    out.levels.resize(tree.levels.size());
    for (std::size_t lv = 0; lv < tree.levels.size(); ++lv) {
        out.levels[lv].resize(tree.levels[lv].size());
        for (std::size_t i = 0; i < tree.levels[lv].size(); ++i) {
            const auto& nd = tree.levels[lv][i];
            out.levels[lv][i] = {cs.config.enclose_image(nd.disk), nd.letter, nd.parent};
        }
    }
    return out;
}

std::vector<CoverDisk> image_cover(const ConfiguredSet& cs, int depth, std::size_t word_cap) {
    std::vector<CoverDisk> base = cover_at_depth(cs.system, cs.letter, depth, word_cap);
    for (auto& cd : base) cd.disk = cs.config.enclose_image(cd.disk);
    return base;
}

namespace {

IntersectionVerdict pair_search(const ImageCoverLevels& A, cplx ta, const ImageCoverLevels& B,
                                int max_depth, double margin, std::size_t pair_cap) {
    struct Pair {
        std::int32_t ia, ib;
    };

    // Exactly touching disks count as intersecting: keep pairs whose gap is
    // within rounding of zero.
    auto touching = [](const Disk& da, const Disk& db) {
        double tol = 1e-12 * (std::abs(da.center) + std::abs(db.center) + da.radius + db.radius);
        return da.gap(db) <= tol;
    };

    // Children grouped by parent are contiguous because cover_tree emits them
    // in parent order; build index ranges per level.
    auto child_ranges = [](const std::vector<std::vector<CoverTree::NodeRec>>& levels, int lv) {
        const auto& cur = levels[lv];
        const auto& prev = levels[lv - 1];
        std::vector<std::pair<std::int32_t, std::int32_t>> range(prev.size(), {0, 0});
        for (std::size_t i = 0; i < cur.size();) {
            std::size_t j = i;
            while (j < cur.size() && cur[j].parent == cur[i].parent) ++j;
            range[cur[i].parent] = {static_cast<std::int32_t>(i), static_cast<std::int32_t>(j)};
            i = j;
        }
        return range;
    };

    std::vector<Pair> frontier{{0, 0}};
    {
        Disk da = A.levels[0][0].disk;
        da.center += ta;
        if (!touching(da, B.levels[0][0].disk)) {
            return {VerdictKind::CertifiedEmpty, 0, std::nullopt, 0.0, 0};
        }
    }
    int reached = 0;
    for (int lv = 1; lv <= max_depth; ++lv) {
        auto ra = child_ranges(A.levels, lv);
        auto rb = child_ranges(B.levels, lv);
        std::vector<Pair> next;
        next.reserve(frontier.size() * 2);
        for (const Pair& p : frontier) {
            auto [a0, a1] = ra[p.ia];
            auto [b0, b1] = rb[p.ib];
            for (std::int32_t ia = a0; ia < a1; ++ia) {
                Disk da = A.levels[lv][ia].disk;
                da.center += ta;
                for (std::int32_t ib = b0; ib < b1; ++ib) {
                    if (touching(da, B.levels[lv][ib].disk)) next.push_back({ia, ib});
                }
            }
            if (next.size() > pair_cap) {
                return {VerdictKind::Unknown, lv, std::nullopt, 0.0, next.size()};
            }
        }
        if (next.empty()) {
            return {VerdictKind::CertifiedEmpty, lv, std::nullopt, 0.0, 0};
        }
        frontier = std::move(next);
        reached = lv;
    }

    // Survivors at max depth; look for a robust overlap.
    double best = 0.0;
    std::optional<cplx> witness;
    for (const Pair& p : frontier) {
        Disk da = A.levels[reached][p.ia].disk;
        da.center += ta;
        const Disk& db = B.levels[reached][p.ib].disk;
        double rel = relative_overlap(da, db);
        if (rel > best) {
            best = rel;
            witness = lens_point(da, db);
        }
    }
    if (best >= margin && witness) {
        return {VerdictKind::RobustNonempty, reached, witness, best, frontier.size()};
    }
    return {VerdictKind::Unknown, reached, std::nullopt, best, frontier.size()};
}

}  // namespace

IntersectionVerdict intersection_test_prebuilt(const ImageCoverLevels& a, cplx translate_a,
                                               const ImageCoverLevels& b, int max_depth,
                                               double margin, std::size_t pair_cap) {
    return pair_search(a, translate_a, b, max_depth, margin, pair_cap);
}

IntersectionVerdict intersection_test(const ConfiguredSet& a, const ConfiguredSet& b, int max_depth,
                                      double margin, std::size_t pair_cap) {
    if (margin < 0.0) throw DomainError("margin must be >= 0");
    ImageCoverLevels la, lb;
    try {
        la = image_cover_levels(a, max_depth);
        lb = image_cover_levels(b, max_depth);
    } catch (const CapError&) {
        return {VerdictKind::Unknown, 0, std::nullopt, 0.0, 0};
    }
    return pair_search(la, cplx(0.0), lb, max_depth, margin, pair_cap);
}

namespace {

ConfiguredSet perturb_set(const ConfiguredSet& cs, const PerturbationSpec& spec,
                          std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto draw_in_disk = [&rng, &unit](double eps) {
        double r = eps * std::sqrt(unit(rng));
        double t = 2.0 * kPi * unit(rng);
        return cplx(r * std::cos(t), r * std::sin(t));
    };
    ConfiguredSet out = cs;
    for (auto& branch : out.system.branches) {
        branch = branch.perturb_coeffs([&] { return draw_in_disk(spec.eps_branch); });
    }
    // The invariant set moved with the branches; follow it with the base points.
    for (std::size_t i = 0; i < out.system.size(); ++i) {
        out.system.base_points[i] = default_base_point(out.system, static_cast<int>(i));
    }
    cplx u = draw_in_disk(spec.eps_config);
    cplx v = draw_in_disk(spec.eps_config);
    out.config = MapExpr::compose(MapExpr::affine(1.0 + u, v), cs.config);
    return out;
}

}  // namespace

json ProbeReport::to_json() const {
    json fails = json::array();
    for (const auto& f : failures) {
        fails.push_back(json{{"sample", f.sample}, {"verdict", verdict_name(f.verdict)}});
    }
    return json{{"samples", samples},
                {"passed", passed},
                {"rejected", rejected},
                {"pass_fraction", pass_fraction},
                {"failures", fails}};
}

ProbeReport stable_intersection_probe(const ConfiguredSet& a, const ConfiguredSet& b,
                                      const PerturbationSpec& spec, int max_depth, double margin) {
    if (spec.samples <= 0) throw DomainError("sample count must be positive");
    ProbeReport rep;
    rep.samples = spec.samples;
    std::mt19937_64 rng(spec.seed);
    const int reject_cap = 20 * spec.samples;
    for (int s = 0; s < spec.samples; ++s) {
        ConfiguredSet pa, pb;
        for (;;) {
            pa = perturb_set(a, spec, rng);
            pb = perturb_set(b, spec, rng);
            if (validate_system(pa.system).all_pass && validate_system(pb.system).all_pass) break;
            if (++rep.rejected > reject_cap) {
                throw DomainError("perturbation radius too large: " + std::to_string(rep.rejected) +
                                  " draws violated the axioms");
            }
        }
        IntersectionVerdict v = intersection_test(pa, pb, max_depth, margin);
        if (v.kind == VerdictKind::RobustNonempty) {
            ++rep.passed;
        } else {
            rep.failures.push_back({s, v.kind});
        }
    }
    rep.pass_fraction = static_cast<double>(rep.passed) / rep.samples;
    return rep;
}

}  // namespace cantorlab
