#pragma once

#include <cstdint>
#include <optional>

#include "limit_geometry.hpp"

namespace cantorlab {

/// A Cantor set piece pushed into the plane by a configuration.
struct ConfiguredSet {
    CantorSystem system;
    int letter = 0;
    MapExpr config;  // defined on G(letter)
};

enum class VerdictKind { CertifiedEmpty, RobustNonempty, Unknown };

const char* verdict_name(VerdictKind k);

struct IntersectionVerdict {
    VerdictKind kind = VerdictKind::Unknown;
    int depth = 0;  // depth at which the verdict was reached
    std::optional<cplx> witness;
    double overlap = 0.0;       // best relative overlap among final pairs
    std::size_t final_pairs = 0;
    json to_json() const;
};

/// Disks enclosing config(f_word(G(word.back()))) over all admissible words
/// of length depth+1 from the configured letter.
std::vector<CoverDisk> image_cover(const ConfiguredSet& cs, int depth,
                                   std::size_t word_cap = 200000);

/// Breadth-first pruning over pairs of cover disks.
///   CertifiedEmpty: every pair of cover disks separated at some depth (sound).
///   RobustNonempty: pair chains survive to max_depth and some final pair
///                   overlaps with relative depth >= margin.
///   Unknown: survivors exist but none overlaps robustly, or a cap was hit.
/// Exactly touching disks are kept when pruning.
IntersectionVerdict intersection_test(const ConfiguredSet& a, const ConfiguredSet& b, int max_depth,
                                      double margin, std::size_t pair_cap = 2000000);

/// Per-depth image cover disks with parent links, for repeated translated
/// intersection tests against a fixed pair of configured sets.
struct ImageCoverLevels {
    std::vector<std::vector<CoverTree::NodeRec>> levels;
};

ImageCoverLevels image_cover_levels(const ConfiguredSet& cs, int depth,
                                    std::size_t word_cap = 200000);

/// intersection_test over prebuilt covers, with side A translated by t.
IntersectionVerdict intersection_test_prebuilt(const ImageCoverLevels& a, cplx translate_a,
                                               const ImageCoverLevels& b, int max_depth,
                                               double margin, std::size_t pair_cap = 2000000);

struct PerturbationSpec {
    double eps_branch = 0.0;  // coefficient perturbation radius
    double eps_config = 0.0;  // affine configuration perturbation radius
    int samples = 0;
    std::uint64_t seed = 0;
};

struct ProbeFailure {
    int sample = 0;
    VerdictKind verdict = VerdictKind::Unknown;
};

struct ProbeReport {
    int samples = 0;
    int passed = 0;
    int rejected = 0;  // draws discarded for violating the axioms
    double pass_fraction = 0.0;
    std::vector<ProbeFailure> failures;
    json to_json() const;
};

/// Draws perturbed copies of both configured sets and reports the fraction
/// with a RobustNonempty verdict. Samples whose perturbed system fails
/// validation are redrawn; more than 20*N rejections abort.
ProbeReport stable_intersection_probe(const ConfiguredSet& a, const ConfiguredSet& b,
                                      const PerturbationSpec& spec, int max_depth, double margin);

}  // namespace cantorlab
