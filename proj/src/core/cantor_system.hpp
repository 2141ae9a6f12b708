#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "map_expr.hpp"

namespace cantorlab {

/// A finite admissible word (a_0, ..., a_n) of letter indices. The composed
/// inverse branch of a word applies the last edge first:
///   f_word = f_{a0,a1} o ... o f_{a_{n-1},a_n} : G(a_n) -> G(a_0),
/// so the image f_word(G(a_n)) is the advanced piece of the word inside
/// G(a_0).
struct Word {
    std::vector<int> letters;

    std::size_t length() const { return letters.size(); }
    int front() const { return letters.front(); }
    int back() const { return letters.back(); }
};

/// Expanding Markov family of disks in C: per-letter closed disk pieces, a
/// holomorphic expanding branch on each piece, admissible transitions, and a
/// marked base point inside each piece's part of the invariant set.
struct CantorSystem {
    std::vector<std::string> letters;
    std::vector<std::vector<bool>> adm;  // adm[a][b]: a may be followed by b
    std::vector<Disk> pieces;
    std::vector<MapExpr> branches;  // branch[a] = g restricted to G(a)
    std::vector<cplx> base_points;  // c_a, inside K(a)

    std::size_t size() const { return letters.size(); }
    bool admissible(int a, int b) const { return adm[a][b]; }
    int letter_index(std::string_view name) const;
    std::vector<int> successors(int a) const;
    bool word_admissible(const Word& w) const;

    json to_json() const;
    static CantorSystem from_json(const json& j);
};

/// An eventually periodic backward sequence (..., t_{-1}, t_0): infinitely
/// repeated `block` to the left, then `suffix` ending at t_0. The suffix may
/// be empty (purely periodic tail).
struct TailSequence {
    std::vector<int> block;
    std::vector<int> suffix;

    int last() const { return suffix.empty() ? block.back() : suffix.back(); }
    int letter_at(int back_offset) const;  // back_offset >= 0; 0 is t_0
    /// Word (t_{-depth}, ..., t_0) of length depth+1.
    Word expand(int depth) const;
    TailSequence append(int letter) const;

    /// "a,b|c" = block a,b with suffix c; "a" = constant tail.
    static TailSequence parse(const std::string& text, const CantorSystem& sys);
    std::string str(const CantorSystem& sys) const;
    void check_admissible(const CantorSystem& sys) const;
};

struct MixingResult {
    bool mixing = false;
    int power = 0;  // least k with M^k strictly positive, when mixing
};

/// Least k <= |A|^2 with the k-th boolean power of the transition matrix
/// strictly positive.
MixingResult mixing_check(const std::vector<std::vector<bool>>& adm);

struct AxiomResult {
    std::string name;
    bool pass = false;
    double margin = 0.0;
    std::string detail;
};

struct ValidationReport {
    bool all_pass = false;
    std::vector<AxiomResult> axioms;
    double expansion_inf = 0.0;
    int mixing_power = 0;
    json to_json() const;
};

/// Checks the defining axioms: piece disjointness, Markov covering /
/// separation with margins, expansion inf |g'| > 1, mixing, and base-point
/// membership down to `base_depth`. Inclusions are accepted down to -slack
/// (exactly touching configurations pass).
ValidationReport validate_system(const CantorSystem& sys, double slack = 1e-9, int base_depth = 6);

/// f_{a,b} = (g|G(a))^{-1}|G(b), requires (a,b) admissible.
MapExpr inverse_branch(const CantorSystem& sys, int a, int b);

/// Composed contraction of an admissible word; words of length <= 1 give the
/// identity.
MapExpr compose_branches(const CantorSystem& sys, const Word& w);

struct CoverDisk {
    Word word;
    Disk disk;  // outer enclosure of f_word(G(word.back()))
};

/// Enclosing disks for all admissible words of length depth+1 starting at a.
/// Their union covers K(a). Throws CapError beyond `word_cap` words.
std::vector<CoverDisk> cover_at_depth(const CantorSystem& sys, int a, int depth,
                                      std::size_t word_cap = 200000);

/// Per-level cover disks with parent links; level k holds the words of
/// length k+1. Used by intersection search.
struct CoverTree {
    struct NodeRec {
        Disk disk;
        int letter = 0;   // last letter of the word
        int parent = -1;  // index in the previous level
    };
    std::vector<std::vector<NodeRec>> levels;
};

CoverTree cover_tree(const CantorSystem& sys, int a, int depth, std::size_t word_cap = 200000);

/// A point of K(a) to within the contraction at `len` symbols: the image of a
/// piece center under a random admissible backward word.
cplx backward_orbit_point(const CantorSystem& sys, int a, std::mt19937_64& rng, int len = 40);

/// Default base point: the fixed point of the branch when (a,a) is
/// admissible, otherwise the periodic point of a greedy admissible cycle
/// pulled back to G(a).
cplx default_base_point(const CantorSystem& sys, int a);

}  // namespace cantorlab
