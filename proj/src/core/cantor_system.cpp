#include "cantor_system.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <sstream>

#include "errors.hpp"

namespace cantorlab {

int CantorSystem::letter_index(std::string_view name) const {
    for (std::size_t i = 0; i < letters.size(); ++i) {
        if (letters[i] == name) return static_cast<int>(i);
    }
    return -1;
}

std::vector<int> CantorSystem::successors(int a) const {
    std::vector<int> out;
    for (std::size_t b = 0; b < size(); ++b) {
        if (adm[a][b]) out.push_back(static_cast<int>(b));
    }
    return out;
}

bool CantorSystem::word_admissible(const Word& w) const {
    for (std::size_t i = 0; i + 1 < w.letters.size(); ++i) {
        if (!adm[w.letters[i]][w.letters[i + 1]]) return false;
    }
    return true;
}

json CantorSystem::to_json() const {
    json pieces_j = json::object();
    json branches_j = json::object();
    json base_j = json::object();
    for (std::size_t i = 0; i < size(); ++i) {
        pieces_j[letters[i]] = disk_to_json(pieces[i]);
        branches_j[letters[i]] = branches[i].to_json();
        base_j[letters[i]] = cplx_to_json(base_points[i]);
    }
    json trans_j = json::array();
    for (std::size_t a = 0; a < size(); ++a) {
        for (std::size_t b = 0; b < size(); ++b) {
            if (adm[a][b]) trans_j.push_back(json::array({letters[a], letters[b]}));
        }
    }
    return json{{"alphabet", letters},
                {"transitions", trans_j},
                {"pieces", pieces_j},
                {"branches", branches_j},
                {"base_points", base_j}};
}

CantorSystem CantorSystem::from_json(const json& j) {
    CantorSystem sys;
    try {
        sys.letters = j.at("alphabet").get<std::vector<std::string>>();
        if (sys.letters.empty()) throw ParseError("empty alphabet");
        const std::size_t n = sys.letters.size();
        sys.adm.assign(n, std::vector<bool>(n, false));
        for (const auto& t : j.at("transitions")) {
            int a = sys.letter_index(t.at(0).get<std::string>());
            int b = sys.letter_index(t.at(1).get<std::string>());
            if (a < 0 || b < 0) throw ParseError("transition names an unknown letter");
            sys.adm[a][b] = true;
        }
        sys.pieces.resize(n);
        sys.branches.resize(n, MapExpr::identity());
        for (std::size_t i = 0; i < n; ++i) {
            sys.pieces[i] = disk_from_json(j.at("pieces").at(sys.letters[i]));
            if (!(sys.pieces[i].radius > 0)) throw ParseError("piece radius must be positive");
            sys.branches[i] = MapExpr::from_json(j.at("branches").at(sys.letters[i]));
        }
        sys.base_points.resize(n);
        if (j.contains("base_points")) {
            for (std::size_t i = 0; i < n; ++i) {
                sys.base_points[i] = cplx_from_json(j.at("base_points").at(sys.letters[i]));
            }
        } else {
            for (std::size_t i = 0; i < n; ++i) {
                sys.base_points[i] = default_base_point(sys, static_cast<int>(i));
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad system document: ") + e.what());
    }
    return sys;
}

int TailSequence::letter_at(int back_offset) const {
    const int s = static_cast<int>(suffix.size());
    if (back_offset < s) return suffix[s - 1 - back_offset];
    const int b = static_cast<int>(block.size());
    int r = back_offset - s;  // steps into the periodic part, from its right end
    return block[(b - 1 - (r % b) + b) % b];
}

Word TailSequence::expand(int depth) const {
    Word w;
    w.letters.resize(depth + 1);
    for (int i = 0; i <= depth; ++i) w.letters[i] = letter_at(depth - i);
    return w;
}

TailSequence TailSequence::append(int letter) const {
    TailSequence t = *this;
    t.suffix.push_back(letter);
    return t;
}

void TailSequence::check_admissible(const CantorSystem& sys) const {
    if (block.empty()) throw DomainError("tail needs a nonempty periodic block");
    const int b = static_cast<int>(block.size());
    for (int i = 0; i + 1 < b; ++i) {
        if (!sys.adm[block[i]][block[i + 1]]) throw DomainError("tail block is not admissible");
    }
    if (!sys.adm[block[b - 1]][block[0]]) throw DomainError("tail block does not wrap admissibly");
    int prev = block[b - 1];
    for (int s : suffix) {
        if (!sys.adm[prev][s]) throw DomainError("tail suffix is not admissible");
        prev = s;
    }
}

TailSequence TailSequence::parse(const std::string& text, const CantorSystem& sys) {
    auto split_letters = [&sys](const std::string& part) {
        std::vector<int> out;
        std::stringstream ss(part);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (item.empty()) continue;
            int idx = sys.letter_index(item);
            if (idx < 0) throw ParseError("unknown letter '" + item + "' in tail");
            out.push_back(idx);
        }
        return out;
    };
    TailSequence t;
    auto bar = text.find('|');
    if (bar == std::string::npos) {
        t.block = split_letters(text);
    } else {
        t.block = split_letters(text.substr(0, bar));
        t.suffix = split_letters(text.substr(bar + 1));
    }
    if (t.block.empty()) throw ParseError("tail '" + text + "' has an empty periodic block");
    t.check_admissible(sys);
    return t;
}

std::string TailSequence::str(const CantorSystem& sys) const {
    std::string out;
    for (std::size_t i = 0; i < block.size(); ++i) {
        if (i) out += ',';
        out += sys.letters[block[i]];
    }
    out += '|';
    for (std::size_t i = 0; i < suffix.size(); ++i) {
        if (i) out += ',';
        out += sys.letters[suffix[i]];
    }
    return out;
}

MixingResult mixing_check(const std::vector<std::vector<bool>>& adm) {
    const std::size_t n = adm.size();
    if (n == 0) throw DomainError("empty alphabet");
    std::vector<std::vector<bool>> power = adm;
    const int cap = static_cast<int>(n * n);
    for (int k = 1; k <= cap; ++k) {
        bool all = true;
        for (const auto& row : power) {
            for (bool v : row) all = all && v;
        }
        if (all) return {true, k};
        // power <- power * adm (boolean)
        std::vector<std::vector<bool>> next(n, std::vector<bool>(n, false));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (!power[i][j]) continue;
                for (std::size_t l = 0; l < n; ++l) {
                    if (adm[j][l]) next[i][l] = true;
                }
            }
        }
        power = std::move(next);
    }
    return {false, 0};
}

MapExpr inverse_branch(const CantorSystem& sys, int a, int b) {
    if (a < 0 || b < 0 || a >= static_cast<int>(sys.size()) || b >= static_cast<int>(sys.size()))
        throw DomainError("letter out of range");
    if (!sys.adm[a][b]) {
        throw DomainError("pair (" + sys.letters[a] + "," + sys.letters[b] + ") is not admissible");
    }
    if (auto aff = sys.branches[a].as_affine()) {
        AffineMap inv = aff->inverse();
        return MapExpr::affine(inv.scale, inv.offset);
    }
    return MapExpr::inverse_on(sys.branches[a], sys.pieces[a]);
}

MapExpr compose_branches(const CantorSystem& sys, const Word& w) {
    if (w.letters.size() <= 1) return MapExpr::identity();
    if (!sys.word_admissible(w)) throw DomainError("word is not admissible");
    MapExpr f = inverse_branch(sys, w.letters[w.letters.size() - 2], w.letters.back());
    for (std::size_t i = w.letters.size() - 2; i-- > 0;) {
        f = MapExpr::compose(inverse_branch(sys, w.letters[i], w.letters[i + 1]), f);
    }
    return f;
}

namespace {

/// Edge enclosure cache: disk image of piece(b) under f_{a,b}, plus the edge map.
struct EdgeData {
    MapExpr map;
    bool valid = false;
};

std::vector<std::vector<EdgeData>> edge_table(const CantorSystem& sys) {
    const std::size_t n = sys.size();
    std::vector<std::vector<EdgeData>> t(n);
    for (std::size_t a = 0; a < n; ++a) {
        t[a].resize(n);
        for (std::size_t b = 0; b < n; ++b) {
            if (!sys.adm[a][b]) continue;
            t[a][b].map = inverse_branch(sys, static_cast<int>(a), static_cast<int>(b));
            t[a][b].valid = true;
        }
    }
    return t;
}

}  // namespace

CoverTree cover_tree(const CantorSystem& sys, int a, int depth, std::size_t word_cap) {
    if (a < 0 || a >= static_cast<int>(sys.size())) throw DomainError("letter out of range");
    if (depth < 0) throw DomainError("depth must be >= 0");
    auto edges = edge_table(sys);

    CoverTree tree;
    tree.levels.resize(depth + 1);
    tree.levels[0].push_back({sys.pieces[a], a, -1});

    // Reconstructs the enclosure chain for one node by walking to the root.
    auto chain_disk = [&](int level, int node) {
        std::vector<std::pair<int, int>> path;  // (parent letter, node letter)
        int lv = level, nd = node;
        while (lv > 0) {
            int parent = tree.levels[lv][nd].parent;
            path.emplace_back(tree.levels[lv - 1][parent].letter, tree.levels[lv][nd].letter);
            nd = parent;
            --lv;
        }
        Disk e = sys.pieces[tree.levels[level][node].letter];
        for (const auto& [pa, pb] : path) e = edges[pa][pb].map.enclose_image(e);
        return e;
    };

    for (int lv = 1; lv <= depth; ++lv) {
        auto& prev = tree.levels[lv - 1];
        auto& cur = tree.levels[lv];
        for (std::size_t p = 0; p < prev.size(); ++p) {
            for (int b : sys.successors(prev[p].letter)) {
                cur.push_back({Disk{}, b, static_cast<int>(p)});
                if (cur.size() > word_cap) {
                    throw CapError("cover would exceed the word cap (" + std::to_string(word_cap) + ")");
                }
            }
        }
        for (std::size_t i = 0; i < cur.size(); ++i) cur[i].disk = chain_disk(lv, static_cast<int>(i));
    }
    return tree;
}

std::vector<CoverDisk> cover_at_depth(const CantorSystem& sys, int a, int depth,
                                      std::size_t word_cap) {
    CoverTree tree = cover_tree(sys, a, depth, word_cap);
    const auto& leaves = tree.levels[depth];
    std::vector<CoverDisk> out(leaves.size());
    for (std::size_t i = 0; i < leaves.size(); ++i) {
        out[i].disk = leaves[i].disk;
        // Recover the word by parent links.
        std::vector<int> rev;
        int lv = depth, nd = static_cast<int>(i);
        while (lv >= 0) {
            rev.push_back(tree.levels[lv][nd].letter);
            nd = tree.levels[lv][nd].parent;
            --lv;
        }
        out[i].word.letters.assign(rev.rbegin(), rev.rend());
    }
    return out;
}

cplx backward_orbit_point(const CantorSystem& sys, int a, std::mt19937_64& rng, int len) {
    std::vector<int> word{a};
    for (int i = 0; i < len; ++i) {
        auto succ = sys.successors(word.back());
        if (succ.empty()) throw DomainError("dead letter in transition set");
        std::uniform_int_distribution<std::size_t> pick(0, succ.size() - 1);
        word.push_back(succ[pick(rng)]);
    }
    cplx z = sys.pieces[word.back()].center;
    for (std::size_t i = word.size() - 1; i-- > 0;) {
        z = inverse_branch(sys, word[i], word[i + 1])(z);
    }
    return z;
}

cplx default_base_point(const CantorSystem& sys, int a) {
    auto cycle_point = [&sys](const std::vector<int>& cycle) {
        // Fixed point of the composed contraction around the cycle.
        cplx z = sys.pieces[cycle[0]].center;
        for (int it = 0; it < 400; ++it) {
            cplx prev = z;
            for (std::size_t i = cycle.size(); i-- > 0;) {
                int from = cycle[i];
                int to = cycle[(i + 1) % cycle.size()];
                z = inverse_branch(sys, from, to)(z);
            }
            if (std::abs(z - prev) < 1e-15) break;
        }
        return z;
    };
    if (sys.adm[a][a]) return cycle_point({a});

    // Greedy walk until a letter repeats; the cycle gives a periodic point,
    // pulled back through the approach prefix.
    std::vector<int> walk{a};
    std::map<int, std::size_t> seen{{a, 0}};
    for (;;) {
        auto succ = sys.successors(walk.back());
        if (succ.empty()) throw DomainError("dead letter in transition set");
        int nxt = succ.front();
        auto it = seen.find(nxt);
        if (it != seen.end()) {
            std::vector<int> cycle(walk.begin() + it->second, walk.end());
            cplx z = cycle_point(cycle);
            for (std::size_t i = it->second; i-- > 0;) {
                z = inverse_branch(sys, walk[i], walk[i + 1])(z);
            }
            return z;
        }
        seen[nxt] = walk.size();
        walk.push_back(nxt);
    }
}

namespace {

/// Covers a disk by four children of radius ~0.708 r.
std::array<Disk, 4> split_disk(const Disk& d) {
    const double h = 0.5 * d.radius;
    const double cr = 0.7072 * d.radius;
    return {Disk{d.center + cplx(h, h), cr}, Disk{d.center + cplx(-h, h), cr},
            Disk{d.center + cplx(h, -h), cr}, Disk{d.center + cplx(-h, -h), cr}};
}

/// Certified check that g(A) avoids B, by adaptive subdivision of A.
/// Returns (certified, margin): margin is the least separation found when
/// certified, negative when an image point provably lands in B.
std::pair<bool, double> image_avoids(const MapExpr& g, const Disk& A, const Disk& B,
                                     int max_depth = 24, std::size_t budget = 100000) {
    struct Item {
        Disk d;
        int depth;
    };
    std::deque<Item> queue{{A, 0}};
    double margin = std::numeric_limits<double>::infinity();
    std::size_t processed = 0;
    while (!queue.empty()) {
        Item it = queue.front();
        queue.pop_front();
        Disk img = g.enclose_image(it.d);
        double gap = img.gap(B);
        if (gap > 0.0) {
            margin = std::min(margin, gap);
            continue;
        }
        // g(center) is an exact image point; inside B it certifies overlap.
        double inside = B.radius - std::abs(g(it.d.center) - B.center);
        if (inside > 0.0) return {false, -inside};
        if (it.depth >= max_depth || it.d.radius < 1e-9 * A.radius || ++processed > budget) {
            return {false, gap};
        }
        for (const Disk& child : split_disk(it.d)) queue.push_back({child, it.depth + 1});
    }
    return {true, margin};
}

/// Adaptive lower bound for inf |g'| over a disk.
double refine_deriv_inf(const MapExpr& g, const Disk& A, int levels = 4) {
    std::vector<Disk> frontier{A};
    for (int lv = 0; lv < levels; ++lv) {
        std::vector<Disk> next;
        next.reserve(frontier.size() * 4);
        for (const Disk& d : frontier) {
            for (const Disk& c : split_disk(d)) next.push_back(c);
        }
        frontier = std::move(next);
    }
    double inf = std::numeric_limits<double>::infinity();
    for (const Disk& d : frontier) inf = std::min(inf, g.abs_deriv_bounds(d).lo);
    return inf;
}

}  // namespace

ValidationReport validate_system(const CantorSystem& sys, double slack, int base_depth) {
    ValidationReport rep;
    const int n = static_cast<int>(sys.size());

    // Structural: no dead letters.
    {
        bool ok = true;
        std::string detail;
        for (int a = 0; a < n; ++a) {
            bool out = false, in = false;
            for (int b = 0; b < n; ++b) {
                out = out || sys.adm[a][b];
                in = in || sys.adm[b][a];
            }
            if (!out || !in) {
                ok = false;
                detail += sys.letters[a] + (out ? " has no predecessor; " : " has no successor; ");
            }
        }
        rep.axioms.push_back({"letters-live", ok, ok ? 1.0 : -1.0, detail});
    }

    // Axiom: pairwise disjoint pieces.
    {
        double worst = std::numeric_limits<double>::infinity();
        std::string detail;
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                double gap = sys.pieces[i].gap(sys.pieces[j]);
                if (gap < worst) {
                    worst = gap;
                    detail = "closest pieces: " + sys.letters[i] + "," + sys.letters[j];
                }
            }
        }
        if (n == 1) worst = std::numeric_limits<double>::infinity();
        // Distinct pieces must be strictly apart; touching does not count.
        bool pass = (n == 1) || worst > slack;
        rep.axioms.push_back({"pieces-disjoint", pass, n == 1 ? 1.0 : worst, detail});
    }

    // Axiom: Markov covering for admissible pairs (via the inverse branch),
    // separation for non-admissible pairs.
    {
        double worst_in = std::numeric_limits<double>::infinity();
        double worst_out = std::numeric_limits<double>::infinity();
        bool pass_in = true, pass_out = true;
        std::string detail_in, detail_out;
        for (int a = 0; a < n; ++a) {
            for (int b = 0; b < n; ++b) {
                if (sys.adm[a][b]) {
                    double margin;
                    try {
                        MapExpr f = inverse_branch(sys, a, b);
                        Disk img = f.enclose_image(sys.pieces[b]);
                        margin = sys.pieces[a].containment_margin(img);
                        // Round-trip sanity of the inversion.
                        cplx rt = sys.branches[a](f(sys.pieces[b].center));
                        if (std::abs(rt - sys.pieces[b].center) > 1e-8 * (1.0 + std::abs(rt))) {
                            margin = -std::numeric_limits<double>::infinity();
                        }
                    } catch (const ConvergenceError&) {
                        margin = -std::numeric_limits<double>::infinity();
                    }
                    if (margin < worst_in) {
                        worst_in = margin;
                        detail_in = "tightest covering: g(G(" + sys.letters[a] + ")) over G(" +
                                    sys.letters[b] + ")";
                    }
                    if (!(margin > -slack)) pass_in = false;
                } else {
                    auto [ok, margin] = image_avoids(sys.branches[a], sys.pieces[a], sys.pieces[b]);
                    if (margin < worst_out) {
                        worst_out = margin;
                        detail_out = "tightest separation: g(G(" + sys.letters[a] + ")) vs G(" +
                                     sys.letters[b] + ")";
                    }
                    if (!ok || !(margin > -slack)) pass_out = false;
                }
            }
        }
        rep.axioms.push_back({"markov-covering", pass_in,
                              std::isfinite(worst_in) ? worst_in : 0.0, detail_in});
        rep.axioms.push_back({"markov-separation", pass_out,
                              std::isfinite(worst_out) ? worst_out : 0.0, detail_out});
    }

    // Axiom: expansion inf |g'| > 1 on every piece.
    {
        double inf = std::numeric_limits<double>::infinity();
        std::string detail;
        for (int a = 0; a < n; ++a) {
            double v = refine_deriv_inf(sys.branches[a], sys.pieces[a]);
            if (v < inf) {
                inf = v;
                detail = "weakest expansion on G(" + sys.letters[a] + ")";
            }
        }
        rep.expansion_inf = inf;
        rep.axioms.push_back({"expansion", inf > 1.0, inf - 1.0, detail});
    }

    // Axiom: topological mixing (primitive transition matrix).
    {
        MixingResult mix = mixing_check(sys.adm);
        rep.mixing_power = mix.power;
        rep.axioms.push_back({"mixing", mix.mixing, mix.mixing ? static_cast<double>(mix.power) : -1.0,
                              mix.mixing ? "primitive at power " + std::to_string(mix.power)
                                         : "transition matrix is not primitive"});
    }

    // Axiom: base points lie in the covers down to base_depth.
    {
        bool pass = true;
        double worst = std::numeric_limits<double>::infinity();
        std::string detail;
        for (int a = 0; a < n && pass; ++a) {
            cplx c = sys.base_points[a];
            if (!sys.pieces[a].contains(c, slack)) {
                pass = false;
                detail = "base point of " + sys.letters[a] + " outside its piece";
                worst = -1.0;
                break;
            }
            try {
                CoverTree tree = cover_tree(sys, a, base_depth, 100000);
                for (int lv = 0; lv <= base_depth; ++lv) {
                    double best = -std::numeric_limits<double>::infinity();
                    for (const auto& nd : tree.levels[lv]) {
                        best = std::max(best, nd.disk.radius - std::abs(c - nd.disk.center));
                    }
                    worst = std::min(worst, best);
                    if (!(best > -slack)) {
                        pass = false;
                        detail = "base point of " + sys.letters[a] + " escapes the depth-" +
                                 std::to_string(lv) + " cover";
                        break;
                    }
                }
            } catch (const CapError&) {
                // Combinatorics too rich to test deeply; accept the piece test.
            }
        }
        rep.axioms.push_back({"base-points", pass, std::isfinite(worst) ? worst : 0.0, detail});
    }

    rep.all_pass = true;
    for (const auto& ax : rep.axioms) rep.all_pass = rep.all_pass && ax.pass;
    return rep;
}

json ValidationReport::to_json() const {
    json ax = json::array();
    for (const auto& a : axioms) {
        ax.push_back(json{{"name", a.name}, {"pass", a.pass}, {"margin", a.margin}, {"detail", a.detail}});
    }
    return json{{"all_pass", all_pass},
                {"axioms", ax},
                {"expansion_inf", expansion_inf},
                {"mixing_power", mixing_power}};
}

}  // namespace cantorlab
