// Shared test fixtures: deliberately broken system documents (each violating
// exactly one axiom) and small helper systems.
#pragma once

#include "builtin.hpp"
#include "cantor_system.hpp"

namespace fixtures {

using namespace cantorlab;

/// One-letter quadratic system around the fixed point of z^2 - 2 at z = 2.
inline CantorSystem one_letter_quadratic() {
    CantorSystem sys;
    sys.letters = {"q"};
    sys.adm = {{true}};
    sys.pieces = {Disk{cplx(2.0, 0.0), 0.35}};
    sys.branches = {MapExpr::polynomial({cplx(-2.0), cplx(0.0), cplx(1.0)})};
    sys.base_points = {cplx(2.0, 0.0)};
    return sys;
}

/// Piece b moved onto piece a; branches follow so the coverings still hold.
inline CantorSystem broken_disjointness() {
    CantorSystem sys = middle_thirds();
    sys.pieces[1] = Disk{cplx(0.4, 0.0), 1.0 / 6.0};
    sys.branches[1] = MapExpr::affine(3.0, -0.7);  // image D(0.5, 0.5) again
    sys.base_points[1] = cplx(0.35, 0.0);          // fixed point of 3z - 0.7
    return sys;
}

/// Branch a expands by 2.9 only: g(G(a)) no longer covers G(b).
inline CantorSystem broken_covering() {
    CantorSystem sys = middle_thirds();
    sys.branches[0] = MapExpr::affine(2.9, 0.0);
    return sys;
}

/// (b,b) removed from the transitions while g(G(b)) still meets G(b).
inline CantorSystem broken_separation() {
    CantorSystem sys = middle_thirds();
    sys.adm[1][1] = false;
    // Base point of b now rides the admissible cycle b -> a -> b.
    sys.base_points[1] = default_base_point(sys, 1);
    return sys;
}

/// One-letter system around the weakly repelling fixed point of z^2 + 0.2:
/// the Markov inclusion holds while inf |g'| dips below 1 inside the piece.
inline CantorSystem broken_expansion() {
    CantorSystem sys;
    sys.letters = {"q"};
    sys.adm = {{true}};
    const double beta = 0.5 * (1.0 + std::sqrt(0.2));  // fixed point, g'(beta) ~ 1.447
    sys.pieces = {Disk{cplx(beta, 0.0), 0.3}};
    sys.branches = {MapExpr::polynomial({cplx(0.2), cplx(0.0), cplx(1.0)})};
    sys.base_points = {cplx(beta, 0.0)};
    return sys;
}

/// Two self-loops on far-apart pieces: reducible transition matrix, all
/// geometric axioms fine.
inline CantorSystem broken_mixing() {
    CantorSystem sys;
    sys.letters = {"a", "b"};
    sys.adm = {{true, false}, {false, true}};
    sys.pieces = {Disk{cplx(1.0 / 6.0, 0.0), 1.0 / 6.0}, Disk{cplx(10.0, 0.0), 1.0 / 6.0}};
    sys.branches = {MapExpr::affine(3.0, 0.0), MapExpr::affine(3.0, -20.0)};
    sys.base_points = {cplx(0.0), cplx(10.0)};
    return sys;
}

/// Base points at the piece centers, which escape the covers at depth 1.
inline CantorSystem broken_base_points() {
    CantorSystem sys = middle_thirds();
    sys.base_points = {sys.pieces[0].center, sys.pieces[1].center};
    return sys;
}

/// Two-branch fat line system: contraction 0.45, overlap-rich covers.
inline CantorSystem fat_line_system() {
    CantorSystem sys;
    sys.letters = {"a", "b"};
    sys.adm = {{true, true}, {true, true}};
    sys.pieces = {Disk{cplx(0.225, 0.0), 0.24}, Disk{cplx(0.775, 0.0), 0.24}};
    sys.branches = {MapExpr::affine(1.0 / 0.45, 0.0),
                    MapExpr::affine(1.0 / 0.45, -0.55 / 0.45)};
    sys.base_points = {cplx(0.0), cplx(1.0)};
    return sys;
}

}  // namespace fixtures
