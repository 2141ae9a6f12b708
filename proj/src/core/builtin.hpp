#pragma once

#include <string>

#include "cantor_system.hpp"

namespace cantorlab {

struct UnfoldingModel;

/// Named example systems:
///   middle-thirds         two affine branches, scale 3, exactly touching Markov margins
///   wide-thirds           same combinatorics with slack margins (radius 0.18)
///   wide-thirds-quadratic wide-thirds with quadratic branch terms
///   four-corner           four affine branches on a planar grid, contraction 0.36
///   four-corner-spiral    four-corner with rotating branches
///   sparse-corner         four-corner at contraction 0.30 (porous difference set)
CantorSystem builtin_system(const std::string& name);

CantorSystem middle_thirds();
CantorSystem wide_thirds(double radius = 0.18);
CantorSystem wide_thirds_quadratic(double gamma = 0.15, double radius = 0.18);
CantorSystem four_corner(double alpha = 0.36, double phi = 0.0, double spacing = 0.55,
                         double hull_radius = 0.72);

/// Moves pieces, branches and base points by z -> z + t (conjugation of the
/// expanding map by the translation).
CantorSystem translate_system(const CantorSystem& sys, cplx t);

bool is_builtin_system(const std::string& name);

/// Named example unfolding models:
///   fat-default      four-corner pair, resonant eigenvalues, solid overlap
///   separated        fat-default with the stable configuration pushed far away
///   affine-exact     all-affine, constant eigenvalues, exact renormalization
///   nonlinear-drift  quadratic branches, eigenvalue drift and curved unfolding
///   spiral-generic   rotating branch pair with generic eigenvalues
UnfoldingModel builtin_model(const std::string& name);
bool is_builtin_model(const std::string& name);

}  // namespace cantorlab
