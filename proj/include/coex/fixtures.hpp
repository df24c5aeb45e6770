#pragma once

#include <array>
#include <string>
#include <vector>

#include "coex/effects.hpp"

namespace coex::fixtures {

/// The bundled finite models every report and test refers to by name.

/// [0,3] in Z: the four-element chain {0,1,2,3}.
AlgebraRef chain4();

/// [0,(1,1)] in Z^2, coordinatewise: the four-element Boolean algebra 2^2.
AlgebraRef bool2();

/// [0,(1,2)] in Z^2, coordinatewise: the six-element MV chain product C2 x C3.
AlgebraRef c2xc3();

/// [0,(2,2)] in Z^2 ordered by cone{(1,0),(1,1),(1,2)} with functional (1,0):
/// the five-element non-MV "pentagon" {0, a, b, c, 1} with a, b, c pairwise
/// incomparable.
AlgebraRef penta();

/// Qubit effects: [0, I] over 2x2 Hermitian matrices.
AlgebraRef qubit(double psd_tolerance = 1e-9);

Effect int_effect(const AlgebraRef& algebra, std::vector<Int> entries);
Effect qubit_effect(const AlgebraRef& algebra,
                    std::vector<std::vector<std::array<double, 2>>> rows);

/// The rank-one projections of the projection-commuting criterion:
/// P = [[1,0],[0,0]] and Q = [[1/2,1/2],[1/2,1/2]].
Effect projection_p(const AlgebraRef& qubit_algebra);
Effect projection_q(const AlgebraRef& qubit_algebra);

std::vector<std::string> names();
AlgebraRef by_name(const std::string& name);
bool is_fixture_name(const std::string& name);

}  // namespace coex::fixtures
