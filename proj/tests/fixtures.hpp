#pragma once

// Shared fans and helpers for the test programs.

#include <random>
#include <vector>

#include "tcq/polyhedra.hpp"

namespace tcq::testing {

using Gens = std::vector<IntVector>;

inline Cone cone_of(std::size_t r,
                    std::initializer_list<std::initializer_list<long>> g) {
  Gens gens;
  for (auto v : g) gens.push_back(make_vector(v));
  return Cone::from_generators(r, gens);
}

inline Sublattice line(std::initializer_list<long> v) {
  return Sublattice::generated_by(v.size(), Gens{make_vector(v)});
}

// Projective plane.
inline Fan p2_fan() {
  return Fan::from_maximal_generators(
      2, {{make_vector({1, 0}), make_vector({0, 1})},
          {make_vector({0, 1}), make_vector({-1, -1})},
          {make_vector({-1, -1}), make_vector({1, 0})}});
}

// The four quadrants.
inline Fan p1p1_fan() {
  return Fan::from_maximal_generators(
      2, {{make_vector({1, 0}), make_vector({0, 1})},
          {make_vector({0, 1}), make_vector({-1, 0})},
          {make_vector({-1, 0}), make_vector({0, -1})},
          {make_vector({0, -1}), make_vector({1, 0})}});
}

// Fan of P^1 in Z.
inline Fan p1_fan() {
  return Fan::from_maximal_generators(1, {{make_vector({1})}, {make_vector({-1})}});
}

// Face fan of a random lattice polygon / polytope containing the origin in
// its interior: each maximal cone is spanned by the vertices of a facet.
// Simplicial faces are not required; the cones come from the dual
// description of the convex hull of the points.
Fan random_complete_fan(std::mt19937& rng, std::size_t rank);

// A random saturated sublattice of the given rank.
Sublattice random_saturated_sublattice(std::mt19937& rng, std::size_t ambient,
                                       std::size_t rank);

}  // namespace tcq::testing
