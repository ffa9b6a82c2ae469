#include "fixtures.hpp"

namespace tcq::testing {

Fan random_complete_fan(std::mt19937& rng, std::size_t rank) {
  const int bound = rank == 2 ? 3 : 2;
  std::uniform_int_distribution<int> coord(-bound, bound);
  std::uniform_int_distribution<int> extra(0, 3);
  while (true) {
    Gens lifted;
    const int count = static_cast<int>(rank) + 2 + extra(rng);
    for (int k = 0; k < count; ++k) {
      IntVector v(rank + 1);
      for (std::size_t i = 0; i < rank; ++i) v[i] = coord(rng);
      v[rank] = 1;
      lifted.push_back(std::move(v));
    }
    const Cone hull = Cone::from_generators(rank + 1, lifted);
    if (!hull.is_full_dimensional()) continue;
    // Origin strictly inside the polytope: every facet has positive constant.
    bool interior = true;
    for (const auto& f : hull.facets())
      if (f[rank] <= 0) interior = false;
    if (!interior) continue;

    std::vector<Cone> maximal;
    for (const auto& f : hull.facets()) {
      Gens verts;
      for (const auto& v : hull.rays())
        if (dot(f, v) == 0) verts.emplace_back(v.begin(), v.begin() + rank);
      maximal.push_back(Cone::from_generators(rank, verts));
    }
    return Fan::from_cones(rank, maximal);
  }
}

Sublattice random_saturated_sublattice(std::mt19937& rng, std::size_t ambient,
                                       std::size_t rank) {
  std::uniform_int_distribution<int> coord(-2, 2);
  while (true) {
    Gens gens;
    for (std::size_t k = 0; k < rank; ++k) {
      IntVector v(ambient);
      for (auto& x : v) x = coord(rng);
      gens.push_back(std::move(v));
    }
    auto s = saturate(Sublattice::generated_by(ambient, gens));
    if (s.rank() == rank) return s;
  }
}

}  // namespace tcq::testing
