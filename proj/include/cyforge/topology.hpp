#pragma once

#include <tuple>

#include "cyforge/conifold.hpp"
#include "cyforge/errors.hpp"
#include "cyforge/polytope.hpp"

namespace cyforge {

struct TopologyData {
  Int h_cubed;       // H^3
  Int c2_h;          // c2 . H
  long c3 = 0;       // 2(h11 - h21)
  Int ind;           // divisibility index of the vertex lattice
  int multiplicity = 1;
};

// Triple intersection and second Chern number of the smoothed hypersurface
// from the M-side polytope Delta:
//   H^3   = Vol(Delta) / (m Ind)^3
//   c2.H  = (12 |dDelta ^ M| - 2 Vol(Delta)) / (m Ind)
// The c2 correction term follows from chi(O(H)) = H^3/6 + c2.H/12 with
// chi = l(Delta) - 1. Divisions must be exact.
inline std::pair<Int, Int> intersection_numbers(const LatticePolytope& delta,
                                                int multiplicity = 1) {
  if (!is_reflexive(delta))
    throw NotReflexive("intersection numbers need a reflexive polytope");
  if (multiplicity < 1)
    throw std::invalid_argument("multiplicity must be >= 1");
  Int vol = normalized_volume(delta);
  Int ind = vertex_sublattice_index(delta) * multiplicity;
  Int boundary = Int(delta.lattice_points().size()) - delta.interior_point_count();
  Int ind3 = ind * ind * ind;
  if (!divides(ind3, vol))
    throw NonIntegralInvariant("Vol not divisible by (m*Ind)^3: wrong multiplicity "
                               "or polytope outside the formula's domain");
  Int num = 12 * boundary - 2 * vol;
  if (!divides(ind, num))
    throw NonIntegralInvariant("c2.H not integral: wrong multiplicity or polytope "
                               "outside the formula's domain");
  return {exact_div(vol, ind3), exact_div(num, ind)};
}

inline long euler_c3(long h11, long h21) { return 2 * (h11 - h21); }

inline TopologyData topology_data(const LatticePolytope& delta,
                                  const std::pair<long, long>& hodge_smoothed,
                                  int multiplicity = 1) {
  TopologyData t;
  auto [h3, c2h] = intersection_numbers(delta, multiplicity);
  t.h_cubed = h3;
  t.c2_h = c2h;
  t.c3 = euler_c3(hodge_smoothed.first, hodge_smoothed.second);
  t.ind = vertex_sublattice_index(delta);
  t.multiplicity = multiplicity;
  return t;
}

// Wall's classification data: equal keys mean the same diffeomorphism type
// for simply connected Calabi-Yau 3-folds with Picard number one.
using WallKey = std::tuple<long, long, Int, Int>;

inline WallKey wall_key(const TopologyData& t, const HodgeData& h) {
  if (h.h11_smoothed != 1)
    throw Error("wall_key: only the Picard-number-one case is supported");
  return {h.h11_smoothed, h.h21_smoothed, t.h_cubed, t.c2_h};
}

}  // namespace cyforge
