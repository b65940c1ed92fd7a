#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "cyforge/errors.hpp"
#include "cyforge/matrix.hpp"
#include "cyforge/polytope.hpp"

namespace cyforge {

enum class TwoFaceTag { UnimodularTriangle, MinimalParallelogram, Other };

struct TwoFaceClass {
  TwoFaceTag tag = TwoFaceTag::Other;
  // for a parallelogram: the diagonal index pairs (into the polytope's
  // vertex list); plus_diagonal is the lexicographically smaller one
  std::array<int, 2> plus_diagonal{-1, -1};
  std::array<int, 2> minus_diagonal{-1, -1};
};

namespace detail {

// normalized area of the span of two edge vectors inside the induced
// lattice of their plane: product of the Smith entries of the 2x4 matrix
inline Int induced_det(const LatticePoint& u, const LatticePoint& w) {
  IntMatrix m(2, 4);
  for (int j = 0; j < 4; ++j) {
    m.at(0, j) = u[j];
    m.at(1, j) = w[j];
  }
  auto d = smith_diagonal(std::move(m));
  return d[0] * d[1];
}

}  // namespace detail

inline TwoFaceClass classify_two_face(const LatticePolytope& poly,
                                      const FacePair& face) {
  if (face.dim != 2) throw WrongDimension("classify_two_face needs a 2-face");
  const auto& vi = face.vertex_indices;
  const auto& V = poly.vertices();
  TwoFaceClass out;
  if (vi.size() == 3) {
    Int area = detail::induced_det(V[vi[1]] - V[vi[0]], V[vi[2]] - V[vi[0]]);
    if (area == 1 && face.points.size() == 3)
      out.tag = TwoFaceTag::UnimodularTriangle;
    return out;
  }
  if (vi.size() != 4) return out;
  // the diagonal pairing is the split with equal vertex sums
  static constexpr int splits[3][4] = {{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}};
  for (const auto& s : splits) {
    LatticePoint sum1 = V[vi[s[0]]] + V[vi[s[1]]];
    LatticePoint sum2 = V[vi[s[2]]] + V[vi[s[3]]];
    if (!(sum1 == sum2)) continue;
    LatticePoint u = V[vi[s[2]]] - V[vi[s[0]]];
    LatticePoint w = V[vi[s[3]]] - V[vi[s[0]]];
    Int area2 = 2 * detail::induced_det(u, w);
    if (area2 != 2 || face.points.size() != 4) return out;
    out.tag = TwoFaceTag::MinimalParallelogram;
    std::array<int, 2> d1{vi[s[0]], vi[s[1]]}, d2{vi[s[2]], vi[s[3]]};
    if (d1[0] > d1[1]) std::swap(d1[0], d1[1]);
    if (d2[0] > d2[1]) std::swap(d2[0], d2[1]);
    if (d2 < d1) std::swap(d1, d2);
    out.plus_diagonal = d1;
    out.minus_diagonal = d2;
    return out;
  }
  return out;
}

// true iff every 2-face of Delta^circ is a unimodular triangle or a
// minimal parallelogram
inline bool admissibility(const LatticePolytope& delta_dual) {
  for (const auto& fp : face_lattice(delta_dual)) {
    if (fp.dim != 2) continue;
    if (classify_two_face(delta_dual, fp).tag == TwoFaceTag::Other)
      return false;
  }
  return true;
}

struct ConifoldEdge {
  std::vector<int> edge_vertex_indices;  // 1-face of Delta
  int k_theta = 0;                       // l(theta) - 1 conifold points
  std::array<int, 2> plus_diagonal{-1, -1};   // indices into Vert(Delta^circ)
  std::array<int, 2> minus_diagonal{-1, -1};
  std::vector<Int> relation_row;         // rho_theta over Vert(Delta^circ)
};

struct ConifoldReport {
  bool admissible = false;
  std::vector<ConifoldEdge> edges;  // the set P(Delta)
  IntMatrix lambda;                 // p x l
  int rank = 0;
  int dp = 0;
  bool smoothable = false;
};

inline bool smoothing_criterion(const IntMatrix& lambda,
                                const std::vector<int>& k_theta) {
  if (lambda.rows() == 0) return true;  // nothing to smooth: vacuous
  int rk = rank_exact(lambda);
  for (std::size_t i = 0; i < lambda.rows(); ++i) {
    if (k_theta[i] != 1) continue;  // class repeats k_theta times; no condition
    if (rank_exact(lambda.without_row(i)) != rk) return false;
  }
  return true;
}

inline std::vector<ConifoldEdge> conifold_edges(const LatticePolytope& delta) {
  LatticePolytope dual = polar_dual(delta);
  if (!admissibility(dual))
    throw NotAdmissible("a 2-face of the dual polytope is neither a unimodular "
                        "triangle nor a minimal parallelogram");
  auto dual_faces = face_lattice(dual);
  std::map<std::vector<int>, TwoFaceClass> class_by_verts;
  for (const auto& fp : dual_faces)
    if (fp.dim == 2)
      class_by_verts[fp.vertex_indices] = classify_two_face(dual, fp);
  const std::size_t l = dual.vertices().size();
  std::vector<ConifoldEdge> edges;
  for (const auto& fp : face_lattice(delta)) {
    if (fp.dim != 1) continue;
    auto it = class_by_verts.find(fp.dual_vertex_indices);
    if (it == class_by_verts.end())
      throw Error("internal: dual 2-face not found for an edge");
    const TwoFaceClass& cls = it->second;
    if (cls.tag != TwoFaceTag::MinimalParallelogram) continue;
    ConifoldEdge e;
    e.edge_vertex_indices = fp.vertex_indices;
    e.k_theta = static_cast<int>(fp.points.size()) - 1;
    e.plus_diagonal = cls.plus_diagonal;
    e.minus_diagonal = cls.minus_diagonal;
    e.relation_row.assign(l, Int(0));
    e.relation_row[cls.plus_diagonal[0]] = 1;
    e.relation_row[cls.plus_diagonal[1]] = 1;
    e.relation_row[cls.minus_diagonal[0]] = -1;
    e.relation_row[cls.minus_diagonal[1]] = -1;
    edges.push_back(std::move(e));
  }
  return edges;
}

inline ConifoldReport conifold_report(const LatticePolytope& delta) {
  ConifoldReport rep;
  LatticePolytope dual = polar_dual(delta);
  rep.admissible = admissibility(dual);
  if (!rep.admissible) return rep;
  rep.edges = conifold_edges(delta);
  const std::size_t p = rep.edges.size(), l = dual.vertices().size();
  rep.lambda = IntMatrix(p, l);
  std::vector<int> ks(p);
  for (std::size_t i = 0; i < p; ++i) {
    ks[i] = rep.edges[i].k_theta;
    for (std::size_t j = 0; j < l; ++j)
      rep.lambda.at(i, j) = rep.edges[i].relation_row[j];
    rep.dp += rep.edges[i].k_theta;
  }
  rep.rank = p ? rank_exact(rep.lambda) : 0;
  rep.smoothable = smoothing_criterion(rep.lambda, ks);
  return rep;
}

struct HodgeData {
  long h11_resolved = 0, h21_resolved = 0;
  long h11_smoothed = 0, h21_smoothed = 0;
};

// Hodge numbers of the MPPC-resolved hypersurface from the pair of face
// lattices: h11 = l(D*) - 5 - sum_facets l* + sum_{2-faces} l*(f*) l*(f),
// and the mirror formula for h21.
inline std::pair<long, long> hodge_resolved(const LatticePolytope& delta) {
  if (!is_reflexive(delta)) throw NotReflexive("hodge_resolved needs reflexive input");
  LatticePolytope dual = polar_dual(delta);
  auto df = face_lattice(delta);
  auto duf = face_lattice(dual);
  std::map<std::vector<int>, const FacePair*> dual_by_verts;
  for (const auto& fp : duf) dual_by_verts[fp.vertex_indices] = &fp;
  auto dual_interior = [&](const std::vector<int>& verts) {
    auto it = dual_by_verts.find(verts);
    if (it == dual_by_verts.end()) throw Error("internal: face pairing broken");
    return it->second->interior_count;
  };
  long h11 = static_cast<long>(dual.lattice_points().size()) - 5;
  for (const auto& fp : duf) {
    if (fp.dim == 3) h11 -= fp.interior_count;
  }
  long h21 = static_cast<long>(delta.lattice_points().size()) - 5;
  for (const auto& fp : df) {
    if (fp.dim == 3) h21 -= fp.interior_count;
    if (fp.dim == 2) {
      // fp pairs with a 1-face of the dual; the 2-faces of the dual pair
      // with the 1-faces of delta, handled via duf below
      h21 += fp.interior_count * dual_interior(fp.dual_vertex_indices);
    }
  }
  std::map<std::vector<int>, const FacePair*> delta_by_verts;
  for (const auto& fp : df) delta_by_verts[fp.vertex_indices] = &fp;
  for (const auto& fp : duf)
    if (fp.dim == 2) {
      auto it = delta_by_verts.find(fp.dual_vertex_indices);
      if (it == delta_by_verts.end()) throw Error("internal: face pairing broken");
      h11 += fp.interior_count * it->second->interior_count;
    }
  return {h11, h21};
}

inline std::pair<long, long> hodge_smoothed(std::pair<long, long> resolved,
                                            int rk, int dp,
                                            bool smoothable = true) {
  if (!smoothable)
    throw NotSmoothable("smoothing criterion fails: no flat Calabi-Yau smoothing");
  return {resolved.first - rk, resolved.second + dp - rk};
}

}  // namespace cyforge
