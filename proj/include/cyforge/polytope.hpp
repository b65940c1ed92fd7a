#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "cyforge/errors.hpp"
#include "cyforge/matrix.hpp"
#include "cyforge/numeric.hpp"

namespace cyforge {

struct LatticePoint {
  std::array<Int, 4> c;

  LatticePoint() : c{Int(0), Int(0), Int(0), Int(0)} {}
  LatticePoint(Int a, Int b, Int d, Int e)
      : c{std::move(a), std::move(b), std::move(d), std::move(e)} {}
  static LatticePoint of(long a, long b, long d, long e) {
    return LatticePoint(Int(a), Int(b), Int(d), Int(e));
  }

  Int& operator[](std::size_t i) { return c[i]; }
  const Int& operator[](std::size_t i) const { return c[i]; }
  bool operator==(const LatticePoint& o) const { return c == o.c; }
  bool operator<(const LatticePoint& o) const {
    for (int i = 0; i < 4; ++i)
      if (c[i] != o.c[i]) return c[i] < o.c[i];
    return false;
  }
  LatticePoint operator-(const LatticePoint& o) const {
    return {c[0] - o.c[0], c[1] - o.c[1], c[2] - o.c[2], c[3] - o.c[3]};
  }
  LatticePoint operator+(const LatticePoint& o) const {
    return {c[0] + o.c[0], c[1] + o.c[1], c[2] + o.c[2], c[3] + o.c[3]};
  }
  LatticePoint operator-() const { return {-c[0], -c[1], -c[2], -c[3]}; }
  bool is_zero() const {
    return c[0] == 0 && c[1] == 0 && c[2] == 0 && c[3] == 0;
  }
};

inline Int dot(const LatticePoint& a, const LatticePoint& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

inline Int det3(const std::array<std::array<Int, 3>, 3>& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

inline Int det4(const std::array<LatticePoint, 4>& rows) {
  Int total(0);
  for (int j = 0, sign = 1; j < 4; ++j, sign = -sign) {
    std::array<std::array<Int, 3>, 3> minor;
    for (int i = 1; i < 4; ++i)
      for (int k = 0, q = 0; k < 4; ++k)
        if (k != j) minor[i - 1][q++] = rows[i][k];
    total += sign * rows[0][j] * det3(minor);
  }
  return total;
}

// vector orthogonal to u1,u2,u3 (generalized cross product in Z^4)
inline LatticePoint cross4(const LatticePoint& u1, const LatticePoint& u2,
                           const LatticePoint& u3) {
  LatticePoint a;
  const LatticePoint* u[3] = {&u1, &u2, &u3};
  for (int i = 0, sign = 1; i < 4; ++i, sign = -sign) {
    std::array<std::array<Int, 3>, 3> minor;
    for (int r = 0; r < 3; ++r)
      for (int k = 0, q = 0; k < 4; ++k)
        if (k != i) minor[r][q++] = (*u[r])[k];
    a[i] = sign * det3(minor);
  }
  return a;
}

inline int affine_rank(const std::vector<LatticePoint>& pts) {
  if (pts.empty()) return -1;
  IntMatrix m(pts.size() - 1, 4);
  for (std::size_t i = 1; i < pts.size(); ++i) {
    LatticePoint d = pts[i] - pts[0];
    for (int j = 0; j < 4; ++j) m.at(i - 1, j) = d[j];
  }
  return pts.size() == 1 ? 0 : rank_exact(m);
}

// facet inequality <normal, x> <= offset with primitive integer normal
struct Facet {
  LatticePoint normal;
  Int offset;
  bool operator<(const Facet& o) const {
    if (!(normal == o.normal)) return normal < o.normal;
    return offset < o.offset;
  }
  bool operator==(const Facet& o) const {
    return normal == o.normal && offset == o.offset;
  }
};

// Full-dimensional lattice polytope in Z^4. Vertices are canonicalized:
// deduplicated, reduced to extreme points, sorted lexicographically.
// Facets and the lattice-point list are derived eagerly; instances are
// immutable afterwards and safe to share across threads.
class LatticePolytope {
 public:
  explicit LatticePolytope(std::vector<LatticePoint> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.empty() || affine_rank(pts) != 4)
      throw NotFullDimensional("polytope is not full-dimensional in Z^4");
    facets_ = hull_facets(pts);
    for (const auto& v : pts) {
      std::vector<LatticePoint> tight;
      for (const auto& f : facets_)
        if (dot(f.normal, v) == f.offset) tight.push_back(f.normal);
      tight.push_back(LatticePoint());  // affine_rank works on differences
      std::rotate(tight.rbegin(), tight.rbegin() + 1, tight.rend());
      if (affine_rank(tight) == 4) verts_.push_back(v);
    }
    enumerate_lattice_points();
    build_faces();
  }

  const std::vector<LatticePoint>& vertices() const { return verts_; }
  const std::vector<Facet>& facets() const { return facets_; }
  const std::vector<LatticePoint>& lattice_points() const { return points_; }

  bool origin_interior() const {
    for (const auto& f : facets_)
      if (f.offset <= 0) return false;
    return true;
  }

  int vertex_index(const LatticePoint& v) const {
    auto it = std::lower_bound(verts_.begin(), verts_.end(), v);
    if (it == verts_.end() || !(*it == v)) return -1;
    return static_cast<int>(it - verts_.begin());
  }

  // --- internal face structure (any full-dimensional polytope) ---
  // A face is identified by the set of vertices on it (bitmask) together
  // with the set of facets containing it.
  struct Face {
    std::uint64_t vmask;
    std::uint64_t fmask;
    int dim;
  };
  const std::vector<Face>& all_faces() const { return faces_; }

  std::vector<int> face_vertex_indices(const Face& f) const {
    std::vector<int> out;
    for (std::size_t i = 0; i < verts_.size(); ++i)
      if (f.vmask >> i & 1) out.push_back(static_cast<int>(i));
    return out;
  }

  std::vector<LatticePoint> face_points(const Face& f) const {
    std::vector<LatticePoint> out;
    for (std::size_t p = 0; p < points_.size(); ++p)
      if ((point_fmask_[p] & f.fmask) == f.fmask) out.push_back(points_[p]);
    return out;
  }

  int face_interior_count(const Face& f) const {
    int n = 0;
    for (std::size_t p = 0; p < points_.size(); ++p)
      if (point_fmask_[p] == f.fmask) ++n;
    return n;
  }

  int interior_point_count() const {
    int n = 0;
    for (auto m : point_fmask_)
      if (m == 0) ++n;
    return n;
  }

 private:
  static std::vector<Facet> hull_facets(const std::vector<LatticePoint>& pts) {
    std::set<Facet> found;
    const std::size_t n = pts.size();
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b)
        for (std::size_t c = b + 1; c < n; ++c) {
          for (std::size_t d = c + 1; d < n; ++d) {
            LatticePoint nrm = cross4(pts[b] - pts[a], pts[c] - pts[a],
                                      pts[d] - pts[a]);
            if (nrm.is_zero()) continue;
            Int g = igcd(igcd(abs(nrm[0]), abs(nrm[1])),
                         igcd(abs(nrm[2]), abs(nrm[3])));
            for (int i = 0; i < 4; ++i) nrm[i] = exact_div(nrm[i], g);
            Int off = dot(nrm, pts[a]);
            bool le = true, ge = true;
            for (const auto& p : pts) {
              Int s = dot(nrm, p);
              if (s > off) le = false;
              if (s < off) ge = false;
              if (!le && !ge) break;
            }
            if (le)
              found.insert(Facet{nrm, off});
            else if (ge)
              found.insert(Facet{-nrm, -off});
          }
        }
    return {found.begin(), found.end()};
  }

  void enumerate_lattice_points() {
    std::array<Int, 4> lo, hi;
    for (int i = 0; i < 4; ++i) {
      lo[i] = verts_[0][i];
      hi[i] = verts_[0][i];
      for (const auto& v : verts_) {
        if (v[i] < lo[i]) lo[i] = v[i];
        if (v[i] > hi[i]) hi[i] = v[i];
      }
    }
    LatticePoint p;
    for (Int x0 = lo[0]; x0 <= hi[0]; ++x0)
      for (Int x1 = lo[1]; x1 <= hi[1]; ++x1)
        for (Int x2 = lo[2]; x2 <= hi[2]; ++x2)
          for (Int x3 = lo[3]; x3 <= hi[3]; ++x3) {
            p.c = {x0, x1, x2, x3};
            bool in = true;
            for (const auto& f : facets_)
              if (dot(f.normal, p) > f.offset) {
                in = false;
                break;
              }
            if (in) points_.push_back(p);
          }
  }

  void build_faces() {
    const std::size_t nv = verts_.size(), nf = facets_.size();
    if (nv > 64 || nf > 64)
      throw Error("polytope too large for face bookkeeping (>64 vertices or facets)");
    std::vector<std::uint64_t> facet_vmask(nf, 0);
    for (std::size_t k = 0; k < nf; ++k)
      for (std::size_t i = 0; i < nv; ++i)
        if (dot(facets_[k].normal, verts_[i]) == facets_[k].offset)
          facet_vmask[k] |= std::uint64_t(1) << i;
    std::set<std::uint64_t> seen(facet_vmask.begin(), facet_vmask.end());
    std::vector<std::uint64_t> frontier(seen.begin(), seen.end());
    while (!frontier.empty()) {
      std::vector<std::uint64_t> next;
      for (auto m : frontier)
        for (auto fm : facet_vmask) {
          std::uint64_t x = m & fm;
          if (x && !seen.count(x)) {
            seen.insert(x);
            next.push_back(x);
          }
        }
      frontier = std::move(next);
    }
    for (auto vm : seen) {
      std::vector<LatticePoint> pts;
      for (std::size_t i = 0; i < nv; ++i)
        if (vm >> i & 1) pts.push_back(verts_[i]);
      std::uint64_t fm = 0;
      for (std::size_t k = 0; k < nf; ++k)
        if ((facet_vmask[k] & vm) == vm) fm |= std::uint64_t(1) << k;
      faces_.push_back(Face{vm, fm, affine_rank(pts)});
    }
    std::sort(faces_.begin(), faces_.end(), [](const Face& a, const Face& b) {
      if (a.dim != b.dim) return a.dim < b.dim;
      return a.vmask < b.vmask;
    });
    point_fmask_.resize(points_.size());
    for (std::size_t p = 0; p < points_.size(); ++p) {
      std::uint64_t m = 0;
      for (std::size_t k = 0; k < nf; ++k)
        if (dot(facets_[k].normal, points_[p]) == facets_[k].offset)
          m |= std::uint64_t(1) << k;
      point_fmask_[p] = m;
    }
  }

  std::vector<LatticePoint> verts_;
  std::vector<Facet> facets_;
  std::vector<LatticePoint> points_;
  std::vector<Face> faces_;
  std::vector<std::uint64_t> point_fmask_;
};

inline bool is_reflexive(const LatticePolytope& p) {
  if (!p.origin_interior()) return false;
  for (const auto& f : p.facets())
    if (f.offset != 1) return false;
  return true;
}

inline LatticePolytope polar_dual(const LatticePolytope& p) {
  if (!p.origin_interior())
    throw OriginNotInterior("polar dual requires the origin strictly inside");
  std::vector<LatticePoint> dual;
  for (const auto& f : p.facets()) {
    if (f.offset != 1)
      throw NonIntegralDual("dual vertex is non-integral: polytope not reflexive");
    dual.push_back(-f.normal);
  }
  return LatticePolytope(std::move(dual));
}

inline std::vector<LatticePoint> lattice_points(const LatticePolytope& p) {
  return p.lattice_points();
}

// face of a reflexive Delta paired with its dual face of Delta^circ
struct FacePair {
  int dim = 0;
  std::vector<int> vertex_indices;       // into delta.vertices()
  std::vector<int> dual_vertex_indices;  // into polar_dual(delta).vertices()
  std::vector<LatticePoint> points;      // lattice points on the face
  int interior_count = 0;                // l*(theta)
};

// All faces of dim 0..3 of a reflexive polytope, with dual pairing.
inline std::vector<FacePair> face_lattice(const LatticePolytope& delta) {
  if (!is_reflexive(delta)) throw NotReflexive("face_lattice needs a reflexive polytope");
  LatticePolytope dual = polar_dual(delta);
  // facet k of delta <-> dual vertex (-normal_k)
  std::vector<int> facet_to_dual(delta.facets().size());
  for (std::size_t k = 0; k < delta.facets().size(); ++k) {
    int idx = dual.vertex_index(-delta.facets()[k].normal);
    if (idx < 0) throw Error("internal: facet/dual-vertex mismatch");
    facet_to_dual[k] = idx;
  }
  std::vector<FacePair> out;
  for (const auto& f : delta.all_faces()) {
    if (f.dim < 0 || f.dim > 3) continue;
    FacePair fp;
    fp.dim = f.dim;
    fp.vertex_indices = delta.face_vertex_indices(f);
    for (std::size_t k = 0; k < delta.facets().size(); ++k)
      if (f.fmask >> k & 1) fp.dual_vertex_indices.push_back(facet_to_dual[k]);
    std::sort(fp.dual_vertex_indices.begin(), fp.dual_vertex_indices.end());
    fp.points = delta.face_points(f);
    fp.interior_count = delta.face_interior_count(f);
    out.push_back(std::move(fp));
  }
  return out;
}

namespace detail {

// Triangulate the boundary by coning each facet from a base vertex, each
// 2-face from its own base, and summing |det| over the resulting simplices
// coned at the origin. base_high=false takes the lexicographically first
// vertex, base_high=true the last (used to test triangulation independence).
inline Int volume_by_cones(const LatticePolytope& p, bool base_high) {
  Int total(0);
  const auto& faces = p.all_faces();
  for (const auto& F : faces) {
    if (F.dim != 3) continue;
    auto fv = p.face_vertex_indices(F);
    int wf = base_high ? fv.back() : fv.front();
    for (const auto& G : faces) {
      if (G.dim != 2 || (G.vmask & F.vmask) != G.vmask) continue;
      auto gv = p.face_vertex_indices(G);
      int wg = base_high ? gv.back() : gv.front();
      if (wg == wf || (G.vmask >> wf & 1)) continue;
      for (const auto& E : faces) {
        if (E.dim != 1 || (E.vmask & G.vmask) != E.vmask) continue;
        if (E.vmask >> wg & 1) continue;
        auto ev = p.face_vertex_indices(E);
        total += abs(det4({p.vertices()[ev[0]], p.vertices()[ev[1]],
                           p.vertices()[wg], p.vertices()[wf]}));
      }
    }
  }
  return total;
}

}  // namespace detail

// Lattice-normalized volume: 4! * Euclidean volume.
inline Int normalized_volume(const LatticePolytope& p) {
  if (!p.origin_interior())
    throw OriginNotInterior("normalized_volume cones the boundary at the origin");
  return detail::volume_by_cones(p, false);
}

// Divisibility index of the polarization: the largest k such that
// Delta = k*Delta' + m for a lattice polytope Delta'. Equals the gcd of all
// vertex-difference coordinates (the first Smith entry of the difference
// lattice).
inline Int vertex_sublattice_index(const LatticePolytope& p) {
  const auto& v = p.vertices();
  Int g(0);
  for (std::size_t i = 1; i < v.size(); ++i) {
    LatticePoint d = v[i] - v[0];
    for (int j = 0; j < 4; ++j) g = igcd(g, abs(d[j]));
  }
  return g == 0 ? Int(1) : g;
}

// True if some facet of p has an interior lattice point (the hint the
// multiplicity-two exception correlates with).
inline bool facet_has_interior_point(const LatticePolytope& p) {
  for (const auto& f : p.all_faces())
    if (f.dim == 3 && p.face_interior_count(f) > 0) return true;
  return false;
}

}  // namespace cyforge
