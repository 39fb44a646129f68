#pragma once

// Subdivisions: barycentric, stellar, hyperplane cuts of cell complexes,
// pulling triangulations, prisms and common refinements.

#include <map>
#include <vector>

#include "plforge/complex.hpp"

namespace plforge {

struct BarycentricSubdivision {
    SimplicialComplex complex;
    /// Vertex of K' at the barycenter of each simplex of K. Vertices of K keep their ids.
    std::map<Simplex, VertexId> barycenter_of;
    /// Inverse of barycenter_of.
    std::map<VertexId, Simplex> simplex_of;
};

BarycentricSubdivision barycentric_subdivision(const SimplicialComplex& k);
SimplicialComplex barycentric(const SimplicialComplex& k);

/// Stellar subdivision at p; the new vertex gets id k.next_vertex_id().
/// Throws OutsidePolyhedron, or PointOnSkeletonBoundaryOnly when p is already a vertex.
SimplicialComplex star_at(const SimplicialComplex& k, const Vec& p);

/// Vertex created where the segment a->b crosses the cut: a + t (b - a).
struct CrossingVertex {
    VertexId id;
    VertexId a;
    VertexId b;
    Scalar t;
};

struct CutResult {
    CellComplex cells;
    std::vector<CrossingVertex> created;
};

/// Cuts every cell along {phi = 0}, where phi is affine on cells and given by its
/// vertex values. New vertices get consecutive ids from c.next_vertex_id().
CutResult cut_cells(const CellComplex& c, const std::map<VertexId, Scalar>& phi);

/// Pulling triangulation: each cell is coned from its least vertex over the
/// triangulated facets missing it. `rank` orders vertices (default: by id).
SimplicialComplex simplicialize(const CellComplex& c);
SimplicialComplex simplicialize(const CellComplex& c, const std::map<VertexId, long>& rank);

/// |K| x [0,1] with cells s x {0}, s x {1}, s x [0,1]. Vertex (v,0) keeps id v,
/// (v,1) gets id v + k.next_vertex_id(); the last coordinate is the [0,1] factor.
CellComplex prism(const SimplicialComplex& k);
SimplicialComplex prism_triangulated(const SimplicialComplex& k);

/// Affine functional x -> coeffs . x + constant.
struct Affine {
    Vec coeffs;
    Scalar constant;
    Scalar operator()(const Vec& x) const { return dot(coeffs, x) + constant; }
};

/// Subdivision of K in which {l = c} is a subcomplex.
SimplicialComplex hyperplane_cut(const SimplicialComplex& k, const Vec& l, const Scalar& c);

/// Hyperplanes whose arrangement makes a simplex a union of closed faces:
/// the facet hyperplanes inside its affine hull and equations of that hull.
std::vector<Affine> simplex_hyperplanes(const std::vector<Vec>& pts);

/// Same for the convex hull of an arbitrary finite point set.
std::vector<Affine> hull_hyperplanes(const std::vector<Vec>& pts);
/// Drops hyperplanes already present (coefficients are compared after scaling).
void add_unique(std::vector<Affine>& hs, const std::vector<Affine>& more);

/// Cuts the cells of c by each hyperplane in turn.
CellComplex cut_by_hyperplanes(CellComplex c, const std::vector<Affine>& hyperplanes);

enum class RefineMode { Contains, Equal };

/// Subdivision of K on which every simplex of L is a union of simplexes.
/// Throws IncompatibleCarriers when |L| is not inside |K| (or not equal in Equal mode).
SimplicialComplex common_refinement(const SimplicialComplex& k, const SimplicialComplex& l,
                                    RefineMode mode = RefineMode::Contains);

/// |det|/n! of a full-dimensional simplex in R^n.
Scalar simplex_volume(const std::vector<Vec>& pts);
/// Sum over top simplexes of a full-dimensional complex.
Scalar total_volume(const SimplicialComplex& k);

/// Volume of each simplex of `sub` relative to the simplex of K containing it,
/// summed per maximal simplex of K (a subdivision gives 1 everywhere).
/// Returns nullopt when some simplex of `sub` is not inside a simplex of K.
std::optional<std::map<Simplex, Scalar>> relative_volumes(const SimplicialComplex& sub, const SimplicialComplex& k);

/// Every simplex of sub lies in a simplex of K and they cover |K| (sub assumed valid).
bool is_subdivision(const SimplicialComplex& sub, const SimplicialComplex& k);

}  // namespace plforge
