#pragma once

// Simplexwise-affine maps between complexes and the constructions built on
// them: simplicial refinement, cone extension, level sets, simplicial
// approximation, graphs and homeomorphism certificates.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "plforge/complex.hpp"
#include "plforge/subdivide.hpp"

namespace plforge {

/// Affine on each simplex of `domain`, determined by the images of its vertices.
struct PLMap {
    SimplicialComplex domain;
    SimplicialComplex target;
    std::map<VertexId, Vec> image;

    const Vec& at(VertexId v) const;
};

PLMap identity_map(const SimplicialComplex& k);
/// Throws OutsidePolyhedron when some vertex image is not in |target|.
void check_map(const PLMap& f);
/// Throws OutsideDomain when p is not in |domain|.
Vec eval(const PLMap& f, const Vec& p);

/// Vertex of k located exactly at p, if any.
std::optional<VertexId> vertex_at(const SimplicialComplex& k, const Vec& p);

/// Vertex images are vertices of the target spanning one of its simplexes, for every simplex.
bool is_simplicial(const PLMap& f);
/// Image simplex of s under a simplicial map (vertex ids of the target).
Simplex image_simplex(const PLMap& f, const Simplex& s);

struct SimplicialRefinement {
    SimplicialComplex k1;  // subdivides the domain
    SimplicialComplex l1;  // subdivides the target
    PLMap f1;              // the same map, simplicial k1 -> l1
};

/// Throws NotAffineOnSimplex when the image of a simplex leaves |target|.
SimplicialRefinement make_simplicial(const PLMap& f);

/// Points of |domain| mapped to y, one per domain simplex mapped injectively onto
/// a set containing y. Meaningful for maps that are injective on each simplex.
std::vector<Vec> preimages(const PLMap& f, const Vec& y);

struct HomeomorphismCheck {
    bool homeomorphism = false;
    /// Certificate: f is a simplicial isomorphism refinement.k1 -> refinement.l1.
    std::optional<SimplicialRefinement> refinement;
    /// Refutation: a target point with zero or at least two preimages.
    std::optional<Vec> witness;
    std::vector<Vec> witness_preimages;
    std::string reason;
};

HomeomorphismCheck is_pl_homeomorphism(const PLMap& f);

/// Map of a complex into R^{n+m}: x -> (x, f(x)), same vertex ids and simplexes.
SimplicialComplex graph(const PLMap& f);

// ---- Alexander trick --------------------------------------------------------

struct ConeExtension {
    PLMap map;        // on the cone from apex over the boundary complex
    VertexId apex;    // id of the apex preimage in map.domain
};

/// Merges boundary pieces (shared vertex ids must agree on point and image) and
/// extends conically from apex_preimage -> apex_image. Throws InconsistentBoundaryData
/// or ApexNotInterior.
ConeExtension alexander_extend(const std::vector<PLMap>& boundary_pieces, const Vec& apex_preimage,
                               const Vec& apex_image);

/// Subcomplex of codimension-one faces of a pure complex lying in exactly one top simplex.
SimplicialComplex boundary_complex(const SimplicialComplex& k);

// ---- level sets -------------------------------------------------------------

struct Interval {
    Scalar lo, hi;  // closed
};

struct LevelSets {
    SimplicialComplex complex;              // subdivision K_Q of the domain
    std::map<VertexId, Scalar> value;       // f at the vertices of K_Q
    std::vector<SimplicialComplex> levels;  // f^{-1}(c) per requested value
    std::vector<SimplicialComplex> bands;   // f^{-1}([a,b]) per requested interval
};

/// f must map into R^1. Throws NotAffineOnSimplex otherwise.
LevelSets level_set(const PLMap& f, const std::vector<Scalar>& values, const std::vector<Interval>& intervals);

// ---- simplicial approximation -----------------------------------------------

struct HomotopyWitness {
    Simplex simplex;  // simplex of K'
    Simplex carrier;  // simplex of L containing both images
};

struct SimplicialApproximation {
    SimplicialComplex k;  // complex whose barycentric subdivision carries f1 (K, or a refinement)
    PLMap f;              // the input map on k
    PLMap f1;             // simplicial barycentric(k) -> barycentric(L)
    std::vector<HomotopyWitness> witness;
};

/// Throws CarrierConditionFails when no refinement satisfies the carrier condition.
SimplicialApproximation simplicial_approximation(const PLMap& f);

/// Each witness entry: images under f and f1 of the simplex lie in the closed carrier
/// and its barycenter maps into the open carrier.
bool check_witness(const SimplicialApproximation& a);

// ---- isotopy schedules ------------------------------------------------------

struct VertexMove {
    VertexId vertex;
    Vec from;
    Vec to;
    SimplicialComplex host;  // complex before the move
};

struct IsotopySchedule {
    std::vector<VertexMove> steps;
};

/// The single-vertex move as a map on the closed star of the vertex.
PLMap vertex_move_map(const SimplicialComplex& host, VertexId v, const Vec& to);
/// Host complex with the vertex relocated.
SimplicialComplex apply_move(const SimplicialComplex& host, VertexId v, const Vec& to);

}  // namespace plforge
