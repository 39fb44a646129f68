#pragma once

// Moving between fields: abstract complexes, rational realizations, the
// coefficient embedding Q -> Q(e) and rectification of non-rational vertices.

#include <map>
#include <optional>
#include <set>

#include "plforge/complex.hpp"
#include "plforge/plmap.hpp"

namespace plforge {

struct AbstractComplex {
    std::set<VertexId> labels;
    SimplexSet simplices;  // closed under faces

    friend bool operator==(const AbstractComplex&, const AbstractComplex&) = default;
};

/// Simplicial map between abstract complexes given on labels.
struct AbstractMap {
    AbstractComplex domain;
    AbstractComplex target;
    std::map<VertexId, VertexId> vertex_map;
};

AbstractComplex to_abstract(const SimplicialComplex& k);
/// Throws NotAffineOnSimplex when f is not simplicial.
AbstractMap to_abstract(const PLMap& f);

/// Label number i (in increasing order) goes to the i-th basis point of R^m, m = #labels.
SimplicialComplex realize_rational(const AbstractComplex& a);
PLMap realize_rational(const AbstractMap& f);

/// Same coordinates and combinatorics, tagged Q(e).
SimplicialComplex extend_field(const SimplicialComplex& k);
PLMap extend_field(const PLMap& f);

/// Region into which a non-rational vertex v may move: rational x in the open carrier
/// tau(v) of v in K such that every maximal simplex of st(v) keeps a positive v-coordinate.
struct MoveRegion {
    VertexId vertex;
    std::vector<Vec> tau;                   // vertices of the carrier in K
    std::vector<std::vector<Scalar>> rows;  // lambda_v at the vertices of tau, per star simplex
};

MoveRegion move_region(const SimplicialComplex& m, const SimplicialComplex& k, VertexId v);
bool admissible(const MoveRegion& r, const Vec& x);
/// Deterministic rational point of the region, if the search finds one.
std::optional<Vec> admissible_point(const MoveRegion& r, const Vec& from);

struct Rectification {
    SimplicialComplex complex;  // same ids and simplexes, rational coordinates
    IsotopySchedule schedule;
};

/// m must subdivide extend_field(k). Vertices of `fixed` never move.
/// Throws NotASubdivision or NoAdmissibleVertex.
Rectification rectify(const SimplicialComplex& m, const SimplicialComplex& k,
                      const std::optional<SimplicialComplex>& fixed = std::nullopt);

std::size_t non_rational_vertices(const SimplicialComplex& k);

}  // namespace plforge
