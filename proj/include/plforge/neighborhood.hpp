#pragma once

// Derived neighborhoods and the semi-linear constructions around them:
// fullness, regular neighborhoods, the map xi, standardization tau,
// the level function f_K and collars.

#include <map>
#include <optional>
#include <vector>

#include "plforge/complex.hpp"
#include "plforge/plmap.hpp"
#include "plforge/subdivide.hpp"

namespace plforge {

/// Open simplexes of K' whose interiors lie in x (x given over K).
OpenCellSet lift(const BarycentricSubdivision& sub, const OpenCellSet& x);
/// Simplex of the original complex whose interior contains Int s, for s in sub.complex.
Simplex original_carrier(const BarycentricSubdivision& sub, const Simplex& s);

struct DerivedFull {
    BarycentricSubdivision sub;  // K'
    SimplicialComplex y;         // Y' in K'
};

DerivedFull derived_full(const SimplicialComplex& k, const SimplicialComplex& y);

struct RegularNeighborhood {
    BarycentricSubdivision sub;  // K'
    SimplicialComplex y;         // Y' in K'
    SimplicialComplex u;         // union of closed K'-stars of simplexes of Y'
    SimplicialComplex frontier;  // simplexes of U that are faces of simplexes outside U
};

/// Throws NotFull when y is not full in k.
RegularNeighborhood regular_neighborhood(const SimplicialComplex& k, const SimplicialComplex& y);

struct XiMap {
    PLMap map;                   // K -> [0,1]
    SimplicialComplex zero_set;  // xi^{-1}(0), extracted by level_set
};

/// 0 on the vertices of u1, 1 elsewhere. Throws NotFull.
XiMap xi_map(const SimplicialComplex& k, const SimplicialComplex& u1);

// ---- standardization --------------------------------------------------------

struct Standardization {
    SimplicialComplex k;
    BarycentricSubdivision k1;  // K'
    BarycentricSubdivision k2;  // K'' (over K')
    OpenCellSet x;
    std::vector<OpenCellSet> subsets;
    std::vector<Simplex> deleted;  // simplexes of K missing X, in the order tau applies them last to first

    /// Per deleted simplex, at each vertex of q: t0 (weight of its barycenter) and t0 - far mass.
    std::map<VertexId, std::vector<std::pair<Scalar, Scalar>>> forms;
    SimplicialComplex q;              // K' cut along {t0 = far mass}, triangulated without new vertices
    OpenCellSet y;                    // Im tau over q
    OpenCellSet v;                    // closure(Y) - Y over q
    std::vector<OpenCellSet> pieces;  // tau(X_i) over q

    /// The complement formula over K'': the full subcomplex on vertices not inside a deleted simplex.
    SimplicialComplex formula_closure;
};

/// Throws InvalidPresentation when the closure of x is not all of K or a subset leaves x.
Standardization standardize(const SimplicialComplex& k, const OpenCellSet& x,
                            const std::vector<OpenCellSet>& subsets = {});

/// tau at a point of X (exact). Throws OutsideDomain off X.
Vec tau(const Standardization& s, const Vec& p);
/// tau_sigma for one deleted simplex, on |K| - Int sigma.
Vec tau_single(const Standardization& s, const Simplex& sigma, const Vec& p);

/// p lies in the closure of Im tau: t0 <= far mass for every deleted simplex.
bool in_image_closure(const Standardization& s, const Vec& p);
/// p lies in Im tau: for every deleted simplex, t0 < far mass or t0 = 0.
bool in_image(const Standardization& s, const Vec& p);

// ---- the level function f_K -------------------------------------------------

enum class FrontierClass { Inside, Outside, Boundary };  // W, outside closure(W), closure(W) - W

struct FKFunction {
    BarycentricSubdivision sub;  // K'
    OpenCellSet w;               // over K'
    std::map<VertexId, FrontierClass> cls;
};

/// w is given over K and lifted to K'.
FKFunction fk_function(const SimplicialComplex& k, const OpenCellSet& w);
/// Throws UndefinedOnSimplex where every carrier vertex lies in closure(W) - W, OutsideDomain off |K|.
Scalar fk_eval(const FKFunction& f, const Vec& p);

struct FKLevels {
    SimplicialComplex complex;                             // K' cut at every requested value
    std::map<VertexId, std::pair<Scalar, Scalar>> form;    // numerator, denominator at each vertex
    OpenCellSet undefined;                                 // simplexes where the denominator vanishes
    std::vector<OpenCellSet> levels;                       // f_K^{-1}(c)
    std::vector<OpenCellSet> sublevels;                    // f_K^{-1}([0,c))
};

FKLevels fk_levels(const FKFunction& f, const std::vector<Scalar>& values);
/// f_K^{-1}(0) equals W (as open simplexes of K' in the domain).
bool fk_zero_set_is_w(const FKFunction& f);

// ---- collars ----------------------------------------------------------------

struct Collar {
    BarycentricSubdivision k1;  // K' over closure(Y)
    BarycentricSubdivision k2;  // K''
    OpenCellSet y;              // over K''
    OpenCellSet v;              // closure(Y) - Y over K''
    std::set<VertexId> designated;  // barycenters of K' simplexes with interior in V
    SimplicialComplex z;            // in R^{n+1}, last coordinate t
    SimplicialComplex base;         // closure(Y) x {0}
    VertexId top_offset = 0;        // (v,1) has id v + top_offset
    /// Each simplex of closure(V) in K'' and the vertices of the Z cell above it.
    std::vector<std::pair<Simplex, std::vector<VertexId>>> correspondence;
};

/// Accepts Y with V = closure(Y) - Y empty, or V a closed pure (d-1)-dimensional union of
/// boundary facets of a pure d-dimensional closure. Throws NotStandardPresentation otherwise.
bool is_standard_presentation(const SimplicialComplex& k, const OpenCellSet& y);
Collar collar(const SimplicialComplex& k, const OpenCellSet& y);
/// Images of standardize are standard by construction.
Collar collar(const Standardization& s);

/// Z cut at t = delta, restricted to that level (vertices keep their Z ids where possible).
SimplicialComplex collar_slice(const Collar& c, const Scalar& delta);
/// Span of the designated vertices in K''; small slices are homotopy equivalent to it.
SimplicialComplex collar_core(const Collar& c);

}  // namespace plforge
