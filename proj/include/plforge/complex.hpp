#pragma once

// Finite geometric simplicial complexes, open-cell sets and cell complexes
// over Scalar coordinates, with the incidence queries the other modules use.

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "plforge/linalg.hpp"

namespace plforge {

using VertexId = std::int64_t;
/// Sorted list of distinct vertex ids; dimension is size() - 1.
using Simplex = std::vector<VertexId>;

/// Orders simplexes by dimension first, then lexicographically.
struct DimLess {
    bool operator()(const Simplex& a, const Simplex& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    }
};
using SimplexSet = std::set<Simplex, DimLess>;

inline int simplex_dim(const Simplex& s) { return static_cast<int>(s.size()) - 1; }
Simplex make_simplex(std::vector<VertexId> ids);
/// All nonempty faces, the simplex itself included.
std::vector<Simplex> faces(const Simplex& s);
std::vector<Simplex> facets(const Simplex& s);
bool is_face(const Simplex& face, const Simplex& s);
std::string to_string(const Simplex& s);

class SimplicialComplex {
  public:
    SimplicialComplex() = default;
    SimplicialComplex(int ambient_dim, Backend backend) : ambient_(ambient_dim), backend_(backend) {}

    int ambient_dim() const { return ambient_; }
    Backend backend() const { return backend_; }

    /// Adds (or re-adds with the identical point) a vertex.
    void add_vertex(VertexId id, const Vec& p);
    /// Adds a simplex together with all its faces; vertices must exist.
    void add_simplex(const Simplex& s);
    /// Adds a single simplex without its faces (for building malformed inputs).
    void add_simplex_raw(const Simplex& s);

    bool has_vertex(VertexId id) const { return vertices_.count(id) != 0; }
    bool contains(const Simplex& s) const { return simplices_.count(s) != 0; }
    const Vec& point(VertexId id) const;
    std::vector<Vec> points(const Simplex& s) const;
    const std::map<VertexId, Vec>& vertices() const { return vertices_; }
    const SimplexSet& simplices() const { return simplices_; }
    std::vector<Simplex> simplices_of_dim(int d) const;
    std::vector<Simplex> maximal_simplices() const;
    /// -1 for the empty complex.
    int dim() const;
    std::size_t size() const { return simplices_.size(); }
    bool empty() const { return simplices_.empty(); }
    VertexId next_vertex_id() const { return vertices_.empty() ? 0 : vertices_.rbegin()->first + 1; }

    /// Same vertex table restricted to the closure of the given simplexes.
    SimplicialComplex generated_by(const std::vector<Simplex>& simplices) const;
    /// Copy with every coordinate re-tagged to the given backend.
    SimplicialComplex with_backend(Backend b) const;

    friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b);

  private:
    int ambient_ = 0;
    Backend backend_ = Backend::Rational;
    std::map<VertexId, Vec> vertices_;
    SimplexSet simplices_;
};

/// Union of open simplexes of a host complex.
struct OpenCellSet {
    SimplexSet cells;

    bool contains(const Simplex& s) const { return cells.count(s) != 0; }
    friend bool operator==(const OpenCellSet&, const OpenCellSet&) = default;
};

/// Simplexes of the host that are faces of some cell (the closure of the set).
SimplexSet closure(const OpenCellSet& x);
/// Throws NotASubcomplex when a cell is absent from the host.
void check_belongs(const OpenCellSet& x, const SimplicialComplex& host);

// ---- validation -------------------------------------------------------------

struct Violation {
    enum class Kind { Degenerate, BadIntersection, MissingFace };
    Kind kind;
    std::vector<Simplex> simplices;
    std::string describe() const;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

ValidationReport validate(const SimplicialComplex& k);

/// True when conv(a) and conv(b) meet exactly in the face spanned by their common vertices.
bool intersect_properly(const std::vector<Vec>& a_pts, const Simplex& a, const std::vector<Vec>& b_pts,
                        const Simplex& b);

// ---- incidence -------------------------------------------------------------

SimplicialComplex star(const SimplicialComplex& k, VertexId v);
SimplicialComplex link(const SimplicialComplex& k, VertexId v);
/// Closed star of a simplex: the complex generated by simplexes having it as a face.
SimplicialComplex simplex_star(const SimplicialComplex& k, const Simplex& s);
SimplicialComplex skeleton(const SimplicialComplex& k, int r);
SimplicialComplex induced_subcomplex(const SimplicialComplex& k, const std::set<VertexId>& verts);

/// Repeated carrier queries against one complex.
class CarrierIndex {
  public:
    explicit CarrierIndex(const SimplicialComplex& k);
    /// Unique simplex whose open simplex contains p; nullopt outside |K|.
    std::optional<Simplex> find(const Vec& p) const;
    /// Carrier plus barycentric coordinates of p in that carrier's vertex order.
    std::optional<std::pair<Simplex, std::vector<Scalar>>> locate(const Vec& p) const;

  private:
    struct Entry {
        Simplex simplex;
        std::vector<Vec> points;
        Vec lo, hi;
    };
    std::vector<Entry> entries_;
};

/// Throws OutsidePolyhedron when p is not in |K|.
Simplex carrier(const SimplicialComplex& k, const Vec& p);
/// p lies in Int|st(v,K)|, i.e. its carrier has v as a vertex.
bool in_open_star(const SimplicialComplex& k, VertexId v, const Vec& p);

/// Every simplex of K with all vertices in L is in L. Throws NotASubcomplex if L is not in K.
bool is_full(const SimplicialComplex& l, const SimplicialComplex& k);
bool is_subcomplex(const SimplicialComplex& l, const SimplicialComplex& k);

/// Simplex on the union of vertices; throws DegenerateJoin if dependent or overlapping.
Simplex join(const SimplicialComplex& k, const Simplex& a, const Simplex& b);

struct Cone {
    SimplicialComplex complex;
    VertexId apex;
};
/// a * K; throws DegenerateJoin when some cone simplex degenerates.
Cone cone(const Vec& apex, const SimplicialComplex& k);

// ---- cell complexes ---------------------------------------------------------

struct Cell {
    std::vector<VertexId> vertices;  // sorted
    int dim = 0;
    std::vector<std::size_t> facets;  // indices of earlier cells
};

/// Convex cells given by vertex sets plus an explicit face lattice.
class CellComplex {
  public:
    CellComplex() = default;
    CellComplex(int ambient_dim, Backend backend) : ambient_(ambient_dim), backend_(backend) {}

    int ambient_dim() const { return ambient_; }
    Backend backend() const { return backend_; }
    void add_vertex(VertexId id, const Vec& p);
    const Vec& point(VertexId id) const;
    const std::map<VertexId, Vec>& vertices() const { return points_; }
    VertexId next_vertex_id() const { return points_.empty() ? 0 : points_.rbegin()->first + 1; }

    /// Adds a cell (facets must already be present); returns its index. Idempotent on vertex set.
    std::size_t add_cell(std::vector<VertexId> verts, int dim, std::vector<std::size_t> facets);
    std::optional<std::size_t> find(const std::vector<VertexId>& verts) const;
    const std::vector<Cell>& cells() const { return cells_; }
    const Cell& cell(std::size_t i) const { return cells_[i]; }

    static CellComplex from_simplicial(const SimplicialComplex& k);
    /// Convex hull of a small point set, with its face lattice computed by brute force.
    static CellComplex from_polytope(const std::vector<Vec>& points, Backend backend);

  private:
    int ambient_ = 0;
    Backend backend_ = Backend::Rational;
    std::map<VertexId, Vec> points_;
    std::vector<Cell> cells_;
    std::map<std::vector<VertexId>, std::size_t> index_;
};

}  // namespace plforge
