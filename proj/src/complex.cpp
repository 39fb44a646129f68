#include "plforge/complex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <functional>
#include <numeric>
#include <sstream>

namespace plforge {

Simplex make_simplex(std::vector<VertexId> ids) {
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return ids;
}

std::vector<Simplex> faces(const Simplex& s) {
    std::vector<Simplex> out;
    const std::size_t n = s.size();
    for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
        Simplex f;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask & (std::size_t{1} << i)) f.push_back(s[i]);
        }
        out.push_back(std::move(f));
    }
    return out;
}

std::vector<Simplex> facets(const Simplex& s) {
    std::vector<Simplex> out;
    if (s.size() <= 1) return out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        Simplex f;
        for (std::size_t j = 0; j < s.size(); ++j) {
            if (j != i) f.push_back(s[j]);
        }
        out.push_back(std::move(f));
    }
    return out;
}

bool is_face(const Simplex& face, const Simplex& s) {
    return std::includes(s.begin(), s.end(), face.begin(), face.end());
}

std::string to_string(const Simplex& s) {
    std::string out = "[";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(s[i]);
    }
    return out + "]";
}

// ---- SimplicialComplex ------------------------------------------------------

void SimplicialComplex::add_vertex(VertexId id, const Vec& p) {
    auto it = vertices_.find(id);
    if (it != vertices_.end()) {
        if (it->second != p) throw Error(ErrorCode::ValidationError, "vertex " + std::to_string(id) + " redefined");
        return;
    }
    if (ambient_ == 0 && vertices_.empty()) ambient_ = static_cast<int>(p.size());
    vertices_.emplace(id, p);
}

void SimplicialComplex::add_simplex(const Simplex& s) {
    if (simplices_.count(s)) return;
    for (auto v : s) {
        if (!has_vertex(v)) throw Error(ErrorCode::UnknownVertex, "vertex " + std::to_string(v));
    }
    for (auto& f : faces(s)) simplices_.insert(std::move(f));
}

void SimplicialComplex::add_simplex_raw(const Simplex& s) { simplices_.insert(s); }

const Vec& SimplicialComplex::point(VertexId id) const {
    auto it = vertices_.find(id);
    if (it == vertices_.end()) throw Error(ErrorCode::UnknownVertex, "vertex " + std::to_string(id));
    return it->second;
}

std::vector<Vec> SimplicialComplex::points(const Simplex& s) const {
    std::vector<Vec> out;
    out.reserve(s.size());
    for (auto v : s) out.push_back(point(v));
    return out;
}

std::vector<Simplex> SimplicialComplex::simplices_of_dim(int d) const {
    std::vector<Simplex> out;
    for (const auto& s : simplices_) {
        if (simplex_dim(s) == d) out.push_back(s);
    }
    return out;
}

std::vector<Simplex> SimplicialComplex::maximal_simplices() const {
    std::set<Simplex> covered;
    for (const auto& s : simplices_) {
        for (auto& f : facets(s)) covered.insert(std::move(f));
    }
    std::vector<Simplex> out;
    for (const auto& s : simplices_) {
        if (!covered.count(s)) out.push_back(s);
    }
    return out;
}

int SimplicialComplex::dim() const {
    if (simplices_.empty()) return -1;
    return simplex_dim(*simplices_.rbegin());
}

SimplicialComplex SimplicialComplex::generated_by(const std::vector<Simplex>& simplices) const {
    SimplicialComplex out(ambient_, backend_);
    for (const auto& s : simplices) {
        for (auto v : s) out.add_vertex(v, point(v));
        out.add_simplex(s);
    }
    return out;
}

SimplicialComplex SimplicialComplex::with_backend(Backend b) const {
    SimplicialComplex out(ambient_, b);
    for (const auto& [id, p] : vertices_) out.vertices_.emplace(id, plforge::with_backend(p, b));
    out.simplices_ = simplices_;
    return out;
}

bool operator==(const SimplicialComplex& a, const SimplicialComplex& b) {
    return a.ambient_ == b.ambient_ && a.simplices_ == b.simplices_ && a.vertices_.size() == b.vertices_.size() &&
           std::equal(a.vertices_.begin(), a.vertices_.end(), b.vertices_.begin(),
                      [](const auto& x, const auto& y) { return x.first == y.first && x.second == y.second; });
}

SimplexSet closure(const OpenCellSet& x) {
    SimplexSet out;
    for (const auto& s : x.cells) {
        for (auto& f : faces(s)) out.insert(std::move(f));
    }
    return out;
}

void check_belongs(const OpenCellSet& x, const SimplicialComplex& host) {
    for (const auto& s : x.cells) {
        if (!host.contains(s)) throw Error(ErrorCode::NotASubcomplex, "cell " + to_string(s) + " not in host");
    }
}

// ---- validation -------------------------------------------------------------

std::string Violation::describe() const {
    std::string out;
    switch (kind) {
        case Kind::Degenerate: out = "Degenerate"; break;
        case Kind::BadIntersection: out = "BadIntersection"; break;
        case Kind::MissingFace: out = "MissingFace"; break;
    }
    for (const auto& s : simplices) out += " " + to_string(s);
    return out;
}

namespace {

void bounding_box(const std::vector<Vec>& pts, Vec& lo, Vec& hi) {
    lo = pts[0];
    hi = pts[0];
    for (std::size_t i = 1; i < pts.size(); ++i) {
        for (Eigen::Index c = 0; c < lo.size(); ++c) {
            if (pts[i](c) < lo(c)) lo(c) = pts[i](c);
            if (pts[i](c) > hi(c)) hi(c) = pts[i](c);
        }
    }
}

bool inside_box(const Vec& p, const Vec& lo, const Vec& hi) {
    for (Eigen::Index c = 0; c < p.size(); ++c) {
        if (p(c) < lo(c) || p(c) > hi(c)) return false;
    }
    return true;
}

}  // namespace

namespace {

// Doubles bracketing the value. An infinitesimal part is absorbed by the widening;
// infinite values get an unbounded bracket.
std::pair<double, double> float_bounds(const Scalar& x) {
    auto st = standard_part(x);
    if (!st) return {-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    const double d = st->get_d();
    const double pad = 1e-9 * (1.0 + std::fabs(d));
    return {d - pad, d + pad};
}

// Cheap exact certificate for a proper intersection: a hyperplane through the
// common vertices with the other vertices of a strictly on one side and those
// of b strictly on the other. The normal is the line between the centroids of
// the unshared vertices, made orthogonal to the common face. Returns false when
// this candidate does not separate (the caller then decides exactly).
bool separated(const std::vector<Vec>& a_pts, const Simplex& a, const std::vector<Vec>& b_pts, const Simplex& b) {
    std::vector<Vec> common, only_a, only_b;
    for (std::size_t i = 0; i < a.size(); ++i) {
        (std::binary_search(b.begin(), b.end(), a[i]) ? common : only_a).push_back(a_pts[i]);
    }
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (!std::binary_search(a.begin(), a.end(), b[i])) only_b.push_back(b_pts[i]);
    }
    if (only_a.empty() || only_b.empty()) return false;
    auto centroid = [](const std::vector<Vec>& pts) {
        Vec c = pts[0];
        for (std::size_t i = 1; i < pts.size(); ++i) c += pts[i];
        return Vec(c / Scalar(static_cast<long>(pts.size())));
    };
    Vec d = centroid(only_b) - centroid(only_a);
    // Gram-Schmidt against the directions of the common face
    std::vector<Vec> basis;
    for (std::size_t i = 1; i < common.size(); ++i) {
        Vec e = common[i] - common[0];
        for (const auto& u : basis) e -= u * (dot(e, u) / dot(u, u));
        if (!e.isZero()) basis.push_back(e);
    }
    for (const auto& u : basis) d -= u * (dot(d, u) / dot(u, u));
    Scalar max_a = dot(d, only_a[0]), min_b = dot(d, only_b[0]);
    for (const auto& x : only_a) max_a = std::max(max_a, dot(d, x));
    for (const auto& x : only_b) min_b = std::min(min_b, dot(d, x));
    if (common.empty()) return max_a < min_b;
    const Scalar c = dot(d, common[0]);
    return max_a < c && c < min_b;
}

}  // namespace

bool intersect_properly(const std::vector<Vec>& a_pts, const Simplex& a, const std::vector<Vec>& b_pts,
                        const Simplex& b) {
    if (separated(a_pts, a, b_pts, b)) return true;
    const Eigen::Index n = a_pts[0].size();
    const Eigen::Index na = static_cast<Eigen::Index>(a.size());
    const Eigen::Index nb = static_cast<Eigen::Index>(b.size());
    Mat m(n + 2, na + nb);
    Vec rhs(n + 2);
    Vec obj(na + nb);
    for (Eigen::Index r = 0; r < n + 2; ++r) rhs(r) = Scalar(r >= n ? 1 : 0);
    for (Eigen::Index j = 0; j < na; ++j) {
        for (Eigen::Index r = 0; r < n; ++r) m(r, j) = a_pts[j](r);
        m(n, j) = Scalar(1);
        m(n + 1, j) = Scalar(0);
        bool shared = std::binary_search(b.begin(), b.end(), a[j]);
        obj(j) = Scalar(shared ? 0 : 1);
    }
    for (Eigen::Index j = 0; j < nb; ++j) {
        for (Eigen::Index r = 0; r < n; ++r) m(r, na + j) = -b_pts[j](r);
        m(n, na + j) = Scalar(0);
        m(n + 1, na + j) = Scalar(1);
        obj(na + j) = Scalar(0);
    }
    LpResult lp = lp_maximize(m, rhs, obj);
    if (lp.status == LpResult::Status::Infeasible) return true;  // disjoint
    bool share_any = false;
    for (auto v : a) share_any |= std::binary_search(b.begin(), b.end(), v);
    if (!share_any) return false;
    return lp.value.sign() == 0;
}

ValidationReport validate(const SimplicialComplex& k) {
    ValidationReport report;
    for (const auto& s : k.simplices()) {
        for (auto& f : facets(s)) {
            if (!k.contains(f)) report.violations.push_back({Violation::Kind::MissingFace, {s, f}});
        }
    }
    auto maximal = k.maximal_simplices();
    const std::size_t n = static_cast<std::size_t>(k.ambient_dim());
    std::vector<std::vector<Vec>> pts;
    // floating boxes widened outward: disjoint float boxes imply disjoint simplexes
    std::vector<std::vector<double>> lo(maximal.size()), hi(maximal.size());
    std::vector<bool> degenerate(maximal.size(), false);
    for (std::size_t i = 0; i < maximal.size(); ++i) {
        pts.push_back(k.points(maximal[i]));
        lo[i].assign(n, std::numeric_limits<double>::infinity());
        hi[i].assign(n, -std::numeric_limits<double>::infinity());
        for (const auto& p : pts.back()) {
            for (std::size_t c = 0; c < n; ++c) {
                auto [l, h] = float_bounds(p(static_cast<Eigen::Index>(c)));
                lo[i][c] = std::min(lo[i][c], l);
                hi[i][c] = std::max(hi[i][c], h);
            }
        }
        if (!affinely_independent(pts.back())) {
            degenerate[i] = true;
            report.violations.push_back({Violation::Kind::Degenerate, {maximal[i]}});
        }
    }
    // sweep along the first coordinate so far-apart pairs are never compared
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < maximal.size(); ++i) {
        if (!degenerate[i]) order.push_back(i);
    }
    const bool sweep = n > 0;
    if (sweep) std::sort(order.begin(), order.end(), [&](auto a, auto b) { return lo[a][0] < lo[b][0]; });
    auto overlap = [&](std::size_t i, std::size_t j) {
        for (std::size_t c = 0; c < n; ++c) {
            if (hi[i][c] < lo[j][c] || hi[j][c] < lo[i][c]) return false;
        }
        return true;
    };
    std::vector<std::pair<std::size_t, std::size_t>> bad;
    for (std::size_t x = 0; x < order.size(); ++x) {
        const std::size_t i = order[x];
        for (std::size_t y = x + 1; y < order.size(); ++y) {
            const std::size_t j = order[y];
            if (sweep && hi[i][0] < lo[j][0]) break;
            if (!overlap(i, j)) continue;
            if (!intersect_properly(pts[i], maximal[i], pts[j], maximal[j])) bad.emplace_back(std::min(i, j), std::max(i, j));
        }
    }
    std::sort(bad.begin(), bad.end());
    for (const auto& [i, j] : bad) report.violations.push_back({Violation::Kind::BadIntersection, {maximal[i], maximal[j]}});
    return report;
}

// ---- incidence -------------------------------------------------------------

SimplicialComplex simplex_star(const SimplicialComplex& k, const Simplex& s) {
    std::vector<Simplex> gens;
    for (const auto& t : k.simplices()) {
        if (is_face(s, t)) gens.push_back(t);
    }
    return k.generated_by(gens);
}

SimplicialComplex star(const SimplicialComplex& k, VertexId v) {
    if (!k.has_vertex(v)) throw Error(ErrorCode::UnknownVertex, "vertex " + std::to_string(v));
    return simplex_star(k, {v});
}

SimplicialComplex link(const SimplicialComplex& k, VertexId v) {
    SimplicialComplex st = star(k, v);
    std::vector<Simplex> gens;
    for (const auto& s : st.simplices()) {
        if (!std::binary_search(s.begin(), s.end(), v)) gens.push_back(s);
    }
    return st.generated_by(gens);
}

SimplicialComplex skeleton(const SimplicialComplex& k, int r) {
    std::vector<Simplex> gens;
    for (const auto& s : k.simplices()) {
        if (simplex_dim(s) <= r) gens.push_back(s);
    }
    SimplicialComplex out = k.generated_by(gens);
    return out;
}

SimplicialComplex induced_subcomplex(const SimplicialComplex& k, const std::set<VertexId>& verts) {
    std::vector<Simplex> gens;
    for (const auto& s : k.simplices()) {
        if (std::all_of(s.begin(), s.end(), [&](VertexId v) { return verts.count(v) != 0; })) gens.push_back(s);
    }
    return k.generated_by(gens);
}

CarrierIndex::CarrierIndex(const SimplicialComplex& k) {
    for (const auto& s : k.maximal_simplices()) {
        Entry e;
        e.simplex = s;
        e.points = k.points(s);
        bounding_box(e.points, e.lo, e.hi);
        entries_.push_back(std::move(e));
    }
}

std::optional<std::pair<Simplex, std::vector<Scalar>>> CarrierIndex::locate(const Vec& p) const {
    for (const auto& e : entries_) {
        if (!inside_box(p, e.lo, e.hi)) continue;
        auto lambda = barycentric(e.points, p);
        if (!lambda) continue;
        if (std::any_of(lambda->begin(), lambda->end(), [](const Scalar& x) { return x.sign() < 0; })) continue;
        Simplex c;
        std::vector<Scalar> coords;
        for (std::size_t i = 0; i < e.simplex.size(); ++i) {
            if ((*lambda)[i].sign() > 0) {
                c.push_back(e.simplex[i]);
                coords.push_back((*lambda)[i]);
            }
        }
        return std::make_pair(c, coords);
    }
    return std::nullopt;
}

std::optional<Simplex> CarrierIndex::find(const Vec& p) const {
    auto r = locate(p);
    if (!r) return std::nullopt;
    return r->first;
}

Simplex carrier(const SimplicialComplex& k, const Vec& p) {
    auto c = CarrierIndex(k).find(p);
    if (!c) throw Error(ErrorCode::OutsidePolyhedron, "point outside |K|");
    return *c;
}

bool in_open_star(const SimplicialComplex& k, VertexId v, const Vec& p) {
    auto c = CarrierIndex(star(k, v)).find(p);
    return c && std::binary_search(c->begin(), c->end(), v);
}

bool is_subcomplex(const SimplicialComplex& l, const SimplicialComplex& k) {
    for (const auto& s : l.simplices()) {
        if (!k.contains(s)) return false;
    }
    for (const auto& [id, p] : l.vertices()) {
        if (!k.has_vertex(id) || k.point(id) != p) return false;
    }
    return true;
}

bool is_full(const SimplicialComplex& l, const SimplicialComplex& k) {
    if (!is_subcomplex(l, k)) throw Error(ErrorCode::NotASubcomplex, "L is not a subcomplex of K");
    std::set<VertexId> lv;
    for (const auto& s : l.simplices()) lv.insert(s.begin(), s.end());
    for (const auto& s : k.simplices()) {
        if (std::all_of(s.begin(), s.end(), [&](VertexId v) { return lv.count(v) != 0; }) && !l.contains(s)) {
            return false;
        }
    }
    return true;
}

Simplex join(const SimplicialComplex& k, const Simplex& a, const Simplex& b) {
    Simplex u = a;
    u.insert(u.end(), b.begin(), b.end());
    Simplex s = make_simplex(u);
    if (s.size() != a.size() + b.size()) throw Error(ErrorCode::DegenerateJoin, "simplexes share a vertex");
    if (!affinely_independent(k.points(s))) throw Error(ErrorCode::DegenerateJoin, "vertices are affinely dependent");
    return s;
}

Cone cone(const Vec& apex, const SimplicialComplex& k) {
    Cone out{k, k.next_vertex_id()};
    out.complex.add_vertex(out.apex, apex);
    out.complex.add_simplex({out.apex});
    for (const auto& s : k.simplices()) {
        Simplex c = s;
        c.push_back(out.apex);
        if (!affinely_independent(out.complex.points(c))) {
            throw Error(ErrorCode::DegenerateJoin, "apex is in the affine hull of " + to_string(s));
        }
        out.complex.add_simplex(c);
    }
    return out;
}

// ---- CellComplex ------------------------------------------------------------

void CellComplex::add_vertex(VertexId id, const Vec& p) {
    if (ambient_ == 0 && points_.empty()) ambient_ = static_cast<int>(p.size());
    points_.emplace(id, p);
}

const Vec& CellComplex::point(VertexId id) const {
    auto it = points_.find(id);
    if (it == points_.end()) throw Error(ErrorCode::UnknownVertex, "vertex " + std::to_string(id));
    return it->second;
}

std::size_t CellComplex::add_cell(std::vector<VertexId> verts, int dim, std::vector<std::size_t> facet_ids) {
    std::sort(verts.begin(), verts.end());
    if (auto it = index_.find(verts); it != index_.end()) return it->second;
    for (auto f : facet_ids) {
        if (f >= cells_.size()) throw Error(ErrorCode::InvalidCellComplex, "facet added after its cell");
    }
    std::sort(facet_ids.begin(), facet_ids.end());
    facet_ids.erase(std::unique(facet_ids.begin(), facet_ids.end()), facet_ids.end());
    cells_.push_back({verts, dim, std::move(facet_ids)});
    index_.emplace(std::move(verts), cells_.size() - 1);
    return cells_.size() - 1;
}

std::optional<std::size_t> CellComplex::find(const std::vector<VertexId>& verts) const {
    auto it = index_.find(verts);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

CellComplex CellComplex::from_simplicial(const SimplicialComplex& k) {
    CellComplex c(k.ambient_dim(), k.backend());
    for (const auto& [id, p] : k.vertices()) c.add_vertex(id, p);
    for (const auto& s : k.simplices()) {  // DimLess order: faces first
        std::vector<std::size_t> fs;
        for (const auto& f : facets(s)) fs.push_back(*c.find(f));
        c.add_cell(s, simplex_dim(s), fs);
    }
    return c;
}

namespace {

// Facets of conv(ids) inside its affine hull, by testing candidate hyperplanes.
std::vector<std::vector<VertexId>> polytope_facets(const CellComplex& c, const std::vector<VertexId>& ids, int dim) {
    std::vector<Vec> pts;
    for (auto id : ids) pts.push_back(c.point(id));
    if (dim == 1) return {{ids.front()}, {ids.back()}};
    // Basis of the direction space.
    Mat dirs(pts[0].size(), static_cast<Eigen::Index>(pts.size() - 1));
    for (std::size_t i = 1; i < pts.size(); ++i) dirs.col(i - 1) = pts[i] - pts[0];
    Mat red = dirs.transpose();
    auto piv = row_reduce(red);
    std::vector<Vec> basis;
    for (std::size_t r = 0; r < piv.size(); ++r) basis.push_back(red.row(r).transpose());

    std::set<std::vector<VertexId>> found;
    std::vector<std::size_t> choice(dim);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
        if (depth == static_cast<std::size_t>(dim)) {
            // normal = B y with (q_i - q_0) . B y = 0
            Mat sys(dim - 1, dim);
            for (int i = 1; i < dim; ++i) {
                Vec d = pts[choice[i]] - pts[choice[0]];
                for (int j = 0; j < dim; ++j) sys(i - 1, j) = dot(d, basis[j]);
            }
            auto ns = nullspace(sys);
            if (ns.size() != 1) return;
            Vec normal = zero_vec(pts[0].size());
            for (int j = 0; j < dim; ++j) normal += basis[j] * ns[0](j);
            int pos = 0, neg = 0;
            std::vector<VertexId> on;
            for (std::size_t i = 0; i < pts.size(); ++i) {
                int s = dot(pts[i] - pts[choice[0]], normal).sign();
                if (s > 0) ++pos;
                if (s < 0) ++neg;
                if (s == 0) on.push_back(ids[i]);
            }
            if (pos && neg) return;
            found.insert(on);
            return;
        }
        for (std::size_t i = start; i < pts.size(); ++i) {
            choice[depth] = i;
            rec(i + 1, depth + 1);
        }
    };
    rec(0, 0);
    return {found.begin(), found.end()};
}

std::size_t add_polytope_faces(CellComplex& c, const std::vector<VertexId>& ids, int dim) {
    if (auto idx = c.find(ids)) return *idx;
    std::vector<std::size_t> fs;
    if (dim > 0) {
        for (const auto& f : polytope_facets(c, ids, dim)) fs.push_back(add_polytope_faces(c, f, dim - 1));
    }
    return c.add_cell(ids, dim, fs);
}

}  // namespace

CellComplex CellComplex::from_polytope(const std::vector<Vec>& points, Backend backend) {
    CellComplex c(static_cast<int>(points[0].size()), backend);
    // Keep only extreme points: p is a vertex iff it is not in conv(others).
    std::vector<VertexId> ids;
    VertexId next = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        std::vector<Vec> others;
        for (std::size_t j = 0; j < points.size(); ++j) {
            if (j != i) others.push_back(points[j]);
        }
        bool interior = false;
        if (!others.empty()) {
            const Eigen::Index n = points[i].size();
            Mat a(n + 1, static_cast<Eigen::Index>(others.size()));
            Vec b(n + 1);
            for (std::size_t j = 0; j < others.size(); ++j) {
                for (Eigen::Index r = 0; r < n; ++r) a(r, j) = others[j](r);
                a(n, j) = Scalar(1);
            }
            for (Eigen::Index r = 0; r < n; ++r) b(r) = points[i](r);
            b(n) = Scalar(1);
            interior = lp_maximize(a, b, zero_vec(a.cols())).status != LpResult::Status::Infeasible;
        }
        if (!interior) {
            c.add_vertex(next, points[i]);
            ids.push_back(next++);
        }
    }
    std::vector<Vec> kept;
    for (auto id : ids) kept.push_back(c.point(id));
    int dim = static_cast<int>(affine_dimension(kept));
    add_polytope_faces(c, ids, dim);
    return c;
}

}  // namespace plforge
