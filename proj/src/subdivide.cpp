#include "plforge/subdivide.hpp"

#include <algorithm>
#include <functional>

namespace plforge {

// ---- barycentric and stellar ------------------------------------------------

namespace {

void flags(const Simplex& s, std::vector<Simplex>& chain, std::vector<std::vector<Simplex>>& out) {
    chain.push_back(s);
    if (s.size() == 1) {
        out.push_back(chain);
    } else {
        for (const auto& f : facets(s)) flags(f, chain, out);
    }
    chain.pop_back();
}

}  // namespace

BarycentricSubdivision barycentric_subdivision(const SimplicialComplex& k) {
    BarycentricSubdivision out;
    out.complex = SimplicialComplex(k.ambient_dim(), k.backend());
    VertexId next = k.next_vertex_id();
    for (const auto& s : k.simplices()) {
        VertexId id = s.size() == 1 ? s[0] : next++;
        out.barycenter_of.emplace(s, id);
        out.simplex_of.emplace(id, s);
        out.complex.add_vertex(id, s.size() == 1 ? k.point(s[0]) : barycenter(k.points(s)));
    }
    for (const auto& m : k.maximal_simplices()) {
        std::vector<Simplex> chain;
        std::vector<std::vector<Simplex>> all;
        flags(m, chain, all);
        for (const auto& f : all) {
            std::vector<VertexId> ids;
            for (const auto& s : f) ids.push_back(out.barycenter_of.at(s));
            out.complex.add_simplex(make_simplex(ids));
        }
    }
    return out;
}

SimplicialComplex barycentric(const SimplicialComplex& k) { return barycentric_subdivision(k).complex; }

SimplicialComplex star_at(const SimplicialComplex& k, const Vec& p) {
    Simplex sigma = carrier(k, p);
    if (sigma.size() == 1) throw Error(ErrorCode::PointOnSkeletonBoundaryOnly, "point is the vertex " + to_string(sigma));
    Backend b = k.backend();
    for (Eigen::Index i = 0; i < p.size(); ++i) {
        if (!p(i).is_rational_value()) b = Backend::Epsilon;
    }
    SimplicialComplex out(k.ambient_dim(), b);
    for (const auto& [id, x] : k.vertices()) out.add_vertex(id, x);
    VertexId np = k.next_vertex_id();
    out.add_vertex(np, p);
    for (const auto& s : k.simplices()) {
        if (!is_face(sigma, s)) out.add_simplex_raw(s);
    }
    for (const auto& t : k.maximal_simplices()) {
        if (!is_face(sigma, t)) continue;
        for (auto u : sigma) {
            Simplex s;
            for (auto v : t) {
                if (v != u) s.push_back(v);
            }
            s.push_back(np);
            out.add_simplex(make_simplex(s));
        }
    }
    return out;
}

// ---- cell cutting -----------------------------------------------------------

namespace {

struct Pieces {
    std::optional<std::size_t> lt, gt, zero;  // closed half-space parts and the part on the cut
};

}  // namespace

CutResult cut_cells(const CellComplex& c, const std::map<VertexId, Scalar>& phi) {
    CutResult res;
    res.cells = CellComplex(c.ambient_dim(), c.backend());
    CellComplex& out = res.cells;
    for (const auto& [id, p] : c.vertices()) out.add_vertex(id, p);
    VertexId next = c.next_vertex_id();
    std::vector<Pieces> pieces(c.cells().size());
    auto sign_of = [&](VertexId v) { return phi.at(v).sign(); };

    for (std::size_t i = 0; i < c.cells().size(); ++i) {
        const Cell& cell = c.cell(i);
        bool has_lt = false, has_gt = false;
        for (auto v : cell.vertices) {
            int s = sign_of(v);
            has_lt |= s < 0;
            has_gt |= s > 0;
        }
        Pieces& pc = pieces[i];
        if (!(has_lt && has_gt)) {
            std::vector<std::size_t> fs;
            for (auto f : cell.facets) {
                const Pieces& fp = pieces[f];
                fs.push_back(has_lt ? *fp.lt : has_gt ? *fp.gt : *fp.zero);
            }
            std::size_t whole = out.add_cell(cell.vertices, cell.dim, fs);
            std::vector<VertexId> zero_verts;
            for (auto v : cell.vertices) {
                if (sign_of(v) == 0) zero_verts.push_back(v);
            }
            std::optional<std::size_t> zero;
            if (zero_verts.size() == cell.vertices.size()) {
                zero = whole;
            } else if (!zero_verts.empty()) {
                zero = out.find(zero_verts);
                if (!zero) throw Error(ErrorCode::InvalidCellComplex, "cut face missing from lattice");
            }
            pc.zero = zero;
            pc.lt = has_lt || !has_gt ? std::optional<std::size_t>(whole) : zero;
            pc.gt = has_gt || !has_lt ? std::optional<std::size_t>(whole) : zero;
            continue;
        }
        // Proper cut.
        std::size_t zero_idx;
        if (cell.dim == 1) {
            VertexId a = cell.vertices[0], b = cell.vertices[1];
            Scalar fa = phi.at(a), fb = phi.at(b);
            Scalar t = fa / (fa - fb);
            VertexId x = next++;
            const Vec& pa = c.point(a);
            out.add_vertex(x, pa + (c.point(b) - pa) * t);
            res.created.push_back({x, a, b, t});
            zero_idx = out.add_cell({x}, 0, {});
        } else {
            std::vector<VertexId> zv;
            std::vector<std::size_t> zf;
            for (auto f : cell.facets) {
                const auto& z = pieces[f].zero;
                if (!z) continue;
                const Cell& zc = out.cell(*z);
                zv.insert(zv.end(), zc.vertices.begin(), zc.vertices.end());
                if (zc.dim == cell.dim - 2) zf.push_back(*z);
            }
            zv = make_simplex(zv);
            zero_idx = out.add_cell(zv, cell.dim - 1, zf);
        }
        auto side = [&](bool lower) {
            std::vector<VertexId> verts = out.cell(zero_idx).vertices;
            std::vector<std::size_t> fs{zero_idx};
            for (auto f : cell.facets) {
                const auto& part = lower ? pieces[f].lt : pieces[f].gt;
                if (!part) continue;
                const Cell& pcell = out.cell(*part);
                if (pcell.dim != cell.dim - 1) continue;
                fs.push_back(*part);
                verts.insert(verts.end(), pcell.vertices.begin(), pcell.vertices.end());
            }
            return out.add_cell(make_simplex(verts), cell.dim, fs);
        };
        pc.zero = zero_idx;
        pc.lt = side(true);
        pc.gt = side(false);
    }
    return res;
}

// ---- pulling triangulation --------------------------------------------------

SimplicialComplex simplicialize(const CellComplex& c, const std::map<VertexId, long>& rank) {
    auto key = [&](VertexId v) {
        auto it = rank.find(v);
        return it == rank.end() ? std::pair<long, VertexId>{0, v} : std::pair<long, VertexId>{it->second, v};
    };
    std::vector<std::optional<std::vector<Simplex>>> memo(c.cells().size());
    std::function<const std::vector<Simplex>&(std::size_t)> tri = [&](std::size_t i) -> const std::vector<Simplex>& {
        if (memo[i]) return *memo[i];
        const Cell& cell = c.cell(i);
        std::vector<Simplex> out;
        if (static_cast<int>(cell.vertices.size()) == cell.dim + 1) {
            out.push_back(cell.vertices);
        } else {
            VertexId apex = *std::min_element(cell.vertices.begin(), cell.vertices.end(),
                                              [&](VertexId a, VertexId b) { return key(a) < key(b); });
            for (auto f : cell.facets) {
                const auto& fv = c.cell(f).vertices;
                if (std::binary_search(fv.begin(), fv.end(), apex)) continue;
                for (const auto& s : tri(f)) {
                    Simplex t = s;
                    t.push_back(apex);
                    out.push_back(make_simplex(t));
                }
            }
        }
        memo[i] = std::move(out);
        return *memo[i];
    };
    std::vector<bool> is_facet(c.cells().size(), false);
    for (const auto& cell : c.cells()) {
        for (auto f : cell.facets) is_facet[f] = true;
    }
    SimplicialComplex out(c.ambient_dim(), c.backend());
    std::set<VertexId> used;
    for (const auto& cell : c.cells()) used.insert(cell.vertices.begin(), cell.vertices.end());
    for (auto v : used) out.add_vertex(v, c.point(v));
    for (std::size_t i = 0; i < c.cells().size(); ++i) {
        if (is_facet[i]) continue;
        for (const auto& s : tri(i)) {
            if (static_cast<int>(s.size()) != c.cell(i).dim + 1) {
                throw Error(ErrorCode::InvalidCellComplex, "cell " + to_string(c.cell(i).vertices) + " has a bad face lattice");
            }
            out.add_simplex(s);
        }
    }
    return out;
}

SimplicialComplex simplicialize(const CellComplex& c) { return simplicialize(c, {}); }

// ---- prisms -----------------------------------------------------------------

CellComplex prism(const SimplicialComplex& k) {
    const VertexId offset = k.next_vertex_id();
    const int n = k.ambient_dim();
    CellComplex c(n + 1, k.backend());
    for (const auto& [id, p] : k.vertices()) {
        for (int level = 0; level < 2; ++level) {
            Vec q(n + 1);
            q.head(n) = p;
            q(n) = Scalar(mpq_class(level), k.backend());
            c.add_vertex(id + level * offset, q);
        }
    }
    auto lift = [&](const Simplex& s, int level) {
        Simplex t;
        for (auto v : s) t.push_back(v + level * offset);
        return t;
    };
    for (const auto& s : k.simplices()) {
        for (int level = 0; level < 2; ++level) {
            std::vector<std::size_t> fs;
            for (const auto& f : facets(s)) fs.push_back(*c.find(lift(f, level)));
            c.add_cell(lift(s, level), simplex_dim(s), fs);
        }
        std::vector<std::size_t> fs{*c.find(lift(s, 0)), *c.find(lift(s, 1))};
        for (const auto& f : facets(s)) {
            Simplex both = lift(f, 0);
            Simplex top = lift(f, 1);
            both.insert(both.end(), top.begin(), top.end());
            fs.push_back(*c.find(make_simplex(both)));
        }
        Simplex all = lift(s, 0);
        Simplex top = lift(s, 1);
        all.insert(all.end(), top.begin(), top.end());
        c.add_cell(make_simplex(all), simplex_dim(s) + 1, fs);
    }
    return c;
}

SimplicialComplex prism_triangulated(const SimplicialComplex& k) { return simplicialize(prism(k)); }

// ---- hyperplanes ------------------------------------------------------------

static void normalize(std::vector<Affine>& hs);

SimplicialComplex hyperplane_cut(const SimplicialComplex& k, const Vec& l, const Scalar& c) {
    CellComplex cells = CellComplex::from_simplicial(k);
    return simplicialize(cut_by_hyperplanes(std::move(cells), {Affine{l, -c}}));
}

std::vector<Affine> simplex_hyperplanes(const std::vector<Vec>& pts) {
    const Eigen::Index n = pts[0].size();
    const Eigen::Index k = static_cast<Eigen::Index>(pts.size()) - 1;
    std::vector<Affine> out;
    Mat dt(k, n);
    for (Eigen::Index j = 0; j < k; ++j) dt.row(j) = (pts[j + 1] - pts[0]).transpose();
    if (k < n) {
        Mat m = k > 0 ? dt : Mat(Mat::Zero(1, n));
        for (const auto& a : nullspace(m)) out.push_back({a, -dot(a, pts[0])});
    }
    if (k >= 1) {
        // Normal to facet i inside the affine hull: a = D y with a orthogonal to the facet directions.
        for (Eigen::Index i = 0; i <= k; ++i) {
            std::vector<Vec> fpts;
            for (Eigen::Index j = 0; j <= k; ++j) {
                if (j != i) fpts.push_back(pts[j]);
            }
            Mat sys(std::max<Eigen::Index>(k - 1, 1), k);
            for (Eigen::Index c = 0; c < k; ++c) sys(0, c) = Scalar(0);
            for (Eigen::Index r = 1; r < static_cast<Eigen::Index>(fpts.size()); ++r) {
                Vec d = fpts[r] - fpts[0];
                for (Eigen::Index c = 0; c < k; ++c) sys(r - 1, c) = dot(d, dt.row(c).transpose());
            }
            auto ns = nullspace(sys);
            Vec a = zero_vec(n);
            for (Eigen::Index c = 0; c < k; ++c) a += dt.row(c).transpose() * ns.at(0)(c);
            out.push_back({a, -dot(a, fpts[0])});
        }
    }
    normalize(out);
    return out;
}

static void normalize(std::vector<Affine>& hs) {
    for (auto& h : hs) {
        for (Eigen::Index c = 0; c < h.coeffs.size(); ++c) {
            if (!h.coeffs(c).is_zero()) {
                Scalar inv = Scalar(1) / h.coeffs(c);
                h.coeffs *= inv;
                h.constant *= inv;
                break;
            }
        }
    }
}

std::vector<Affine> hull_hyperplanes(const std::vector<Vec>& input) {
    std::vector<Vec> pts;
    for (const auto& p : input) {
        if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
    }
    if (affinely_independent(pts)) return simplex_hyperplanes(pts);
    const Eigen::Index n = pts[0].size();
    Mat dirs(static_cast<Eigen::Index>(pts.size() - 1), n);
    for (std::size_t i = 1; i < pts.size(); ++i) dirs.row(i - 1) = (pts[i] - pts[0]).transpose();
    std::vector<Affine> out;
    for (const auto& a : nullspace(dirs)) out.push_back({a, -dot(a, pts[0])});
    Mat red = dirs;
    auto piv = row_reduce(red);
    std::vector<Vec> basis;
    for (std::size_t r = 0; r < piv.size(); ++r) basis.push_back(red.row(r).transpose());
    const Eigen::Index d = static_cast<Eigen::Index>(basis.size());
    CellComplex poly = CellComplex::from_polytope(pts, Backend::Rational);
    const Cell& top = poly.cells().back();
    for (auto fi : top.facets) {
        const Cell& facet = poly.cell(fi);
        std::vector<Vec> fpts;
        for (auto v : facet.vertices) fpts.push_back(poly.point(v));
        Mat sys(std::max<Eigen::Index>(static_cast<Eigen::Index>(fpts.size()) - 1, 1), d);
        for (Eigen::Index c = 0; c < d; ++c) sys(0, c) = Scalar(0);
        for (std::size_t r = 1; r < fpts.size(); ++r) {
            Vec diff = fpts[r] - fpts[0];
            for (Eigen::Index c = 0; c < d; ++c) sys(static_cast<Eigen::Index>(r) - 1, c) = dot(diff, basis[c]);
        }
        auto ns = nullspace(sys);
        Vec a = zero_vec(n);
        for (Eigen::Index c = 0; c < d; ++c) a += basis[c] * ns.at(0)(c);
        out.push_back({a, -dot(a, fpts[0])});
    }
    normalize(out);
    return out;
}

void add_unique(std::vector<Affine>& hs, const std::vector<Affine>& more) {
    for (const auto& h : more) {
        if (std::none_of(hs.begin(), hs.end(), [&](const Affine& g) { return g.coeffs == h.coeffs && g.constant == h.constant; })) {
            hs.push_back(h);
        }
    }
}

CellComplex cut_by_hyperplanes(CellComplex c, const std::vector<Affine>& hyperplanes) {
    for (const auto& h : hyperplanes) {
        std::map<VertexId, Scalar> phi;
        bool lt = false, gt = false;
        for (const auto& [id, p] : c.vertices()) {
            Scalar v = h(p);
            lt |= v.sign() < 0;
            gt |= v.sign() > 0;
            phi.emplace(id, std::move(v));
        }
        if (!(lt && gt)) continue;
        c = cut_cells(c, phi).cells;
    }
    return c;
}

namespace {

bool same_hyperplane(const Affine& a, const Affine& b) { return a.coeffs == b.coeffs && a.constant == b.constant; }

Backend join_backend(Backend a, Backend b) { return a == Backend::Epsilon || b == Backend::Epsilon ? Backend::Epsilon : Backend::Rational; }

}  // namespace

SimplicialComplex common_refinement(const SimplicialComplex& k, const SimplicialComplex& l, RefineMode mode) {
    if (k.ambient_dim() != l.ambient_dim()) throw Error(ErrorCode::IncompatibleCarriers, "ambient dimensions differ");
    std::vector<Affine> hs;
    for (const auto& s : l.maximal_simplices()) {
        for (auto& h : simplex_hyperplanes(l.points(s))) {
            if (std::none_of(hs.begin(), hs.end(), [&](const Affine& g) { return same_hyperplane(g, h); })) {
                hs.push_back(std::move(h));
            }
        }
    }
    Backend b = join_backend(k.backend(), l.backend());
    CellComplex cells = CellComplex::from_simplicial(k.with_backend(b));
    SimplicialComplex out = simplicialize(cut_by_hyperplanes(std::move(cells), hs));

    // Each simplex of L must be a union of output simplexes.
    CarrierIndex lindex(l);
    for (const auto& tau : l.maximal_simplices()) {
        auto tpts = l.points(tau);
        Scalar total;
        for (const auto& s : out.simplices_of_dim(simplex_dim(tau))) {
            auto lam = barycentric(tpts, barycenter(out.points(s)));
            if (!lam || std::any_of(lam->begin(), lam->end(), [](const Scalar& x) { return x.sign() < 0; })) continue;
            std::vector<std::vector<Scalar>> coords;
            for (auto v : s) coords.push_back(*barycentric(tpts, out.point(v)));
            const int d = simplex_dim(tau);
            Mat m(d, d);
            for (int r = 0; r < d; ++r) {
                for (int cidx = 0; cidx < d; ++cidx) m(r, cidx) = coords[r + 1][cidx + 1] - coords[0][cidx + 1];
            }
            total += d == 0 ? Scalar(1) : abs(determinant(m));
        }
        if (total != Scalar(1)) throw Error(ErrorCode::IncompatibleCarriers, "simplex " + to_string(tau) + " of L is not covered");
    }
    if (mode == RefineMode::Equal) {
        for (const auto& s : out.maximal_simplices()) {
            if (!lindex.find(barycenter(out.points(s)))) {
                throw Error(ErrorCode::IncompatibleCarriers, "|K| is not contained in |L|");
            }
        }
    }
    return out;
}

// ---- volumes ----------------------------------------------------------------

Scalar simplex_volume(const std::vector<Vec>& pts) {
    const Eigen::Index n = pts[0].size();
    Mat m(n, n);
    for (Eigen::Index j = 0; j < n; ++j) m.col(j) = pts[j + 1] - pts[0];
    mpz_class fact = 1;
    for (long i = 2; i <= n; ++i) fact *= i;
    return abs(determinant(m)) / Scalar(mpq_class(fact));
}

Scalar total_volume(const SimplicialComplex& k) {
    Scalar v;
    for (const auto& s : k.simplices_of_dim(k.ambient_dim())) v += simplex_volume(k.points(s));
    return v;
}

std::optional<std::map<Simplex, Scalar>> relative_volumes(const SimplicialComplex& sub, const SimplicialComplex& k) {
    std::map<Simplex, Scalar> sums;
    for (const auto& m : k.maximal_simplices()) sums.emplace(m, Scalar(0));
    CarrierIndex index(k);
    for (const auto& rho : sub.maximal_simplices()) {
        auto loc = index.locate(barycenter(sub.points(rho)));
        if (!loc) return std::nullopt;
        const Simplex& sigma = loc->first;
        auto spts = k.points(sigma);
        std::vector<std::vector<Scalar>> coords;
        for (auto v : rho) {
            auto lam = barycentric(spts, sub.point(v));
            if (!lam || std::any_of(lam->begin(), lam->end(), [](const Scalar& x) { return x.sign() < 0; })) {
                return std::nullopt;
            }
            coords.push_back(std::move(*lam));
        }
        if (sigma.size() != rho.size() || !sums.count(sigma)) continue;
        const int d = simplex_dim(sigma);
        Scalar vol(1);
        if (d > 0) {
            Mat m(d, d);
            for (int r = 0; r < d; ++r) {
                for (int c = 0; c < d; ++c) m(r, c) = coords[r + 1][c + 1] - coords[0][c + 1];
            }
            vol = abs(determinant(m));
        }
        sums[sigma] += vol;
    }
    return sums;
}

bool is_subdivision(const SimplicialComplex& sub, const SimplicialComplex& k) {
    if (sub.ambient_dim() != k.ambient_dim()) return false;
    auto sums = relative_volumes(sub, k);
    if (!sums) return false;
    return std::all_of(sums->begin(), sums->end(), [](const auto& e) { return e.second == Scalar(1); });
}

}  // namespace plforge
