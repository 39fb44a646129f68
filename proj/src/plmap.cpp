#include "plforge/plmap.hpp"

#include <algorithm>

namespace plforge {

namespace {

std::string point_key(const Vec& p) {
    std::string key;
    for (Eigen::Index i = 0; i < p.size(); ++i) {
        key += p(i).str();
        key += ';';
    }
    return key;
}

class VertexLookup {
  public:
    explicit VertexLookup(const SimplicialComplex& k) {
        for (const auto& [id, p] : k.vertices()) ids_.emplace(point_key(p), id);
    }
    std::optional<VertexId> find(const Vec& p) const {
        auto it = ids_.find(point_key(p));
        if (it == ids_.end()) return std::nullopt;
        return it->second;
    }

  private:
    std::map<std::string, VertexId> ids_;
};

Backend join_backend(Backend a, Backend b) {
    return a == Backend::Epsilon || b == Backend::Epsilon ? Backend::Epsilon : Backend::Rational;
}

Backend map_backend(const PLMap& f) {
    Backend b = join_backend(f.domain.backend(), f.target.backend());
    for (const auto& [v, p] : f.image) {
        if (!all_rational(p)) b = Backend::Epsilon;
    }
    return b;
}

bool nonnegative(const std::vector<Scalar>& xs) {
    return std::all_of(xs.begin(), xs.end(), [](const Scalar& x) { return x.sign() >= 0; });
}

struct MappedCells {
    CellComplex cells;
    std::map<VertexId, Vec> image;
};

void cut_mapped(MappedCells& m, const Affine& h) {
    std::map<VertexId, Scalar> phi;
    bool lt = false, gt = false;
    for (const auto& [id, p] : m.cells.vertices()) {
        Scalar v = h(m.image.at(id));
        lt |= v.sign() < 0;
        gt |= v.sign() > 0;
        phi.emplace(id, std::move(v));
    }
    if (!(lt && gt)) return;
    CutResult res = cut_cells(m.cells, phi);
    for (const auto& x : res.created) {
        const Vec& a = m.image.at(x.a);
        m.image.emplace(x.id, a + (m.image.at(x.b) - a) * x.t);
    }
    m.cells = std::move(res.cells);
}

SimplicialComplex with_points(const SimplicialComplex& k, const std::map<VertexId, Vec>& pts, Backend b) {
    SimplicialComplex out(static_cast<int>(pts.begin()->second.size()), b);
    for (const auto& [id, p] : k.vertices()) out.add_vertex(id, with_backend(pts.at(id), b));
    for (const auto& s : k.simplices()) out.add_simplex_raw(s);
    return out;
}

}  // namespace

const Vec& PLMap::at(VertexId v) const {
    auto it = image.find(v);
    if (it == image.end()) throw Error(ErrorCode::UnknownVertex, "no image for vertex " + std::to_string(v));
    return it->second;
}

PLMap identity_map(const SimplicialComplex& k) {
    PLMap f{k, k, {}};
    for (const auto& [id, p] : k.vertices()) f.image.emplace(id, p);
    return f;
}

void check_map(const PLMap& f) {
    CarrierIndex index(f.target);
    for (const auto& [id, p] : f.domain.vertices()) {
        if (!index.find(f.at(id))) {
            throw Error(ErrorCode::OutsidePolyhedron, "image of vertex " + std::to_string(id) + " is outside the target");
        }
    }
}

Vec eval(const PLMap& f, const Vec& p) {
    auto loc = CarrierIndex(f.domain).locate(p);
    if (!loc) throw Error(ErrorCode::OutsideDomain, "point outside the domain");
    Vec out = zero_vec(f.target.ambient_dim(), map_backend(f));
    for (std::size_t i = 0; i < loc->first.size(); ++i) out += f.at(loc->first[i]) * loc->second[i];
    return out;
}

std::optional<VertexId> vertex_at(const SimplicialComplex& k, const Vec& p) {
    for (const auto& [id, x] : k.vertices()) {
        if (x == p) return id;
    }
    return std::nullopt;
}

Simplex image_simplex(const PLMap& f, const Simplex& s) {
    VertexLookup lookup(f.target);
    std::vector<VertexId> ids;
    for (auto v : s) {
        auto id = lookup.find(f.at(v));
        if (!id) return {};
        ids.push_back(*id);
    }
    return make_simplex(ids);
}

bool is_simplicial(const PLMap& f) {
    VertexLookup lookup(f.target);
    for (const auto& s : f.domain.maximal_simplices()) {
        std::vector<VertexId> ids;
        for (auto v : s) {
            auto id = lookup.find(f.at(v));
            if (!id) return false;
            ids.push_back(*id);
        }
        if (!f.target.contains(make_simplex(ids))) return false;
    }
    return true;
}

// ---- make_simplicial --------------------------------------------------------

SimplicialRefinement make_simplicial(const PLMap& f) {
    check_map(f);
    const Backend b = map_backend(f);
    std::vector<Affine> hs;
    for (const auto& s : f.domain.maximal_simplices()) {
        std::vector<Vec> img;
        for (auto v : s) img.push_back(f.at(v));
        add_unique(hs, hull_hyperplanes(img));
        if (affine_dimension(img) < simplex_dim(s)) {
            for (const auto& face : faces(s)) {
                std::vector<Vec> fimg;
                for (auto v : face) fimg.push_back(f.at(v));
                add_unique(hs, hull_hyperplanes(fimg));
            }
        }
    }
    for (const auto& t : f.target.maximal_simplices()) add_unique(hs, simplex_hyperplanes(f.target.points(t)));

    const SimplicialComplex target = f.target.with_backend(b);
    CarrierIndex target_index(target);
    for (int round = 0; round < 6; ++round) {
        SimplicialComplex l1 = simplicialize(cut_by_hyperplanes(CellComplex::from_simplicial(target), hs));
        VertexLookup lookup(l1);

        MappedCells mk{CellComplex::from_simplicial(f.domain.with_backend(b)), {}};
        for (const auto& [id, p] : f.image) mk.image.emplace(id, with_backend(p, b));
        for (const auto& h : hs) cut_mapped(mk, h);

        std::map<VertexId, long> rank;
        for (const auto& [id, p] : mk.cells.vertices()) {
            auto lid = lookup.find(mk.image.at(id));
            rank.emplace(id, lid ? static_cast<long>(*lid) : std::numeric_limits<long>::max());
        }
        SimplicialComplex k1 = simplicialize(mk.cells, rank);
        PLMap f1{k1, l1, {}};
        for (const auto& [id, p] : k1.vertices()) f1.image.emplace(id, mk.image.at(id));

        std::vector<Affine> extra;
        for (const auto& s : k1.maximal_simplices()) {
            std::vector<Vec> img;
            std::vector<VertexId> ids;
            bool all_vertices = true;
            for (auto v : s) {
                img.push_back(f1.image.at(v));
                auto lid = lookup.find(img.back());
                if (lid) {
                    ids.push_back(*lid);
                } else {
                    all_vertices = false;
                }
            }
            if (all_vertices && l1.contains(make_simplex(ids))) continue;
            if (!target_index.find(barycenter(img))) {
                throw Error(ErrorCode::NotAffineOnSimplex, "image of " + to_string(s) + " leaves the target");
            }
            add_unique(extra, hull_hyperplanes(img));
        }
        if (extra.empty()) return {k1, l1, f1};
        std::size_t before = hs.size();
        add_unique(hs, extra);
        if (hs.size() == before) break;
    }
    throw Error(ErrorCode::InvalidCellComplex, "could not refine the map to a simplicial one");
}

std::vector<Vec> preimages(const PLMap& f, const Vec& y) {
    std::vector<Vec> out;
    for (const auto& s : f.domain.maximal_simplices()) {
        std::vector<Vec> img;
        for (auto v : s) img.push_back(f.at(v));
        if (!affinely_independent(img)) continue;
        auto lam = barycentric(img, y);
        if (!lam || !nonnegative(*lam)) continue;
        Vec x = zero_vec(f.domain.ambient_dim(), f.domain.backend());
        for (std::size_t i = 0; i < s.size(); ++i) x += f.domain.point(s[i]) * (*lam)[i];
        if (std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
    }
    return out;
}

// ---- homeomorphism certificates ---------------------------------------------

namespace {

bool is_convex_full(const SimplicialComplex& l) {
    if (l.dim() != l.ambient_dim()) return false;
    std::vector<Vec> pts;
    for (const auto& [id, p] : l.vertices()) pts.push_back(p);
    SimplicialComplex hull = simplicialize(CellComplex::from_polytope(pts, l.backend()));
    return total_volume(hull) == total_volume(l);
}

bool pure_full(const SimplicialComplex& k) {
    if (k.dim() != k.ambient_dim()) return false;
    for (const auto& s : k.maximal_simplices()) {
        if (simplex_dim(s) != k.dim()) return false;
    }
    return true;
}

std::set<std::vector<std::string>> geometric_boundary(const SimplicialComplex& k) {
    std::set<std::vector<std::string>> out;
    for (const auto& s : boundary_complex(k).simplices_of_dim(k.dim() - 1)) {
        std::vector<std::string> keys;
        for (auto v : s) keys.push_back(point_key(k.point(v)));
        std::sort(keys.begin(), keys.end());
        out.insert(std::move(keys));
    }
    return out;
}

// Injective on vertices with nondegenerate simplex images forming a valid complex J.
// J triangulates |L| when L is convex and the volumes agree, or when both are pure,
// full-dimensional and share their boundary (a region is fixed by its boundary cycle).
std::optional<HomeomorphismCheck> image_certificate(const PLMap& f) {
    const SimplicialComplex& k = f.domain;
    if (k.dim() != f.target.ambient_dim()) return std::nullopt;
    std::set<std::string> seen;
    for (const auto& [id, p] : k.vertices()) {
        if (!seen.insert(point_key(f.at(id))).second) return std::nullopt;
    }
    SimplicialComplex j = with_points(k, f.image, map_backend(f));
    for (const auto& s : k.maximal_simplices()) {
        if (!affinely_independent(j.points(s))) return std::nullopt;
    }
    if (!validate(j).ok()) return std::nullopt;
    HomeomorphismCheck out;
    out.homeomorphism = true;
    out.refinement = SimplicialRefinement{k, j, PLMap{k, j, f.image}};
    if (pure_full(j) && pure_full(f.target) && geometric_boundary(j) == geometric_boundary(f.target)) {
        out.reason = "simplicial isomorphism onto a triangulation with the target's boundary";
        return out;
    }
    CarrierIndex index(f.target);
    for (const auto& [id, p] : j.vertices()) {
        if (!index.find(p)) return std::nullopt;
    }
    if (total_volume(j) != total_volume(f.target) || !is_convex_full(f.target)) return std::nullopt;
    out.reason = "simplicial isomorphism onto a triangulation of the convex target";
    return out;
}

}  // namespace

HomeomorphismCheck is_pl_homeomorphism(const PLMap& f) {
    if (auto fast = image_certificate(f)) return *fast;
    HomeomorphismCheck out;
    SimplicialRefinement r = make_simplicial(f);
    const int m = r.k1.dim();

    std::map<Simplex, std::vector<Simplex>> by_image;
    for (const auto& s : r.k1.simplices_of_dim(m)) {
        Simplex img = image_simplex(r.f1, s);
        if (img.size() == s.size()) by_image[img].push_back(s);
    }
    for (const auto& [img, pre] : by_image) {
        if (pre.size() < 2) continue;
        out.witness = barycenter(r.l1.points(img));
        for (const auto& s : pre) out.witness_preimages.push_back(barycenter(r.k1.points(s)));
        out.reason = "simplex " + to_string(img) + " is covered more than once";
        return out;
    }

    VertexLookup lookup(r.l1);
    std::map<VertexId, std::vector<VertexId>> vertex_pre;
    for (const auto& [id, p] : r.k1.vertices()) vertex_pre[*lookup.find(r.f1.at(id))].push_back(id);
    for (const auto& [w, pre] : vertex_pre) {
        if (pre.size() < 2) continue;
        out.witness = r.l1.point(w);
        for (auto v : pre) out.witness_preimages.push_back(r.k1.point(v));
        out.reason = "vertex map is not injective";
        return out;
    }

    std::set<Simplex> covered;
    for (const auto& s : r.k1.simplices()) covered.insert(image_simplex(r.f1, s));
    std::vector<Simplex> targets(r.l1.simplices().rbegin(), r.l1.simplices().rend());
    for (const auto& t : targets) {
        if (covered.count(t)) continue;
        out.witness = barycenter(r.l1.points(t));
        out.witness_preimages = preimages(r.f1, *out.witness);
        out.reason = "simplex " + to_string(t) + " is not covered";
        return out;
    }
    out.homeomorphism = true;
    out.refinement = std::move(r);
    out.reason = "simplicial isomorphism between refinements";
    return out;
}

SimplicialComplex graph(const PLMap& f) {
    const int n = f.domain.ambient_dim(), m = f.target.ambient_dim();
    const Backend b = map_backend(f);
    SimplicialComplex g(n + m, b);
    for (const auto& [id, p] : f.domain.vertices()) {
        Vec x(n + m);
        x.head(n) = with_backend(p, b);
        x.tail(m) = with_backend(f.at(id), b);
        g.add_vertex(id, x);
    }
    for (const auto& s : f.domain.simplices()) g.add_simplex_raw(s);
    return g;
}

// ---- Alexander trick --------------------------------------------------------

SimplicialComplex boundary_complex(const SimplicialComplex& k) {
    const int m = k.dim();
    std::map<Simplex, int> cofaces;
    for (const auto& s : k.simplices_of_dim(m)) {
        for (const auto& f : facets(s)) cofaces[f]++;
    }
    std::vector<Simplex> gens;
    for (const auto& [f, c] : cofaces) {
        if (c == 1) gens.push_back(f);
    }
    return k.generated_by(gens);
}

ConeExtension alexander_extend(const std::vector<PLMap>& pieces, const Vec& apex_preimage, const Vec& apex_image) {
    if (pieces.empty()) throw Error(ErrorCode::InconsistentBoundaryData, "no boundary data");
    const SimplicialComplex& target = pieces[0].target;
    Backend b = Backend::Rational;
    for (const auto& p : pieces) b = join_backend(b, map_backend(p));
    if (!all_rational(apex_preimage) || !all_rational(apex_image)) b = Backend::Epsilon;

    SimplicialComplex merged(pieces[0].domain.ambient_dim(), b);
    std::map<VertexId, Vec> images;
    for (const auto& piece : pieces) {
        if (!(piece.target == target)) throw Error(ErrorCode::InconsistentBoundaryData, "pieces have different targets");
        for (const auto& [id, p] : piece.domain.vertices()) {
            const Vec& img = piece.at(id);
            if (merged.has_vertex(id)) {
                if (merged.point(id) != p || images.at(id) != img) {
                    throw Error(ErrorCode::InconsistentBoundaryData, "pieces disagree at vertex " + std::to_string(id));
                }
                continue;
            }
            merged.add_vertex(id, with_backend(p, b));
            images.emplace(id, with_backend(img, b));
        }
        for (const auto& s : piece.domain.simplices()) merged.add_simplex(s);
    }
    const int m = merged.dim();
    std::map<Simplex, int> cofaces;
    for (const auto& s : merged.simplices_of_dim(m)) {
        for (const auto& f : facets(s)) cofaces[f]++;
    }
    for (const auto& s : merged.maximal_simplices()) {
        if (simplex_dim(s) != m) throw Error(ErrorCode::InconsistentBoundaryData, "boundary data is not pure");
    }
    for (const auto& [f, c] : cofaces) {
        if (c != 2) throw Error(ErrorCode::InconsistentBoundaryData, "boundary data is not closed at " + to_string(f));
    }

    Cone c;
    try {
        c = cone(with_backend(apex_preimage, b), merged);
    } catch (const Error& e) {
        throw Error(ErrorCode::ApexNotInterior, "apex preimage lies on the affine hull of a boundary simplex");
    }
    if (!validate(c.complex).ok()) throw Error(ErrorCode::ApexNotInterior, "apex preimage is outside the bounded region");
    auto loc = CarrierIndex(target).find(apex_image);
    if (!loc || boundary_complex(target).contains(*loc)) {
        throw Error(ErrorCode::ApexNotInterior, "apex image is not interior to the target");
    }
    images.emplace(c.apex, with_backend(apex_image, b));
    return {PLMap{c.complex, target.with_backend(b), std::move(images)}, c.apex};
}

// ---- level sets -------------------------------------------------------------

LevelSets level_set(const PLMap& f, const std::vector<Scalar>& values, const std::vector<Interval>& intervals) {
    if (f.target.ambient_dim() != 1) throw Error(ErrorCode::NotAffineOnSimplex, "level sets need a real-valued map");
    const Backend b = map_backend(f);
    std::vector<Scalar> cuts = values;
    for (const auto& iv : intervals) {
        cuts.push_back(iv.lo);
        cuts.push_back(iv.hi);
    }
    MappedCells mk{CellComplex::from_simplicial(f.domain.with_backend(b)), {}};
    for (const auto& [id, p] : f.image) mk.image.emplace(id, with_backend(p, b));
    Vec one = zero_vec(1);
    one(0) = Scalar(1);
    for (const auto& c : cuts) cut_mapped(mk, Affine{one, -c});

    LevelSets out;
    out.complex = simplicialize(mk.cells);
    for (const auto& [id, p] : out.complex.vertices()) out.value.emplace(id, mk.image.at(id)(0));
    for (const auto& c : values) {
        std::set<VertexId> vs;
        for (const auto& [id, v] : out.value) {
            if (v == c) vs.insert(id);
        }
        out.levels.push_back(induced_subcomplex(out.complex, vs));
    }
    for (const auto& iv : intervals) {
        std::set<VertexId> vs;
        for (const auto& [id, v] : out.value) {
            if (iv.lo <= v && v <= iv.hi) vs.insert(id);
        }
        out.bands.push_back(induced_subcomplex(out.complex, vs));
    }
    return out;
}

// ---- simplicial approximation -----------------------------------------------

namespace {

// delta_s for every simplex, or nullopt when the carrier condition fails somewhere.
std::optional<std::map<Simplex, Simplex>> carriers_of_images(const PLMap& f) {
    CarrierIndex index(f.target);
    std::map<Simplex, Simplex> out;
    for (const auto& s : f.domain.simplices()) {
        std::vector<Vec> img;
        for (auto v : s) img.push_back(f.at(v));
        auto delta = index.find(barycenter(img));
        if (!delta) throw Error(ErrorCode::NotAffineOnSimplex, "image of " + to_string(s) + " leaves the target");
        auto dpts = f.target.points(*delta);
        for (const auto& p : img) {
            auto lam = barycentric(dpts, p);
            if (!lam || !nonnegative(*lam)) return std::nullopt;
        }
        out.emplace(s, *delta);
    }
    return out;
}

}  // namespace

SimplicialApproximation simplicial_approximation(const PLMap& f) {
    check_map(f);
    PLMap g = f;
    auto deltas = carriers_of_images(g);
    if (!deltas) {
        SimplicialRefinement r = make_simplicial(f);
        g = PLMap{r.k1, f.target.with_backend(r.l1.backend()), r.f1.image};
        deltas = carriers_of_images(g);
        if (!deltas) throw Error(ErrorCode::CarrierConditionFails, "carrier condition fails after refinement");
    }
    SimplicialApproximation out;
    out.k = g.domain;
    out.f = g;
    BarycentricSubdivision kb = barycentric_subdivision(g.domain);
    BarycentricSubdivision lb = barycentric_subdivision(g.target);
    out.f1 = PLMap{kb.complex, lb.complex, {}};
    for (const auto& [id, s] : kb.simplex_of) {
        out.f1.image.emplace(id, lb.complex.point(lb.barycenter_of.at(deltas->at(s))));
    }
    for (const auto& s : kb.complex.simplices()) {
        // the largest simplex of the chain carries s
        Simplex top;
        for (auto v : s) {
            const Simplex& sv = kb.simplex_of.at(v);
            if (sv.size() > top.size()) top = sv;
        }
        out.witness.push_back({s, deltas->at(top)});
    }
    return out;
}

bool check_witness(const SimplicialApproximation& a) {
    for (const auto& w : a.witness) {
        auto dpts = a.f.target.points(w.carrier);
        std::vector<Vec> pts0, pts1;
        for (auto v : w.simplex) {
            pts0.push_back(eval(a.f, a.f1.domain.point(v)));
            pts1.push_back(a.f1.at(v));
        }
        for (const auto* pts : {&pts0, &pts1}) {
            for (const auto& p : *pts) {
                auto lam = barycentric(dpts, p);
                if (!lam || !nonnegative(*lam)) return false;
            }
            auto lam = barycentric(dpts, barycenter(*pts));
            if (!lam) return false;
        }
    }
    return true;
}

// ---- vertex moves -----------------------------------------------------------

SimplicialComplex apply_move(const SimplicialComplex& host, VertexId v, const Vec& to) {
    std::map<VertexId, Vec> pts = host.vertices();
    pts.at(v) = to;
    Backend b = host.backend();
    if (!all_rational(to)) b = Backend::Epsilon;
    return with_points(host, pts, b);
}

PLMap vertex_move_map(const SimplicialComplex& host, VertexId v, const Vec& to) {
    SimplicialComplex st = star(host, v);
    PLMap f = identity_map(st);
    f.image.at(v) = with_backend(to, st.backend());
    return f;
}

}  // namespace plforge
