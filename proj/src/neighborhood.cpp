#include "plforge/neighborhood.hpp"

#include <algorithm>

namespace plforge {

namespace {

SimplicialComplex unit_interval() {
    SimplicialComplex l(1, Backend::Rational);
    Vec a = zero_vec(1), b = zero_vec(1);
    b(0) = Scalar(1);
    l.add_vertex(0, a);
    l.add_vertex(1, b);
    l.add_simplex({0, 1});
    return l;
}

// Subcomplex of sub.complex subdividing the subcomplex y of the original complex.
SimplicialComplex subdivided(const BarycentricSubdivision& sub, const SimplicialComplex& y) {
    std::vector<Simplex> gens;
    for (const auto& s : sub.complex.simplices()) {
        if (y.contains(original_carrier(sub, s))) gens.push_back(s);
    }
    return sub.complex.generated_by(gens);
}

}  // namespace

Simplex original_carrier(const BarycentricSubdivision& sub, const Simplex& s) {
    const Simplex* top = nullptr;
    for (auto v : s) {
        const Simplex& sv = sub.simplex_of.at(v);
        if (!top || sv.size() > top->size()) top = &sv;
    }
    return *top;
}

OpenCellSet lift(const BarycentricSubdivision& sub, const OpenCellSet& x) {
    OpenCellSet out;
    for (const auto& s : sub.complex.simplices()) {
        if (x.contains(original_carrier(sub, s))) out.cells.insert(s);
    }
    return out;
}

DerivedFull derived_full(const SimplicialComplex& k, const SimplicialComplex& y) {
    if (!is_subcomplex(y, k)) throw Error(ErrorCode::NotASubcomplex, "Y is not a subcomplex of K");
    DerivedFull out{barycentric_subdivision(k), {}};
    out.y = subdivided(out.sub, y);
    return out;
}

RegularNeighborhood regular_neighborhood(const SimplicialComplex& k, const SimplicialComplex& y) {
    if (!is_full(y, k)) throw Error(ErrorCode::NotFull, "Y is not full in K");
    RegularNeighborhood out;
    out.sub = barycentric_subdivision(k);
    out.y = subdivided(out.sub, y);
    const SimplicialComplex& kp = out.sub.complex;
    std::vector<Simplex> gens;
    for (const auto& t : kp.maximal_simplices()) {
        bool meets = std::any_of(t.begin(), t.end(), [&](VertexId v) { return out.y.has_vertex(v); });
        if (meets) gens.push_back(t);
    }
    out.u = kp.generated_by(gens);
    std::vector<Simplex> front;
    for (const auto& s : kp.simplices()) {
        if (out.u.contains(s)) continue;
        for (const auto& f : faces(s)) {
            if (out.u.contains(f)) front.push_back(f);
        }
    }
    out.frontier = kp.generated_by(front);
    return out;
}

XiMap xi_map(const SimplicialComplex& k, const SimplicialComplex& u1) {
    if (!is_full(u1, k)) throw Error(ErrorCode::NotFull, "U1 is not full in K");
    XiMap out{PLMap{k, unit_interval(), {}}, {}};
    for (const auto& [id, p] : k.vertices()) {
        Vec x = zero_vec(1);
        x(0) = Scalar(u1.has_vertex(id) ? 0 : 1);
        out.map.image.emplace(id, x);
    }
    out.zero_set = level_set(out.map, {Scalar(0)}, {}).levels.at(0);
    return out;
}

// ---- standardization --------------------------------------------------------

namespace {

struct Located {
    Simplex simplex;
    std::vector<Scalar> coords;
};

Located locate_in(const CarrierIndex& index, const Vec& p) {
    auto loc = index.locate(p);
    if (!loc) throw Error(ErrorCode::OutsideDomain, "point outside |K|");
    return {loc->first, loc->second};
}

// t0 and far mass of p for the deleted simplex sigma.
std::pair<Scalar, Scalar> weights_for(const Standardization& s, const Simplex& sigma, const Located& at) {
    const VertexId vs = s.k1.barycenter_of.at(sigma);
    Scalar t0 = 0, far = 0;
    for (std::size_t i = 0; i < at.simplex.size(); ++i) {
        VertexId v = at.simplex[i];
        const Simplex& rho = s.k1.simplex_of.at(v);
        if (v == vs) {
            t0 = at.coords[i];
        } else if (rho.size() > sigma.size() && is_face(sigma, rho)) {
            far += at.coords[i];
        }
    }
    return {t0, far};
}

Vec tau_at(const Standardization& s, const CarrierIndex& index, const Simplex& sigma, const Vec& p) {
    Located at = locate_in(index, p);
    const VertexId vs = s.k1.barycenter_of.at(sigma);
    auto it = std::find(at.simplex.begin(), at.simplex.end(), vs);
    if (it == at.simplex.end()) return p;
    Scalar t0 = at.coords[static_cast<std::size_t>(it - at.simplex.begin())];
    Scalar far = 0;
    Vec near_part = zero_vec(p.size(), p(0).backend()), far_part = near_part;
    for (std::size_t i = 0; i < at.simplex.size(); ++i) {
        VertexId v = at.simplex[i];
        if (v == vs) continue;
        const Simplex& rho = s.k1.simplex_of.at(v);
        const Vec& x = s.k1.complex.point(v);
        if (rho.size() > sigma.size()) {
            far += at.coords[i];
            far_part += x * at.coords[i];
        } else {
            near_part += x * at.coords[i];
        }
    }
    if (far.is_zero()) throw Error(ErrorCode::OutsideDomain, "point lies in the deleted simplex " + to_string(sigma));
    const Scalar half = Scalar(mpq_class(1, 2));
    return s.k1.complex.point(vs) * (t0 * half) + near_part + far_part * ((far + t0 * half) / far);
}

bool image_form(const std::vector<std::pair<Scalar, Scalar>>& forms) {
    for (const auto& [t0, phi] : forms) {
        if (!(phi.sign() < 0 || t0.is_zero())) return false;
    }
    return true;
}

}  // namespace

Standardization standardize(const SimplicialComplex& k, const OpenCellSet& x, const std::vector<OpenCellSet>& subsets) {
    check_belongs(x, k);
    if (closure(x) != k.simplices()) throw Error(ErrorCode::InvalidPresentation, "closure of X is not |K|");
    for (const auto& xi : subsets) {
        for (const auto& c : xi.cells) {
            if (!x.contains(c)) throw Error(ErrorCode::InvalidPresentation, "subset cell " + to_string(c) + " is not in X");
        }
    }
    Standardization s;
    s.k = k;
    s.x = x;
    s.subsets = subsets;
    s.k1 = barycentric_subdivision(k);
    s.k2 = barycentric_subdivision(s.k1.complex);
    for (const auto& c : k.simplices()) {
        if (!x.contains(c)) s.deleted.push_back(c);
    }

    // vertex values of t0 and t0 - far on K', then cut along each {t0 = far}
    CellComplex cells = CellComplex::from_simplicial(s.k1.complex);
    for (const auto& [v, p] : s.k1.complex.vertices()) {
        const Simplex& rho = s.k1.simplex_of.at(v);
        std::vector<std::pair<Scalar, Scalar>> f;
        for (const auto& sigma : s.deleted) {
            if (rho == sigma) {
                f.emplace_back(Scalar(1), Scalar(1));
            } else if (rho.size() > sigma.size() && is_face(sigma, rho)) {
                f.emplace_back(Scalar(0), Scalar(-1));
            } else {
                f.emplace_back(Scalar(0), Scalar(0));
            }
        }
        s.forms.emplace(v, std::move(f));
    }
    for (std::size_t i = 0; i < s.deleted.size(); ++i) {
        std::map<VertexId, Scalar> phi;
        for (const auto& [v, p] : cells.vertices()) phi.emplace(v, s.forms.at(v)[i].second);
        CutResult res = cut_cells(cells, phi);
        for (const auto& c : res.created) {
            std::vector<std::pair<Scalar, Scalar>> f;
            const auto& a = s.forms.at(c.a);
            const auto& b = s.forms.at(c.b);
            for (std::size_t j = 0; j < a.size(); ++j) {
                f.emplace_back(a[j].first + (b[j].first - a[j].first) * c.t, a[j].second + (b[j].second - a[j].second) * c.t);
            }
            s.forms.emplace(c.id, std::move(f));
        }
        cells = std::move(res.cells);
    }
    s.q = simplicialize(cells);

    CarrierIndex k1_index(s.k1.complex);
    s.pieces.resize(subsets.size());
    for (const auto& c : s.q.simplices()) {
        std::vector<std::pair<Scalar, Scalar>> mean(s.deleted.size(), {Scalar(0), Scalar(0)});
        for (auto v : c) {
            const auto& f = s.forms.at(v);
            for (std::size_t j = 0; j < f.size(); ++j) {
                mean[j].first += f[j].first;
                mean[j].second += f[j].second;
            }
        }
        if (!image_form(mean)) continue;
        s.y.cells.insert(c);
        Simplex kc = original_carrier(s.k1, *k1_index.find(barycenter(s.q.points(c))));
        for (std::size_t i = 0; i < subsets.size(); ++i) {
            if (subsets[i].contains(kc)) s.pieces[i].cells.insert(c);
        }
    }
    for (const auto& c : closure(s.y)) {
        if (!s.y.contains(c)) s.v.cells.insert(c);
    }

    std::set<VertexId> good;
    for (const auto& [v, p] : s.k2.complex.vertices()) {
        if (x.contains(original_carrier(s.k1, s.k2.simplex_of.at(v)))) good.insert(v);
    }
    s.formula_closure = induced_subcomplex(s.k2.complex, good);
    return s;
}

Vec tau_single(const Standardization& s, const Simplex& sigma, const Vec& p) {
    return tau_at(s, CarrierIndex(s.k1.complex), sigma, p);
}

Vec tau(const Standardization& s, const Vec& p) {
    CarrierIndex index(s.k1.complex);
    Located at = locate_in(index, p);
    if (!s.x.contains(original_carrier(s.k1, at.simplex))) throw Error(ErrorCode::OutsideDomain, "point is not in X");
    Vec out = p;
    for (auto it = s.deleted.rbegin(); it != s.deleted.rend(); ++it) out = tau_at(s, index, *it, out);
    return out;
}

bool in_image_closure(const Standardization& s, const Vec& p) {
    Located at = locate_in(CarrierIndex(s.k1.complex), p);
    for (const auto& sigma : s.deleted) {
        auto [t0, far] = weights_for(s, sigma, at);
        if (t0 > far) return false;
    }
    return true;
}

bool in_image(const Standardization& s, const Vec& p) {
    Located at = locate_in(CarrierIndex(s.k1.complex), p);
    for (const auto& sigma : s.deleted) {
        auto [t0, far] = weights_for(s, sigma, at);
        if (!(t0 < far || t0.is_zero())) return false;
    }
    return true;
}

// ---- f_K --------------------------------------------------------------------

FKFunction fk_function(const SimplicialComplex& k, const OpenCellSet& w) {
    check_belongs(w, k);
    FKFunction f{barycentric_subdivision(k), {}, {}};
    f.w = lift(f.sub, w);
    const SimplexSet cl = closure(w);
    for (const auto& [v, rho] : f.sub.simplex_of) {
        FrontierClass c = FrontierClass::Outside;
        if (w.contains(rho)) {
            c = FrontierClass::Inside;
        } else if (cl.count(rho)) {
            c = FrontierClass::Boundary;
        }
        f.cls.emplace(v, c);
    }
    return f;
}

namespace {

std::pair<Scalar, Scalar> fk_form(FrontierClass c) {
    switch (c) {
        case FrontierClass::Outside: return {Scalar(1), Scalar(1)};
        case FrontierClass::Inside: return {Scalar(0), Scalar(1)};
        case FrontierClass::Boundary: break;
    }
    return {Scalar(0), Scalar(0)};
}

}  // namespace

Scalar fk_eval(const FKFunction& f, const Vec& p) {
    Located at = locate_in(CarrierIndex(f.sub.complex), p);
    Scalar num = 0, den = 0;
    for (std::size_t i = 0; i < at.simplex.size(); ++i) {
        auto [n, d] = fk_form(f.cls.at(at.simplex[i]));
        num += n * at.coords[i];
        den += d * at.coords[i];
    }
    if (den.is_zero()) throw Error(ErrorCode::UndefinedOnSimplex, "f_K is undefined on " + to_string(at.simplex));
    return num / den;
}

FKLevels fk_levels(const FKFunction& f, const std::vector<Scalar>& values) {
    FKLevels out;
    for (const auto& [v, c] : f.cls) out.form.emplace(v, fk_form(c));
    CellComplex cells = CellComplex::from_simplicial(f.sub.complex);
    for (const auto& c : values) {
        std::map<VertexId, Scalar> phi;
        for (const auto& [v, p] : cells.vertices()) phi.emplace(v, out.form.at(v).first - c * out.form.at(v).second);
        CutResult res = cut_cells(cells, phi);
        for (const auto& x : res.created) {
            const auto& a = out.form.at(x.a);
            const auto& b = out.form.at(x.b);
            out.form.emplace(x.id, std::make_pair(a.first + (b.first - a.first) * x.t, a.second + (b.second - a.second) * x.t));
        }
        cells = std::move(res.cells);
    }
    out.complex = simplicialize(cells);
    out.levels.resize(values.size());
    out.sublevels.resize(values.size());
    for (const auto& s : out.complex.simplices()) {
        Scalar num = 0, den = 0;
        for (auto v : s) {
            num += out.form.at(v).first;
            den += out.form.at(v).second;
        }
        if (den.is_zero()) {
            out.undefined.cells.insert(s);
            continue;
        }
        for (std::size_t i = 0; i < values.size(); ++i) {
            Scalar g = num - values[i] * den;
            if (g.is_zero()) out.levels[i].cells.insert(s);
            if (g.sign() < 0) out.sublevels[i].cells.insert(s);
        }
    }
    return out;
}

bool fk_zero_set_is_w(const FKFunction& f) {
    for (const auto& s : f.sub.complex.simplices()) {
        bool outside = false, defined = false;
        for (auto v : s) {
            outside |= f.cls.at(v) == FrontierClass::Outside;
            defined |= f.cls.at(v) != FrontierClass::Boundary;
        }
        bool zero = defined && !outside;
        if (zero != f.w.contains(s)) return false;
    }
    return true;
}

// ---- collars ----------------------------------------------------------------

bool is_standard_presentation(const SimplicialComplex& k, const OpenCellSet& y) {
    check_belongs(y, k);
    if (y.cells.empty()) return false;
    const SimplexSet cl = closure(y);
    std::vector<Simplex> vs;
    for (const auto& c : cl) {
        if (!y.contains(c)) vs.push_back(c);
    }
    if (vs.empty()) return true;
    SimplicialComplex c = k.generated_by(std::vector<Simplex>(cl.begin(), cl.end()));
    const int d = c.dim();
    for (const auto& s : c.maximal_simplices()) {
        if (simplex_dim(s) != d) return false;
    }
    SimplicialComplex v = k.generated_by(vs);
    if (v.size() != vs.size()) return false;  // V is not closed
    SimplicialComplex bd = boundary_complex(c);
    for (const auto& s : v.maximal_simplices()) {
        if (simplex_dim(s) != d - 1 || !bd.contains(s)) return false;
    }
    return true;
}

namespace {

Collar build_collar(const SimplicialComplex& host, const OpenCellSet& y) {
    const SimplexSet cl = closure(y);
    SimplicialComplex c = host.generated_by(std::vector<Simplex>(cl.begin(), cl.end()));
    OpenCellSet v0;
    for (const auto& s : cl) {
        if (!y.contains(s)) v0.cells.insert(s);
    }
    Collar out;
    out.k1 = barycentric_subdivision(c);
    out.k2 = barycentric_subdivision(out.k1.complex);
    const SimplicialComplex& k2 = out.k2.complex;
    OpenCellSet v1 = lift(out.k1, v0);
    out.y = lift(out.k2, lift(out.k1, y));
    out.v = lift(out.k2, v1);
    for (const auto& s : v1.cells) out.designated.insert(out.k2.barycenter_of.at(s));

    const int n = k2.ambient_dim();
    const Backend b = k2.backend();
    auto lifted = [&](const Vec& p, const Scalar& t) {
        Vec x(n + 1);
        x.head(n) = p;
        x(n) = t.with_backend(b);
        return x;
    };
    out.top_offset = k2.next_vertex_id();
    out.z = SimplicialComplex(n + 1, b);
    out.base = SimplicialComplex(n + 1, b);
    for (const auto& [id, p] : k2.vertices()) {
        out.z.add_vertex(id, lifted(p, Scalar(0)));
        out.base.add_vertex(id, lifted(p, Scalar(0)));
    }
    for (const auto& s : k2.simplices()) {
        out.z.add_simplex_raw(s);
        out.base.add_simplex_raw(s);
    }
    if (out.v.cells.empty()) return out;

    // closure(V) relabelled 0..m-1, its prism cut along t = phi(y), the part below kept
    SimplicialComplex clv = k2.generated_by(std::vector<Simplex>(out.v.cells.begin(), out.v.cells.end()));
    std::vector<VertexId> orig;
    std::map<VertexId, VertexId> index;
    for (const auto& [id, p] : clv.vertices()) {
        index.emplace(id, static_cast<VertexId>(orig.size()));
        orig.push_back(id);
    }
    const auto m = static_cast<VertexId>(orig.size());
    SimplicialComplex r(n, b);
    for (std::size_t i = 0; i < orig.size(); ++i) r.add_vertex(static_cast<VertexId>(i), clv.point(orig[i]));
    for (const auto& s : clv.simplices()) {
        std::vector<VertexId> ids;
        for (auto v : s) ids.push_back(index.at(v));
        r.add_simplex_raw(make_simplex(ids));
    }
    CellComplex pr = prism(r);
    std::map<VertexId, Scalar> psi;
    for (const auto& [id, p] : pr.vertices()) {
        VertexId base_id = orig[static_cast<std::size_t>(id % m)];
        Scalar phi = out.designated.count(base_id) ? 1 : 0;
        psi.emplace(id, (id < m ? Scalar(0) : Scalar(1)) - phi);
    }
    CutResult cut = cut_cells(pr, psi);
    for (const auto& x : cut.created) psi.emplace(x.id, psi.at(x.a) + (psi.at(x.b) - psi.at(x.a)) * x.t);
    CellComplex below(n + 1, b);
    std::map<std::size_t, std::size_t> kept;
    for (std::size_t i = 0; i < cut.cells.cells().size(); ++i) {
        const Cell& cell = cut.cells.cell(i);
        bool ok = std::all_of(cell.vertices.begin(), cell.vertices.end(), [&](VertexId v) { return psi.at(v).sign() <= 0; });
        if (!ok) continue;
        for (auto v : cell.vertices) below.add_vertex(v, cut.cells.point(v));
        std::vector<std::size_t> facets;
        for (auto f : cell.facets) facets.push_back(kept.at(f));
        kept.emplace(i, below.add_cell(cell.vertices, cell.dim, facets));
    }
    SimplicialComplex zv = simplicialize(below);
    VertexId fresh = out.top_offset + k2.next_vertex_id();
    std::map<VertexId, VertexId> zid;
    for (const auto& [id, p] : zv.vertices()) {
        VertexId to = id < m ? orig[static_cast<std::size_t>(id)]
                      : id < 2 * m ? orig[static_cast<std::size_t>(id - m)] + out.top_offset
                                   : fresh++;
        zid.emplace(id, to);
        out.z.add_vertex(to, p);
    }
    for (const auto& s : zv.simplices()) {
        std::vector<VertexId> ids;
        for (auto v : s) ids.push_back(zid.at(v));
        out.z.add_simplex_raw(make_simplex(ids));
    }
    for (const auto& s : clv.simplices()) {
        std::vector<VertexId> cell(s.begin(), s.end());
        for (auto v : s) {
            if (out.designated.count(v)) cell.push_back(v + out.top_offset);
        }
        std::sort(cell.begin(), cell.end());
        out.correspondence.emplace_back(s, std::move(cell));
    }
    return out;
}

}  // namespace

Collar collar(const SimplicialComplex& k, const OpenCellSet& y) {
    if (!is_standard_presentation(k, y)) throw Error(ErrorCode::NotStandardPresentation, "Y is outside the accepted standard class");
    return build_collar(k, y);
}

Collar collar(const Standardization& s) {
    if (s.y.cells.empty()) throw Error(ErrorCode::NotStandardPresentation, "empty image");
    return build_collar(s.q, s.y);
}

SimplicialComplex collar_slice(const Collar& c, const Scalar& delta) {
    const int n = c.z.ambient_dim();
    Vec l = zero_vec(n);
    l(n - 1) = Scalar(1);
    SimplicialComplex cut = hyperplane_cut(c.z, l, delta);
    std::set<VertexId> level;
    for (const auto& [id, p] : cut.vertices()) {
        if (p(n - 1) == delta) level.insert(id);
    }
    return induced_subcomplex(cut, level);
}

SimplicialComplex collar_core(const Collar& c) { return induced_subcomplex(c.k2.complex, c.designated); }

}  // namespace plforge
