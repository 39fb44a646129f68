#include "plforge/extend.hpp"

#include <algorithm>

#include "plforge/subdivide.hpp"

namespace plforge {

AbstractComplex to_abstract(const SimplicialComplex& k) {
    AbstractComplex a;
    for (const auto& [id, p] : k.vertices()) a.labels.insert(id);
    a.simplices = k.simplices();
    return a;
}

AbstractMap to_abstract(const PLMap& f) {
    if (!is_simplicial(f)) throw Error(ErrorCode::NotAffineOnSimplex, "map is not simplicial");
    AbstractMap out{to_abstract(f.domain), to_abstract(f.target), {}};
    for (const auto& [id, p] : f.domain.vertices()) out.vertex_map.emplace(id, image_simplex(f, {id})[0]);
    return out;
}

SimplicialComplex realize_rational(const AbstractComplex& a) {
    const int m = static_cast<int>(a.labels.size());
    SimplicialComplex k(m, Backend::Rational);
    int i = 0;
    for (auto id : a.labels) {
        Vec e = zero_vec(m);
        e(i++) = Scalar(1);
        k.add_vertex(id, e);
    }
    for (const auto& s : a.simplices) k.add_simplex(s);
    return k;
}

PLMap realize_rational(const AbstractMap& f) {
    PLMap out{realize_rational(f.domain), realize_rational(f.target), {}};
    for (const auto& [v, w] : f.vertex_map) out.image.emplace(v, out.target.point(w));
    return out;
}

SimplicialComplex extend_field(const SimplicialComplex& k) { return k.with_backend(Backend::Epsilon); }

PLMap extend_field(const PLMap& f) {
    PLMap out{extend_field(f.domain), extend_field(f.target), {}};
    for (const auto& [id, p] : f.image) out.image.emplace(id, with_backend(p, Backend::Epsilon));
    return out;
}

std::size_t non_rational_vertices(const SimplicialComplex& k) {
    return std::count_if(k.vertices().begin(), k.vertices().end(), [](const auto& e) { return !all_rational(e.second); });
}

// ---- rectification ----------------------------------------------------------

MoveRegion move_region(const SimplicialComplex& m, const SimplicialComplex& k, VertexId v) {
    MoveRegion r{v, {}, {}};
    const Vec& p = m.point(v);
    auto tau = CarrierIndex(extend_field(k)).find(p);
    if (!tau) throw Error(ErrorCode::NotASubdivision, "vertex " + std::to_string(v) + " is outside |K|");
    for (auto w : *tau) r.tau.push_back(with_backend(k.point(w), Backend::Epsilon));
    for (const auto& s : star(m, v).maximal_simplices()) {
        auto pts = m.points(s);
        std::size_t at = std::find(s.begin(), s.end(), v) - s.begin();
        std::vector<Scalar> row;
        for (const auto& t : r.tau) {
            auto lam = barycentric(pts, t);
            if (!lam) throw Error(ErrorCode::NotASubdivision, "carrier of vertex " + std::to_string(v) + " leaves " + to_string(s));
            row.push_back((*lam)[at]);
        }
        r.rows.push_back(std::move(row));
    }
    return r;
}

namespace {

bool admissible_weights(const MoveRegion& r, const std::vector<Scalar>& mu) {
    for (const auto& x : mu) {
        if (x.sign() <= 0) return false;
    }
    for (const auto& row : r.rows) {
        Scalar lam = 0;
        for (std::size_t j = 0; j < mu.size(); ++j) lam += row[j] * mu[j];
        if (lam.sign() <= 0) return false;
    }
    return true;
}

Vec point_of(const MoveRegion& r, const std::vector<Scalar>& mu) {
    Vec x = zero_vec(r.tau[0].size());
    for (std::size_t j = 0; j < mu.size(); ++j) x += with_backend(r.tau[j], Backend::Rational) * mu[j];
    return x;
}

std::optional<std::vector<Scalar>> standard_weights(const std::vector<Scalar>& xs) {
    std::vector<Scalar> out;
    for (const auto& x : xs) {
        auto s = standard_part(x);
        if (!s) return std::nullopt;
        out.emplace_back(*s);
    }
    return out;
}

// Positive compositions of d into k parts, in lexicographic order.
bool search_grid(const MoveRegion& r, long d, std::vector<long>& parts, long left, std::vector<Scalar>& found) {
    const std::size_t k = r.tau.size();
    if (parts.size() + 1 == k) {
        parts.push_back(left);
        std::vector<Scalar> mu;
        for (auto n : parts) mu.push_back(Scalar(mpq_class(n, d)));
        parts.pop_back();
        if (admissible_weights(r, mu)) {
            found = std::move(mu);
            return true;
        }
        return false;
    }
    for (long n = 1; n <= left - static_cast<long>(k - parts.size() - 1); ++n) {
        parts.push_back(n);
        bool ok = search_grid(r, d, parts, left - n, found);
        parts.pop_back();
        if (ok) return true;
    }
    return false;
}

// Weights maximizing the smallest slack of the region's constraints.
std::optional<std::vector<Scalar>> lp_center(const MoveRegion& r) {
    const std::size_t k = r.tau.size(), rows = k + r.rows.size();
    const Eigen::Index n = static_cast<Eigen::Index>(k + 1 + rows);  // mu, t, slacks
    const Scalar zero = Scalar(0).with_backend(Backend::Epsilon);
    Mat a = Mat::Constant(static_cast<Eigen::Index>(rows + 1), n, zero);
    Vec b = zero_vec(static_cast<Eigen::Index>(rows + 1), Backend::Epsilon);
    for (std::size_t i = 0; i < rows; ++i) {
        auto ri = static_cast<Eigen::Index>(i);
        if (i < k) {
            a(ri, ri) = Scalar(1);
        } else {
            for (std::size_t j = 0; j < k; ++j) a(ri, static_cast<Eigen::Index>(j)) = r.rows[i - k][j];
        }
        a(ri, static_cast<Eigen::Index>(k)) = Scalar(-1);
        a(ri, static_cast<Eigen::Index>(k + 1 + i)) = Scalar(-1);
    }
    for (std::size_t j = 0; j < k; ++j) a(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(j)) = Scalar(1);
    b(static_cast<Eigen::Index>(rows)) = Scalar(1);
    Vec c = zero_vec(n, Backend::Epsilon);
    c(static_cast<Eigen::Index>(k)) = Scalar(1);
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) a(i, j) = a(i, j).with_backend(Backend::Epsilon);
    }
    auto res = lp_maximize(a, b, c);
    if (res.status != LpResult::Status::Optimal || res.value.sign() <= 0) return std::nullopt;
    return std::vector<Scalar>(res.x.begin(), res.x.begin() + static_cast<long>(k));
}

}  // namespace

bool admissible(const MoveRegion& r, const Vec& x) {
    if (!all_rational(x)) return false;
    auto mu = barycentric(r.tau, with_backend(x, Backend::Epsilon));
    return mu && admissible_weights(r, *mu);
}

std::optional<Vec> admissible_point(const MoveRegion& r, const Vec& from) {
    Vec st(from.size());
    bool bounded = true;
    for (Eigen::Index i = 0; i < from.size(); ++i) {
        auto s = standard_part(from(i));
        if (!s) {
            bounded = false;
            break;
        }
        st(i) = Scalar(*s);
    }
    if (bounded && admissible(r, st)) return st;

    constexpr long max_denominator = 24;
    for (long d = static_cast<long>(r.tau.size()); d <= max_denominator; ++d) {
        std::vector<long> parts;
        std::vector<Scalar> mu;
        if (search_grid(r, d, parts, d, mu)) return point_of(r, mu);
    }
    if (auto center = lp_center(r)) {
        if (auto mu = standard_weights(*center); mu && admissible_weights(r, *mu)) return point_of(r, *mu);
    }
    return std::nullopt;
}

Rectification rectify(const SimplicialComplex& m, const SimplicialComplex& k, const std::optional<SimplicialComplex>& fixed) {
    const SimplicialComplex kr = extend_field(k);
    SimplicialComplex current = m.with_backend(Backend::Epsilon);
    if (!is_subdivision(current, kr)) throw Error(ErrorCode::NotASubdivision, "input does not subdivide the extended base");
    std::set<VertexId> frozen;
    if (fixed) {
        if (!is_subcomplex(*fixed, m)) throw Error(ErrorCode::NotASubcomplex, "fixed complex is not a subcomplex");
        for (const auto& [id, p] : fixed->vertices()) {
            if (!all_rational(p)) throw Error(ErrorCode::FieldMismatch, "fixed vertex " + std::to_string(id) + " is not rational");
            frozen.insert(id);
        }
    }
    Rectification out;
    while (non_rational_vertices(current) > 0) {
        bool moved = false;
        for (const auto& [v, p] : current.vertices()) {
            if (all_rational(p) || frozen.count(v)) continue;
            auto region = move_region(current, k, v);
            auto x = admissible_point(region, p);
            if (!x) continue;
            Vec to = with_backend(*x, Backend::Epsilon);
            out.schedule.steps.push_back({v, p, to, current});
            current = apply_move(current, v, to);
            moved = true;
            break;
        }
        if (!moved) throw Error(ErrorCode::NoAdmissibleVertex, "no non-rational vertex has a rational admissible target");
    }
    out.complex = current.with_backend(Backend::Rational);
    return out;
}

}  // namespace plforge
