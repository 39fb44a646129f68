#include "plforge/linalg.hpp"

#include <algorithm>

namespace plforge {

Vec zero_vec(Eigen::Index n, Backend b) {
    Vec v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = Scalar(mpq_class(0), b);
    return v;
}

Vec with_backend(const Vec& v, Backend b) {
    Vec out(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = v(i).with_backend(b);
    return out;
}

bool all_rational(const Vec& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (!v(i).is_rational_value()) return false;
    }
    return true;
}

Scalar dot(const Vec& a, const Vec& b) {
    Scalar s;
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        if (a(i).is_zero() || b(i).is_zero()) continue;
        s += a(i) * b(i);
    }
    return s;
}

std::vector<Eigen::Index> row_reduce(Mat& m) {
    std::vector<Eigen::Index> pivots;
    Eigen::Index row = 0;
    for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
        Eigen::Index piv = -1;
        for (Eigen::Index r = row; r < m.rows(); ++r) {
            if (!m(r, col).is_zero()) {
                piv = r;
                break;
            }
        }
        if (piv < 0) continue;
        if (piv != row) m.row(piv).swap(m.row(row));
        Scalar inv = Scalar(1) / m(row, col);
        for (Eigen::Index c = col; c < m.cols(); ++c) {
            if (!m(row, c).is_zero()) m(row, c) *= inv;
        }
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
            if (r == row || m(r, col).is_zero()) continue;
            Scalar f = m(r, col);
            for (Eigen::Index c = col; c < m.cols(); ++c) {
                if (!m(row, c).is_zero()) m(r, c) -= f * m(row, c);
            }
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

Eigen::Index rank(Mat m) { return static_cast<Eigen::Index>(row_reduce(m).size()); }

Scalar determinant(Mat m) {
    const Eigen::Index n = m.rows();
    Scalar det(1);
    for (Eigen::Index col = 0; col < n; ++col) {
        Eigen::Index piv = -1;
        for (Eigen::Index r = col; r < n; ++r) {
            if (!m(r, col).is_zero()) {
                piv = r;
                break;
            }
        }
        if (piv < 0) return Scalar(0);
        if (piv != col) {
            m.row(piv).swap(m.row(col));
            det = -det;
        }
        det *= m(col, col);
        for (Eigen::Index r = col + 1; r < n; ++r) {
            if (m(r, col).is_zero()) continue;
            Scalar f = m(r, col) / m(col, col);
            for (Eigen::Index c = col; c < n; ++c) {
                if (!m(col, c).is_zero()) m(r, c) -= f * m(col, c);
            }
        }
    }
    return det;
}

std::vector<Vec> nullspace(Mat m) {
    auto pivots = row_reduce(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<Vec> basis;
    for (Eigen::Index free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        Vec v = zero_vec(m.cols());
        v(free) = Scalar(1);
        for (std::size_t r = 0; r < pivots.size(); ++r) v(pivots[r]) = -m(r, free);
        basis.push_back(v);
    }
    return basis;
}

Eigen::Index affine_dimension(const std::vector<Vec>& points) {
    if (points.empty()) return -1;
    if (points.size() == 1) return 0;
    Mat d(points[0].size(), static_cast<Eigen::Index>(points.size() - 1));
    for (std::size_t i = 1; i < points.size(); ++i) d.col(i - 1) = points[i] - points[0];
    return rank(d);
}

bool affinely_independent(const std::vector<Vec>& points) {
    return affine_dimension(points) == static_cast<Eigen::Index>(points.size()) - 1;
}

std::optional<std::vector<Scalar>> barycentric(const std::vector<Vec>& vertices, const Vec& p) {
    const Eigen::Index k = static_cast<Eigen::Index>(vertices.size()) - 1;
    const Eigen::Index n = p.size();
    if (k == 0) {
        if (p == vertices[0]) return std::vector<Scalar>{Scalar(1)};
        return std::nullopt;
    }
    Mat aug(n, k + 1);
    for (Eigen::Index j = 0; j < k; ++j) aug.col(j) = vertices[j + 1] - vertices[0];
    aug.col(k) = p - vertices[0];
    auto pivots = row_reduce(aug);
    if (!pivots.empty() && pivots.back() == k) return std::nullopt;  // inconsistent
    std::vector<Scalar> lambda(k + 1);
    Scalar rest(1);
    for (std::size_t r = 0; r < pivots.size(); ++r) {
        lambda[pivots[r] + 1] = aug(r, k);
        rest -= aug(r, k);
    }
    lambda[0] = rest;
    return lambda;
}

Vec barycenter(const std::vector<Vec>& points) {
    Vec s = points[0];
    for (std::size_t i = 1; i < points.size(); ++i) s += points[i];
    Scalar inv = Scalar(mpq_class(1, static_cast<long>(points.size())));
    for (Eigen::Index i = 0; i < s.size(); ++i) s(i) *= inv;
    return s;
}

namespace {

struct Tableau {
    Mat t;                            // rows: constraints, last column: rhs
    std::vector<Eigen::Index> basis;  // basic column per row

    void pivot(Eigen::Index row, Eigen::Index col, Vec& obj) {
        Scalar inv = Scalar(1) / t(row, col);
        for (Eigen::Index c = 0; c < t.cols(); ++c) {
            if (!t(row, c).is_zero()) t(row, c) *= inv;
        }
        for (Eigen::Index r = 0; r < t.rows(); ++r) {
            if (r == row || t(r, col).is_zero()) continue;
            Scalar f = t(r, col);
            for (Eigen::Index c = 0; c < t.cols(); ++c) {
                if (!t(row, c).is_zero()) t(r, c) -= f * t(row, c);
            }
        }
        if (!obj(col).is_zero()) {
            Scalar f = obj(col);
            for (Eigen::Index c = 0; c < t.cols(); ++c) {
                if (!t(row, c).is_zero()) obj(c) -= f * t(row, c);
            }
        }
        basis[row] = col;
    }

    // obj holds reduced costs (negative = improving for maximization); obj(last) = value.
    bool optimize(Vec& obj, Eigen::Index usable_cols) {
        while (true) {
            Eigen::Index enter = -1;
            for (Eigen::Index c = 0; c < usable_cols; ++c) {
                if (obj(c).sign() < 0) {
                    enter = c;
                    break;
                }
            }
            if (enter < 0) return true;
            Eigen::Index leave = -1;
            Scalar best;
            const Eigen::Index rhs = t.cols() - 1;
            for (Eigen::Index r = 0; r < t.rows(); ++r) {
                if (t(r, enter).sign() <= 0) continue;
                Scalar ratio = t(r, rhs) / t(r, enter);
                if (leave < 0 || ratio < best || (ratio == best && basis[r] < basis[leave])) {
                    leave = r;
                    best = ratio;
                }
            }
            if (leave < 0) return false;
            pivot(leave, enter, obj);
        }
    }
};

}  // namespace

LpResult lp_maximize(const Mat& a, const Vec& b, const Vec& c) {
    const Eigen::Index m = a.rows();
    const Eigen::Index n = a.cols();
    Tableau tab;
    tab.t = Mat(m, n + m + 1);
    for (Eigen::Index r = 0; r < m; ++r) {
        bool flip = b(r).sign() < 0;
        for (Eigen::Index j = 0; j < n; ++j) tab.t(r, j) = flip ? -a(r, j) : a(r, j);
        for (Eigen::Index j = 0; j < m; ++j) tab.t(r, n + j) = Scalar(j == r ? 1 : 0);
        tab.t(r, n + m) = flip ? -b(r) : b(r);
        tab.basis.push_back(n + r);
    }
    // Phase 1: maximize -(sum of artificials).
    Vec obj(n + m + 1);
    for (Eigen::Index j = 0; j < n + m + 1; ++j) {
        Scalar s;
        if (j < n || j == n + m) {
            for (Eigen::Index r = 0; r < m; ++r) s -= tab.t(r, j);
        }
        obj(j) = s;
    }
    tab.optimize(obj, n + m);
    LpResult result;
    if (obj(n + m).sign() != 0) {
        result.status = LpResult::Status::Infeasible;
        return result;
    }
    // Drive artificials out of the basis; drop redundant rows.
    for (Eigen::Index r = 0; r < tab.t.rows(); ++r) {
        if (tab.basis[r] < n) continue;
        Eigen::Index col = -1;
        for (Eigen::Index j = 0; j < n; ++j) {
            if (!tab.t(r, j).is_zero()) {
                col = j;
                break;
            }
        }
        if (col >= 0) {
            tab.pivot(r, col, obj);
        } else {
            Mat reduced(tab.t.rows() - 1, tab.t.cols());
            for (Eigen::Index i = 0, k = 0; i < tab.t.rows(); ++i) {
                if (i != r) reduced.row(k++) = tab.t.row(i);
            }
            tab.t = reduced;
            tab.basis.erase(tab.basis.begin() + r);
            --r;
        }
    }
    // Phase 2.
    for (Eigen::Index j = 0; j < n + m + 1; ++j) {
        Scalar s = j < n ? -c(j) : Scalar(0);
        for (Eigen::Index r = 0; r < tab.t.rows(); ++r) {
            Eigen::Index bcol = tab.basis[r];
            if (bcol < n && !c(bcol).is_zero()) s += c(bcol) * tab.t(r, j);
        }
        obj(j) = s;
    }
    if (!tab.optimize(obj, n)) {
        result.status = LpResult::Status::Unbounded;
        return result;
    }
    result.status = LpResult::Status::Optimal;
    result.x.assign(n, Scalar(0));
    for (Eigen::Index r = 0; r < tab.t.rows(); ++r) {
        if (tab.basis[r] < n) result.x[tab.basis[r]] = tab.t(r, n + m);
    }
    Scalar value;
    for (Eigen::Index j = 0; j < n; ++j) value += c(j) * result.x[j];
    result.value = value;
    return result;
}

}  // namespace plforge
