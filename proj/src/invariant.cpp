#include "plforge/invariant.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

namespace plforge {

mpz_class IntMatrix::at(int r, int c) const {
    auto it = entries[r].find(c);
    return it == entries[r].end() ? mpz_class(0) : it->second;
}

void IntMatrix::set(int r, int c, const mpz_class& v) {
    if (v == 0) {
        entries[r].erase(c);
    } else {
        entries[r][c] = v;
    }
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
    IntMatrix out(a.rows, b.cols);
    for (int r = 0; r < a.rows; ++r) {
        std::map<int, mpz_class> acc;
        for (const auto& [k, v] : a.entries[r]) {
            for (const auto& [c, w] : b.entries[k]) acc[c] += v * w;
        }
        for (const auto& [c, v] : acc) out.set(r, c, v);
    }
    return out;
}

bool is_zero(const IntMatrix& m) {
    return std::all_of(m.entries.begin(), m.entries.end(), [](const auto& row) { return row.empty(); });
}

ChainComplex boundary_matrices(const SimplicialComplex& k) {
    ChainComplex cc;
    const int dim = k.dim();
    cc.basis.resize(dim + 1);
    for (const auto& s : k.simplices()) cc.basis[simplex_dim(s)].push_back(s);
    cc.boundary.resize(dim + 1);
    for (int d = 1; d <= dim; ++d) {
        std::map<Simplex, int> row_of;
        for (std::size_t i = 0; i < cc.basis[d - 1].size(); ++i) row_of.emplace(cc.basis[d - 1][i], static_cast<int>(i));
        IntMatrix m(static_cast<int>(cc.basis[d - 1].size()), static_cast<int>(cc.basis[d].size()));
        for (std::size_t j = 0; j < cc.basis[d].size(); ++j) {
            const Simplex& s = cc.basis[d][j];
            for (std::size_t i = 0; i < s.size(); ++i) {
                Simplex f = s;
                f.erase(f.begin() + static_cast<long>(i));
                m.set(row_of.at(f), static_cast<int>(j), i % 2 == 0 ? 1 : -1);
            }
        }
        cc.boundary[d] = std::move(m);
    }
    return cc;
}

// ---- Smith reduction --------------------------------------------------------

namespace {

class SparseReducer {
  public:
    explicit SparseReducer(IntMatrix m) : rows_(std::move(m.entries)), cols_(m.cols) {
        for (int r = 0; r < static_cast<int>(rows_.size()); ++r) {
            for (const auto& [c, v] : rows_[r]) cols_[c].insert(r);
        }
    }

    std::vector<mpz_class> run() {
        std::vector<mpz_class> diag;
        while (auto piv = choose_pivot()) {
            auto [r, c] = *piv;
            diag.push_back(abs(reduce(r, c)));
        }
        return diag;
    }

  private:
    std::optional<std::pair<int, int>> choose_pivot() const {
        std::optional<std::pair<int, int>> best;
        mpz_class best_abs;
        for (int r = 0; r < static_cast<int>(rows_.size()); ++r) {
            for (const auto& [c, v] : rows_[r]) {
                mpz_class a = abs(v);
                if (!best || a < best_abs) {
                    best = {r, c};
                    best_abs = a;
                    if (best_abs == 1) return best;
                }
            }
        }
        return best;
    }

    void set(int r, int c, const mpz_class& v) {
        if (v == 0) {
            rows_[r].erase(c);
            cols_[c].erase(r);
        } else {
            rows_[r][c] = v;
            cols_[c].insert(r);
        }
    }

    // row dst -= q * row src
    void row_op(int dst, int src, const mpz_class& q) {
        std::vector<std::pair<int, mpz_class>> src_row(rows_[src].begin(), rows_[src].end());
        for (const auto& [c, v] : src_row) {
            auto it = rows_[dst].find(c);
            mpz_class cur = it == rows_[dst].end() ? mpz_class(0) : it->second;
            set(dst, c, cur - q * v);
        }
    }

    // col dst -= q * col src
    void col_op(int dst, int src, const mpz_class& q) {
        std::vector<int> src_rows(cols_[src].begin(), cols_[src].end());
        for (int r : src_rows) {
            mpz_class v = rows_[r].at(src);
            auto it = rows_[r].find(dst);
            mpz_class cur = it == rows_[r].end() ? mpz_class(0) : it->second;
            set(r, dst, cur - q * v);
        }
    }

    mpz_class reduce(int r, int c) {
        while (true) {
            mpz_class p = rows_[r].at(c);
            bool moved = false;
            std::vector<int> others(cols_[c].begin(), cols_[c].end());
            for (int r2 : others) {
                if (r2 == r) continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), rows_[r2].at(c).get_mpz_t(), p.get_mpz_t());
                row_op(r2, r, q);
                if (rows_[r2].count(c)) {
                    r = r2;
                    moved = true;
                    break;
                }
            }
            if (moved) continue;
            std::vector<int> row_cols;
            for (const auto& [c2, v] : rows_[r]) {
                if (c2 != c) row_cols.push_back(c2);
            }
            for (int c2 : row_cols) {
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), rows_[r].at(c2).get_mpz_t(), p.get_mpz_t());
                col_op(c2, c, q);
                if (rows_[r].count(c2)) {
                    c = c2;
                    moved = true;
                    break;
                }
            }
            if (moved) continue;
            set(r, c, 0);
            return p;
        }
    }

    std::vector<std::map<int, mpz_class>> rows_;
    std::vector<std::set<int>> cols_;
};

void divisibility_chain(std::vector<mpz_class>& d) {
    for (std::size_t i = 0; i < d.size(); ++i) {
        for (std::size_t j = i + 1; j < d.size(); ++j) {
            mpz_class g = gcd(d[i], d[j]);
            mpz_class l = d[i] / g * d[j];
            d[i] = g;
            d[j] = l;
        }
    }
}

}  // namespace

std::vector<mpz_class> smith_invariants(IntMatrix m) {
    auto d = SparseReducer(std::move(m)).run();
    std::sort(d.begin(), d.end());
    divisibility_chain(d);
    return d;
}

SmithForm smith_normal_form(const IntMatrix& a) {
    const int m = a.rows, n = a.cols;
    std::vector<std::vector<mpz_class>> x(m, std::vector<mpz_class>(n)), u(m, std::vector<mpz_class>(m)),
        v(n, std::vector<mpz_class>(n));
    for (int r = 0; r < m; ++r) {
        for (int c = 0; c < n; ++c) x[r][c] = a.at(r, c);
        u[r][r] = 1;
    }
    for (int c = 0; c < n; ++c) v[c][c] = 1;
    auto swap_rows = [&](int i, int j) {
        std::swap(x[i], x[j]);
        std::swap(u[i], u[j]);
    };
    auto swap_cols = [&](int i, int j) {
        for (auto& row : x) std::swap(row[i], row[j]);
        for (auto& row : v) std::swap(row[i], row[j]);
    };
    auto add_row = [&](int dst, int src, const mpz_class& q) {  // row dst += q row src
        for (int c = 0; c < n; ++c) x[dst][c] += q * x[src][c];
        for (int c = 0; c < m; ++c) u[dst][c] += q * u[src][c];
    };
    auto add_col = [&](int dst, int src, const mpz_class& q) {
        for (int r = 0; r < m; ++r) x[r][dst] += q * x[r][src];
        for (int r = 0; r < n; ++r) v[r][dst] += q * v[r][src];
    };
    for (int t = 0; t < std::min(m, n); ++t) {
        while (true) {
            int pr = -1, pc = -1;
            for (int r = t; r < m; ++r) {
                for (int c = t; c < n; ++c) {
                    if (x[r][c] != 0 && (pr < 0 || abs(x[r][c]) < abs(x[pr][pc]))) {
                        pr = r;
                        pc = c;
                    }
                }
            }
            if (pr < 0) break;
            swap_rows(t, pr);
            swap_cols(t, pc);
            bool dirty = false;
            for (int r = t + 1; r < m; ++r) {
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), x[r][t].get_mpz_t(), x[t][t].get_mpz_t());
                add_row(r, t, -q);
                dirty |= x[r][t] != 0;
            }
            for (int c = t + 1; c < n; ++c) {
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), x[t][c].get_mpz_t(), x[t][t].get_mpz_t());
                add_col(c, t, -q);
                dirty |= x[t][c] != 0;
            }
            if (dirty) continue;
            int bad = -1;
            for (int r = t + 1; r < m && bad < 0; ++r) {
                for (int c = t + 1; c < n; ++c) {
                    if (x[r][c] % x[t][t] != 0) {
                        bad = r;
                        break;
                    }
                }
            }
            if (bad >= 0) {
                add_row(t, bad, 1);
                continue;
            }
            if (x[t][t] < 0) {
                for (int c = 0; c < n; ++c) x[t][c] = -x[t][c];
                for (int c = 0; c < m; ++c) u[t][c] = -u[t][c];
            }
            break;
        }
    }
    SmithForm out{IntMatrix(m, m), IntMatrix(m, n), IntMatrix(n, n)};
    for (int r = 0; r < m; ++r) {
        for (int c = 0; c < m; ++c) out.u.set(r, c, u[r][c]);
        for (int c = 0; c < n; ++c) out.d.set(r, c, x[r][c]);
    }
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) out.v.set(r, c, v[r][c]);
    }
    return out;
}

int rational_rank(const IntMatrix& m) {
    std::vector<std::vector<mpq_class>> x(m.rows, std::vector<mpq_class>(m.cols));
    for (int r = 0; r < m.rows; ++r) {
        for (const auto& [c, v] : m.entries[r]) x[r][c] = v;
    }
    int rank = 0;
    for (int c = 0; c < m.cols && rank < m.rows; ++c) {
        int piv = -1;
        for (int r = rank; r < m.rows; ++r) {
            if (x[r][c] != 0) {
                piv = r;
                break;
            }
        }
        if (piv < 0) continue;
        std::swap(x[piv], x[rank]);
        for (int r = rank + 1; r < m.rows; ++r) {
            if (x[r][c] == 0) continue;
            mpq_class f = x[r][c] / x[rank][c];
            for (int cc = c; cc < m.cols; ++cc) x[r][cc] -= f * x[rank][cc];
        }
        ++rank;
    }
    return rank;
}

// ---- homology ---------------------------------------------------------------

std::string HomologyProfile::str() const {
    std::ostringstream os;
    for (std::size_t d = 0; d < betti.size(); ++d) {
        std::vector<std::string> parts;
        if (betti[d] == 1) parts.push_back("Z");
        if (betti[d] > 1) parts.push_back("Z^" + std::to_string(betti[d]));
        for (const auto& t : torsion[d]) parts.push_back("Z/" + t.get_str());
        os << "H_" << d << " = ";
        if (parts.empty()) os << "0";
        for (std::size_t i = 0; i < parts.size(); ++i) os << (i ? " + " : "") << parts[i];
        os << "\n";
    }
    return os.str();
}

std::string HomologyProfile::table() const {
    std::ostringstream os;
    os << "dim\tbetti\ttorsion\n";
    for (std::size_t d = 0; d < betti.size(); ++d) {
        os << d << "\t" << betti[d] << "\t";
        if (torsion[d].empty()) os << "-";
        for (std::size_t i = 0; i < torsion[d].size(); ++i) os << (i ? "," : "") << torsion[d][i].get_str();
        os << "\n";
    }
    return os.str();
}

HomologyProfile homology(const SimplicialComplex& k) {
    HomologyProfile h;
    const int dim = k.dim();
    if (dim < 0) return h;
    auto cc = boundary_matrices(k);
    std::vector<std::vector<mpz_class>> inv(dim + 2);
    for (int d = 1; d <= dim; ++d) inv[d] = smith_invariants(cc.boundary[d]);
    h.betti.resize(dim + 1);
    h.torsion.resize(dim + 1);
    for (int d = 0; d <= dim; ++d) {
        long n = static_cast<long>(cc.basis[d].size());
        long rank_out = static_cast<long>(inv[d].size());
        long rank_in = static_cast<long>(inv[d + 1].size());
        h.betti[d] = n - rank_out - rank_in;
        for (const auto& t : inv[d + 1]) {
            if (t > 1) h.torsion[d].push_back(t);
        }
    }
    return h;
}

std::vector<long> rational_betti(const SimplicialComplex& k) {
    const int dim = k.dim();
    if (dim < 0) return {};
    auto cc = boundary_matrices(k);
    std::vector<long> rank(dim + 2, 0);
    for (int d = 1; d <= dim; ++d) rank[d] = rational_rank(cc.boundary[d]);
    std::vector<long> betti(dim + 1);
    for (int d = 0; d <= dim; ++d) betti[d] = static_cast<long>(cc.basis[d].size()) - rank[d] - rank[d + 1];
    return betti;
}

long euler(const SimplicialComplex& k) {
    long chi = 0;
    for (const auto& s : k.simplices()) chi += s.size() % 2 == 1 ? 1 : -1;
    return chi;
}

long components(const SimplicialComplex& k) {
    std::map<VertexId, VertexId> parent;
    std::function<VertexId(VertexId)> find = [&](VertexId v) {
        VertexId p = parent.at(v);
        if (p == v) return v;
        VertexId root = find(p);
        parent[v] = root;
        return root;
    };
    for (const auto& s : k.simplices_of_dim(0)) parent.emplace(s[0], s[0]);
    for (const auto& e : k.simplices_of_dim(1)) {
        VertexId a = find(e[0]), b = find(e[1]);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
    long count = 0;
    for (const auto& [v, p] : parent) count += find(v) == v ? 1 : 0;
    return count;
}

namespace {

bool is_pure(const SimplicialComplex& k, int m) {
    auto maximal = k.maximal_simplices();
    return std::all_of(maximal.begin(), maximal.end(), [&](const Simplex& s) { return simplex_dim(s) == m; });
}

HomologyProfile sphere_profile(int d) {
    HomologyProfile h;
    h.betti.assign(d + 1, 0);
    h.torsion.assign(d + 1, {});
    if (d == 0) {
        h.betti[0] = 2;
    } else {
        h.betti[0] = 1;
        h.betti[d] = 1;
    }
    return h;
}

HomologyProfile ball_profile(int d) {
    HomologyProfile h;
    h.betti.assign(d + 1, 0);
    h.torsion.assign(d + 1, {});
    h.betti[0] = 1;
    return h;
}

}  // namespace

LinkReport link_condition(const SimplicialComplex& k) {
    LinkReport rep;
    const int m = k.dim();
    if (m < 0) return rep;
    if (!is_pure(k, m)) {
        rep.pass = false;
        rep.reason = "complex is not pure";
        return rep;
    }
    if (m == 0) return rep;
    for (const auto& vs : k.simplices_of_dim(0)) {
        VertexId v = vs[0];
        auto lk = link(k, v);
        auto h = homology(lk);
        if (!is_pure(lk, m - 1) || (h != sphere_profile(m - 1) && h != ball_profile(m - 1))) {
            rep.pass = false;
            rep.vertex = v;
            std::string prof = h.str();
            std::replace(prof.begin(), prof.end(), '\n', ';');
            rep.reason = "link of vertex " + std::to_string(v) + " has " + prof;
            return rep;
        }
    }
    return rep;
}

}  // namespace plforge
