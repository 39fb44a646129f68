#pragma once

// Integer simplicial homology via Smith normal form, Euler characteristic,
// connected components and the link-homology manifold test.

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "plforge/complex.hpp"

namespace plforge {

/// Sparse integer matrix stored by rows.
struct IntMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<std::map<int, mpz_class>> entries;  // entries[r][c]

    IntMatrix() = default;
    IntMatrix(int r, int c) : rows(r), cols(c), entries(r) {}
    mpz_class at(int r, int c) const;
    void set(int r, int c, const mpz_class& v);
};

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);
bool is_zero(const IntMatrix& m);

/// Boundary maps d_d : C_d -> C_{d-1} for d = 1..dim K, rows and columns in
/// simplex order; orientation by ascending vertex id.
struct ChainComplex {
    std::vector<std::vector<Simplex>> basis;  // basis[d]
    std::vector<IntMatrix> boundary;          // boundary[d], empty for d = 0
};
ChainComplex boundary_matrices(const SimplicialComplex& k);

/// Nonzero Smith invariants d_1 | d_2 | ... of an integer matrix (rank = count).
std::vector<mpz_class> smith_invariants(IntMatrix m);

/// Full form U A V = D with unimodular U, V, for small dense matrices.
struct SmithForm {
    IntMatrix u, d, v;
};
SmithForm smith_normal_form(const IntMatrix& a);

/// Rank over Q by rational elimination (independent of the Smith reduction).
int rational_rank(const IntMatrix& m);

struct HomologyProfile {
    std::vector<long> betti;
    std::vector<std::vector<mpz_class>> torsion;

    /// Lines of the form `H_d = Z^b + Z/t ...`.
    std::string str() const;
    std::string table() const;
    friend bool operator==(const HomologyProfile&, const HomologyProfile&) = default;
};

HomologyProfile homology(const SimplicialComplex& k);
/// Betti numbers from ranks over Q only.
std::vector<long> rational_betti(const SimplicialComplex& k);

long euler(const SimplicialComplex& k);
long components(const SimplicialComplex& k);

struct LinkReport {
    bool pass = true;
    std::optional<VertexId> vertex;  // first failing vertex
    std::string reason;
};

/// Every vertex link of a pure m-complex has the homology of S^{m-1} or B^{m-1}.
/// A necessary condition for a PL manifold, not a decision procedure.
LinkReport link_condition(const SimplicialComplex& k);

}  // namespace plforge
