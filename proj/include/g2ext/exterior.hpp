#pragma once

// Alternating multilinear algebra on an n-dimensional space with a fixed
// orthonormal oriented coframe e^1, ..., e^n: wedge, contraction, Hodge star,
// restriction, and the infinitesimal action of a matrix on forms.

#include <map>
#include <vector>

#include "g2ext/scalars.hpp"

namespace g2ext {

// Basis indices are 1-based throughout, matching the e^{ij...} notation.
using IndexTuple = std::vector<int>;

// Degree-k alternating form: sparse map from strictly increasing index
// tuples to nonzero coefficients.  Zero coefficients are never stored, so
// equality is a plain map comparison.
class KForm {
public:
    KForm(int dim, int degree);
    static KForm basis(int dim, IndexTuple increasing_indices);

    int dim() const { return dim_; }
    int degree() const { return degree_; }
    const std::map<IndexTuple, ParamExpr>& terms() const { return terms_; }

    // Accepts indices in any order; inserts with the sign of the sorting
    // permutation.  A repeated index contributes nothing.
    void add_term(IndexTuple indices, ParamExpr coeff);
    ParamExpr coefficient(const IndexTuple& increasing_indices) const;

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;  // no parameters in any coefficient
    KForm substitute(const std::map<std::string, FieldElement>& values) const;

    KForm operator-() const;
    KForm& operator+=(const KForm& o);
    KForm& operator-=(const KForm& o);
    KForm& operator*=(const ParamExpr& scalar);

    friend KForm operator+(KForm a, const KForm& b) { return a += b; }
    friend KForm operator-(KForm a, const KForm& b) { return a -= b; }
    friend KForm operator*(const ParamExpr& s, KForm a) { return a *= s; }
    friend bool operator==(const KForm& a, const KForm& b);
    friend bool operator!=(const KForm& a, const KForm& b) { return !(a == b); }

private:
    int dim_;
    int degree_;
    std::map<IndexTuple, ParamExpr> terms_;
};

// Square matrix over ParamExpr with 1-based accessors.  Indexing convention,
// fixed module-wide: entry (j, k) is the coefficient of e_k in the image of
// e_j, i.e. rows act on basis vectors.
class SquareMatrix {
public:
    explicit SquareMatrix(int dim);
    static SquareMatrix identity(int dim);
    static SquareMatrix diagonal(const std::vector<ParamExpr>& entries);

    int dim() const { return dim_; }
    ParamExpr& at(int j, int k);
    const ParamExpr& at(int j, int k) const;

    ParamExpr trace() const;
    SquareMatrix transpose() const;
    bool is_constant() const;
    bool is_zero() const;
    SquareMatrix substitute(const std::map<std::string, FieldElement>& values) const;
    // Determinant by exact elimination; entries must be constant.
    FieldElement determinant() const;

    SquareMatrix operator-() const;
    SquareMatrix& operator+=(const SquareMatrix& o);
    SquareMatrix& operator-=(const SquareMatrix& o);
    friend SquareMatrix operator+(SquareMatrix a, const SquareMatrix& b) { return a += b; }
    friend SquareMatrix operator-(SquareMatrix a, const SquareMatrix& b) { return a -= b; }
    friend SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b);
    friend SquareMatrix operator*(const ParamExpr& s, SquareMatrix a);
    friend bool operator==(const SquareMatrix& a, const SquareMatrix& b);
    friend bool operator!=(const SquareMatrix& a, const SquareMatrix& b) { return !(a == b); }

private:
    int dim_;
    std::vector<ParamExpr> entries_;  // row-major
};

// a ^ b.  Graded-commutative and associative; duplicate indices annihilate
// before any coefficient product is formed, which keeps parametric inputs
// affine-linear whenever the result is.
KForm wedge(const KForm& a, const KForm& b);

// Interior product with the basis vector e_i.
KForm contract(int i, const KForm& a);

// Hodge star for the orthonormal coframe with orientation e^1 ^ ... ^ e^n.
KForm hodge_star(const KForm& a);

// Pullback along span(e_1..e_m) -> span(e_1..e_n): drops every term with an
// index above m.
KForm restrict_to(const KForm& a, int m);

// Reinterprets a form on a larger space (same terms, bigger dim).
KForm lifted(const KForm& a, int new_dim);

// (D.a)(x_1,...,x_k) = sum_i a(x_1,...,D x_i,...,x_k).
KForm matrix_action(const SquareMatrix& D, const KForm& a);

}  // namespace g2ext
