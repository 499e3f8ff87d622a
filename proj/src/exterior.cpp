#include "g2ext/exterior.hpp"

#include <algorithm>

namespace g2ext {

namespace {

// Sorts the tuple in place and returns the sign of the permutation, or 0 if
// an index repeats.  Insertion sort; tuples have length <= 7 here.
int sort_sign(IndexTuple& idx) {
    int sign = 1;
    for (size_t i = 1; i < idx.size(); ++i) {
        size_t j = i;
        while (j > 0 && idx[j - 1] > idx[j]) {
            std::swap(idx[j - 1], idx[j]);
            sign = -sign;
            --j;
        }
        if (j > 0 && idx[j - 1] == idx[j]) return 0;
    }
    return sign;
}

// Merges two strictly increasing tuples, counting the inversions of the
// concatenation (a, b).  Returns 0 on a common index.
int merge_sign(const IndexTuple& a, const IndexTuple& b, IndexTuple& out) {
    out.clear();
    out.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    long inversions = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) return 0;
        if (a[i] < b[j]) {
            out.push_back(a[i++]);
        } else {
            inversions += static_cast<long>(a.size() - i);
            out.push_back(b[j++]);
        }
    }
    while (i < a.size()) out.push_back(a[i++]);
    while (j < b.size()) out.push_back(b[j++]);
    return inversions % 2 == 0 ? 1 : -1;
}

}  // namespace

KForm::KForm(int dim, int degree) : dim_(dim), degree_(degree) {
    if (dim < 1) throw Error("form dimension must be positive");
    if (degree < 0) throw Error("form degree must be nonnegative");
}

KForm KForm::basis(int dim, IndexTuple increasing_indices) {
    KForm f(dim, static_cast<int>(increasing_indices.size()));
    f.add_term(std::move(increasing_indices), ParamExpr(1));
    return f;
}

void KForm::add_term(IndexTuple indices, ParamExpr coeff) {
    if (static_cast<int>(indices.size()) != degree_)
        throw Error("term has wrong degree");
    for (int i : indices)
        if (i < 1 || i > dim_) throw Error("basis index out of range");
    if (coeff.is_zero()) return;
    int sign = sort_sign(indices);
    if (sign == 0) return;
    if (sign < 0) coeff = -coeff;
    auto it = terms_.find(indices);
    if (it == terms_.end()) {
        terms_.emplace(std::move(indices), std::move(coeff));
    } else {
        it->second += coeff;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

ParamExpr KForm::coefficient(const IndexTuple& increasing_indices) const {
    auto it = terms_.find(increasing_indices);
    return it == terms_.end() ? ParamExpr() : it->second;
}

bool KForm::is_constant() const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [](const auto& t) { return t.second.is_constant(); });
}

KForm KForm::substitute(const std::map<std::string, FieldElement>& values) const {
    KForm r(dim_, degree_);
    for (const auto& [idx, c] : terms_) {
        ParamExpr cc = c.substitute(values);
        if (!cc.is_zero()) r.terms_.emplace(idx, std::move(cc));
    }
    return r;
}

KForm KForm::operator-() const {
    KForm r(dim_, degree_);
    for (const auto& [idx, c] : terms_) r.terms_.emplace(idx, -c);
    return r;
}

KForm& KForm::operator+=(const KForm& o) {
    if (dim_ != o.dim_ || degree_ != o.degree_)
        throw Error("form addition requires equal dimension and degree");
    for (const auto& [idx, c] : o.terms_) {
        auto [it, inserted] = terms_.emplace(idx, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    return *this;
}

KForm& KForm::operator-=(const KForm& o) { return *this += -o; }

KForm& KForm::operator*=(const ParamExpr& scalar) {
    if (scalar.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto it = terms_.begin(); it != terms_.end();) {
        it->second *= scalar;
        if (it->second.is_zero())
            it = terms_.erase(it);
        else
            ++it;
    }
    return *this;
}

bool operator==(const KForm& a, const KForm& b) {
    return a.dim_ == b.dim_ && a.degree_ == b.degree_ && a.terms_ == b.terms_;
}

SquareMatrix::SquareMatrix(int dim) : dim_(dim), entries_(dim * dim) {
    if (dim < 1) throw Error("matrix dimension must be positive");
}

SquareMatrix SquareMatrix::identity(int dim) {
    SquareMatrix m(dim);
    for (int j = 1; j <= dim; ++j) m.at(j, j) = ParamExpr(1);
    return m;
}

SquareMatrix SquareMatrix::diagonal(const std::vector<ParamExpr>& entries) {
    SquareMatrix m(static_cast<int>(entries.size()));
    for (int j = 1; j <= m.dim(); ++j) m.at(j, j) = entries[j - 1];
    return m;
}

ParamExpr& SquareMatrix::at(int j, int k) {
    if (j < 1 || j > dim_ || k < 1 || k > dim_) throw Error("matrix index out of range");
    return entries_[(j - 1) * dim_ + (k - 1)];
}

const ParamExpr& SquareMatrix::at(int j, int k) const {
    if (j < 1 || j > dim_ || k < 1 || k > dim_) throw Error("matrix index out of range");
    return entries_[(j - 1) * dim_ + (k - 1)];
}

ParamExpr SquareMatrix::trace() const {
    ParamExpr t;
    for (int j = 1; j <= dim_; ++j) t += at(j, j);
    return t;
}

SquareMatrix SquareMatrix::transpose() const {
    SquareMatrix m(dim_);
    for (int j = 1; j <= dim_; ++j)
        for (int k = 1; k <= dim_; ++k) m.at(k, j) = at(j, k);
    return m;
}

bool SquareMatrix::is_constant() const {
    return std::all_of(entries_.begin(), entries_.end(),
                       [](const ParamExpr& e) { return e.is_constant(); });
}

bool SquareMatrix::is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(),
                       [](const ParamExpr& e) { return e.is_zero(); });
}

SquareMatrix SquareMatrix::substitute(const std::map<std::string, FieldElement>& values) const {
    SquareMatrix m(dim_);
    for (int j = 1; j <= dim_; ++j)
        for (int k = 1; k <= dim_; ++k) m.at(j, k) = at(j, k).substitute(values);
    return m;
}

FieldElement SquareMatrix::determinant() const {
    if (!is_constant()) throw Error("determinant of a parametric matrix");
    std::vector<std::vector<FieldElement>> m(dim_, std::vector<FieldElement>(dim_));
    for (int j = 0; j < dim_; ++j)
        for (int k = 0; k < dim_; ++k) m[j][k] = entries_[j * dim_ + k].constant();
    FieldElement det(1);
    for (int col = 0; col < dim_; ++col) {
        int sel = col;
        while (sel < dim_ && m[sel][col].is_zero()) ++sel;
        if (sel == dim_) return FieldElement(0);
        if (sel != col) {
            std::swap(m[sel], m[col]);
            det = -det;
        }
        det *= m[col][col];
        FieldElement inv = m[col][col].inverse();
        for (int r = col + 1; r < dim_; ++r) {
            if (m[r][col].is_zero()) continue;
            FieldElement f = m[r][col] * inv;
            for (int c = col; c < dim_; ++c) m[r][c] -= f * m[col][c];
        }
    }
    return det;
}

SquareMatrix SquareMatrix::operator-() const {
    SquareMatrix m(dim_);
    for (size_t i = 0; i < entries_.size(); ++i) m.entries_[i] = -entries_[i];
    return m;
}

SquareMatrix& SquareMatrix::operator+=(const SquareMatrix& o) {
    if (dim_ != o.dim_) throw Error("matrix dimension mismatch");
    for (size_t i = 0; i < entries_.size(); ++i) entries_[i] += o.entries_[i];
    return *this;
}

SquareMatrix& SquareMatrix::operator-=(const SquareMatrix& o) { return *this += -o; }

SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b) {
    if (a.dim_ != b.dim_) throw Error("matrix dimension mismatch");
    SquareMatrix m(a.dim_);
    for (int j = 1; j <= a.dim_; ++j)
        for (int k = 1; k <= a.dim_; ++k) {
            ParamExpr acc;
            for (int l = 1; l <= a.dim_; ++l) {
                const ParamExpr& x = a.at(j, l);
                const ParamExpr& y = b.at(l, k);
                if (x.is_zero() || y.is_zero()) continue;
                acc += x * y;
            }
            m.at(j, k) = std::move(acc);
        }
    return m;
}

SquareMatrix operator*(const ParamExpr& s, SquareMatrix a) {
    for (int j = 1; j <= a.dim(); ++j)
        for (int k = 1; k <= a.dim(); ++k) a.at(j, k) *= s;
    return a;
}

bool operator==(const SquareMatrix& a, const SquareMatrix& b) {
    return a.dim_ == b.dim_ && a.entries_ == b.entries_;
}

KForm wedge(const KForm& a, const KForm& b) {
    if (a.dim() != b.dim()) throw Error("wedge requires equal dimension");
    KForm r(a.dim(), a.degree() + b.degree());
    IndexTuple merged;
    for (const auto& [ia, ca] : a.terms()) {
        for (const auto& [ib, cb] : b.terms()) {
            int sign = merge_sign(ia, ib, merged);
            if (sign == 0) continue;
            ParamExpr c = ca * cb;
            if (sign < 0) c = -c;
            r.add_term(merged, std::move(c));
        }
    }
    return r;
}

KForm contract(int i, const KForm& a) {
    if (i < 1 || i > a.dim()) throw Error("contraction index out of range");
    if (a.degree() == 0) return KForm(a.dim(), 0);
    KForm r(a.dim(), a.degree() - 1);
    for (const auto& [idx, c] : a.terms()) {
        auto pos = std::find(idx.begin(), idx.end(), i);
        if (pos == idx.end()) continue;
        int p = static_cast<int>(pos - idx.begin());
        IndexTuple rest;
        rest.reserve(idx.size() - 1);
        for (int x : idx)
            if (x != i) rest.push_back(x);
        r.add_term(std::move(rest), p % 2 == 0 ? c : -c);
    }
    return r;
}

KForm hodge_star(const KForm& a) {
    const int n = a.dim();
    KForm r(n, n - a.degree());
    for (const auto& [idx, c] : a.terms()) {
        IndexTuple comp;
        comp.reserve(n - idx.size());
        size_t p = 0;
        for (int x = 1; x <= n; ++x) {
            if (p < idx.size() && idx[p] == x) {
                ++p;
            } else {
                comp.push_back(x);
            }
        }
        // Parity of (idx, comp) as a permutation of (1..n): each element of
        // idx is jumped over by the smaller complement elements.
        long inversions = 0;
        for (int x : idx)
            inversions += std::count_if(comp.begin(), comp.end(),
                                        [x](int y) { return y < x; });
        r.add_term(std::move(comp), inversions % 2 == 0 ? c : -c);
    }
    return r;
}

KForm restrict_to(const KForm& a, int m) {
    if (m < 1 || m > a.dim()) throw Error("restriction target out of range");
    KForm r(m, a.degree());
    for (const auto& [idx, c] : a.terms()) {
        if (idx.back() <= m) r.add_term(idx, c);
    }
    return r;
}

KForm lifted(const KForm& a, int new_dim) {
    if (new_dim < a.dim()) throw Error("lift target smaller than source");
    KForm r(new_dim, a.degree());
    for (const auto& [idx, c] : a.terms()) r.add_term(idx, c);
    return r;
}

KForm matrix_action(const SquareMatrix& D, const KForm& a) {
    if (D.dim() != a.dim()) throw Error("matrix action requires equal dimension");
    KForm r(a.dim(), a.degree());
    for (const auto& [idx, c] : a.terms()) {
        for (size_t p = 0; p < idx.size(); ++p) {
            for (int j = 1; j <= a.dim(); ++j) {
                const ParamExpr& d = D.at(j, idx[p]);
                if (d.is_zero()) continue;
                IndexTuple replaced = idx;
                replaced[p] = j;
                // Annihilation check before the coefficient product keeps
                // affine inputs affine.
                if (std::count(replaced.begin(), replaced.end(), j) > 1) continue;
                r.add_term(std::move(replaced), c * d);
            }
        }
    }
    return r;
}

}  // namespace g2ext
