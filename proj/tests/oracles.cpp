#include "oracles.hpp"

#include <algorithm>

namespace g2ext::oracle {

namespace {

FieldElement constant_of(const ParamExpr& e) {
    if (!e.is_constant()) throw Error("oracle: expected a constant coefficient");
    return e.constant();
}

// Sign of the permutation sorting args; 0 on repeats.
int sign_and_sort(IndexTuple& args) {
    int sign = 1;
    for (size_t i = 1; i < args.size(); ++i) {
        size_t j = i;
        while (j > 0 && args[j - 1] > args[j]) {
            std::swap(args[j - 1], args[j]);
            sign = -sign;
            --j;
        }
        if (j > 0 && args[j - 1] == args[j]) return 0;
    }
    return sign;
}

}  // namespace

FieldElement eval_form(const KForm& f, const IndexTuple& args) {
    if (static_cast<int>(args.size()) != f.degree())
        throw Error("oracle: argument count must equal the degree");
    IndexTuple sorted = args;
    int sign = sign_and_sort(sorted);
    if (sign == 0) return FieldElement(0);
    FieldElement c = constant_of(f.coefficient(sorted));
    return sign < 0 ? -c : c;
}

FieldElement wedge_eval(const KForm& a, const KForm& b, const IndexTuple& args) {
    const int k = a.degree();
    const int n = static_cast<int>(args.size());
    if (n != a.degree() + b.degree()) throw Error("oracle: wrong argument count");
    // Sum over k-subsets, iterated as permutations of a selection mask.
    FieldElement total(0);
    std::vector<bool> mask(n, false);
    std::fill(mask.begin(), mask.begin() + k, true);
    std::sort(mask.begin(), mask.end());
    do {
        IndexTuple left, right;
        // Shuffle sign: one crossing per (right position, later left position).
        int crossings = 0;
        int seen_right = 0;
        for (int i = 0; i < n; ++i) {
            if (mask[i]) {
                crossings += seen_right;
            } else {
                ++seen_right;
            }
        }
        for (int i = 0; i < n; ++i) (mask[i] ? left : right).push_back(args[i]);
        FieldElement va = eval_form(a, left);
        if (va.is_zero()) continue;
        FieldElement vb = eval_form(b, right);
        if (vb.is_zero()) continue;
        FieldElement term = va * vb;
        if (crossings % 2 != 0) term = -term;
        total += term;
    } while (std::next_permutation(mask.begin(), mask.end()));
    return total;
}

std::vector<FieldElement> bracket(const LieAlgebra& L, int i, int j) {
    std::vector<FieldElement> v(L.dim(), FieldElement(0));
    for (int k = 1; k <= L.dim(); ++k) {
        // de^k(e_i, e_j) = -e^k([e_i, e_j])
        FieldElement dk = eval_form(L.d_of(k), {i, j});
        v[k - 1] = -dk;
    }
    return v;
}

FieldElement ce_d_eval(const LieAlgebra& L, const KForm& f, const IndexTuple& args) {
    if (static_cast<int>(args.size()) != f.degree() + 1)
        throw Error("oracle: d raises the degree by one");
    FieldElement total(0);
    const int m = static_cast<int>(args.size());
    for (int p = 0; p < m; ++p) {
        for (int q = p + 1; q < m; ++q) {
            std::vector<FieldElement> br = bracket(L, args[p], args[q]);
            IndexTuple rest;
            for (int r = 0; r < m; ++r)
                if (r != p && r != q) rest.push_back(args[r]);
            FieldElement acc(0);
            for (int k = 1; k <= L.dim(); ++k) {
                if (br[k - 1].is_zero()) continue;
                IndexTuple full;
                full.push_back(k);
                full.insert(full.end(), rest.begin(), rest.end());
                acc += br[k - 1] * eval_form(f, full);
            }
            if ((p + q) % 2 != 0) acc = -acc;
            total += acc;
        }
    }
    return total;
}

std::vector<ParamExpr> bracket_derivation_system(const LieAlgebra& h,
                                                 const DerivationTemplate& t) {
    const int n = h.dim();
    std::vector<ParamExpr> rows;
    // D applied to a basis vector, as ParamExpr coordinates.
    auto apply_D = [&](int j) {
        std::vector<ParamExpr> v(n);
        for (int k = 1; k <= n; ++k) v[k - 1] = t.matrix.at(j, k);
        return v;
    };
    for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
            std::vector<FieldElement> bij = bracket(h, i, j);
            // D[e_i, e_j]
            std::vector<ParamExpr> lhs(n);
            for (int l = 1; l <= n; ++l) {
                if (bij[l - 1].is_zero()) continue;
                std::vector<ParamExpr> dl = apply_D(l);
                for (int k = 0; k < n; ++k) lhs[k] += ParamExpr(bij[l - 1]) * dl[k];
            }
            // [D e_i, e_j] + [e_i, D e_j]
            std::vector<ParamExpr> rhs(n);
            std::vector<ParamExpr> di = apply_D(i), dj = apply_D(j);
            for (int l = 1; l <= n; ++l) {
                if (!di[l - 1].is_zero()) {
                    std::vector<FieldElement> blj = bracket(h, l, j);
                    for (int k = 0; k < n; ++k)
                        if (!blj[k].is_zero()) rhs[k] += di[l - 1] * ParamExpr(blj[k]);
                }
                if (!dj[l - 1].is_zero()) {
                    std::vector<FieldElement> bil = bracket(h, i, l);
                    for (int k = 0; k < n; ++k)
                        if (!bil[k].is_zero()) rhs[k] += dj[l - 1] * ParamExpr(bil[k]);
                }
            }
            for (int k = 0; k < n; ++k) {
                ParamExpr resid = lhs[k] - rhs[k];
                if (!resid.is_zero()) rows.push_back(std::move(resid));
            }
        }
    }
    return rows;
}

int rank_last_pivot(std::vector<std::vector<FieldElement>> rows) {
    if (rows.empty()) return 0;
    const int n = static_cast<int>(rows[0].size());
    int rank = 0;
    size_t next = 0;
    for (int col = n - 1; col >= 0 && next < rows.size(); --col) {
        size_t sel = next;
        while (sel < rows.size() && rows[sel][col].is_zero()) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[next], rows[sel]);
        FieldElement inv = rows[next][col].inverse();
        for (int j = 0; j < n; ++j) rows[next][j] *= inv;
        for (size_t r = 0; r < rows.size(); ++r) {
            if (r == next || rows[r][col].is_zero()) continue;
            FieldElement f = rows[r][col];
            for (int j = 0; j < n; ++j) rows[r][j] -= f * rows[next][j];
        }
        ++rank;
        ++next;
    }
    return rank;
}

Rational random_rational(Rng& rng, int max_abs_num, int max_den) {
    std::uniform_int_distribution<int> num(-max_abs_num, max_abs_num);
    std::uniform_int_distribution<int> den(1, max_den);
    Rational r(num(rng), den(rng));
    r.canonicalize();
    return r;
}

KForm random_form(Rng& rng, int dim, int degree, int max_terms) {
    KForm f(dim, degree);
    std::uniform_int_distribution<int> nterms(0, max_terms);
    std::uniform_int_distribution<int> index(1, dim);
    const int t = nterms(rng);
    for (int i = 0; i < t; ++i) {
        IndexTuple idx(degree);
        for (int& x : idx) x = index(rng);
        f.add_term(idx, ParamExpr(random_rational(rng)));
    }
    return f;
}

}  // namespace g2ext::oracle
