#include "g2ext/liealg.hpp"

#include <algorithm>

namespace g2ext {

LieAlgebra::LieAlgebra(std::vector<KForm> diffs, bool check_jacobi)
    : diffs_(std::move(diffs)) {
    const int n = static_cast<int>(diffs_.size());
    if (n < 1) throw Error("Lie algebra needs at least one structure equation");
    for (const KForm& d : diffs_) {
        if (d.dim() != n) throw Error("structure equation has wrong dimension");
        if (d.degree() != 2) throw Error("structure equation must be a 2-form");
    }
    if (check_jacobi) {
        JacobiReport rep = jacobi_check(*this);
        if (!rep.ok())
            throw Error("Jacobi identity fails at k=" + std::to_string(rep.failures[0].k));
    }
}

LieAlgebra make_lie_algebra(std::vector<KForm> diffs, bool check_jacobi) {
    return LieAlgebra(std::move(diffs), check_jacobi);
}

const KForm& LieAlgebra::d_of(int k) const {
    if (k < 1 || k > dim()) throw Error("generator index out of range");
    return diffs_[k - 1];
}

bool LieAlgebra::is_parametric() const {
    return std::any_of(diffs_.begin(), diffs_.end(),
                       [](const KForm& d) { return !d.is_constant(); });
}

LieAlgebra LieAlgebra::substitute(const std::map<std::string, FieldElement>& values) const {
    std::vector<KForm> ds;
    ds.reserve(diffs_.size());
    for (const KForm& d : diffs_) ds.push_back(d.substitute(values));
    return LieAlgebra(std::move(ds));
}

KForm ce_d(const LieAlgebra& L, const KForm& a) {
    if (a.dim() != L.dim()) throw Error("ce_d: dimension mismatch");
    KForm r(L.dim(), a.degree() + 1);
    for (const auto& [idx, c] : a.terms()) {
        // d(e^{i1...ik}) = sum_p (-1)^{p-1} de^{ip} ^ e^{i1...^ip...ik}
        for (size_t p = 0; p < idx.size(); ++p) {
            const KForm& dip = L.d_of(idx[p]);
            if (dip.is_zero()) continue;
            IndexTuple rest;
            rest.reserve(idx.size() - 1);
            for (size_t q = 0; q < idx.size(); ++q)
                if (q != p) rest.push_back(idx[q]);
            KForm partial = wedge(dip, KForm::basis(L.dim(), rest));
            ParamExpr sc = (p % 2 == 0) ? c : -c;
            r += sc * std::move(partial);
        }
    }
    return r;
}

JacobiReport jacobi_check(const LieAlgebra& L) {
    JacobiReport rep;
    for (int k = 1; k <= L.dim(); ++k) {
        KForm dd = ce_d(L, L.d_of(k));
        if (!dd.is_zero()) rep.failures.push_back({k, std::move(dd)});
    }
    return rep;
}

LieAlgebra extend(const LieAlgebra& h, const SquareMatrix& D) {
    if (h.dim() != 6) throw Error("extend: base algebra must have dimension 6");
    if (D.dim() != 6) throw Error("extend: derivation matrix must be 6x6");
    std::vector<KForm> diffs;
    diffs.reserve(7);
    for (int k = 1; k <= 6; ++k) {
        KForm d = lifted(h.d_of(k), 7);
        for (int j = 1; j <= 6; ++j) {
            const ParamExpr& c = D.at(j, k);
            if (!c.is_zero()) d.add_term({j, 7}, c);
        }
        diffs.push_back(std::move(d));
    }
    diffs.emplace_back(7, 2);  // de^7 = 0
    return LieAlgebra(std::move(diffs));
}

JacobiReport is_derivation(const LieAlgebra& h, const SquareMatrix& D) {
    return jacobi_check(extend(h, D));
}

namespace {

ParamExpr par(const std::string& n) { return ParamExpr::parameter(n); }

// The 2x2 block [[x, y], [-y, x]] placed at block position (I, J).
void put_block(SquareMatrix& m, int I, int J, const ParamExpr& x, const ParamExpr& y) {
    int r = 2 * I - 1, c = 2 * J - 1;
    m.at(r, c) = x;
    m.at(r, c + 1) = y;
    m.at(r + 1, c) = -y;
    m.at(r + 1, c + 1) = x;
}

DerivationTemplate sl3c_template() {
    std::vector<std::string> names;
    for (int i : {1, 3, 5})
        for (int j = 1; j <= 6; ++j) {
            if (i == 5 && j >= 5) continue;
            names.push_back("a" + std::to_string(i) + std::to_string(j));
        }
    SquareMatrix m(6);
    for (int I = 1; I <= 3; ++I)
        for (int J = 1; J <= 3; ++J) {
            int i = 2 * I - 1, j = 2 * J - 1;
            if (I == 3 && J == 3) {
                put_block(m, I, J, -par("a11") - par("a33"), -par("a12") - par("a34"));
            } else {
                put_block(m, I, J, par("a" + std::to_string(i) + std::to_string(j)),
                          par("a" + std::to_string(i) + std::to_string(j + 1)));
            }
        }
    return {DerivationShape::Sl3cReal, 6, std::move(names), std::move(m)};
}

DerivationTemplate sp6r_template() {
    std::vector<std::string> names = {"a11", "a12", "a13", "a14", "a15", "a16", "a21",
                                      "a23", "a24", "a25", "a26", "a33", "a34", "a35",
                                      "a36", "a43", "a45", "a46", "a55", "a56", "a65"};
    SquareMatrix m(6);
    auto set_row = [&m](int r, std::initializer_list<ParamExpr> row) {
        int c = 1;
        for (const ParamExpr& e : row) m.at(r, c++) = e;
    };
    set_row(1, {par("a11"), par("a12"), par("a13"), par("a14"), par("a15"), par("a16")});
    set_row(2, {par("a21"), -par("a11"), par("a23"), par("a24"), par("a25"), par("a26")});
    set_row(3, {-par("a24"), par("a14"), par("a33"), par("a34"), par("a35"), par("a36")});
    set_row(4, {par("a23"), -par("a13"), par("a43"), -par("a33"), par("a45"), par("a46")});
    set_row(5, {-par("a26"), par("a16"), -par("a46"), par("a36"), par("a55"), par("a56")});
    set_row(6, {par("a25"), -par("a15"), par("a45"), -par("a35"), par("a65"), -par("a55")});
    return {DerivationShape::Sp6r, 6, std::move(names), std::move(m)};
}

DerivationTemplate general_template(int dim) {
    std::vector<std::string> names;
    SquareMatrix m(dim);
    for (int j = 1; j <= dim; ++j)
        for (int k = 1; k <= dim; ++k) {
            std::string n = "d" + std::to_string(j) + std::to_string(k);
            m.at(j, k) = par(n);
            names.push_back(std::move(n));
        }
    return {DerivationShape::General, dim, std::move(names), std::move(m)};
}

}  // namespace

DerivationTemplate derivation_template(DerivationShape shape, int dim) {
    switch (shape) {
        case DerivationShape::Sl3cReal:
            if (dim != 6) throw Error("sl3c template is 6-dimensional");
            return sl3c_template();
        case DerivationShape::Sp6r:
            if (dim != 6) throw Error("sp6r template is 6-dimensional");
            return sp6r_template();
        case DerivationShape::General:
            return general_template(dim);
    }
    throw Error("unknown template shape");
}

std::vector<std::pair<std::string, ParamExpr>> shape_residuals(const SquareMatrix& M,
                                                               DerivationShape shape) {
    std::vector<std::pair<std::string, ParamExpr>> out;
    auto expect = [&](int j1, int k1, ParamExpr rhs, const std::string& what) {
        ParamExpr resid = M.at(j1, k1) - rhs;
        if (!resid.is_zero()) out.emplace_back(what, std::move(resid));
    };
    if (shape == DerivationShape::General) {
        if (M.dim() < 1) throw Error("bad matrix");
        return out;
    }
    if (M.dim() != 6) throw Error("shape check needs a 6x6 matrix");
    if (shape == DerivationShape::Sl3cReal) {
        for (int I = 1; I <= 3; ++I)
            for (int J = 1; J <= 3; ++J) {
                int r = 2 * I - 1, c = 2 * J - 1;
                std::string b = "block(" + std::to_string(I) + "," + std::to_string(J) + ")";
                expect(r + 1, c + 1, M.at(r, c), b + ": (2,2) != (1,1)");
                expect(r + 1, c, -M.at(r, c + 1), b + ": (2,1) != -(1,2)");
            }
        expect(5, 5, -M.at(1, 1) - M.at(3, 3), "complex trace: Re part");
        expect(5, 6, -M.at(1, 2) - M.at(3, 4), "complex trace: Im part");
        return out;
    }
    // Sp6r: the 15 entry identities of the printed shape.
    expect(2, 2, -M.at(1, 1), "(2,2) != -(1,1)");
    expect(3, 1, -M.at(2, 4), "(3,1) != -(2,4)");
    expect(3, 2, M.at(1, 4), "(3,2) != (1,4)");
    expect(4, 1, M.at(2, 3), "(4,1) != (2,3)");
    expect(4, 2, -M.at(1, 3), "(4,2) != -(1,3)");
    expect(4, 4, -M.at(3, 3), "(4,4) != -(3,3)");
    expect(5, 1, -M.at(2, 6), "(5,1) != -(2,6)");
    expect(5, 2, M.at(1, 6), "(5,2) != (1,6)");
    expect(5, 3, -M.at(4, 6), "(5,3) != -(4,6)");
    expect(5, 4, M.at(3, 6), "(5,4) != (3,6)");
    expect(6, 1, M.at(2, 5), "(6,1) != (2,5)");
    expect(6, 2, -M.at(1, 5), "(6,2) != -(1,5)");
    expect(6, 3, M.at(4, 5), "(6,3) != (4,5)");
    expect(6, 4, -M.at(3, 5), "(6,4) != -(3,5)");
    expect(6, 6, -M.at(5, 5), "(6,6) != -(5,5)");
    return out;
}

std::vector<ParamExpr> derivation_system(const LieAlgebra& h, const DerivationTemplate& t) {
    if (h.is_parametric())
        throw Error("solve_derivations: base algebra must be non-parametric");
    if (h.dim() != t.dim) throw Error("solve_derivations: dimension mismatch");

    LieAlgebra g = t.dim == 6 ? extend(h, t.matrix) : [&] {
        // General templates of dimension n: build the extension by hand so
        // the n=6 restriction of extend() does not bite.  Only n=6 occurs in
        // practice, but the solver itself is dimension-agnostic.
        std::vector<KForm> diffs;
        for (int k = 1; k <= h.dim(); ++k) {
            KForm d = lifted(h.d_of(k), h.dim() + 1);
            for (int j = 1; j <= h.dim(); ++j) {
                const ParamExpr& c = t.matrix.at(j, k);
                if (!c.is_zero()) d.add_term({j, h.dim() + 1}, c);
            }
            diffs.push_back(std::move(d));
        }
        diffs.emplace_back(h.dim() + 1, 2);
        return LieAlgebra(std::move(diffs));
    }();

    std::vector<ParamExpr> rows;
    for (int k = 1; k <= g.dim(); ++k) {
        KForm dd = ce_d(g, g.d_of(k));
        for (const auto& [idx, c] : dd.terms()) {
            // Linearity lemma: for non-parametric h every coefficient is
            // affine-linear with zero constant part.
            if (!c.constant().is_zero())
                throw Error("internal consistency: d^2 has a constant residual; "
                            "base algebra fails Jacobi");
            rows.push_back(c);
        }
    }
    return rows;
}

SolutionSpace solve_derivations(const LieAlgebra& h, const DerivationTemplate& t) {
    return solve_homogeneous(derivation_system(h, t), t.parameters);
}

SquareMatrix instantiate(const DerivationTemplate& t, const SolutionSpace& s,
                         const std::vector<FieldElement>& coords) {
    if (coords.size() != s.basis.size())
        throw Error("instantiate: coordinate count does not match basis size");
    std::map<std::string, FieldElement> values;
    for (size_t j = 0; j < s.parameter_names.size(); ++j) {
        FieldElement v(0);
        for (size_t b = 0; b < s.basis.size(); ++b) v += coords[b] * s.basis[b][j];
        values.emplace(s.parameter_names[j], std::move(v));
    }
    return t.matrix.substitute(values);
}

SquareMatrix solved_template(const DerivationTemplate& t, const SolutionSpace& s) {
    // Substitute each template parameter by its expansion over the free ones.
    SquareMatrix m(t.matrix.dim());
    std::map<std::string, ParamExpr> expansion;
    for (size_t j = 0; j < s.parameter_names.size(); ++j) {
        ParamExpr e;
        for (size_t b = 0; b < s.basis.size(); ++b) {
            if (s.basis[b][j].is_zero()) continue;
            e += ParamExpr::parameter(s.parameter_names[s.free_columns[b]], s.basis[b][j]);
        }
        expansion.emplace(s.parameter_names[j], std::move(e));
    }
    for (int j = 1; j <= m.dim(); ++j)
        for (int k = 1; k <= m.dim(); ++k) {
            const ParamExpr& src = t.matrix.at(j, k);
            ParamExpr acc(src.constant());
            for (const auto& [name, coeff] : src.terms()) {
                auto it = expansion.find(name);
                if (it == expansion.end()) throw Error("template parameter missing: " + name);
                acc += ParamExpr(coeff) * it->second;
            }
            m.at(j, k) = std::move(acc);
        }
    return m;
}

SquareMatrix adjoint_matrix_of_extension(const LieAlgebra& g) {
    if (g.dim() != 7) throw Error("adjoint read-off needs a 7-dimensional algebra");
    SquareMatrix D(6);
    for (int k = 1; k <= 6; ++k)
        for (int j = 1; j <= 6; ++j) D.at(j, k) = g.d_of(k).coefficient({j, 7});
    return D;
}

}  // namespace g2ext
