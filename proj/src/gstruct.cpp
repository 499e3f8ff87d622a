#include "g2ext/gstruct.hpp"

namespace g2ext {

namespace {

KForm canonical_omega(int dim) {
    KForm w(dim, 2);
    w.add_term({1, 2}, ParamExpr(1));
    w.add_term({3, 4}, ParamExpr(1));
    w.add_term({5, 6}, ParamExpr(1));
    return w;
}

KForm canonical_psi_plus(int dim) {
    KForm p(dim, 3);
    p.add_term({1, 3, 5}, ParamExpr(1));
    p.add_term({1, 4, 6}, ParamExpr(-1));
    p.add_term({2, 3, 6}, ParamExpr(-1));
    p.add_term({2, 4, 5}, ParamExpr(-1));
    return p;
}

KForm canonical_psi_minus(int dim) {
    KForm p(dim, 3);
    p.add_term({1, 3, 6}, ParamExpr(1));
    p.add_term({1, 4, 5}, ParamExpr(1));
    p.add_term({2, 3, 5}, ParamExpr(1));
    p.add_term({2, 4, 6}, ParamExpr(-1));
    return p;
}

KForm e7(int dim = 7) { return KForm::basis(dim, {7}); }

// Coefficient of the top monomial e^{1..n}, for forms of top degree.
FieldElement top_coefficient(const KForm& f) {
    IndexTuple all(f.dim());
    for (int i = 1; i <= f.dim(); ++i) all[i - 1] = i;
    ParamExpr c = f.coefficient(all);
    if (!c.is_constant()) throw Error("parametric top coefficient");
    return c.constant();
}

std::string describe_first_term(const KForm& f) {
    if (f.is_zero()) return "0";
    const auto& [idx, c] = *f.terms().begin();
    std::string s = "e^{";
    for (int i : idx) s += std::to_string(i);
    s += "}";
    return s;
}

void require_shape(const SquareMatrix& D, DerivationShape shape, const char* what) {
    auto residuals = shape_residuals(D, shape);
    if (residuals.empty()) return;
    std::string msg = std::string(what) + ": derivation does not have the required shape:";
    for (const auto& [desc, r] : residuals) {
        msg += " " + desc + ";";
        (void)r;
    }
    throw Error(msg);
}

}  // namespace

SU3Structure SU3Structure::make(KForm omega, KForm psi_plus, KForm psi_minus) {
    if (omega.dim() != 6 || psi_plus.dim() != 6 || psi_minus.dim() != 6)
        throw Error("SU(3) structure lives on a 6-dimensional space");
    if (omega.degree() != 2 || psi_plus.degree() != 3 || psi_minus.degree() != 3)
        throw Error("SU(3) structure needs degrees (2,3,3)");
    if (!wedge(omega, psi_plus).is_zero()) throw Error("omega ^ psi_plus != 0");
    if (!wedge(omega, psi_minus).is_zero()) throw Error("omega ^ psi_minus != 0");
    KForm omega3 = wedge(omega, wedge(omega, omega));
    KForm lhs = wedge(psi_plus, psi_minus);
    lhs -= ParamExpr(Rational(2, 3)) * omega3;
    if (!lhs.is_zero()) throw Error("psi_plus ^ psi_minus != (2/3) omega^3");
    return {std::move(omega), std::move(psi_plus), std::move(psi_minus)};
}

SU3Structure canonical_su3() {
    return SU3Structure::make(canonical_omega(6), canonical_psi_plus(6),
                              canonical_psi_minus(6));
}

G2Structure G2Structure::from_phi(KForm phi) {
    if (phi.dim() != 7 || phi.degree() != 3)
        throw Error("G2 form must be a 3-form on a 7-dimensional space");
    KForm star = hodge_star(phi);
    return {std::move(phi), std::move(star)};
}

G2Structure canonical_g2_closed_candidate() {
    KForm phi = wedge(canonical_omega(7), e7());
    phi += canonical_psi_plus(7);
    return G2Structure::from_phi(std::move(phi));
}

G2Structure canonical_g2_coclosed_candidate() {
    KForm phi = wedge(canonical_omega(7), e7());
    phi -= canonical_psi_minus(7);
    G2Structure g = G2Structure::from_phi(std::move(phi));
    // *phi = 1/2 omega^2 + psi_plus ^ e^7 for this candidate.
    KForm expected = ParamExpr(Rational(1, 2)) *
                     wedge(canonical_omega(7), canonical_omega(7));
    expected += wedge(canonical_psi_plus(7), e7());
    if (!(g.star_phi == expected))
        throw Error("coclosed candidate: star phi does not match 1/2 omega^2 + psi+ ^ e^7");
    return g;
}

MetricMatrix MetricMatrix::from_entries(std::vector<std::vector<FieldElement>> e) {
    const int n = static_cast<int>(e.size());
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(e[i].size()) != n) throw Error("metric matrix not square");
        for (int j = 0; j < i; ++j)
            if (!(e[i][j] == e[j][i])) throw Error("metric matrix not symmetric");
    }
    return {n, std::move(e)};
}

bool MetricMatrix::is_identity() const {
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            if (i == j ? !entries[i][j].is_one() : !entries[i][j].is_zero()) return false;
        }
    return true;
}

MetricMatrix g2_metric(const KForm& phi) {
    if (phi.dim() != 7 || phi.degree() != 3) throw Error("g2_metric needs a 3-form on dim 7");
    std::vector<KForm> iota;
    iota.reserve(7);
    for (int i = 1; i <= 7; ++i) iota.push_back(contract(i, phi));
    std::vector<std::vector<FieldElement>> b(7, std::vector<FieldElement>(7));
    for (int i = 0; i < 7; ++i)
        for (int j = 0; j < 7; ++j) {
            KForm top = wedge(wedge(iota[i], iota[j]), phi);
            ParamExpr c = ParamExpr(Rational(1, 6)) *
                          (top.is_zero() ? ParamExpr() : top.terms().begin()->second);
            if (!top.is_zero() && top.terms().size() != 1)
                throw Error("unexpected non-top term in metric integrand");
            if (!c.is_constant()) throw Error("g2_metric: parametric phi not supported");
            b[i][j] = c.constant();
        }
    MetricMatrix m = MetricMatrix::from_entries(std::move(b));
    SquareMatrix check(7);
    for (int i = 1; i <= 7; ++i)
        for (int j = 1; j <= 7; ++j) check.at(i, j) = ParamExpr(m.entries[i - 1][j - 1]);
    if (check.determinant().is_zero()) throw Error("degenerate G2 form: zero induced volume");
    return m;
}

MetricMatrix su3_metric(const KForm& omega, const KForm& psi_plus) {
    if (omega.dim() != 6 || psi_plus.dim() != 6)
        throw Error("su3_metric lives on a 6-dimensional space");
    KForm omega3 = wedge(omega, wedge(omega, omega));
    if (omega3.is_zero()) throw Error("degenerate omega: omega^3 = 0");
    FieldElement w = top_coefficient(omega3);
    std::vector<std::vector<FieldElement>> g(6, std::vector<FieldElement>(6));
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
            KForm top = wedge(wedge(contract(i + 1, omega), contract(j + 1, psi_plus)),
                              psi_plus);
            FieldElement c = top.is_zero() ? FieldElement(0) : top_coefficient(top);
            g[i][j] = FieldElement(-3) * c / w;
        }
    return MetricMatrix::from_entries(std::move(g));
}

SquareMatrix su3_acs(const KForm& psi_plus, const KForm& omega) {
    if (psi_plus.dim() != 6 || omega.dim() != 6)
        throw Error("su3_acs lives on a 6-dimensional space");
    KForm omega3 = wedge(omega, wedge(omega, omega));
    if (omega3.is_zero()) throw Error("degenerate omega: omega^3 = 0");
    FieldElement w = top_coefficient(omega3);

    // Raw matrix (J* e^i)(e_j) omega^3 = e^i ^ i_{e_j} psi+ ^ psi+.
    SquareMatrix raw(6);
    for (int i = 1; i <= 6; ++i)
        for (int j = 1; j <= 6; ++j) {
            KForm top = wedge(wedge(KForm::basis(6, {i}), contract(j, psi_plus)), psi_plus);
            FieldElement c = top.is_zero() ? FieldElement(0) : top_coefficient(top);
            raw.at(i, j) = ParamExpr(c / w);
        }

    // The defining identity determines J* only up to scale; require
    // raw^2 = r id and rescale by c with c^2 = -1/r, c > 0 rational.
    SquareMatrix sq = raw * raw;
    ParamExpr r = sq.at(1, 1);
    SquareMatrix expected = r * SquareMatrix::identity(6);
    if (!(sq == expected) || r.is_zero())
        throw Error("psi_plus not stable-compatible: J*^2 is not a negative scalar");
    FieldElement rv = r.constant();
    if (!rv.is_rational())
        throw Error("su3_acs: normalization scale is not rational");
    Rational rq = rv.rational_value();
    if (rq >= 0) throw Error("psi_plus not stable-compatible: J*^2 is not a negative scalar");
    Rational target = -1 / rq;  // c^2
    mpz_class num = target.get_num(), den = target.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
        throw Error("su3_acs: normalization scale is not an exact rational square root");
    mpz_class sn, sd;
    mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
    Rational c(sn, sd);
    c.canonicalize();
    SquareMatrix J = ParamExpr(Rational(c)) * raw;
    if (!(J * J == ParamExpr(-1) * SquareMatrix::identity(6)))
        throw Error("psi_plus not stable-compatible: (J*)^2 != -id");
    return J;
}

SU3Class classify_su3(const LieAlgebra& h, const SU3Structure& s) {
    if (h.dim() != 6) throw Error("classify_su3 needs a 6-dimensional algebra");
    SU3Class c{false, false, ce_d(h, s.omega), ce_d(h, wedge(s.omega, s.omega)),
               ce_d(h, s.psi_plus)};
    c.half_flat = c.d_omega2.is_zero() && c.d_psi_plus.is_zero();
    c.symplectic_half_flat = c.d_omega.is_zero() && c.d_psi_plus.is_zero();
    return c;
}

G2Class classify_g2(const LieAlgebra& g, const G2Structure& G) {
    if (g.dim() != 7) throw Error("classify_g2 needs a 7-dimensional algebra");
    G2Class c{false, false, ce_d(g, G.phi), ce_d(g, G.star_phi)};
    c.closed = c.d_phi.is_zero();
    c.coclosed = c.d_star_phi.is_zero();
    return c;
}

std::pair<LieAlgebra, G2Structure> build_closed(const LieAlgebra& h, const SU3Structure& s,
                                                const SquareMatrix& D) {
    SU3Class cls = classify_su3(h, s);
    if (!cls.symplectic_half_flat)
        throw Error("build_closed: structure is not symplectic half-flat (d omega has " +
                    describe_first_term(cls.d_omega) + ", d psi+ has " +
                    describe_first_term(cls.d_psi_plus) + ")");
    require_shape(D, DerivationShape::Sl3cReal, "build_closed");
    LieAlgebra g = extend(h, D);
    JacobiReport jac = jacobi_check(g);
    if (!jac.ok())
        throw Error("build_closed: D is not a derivation (d^2 e^" +
                    std::to_string(jac.failures[0].k) + " != 0)");
    KForm phi = wedge(lifted(s.omega, 7), e7());
    phi += lifted(s.psi_plus, 7);
    G2Structure G = G2Structure::from_phi(std::move(phi));
    if (!ce_d(g, G.phi).is_zero())
        throw Error("build_closed: d phi != 0 on the extension");
    return {std::move(g), std::move(G)};
}

std::pair<LieAlgebra, G2Structure> build_coclosed(const LieAlgebra& h, const SU3Structure& s,
                                                  const SquareMatrix& D) {
    SU3Class cls = classify_su3(h, s);
    if (!cls.half_flat)
        throw Error("build_coclosed: structure is not half-flat (d omega^2 has " +
                    describe_first_term(cls.d_omega2) + ", d psi+ has " +
                    describe_first_term(cls.d_psi_plus) + ")");
    require_shape(D, DerivationShape::Sp6r, "build_coclosed");
    LieAlgebra g = extend(h, D);
    JacobiReport jac = jacobi_check(g);
    if (!jac.ok())
        throw Error("build_coclosed: D is not a derivation (d^2 e^" +
                    std::to_string(jac.failures[0].k) + " != 0)");
    KForm phi = wedge(lifted(s.omega, 7), e7());
    phi -= lifted(s.psi_minus, 7);
    G2Structure G = G2Structure::from_phi(std::move(phi));
    if (!ce_d(g, G.star_phi).is_zero())
        throw Error("build_coclosed: d *phi != 0 on the extension");
    return {std::move(g), std::move(G)};
}

namespace {

// Shared reduction plumbing: checks the ansatz g = h +_D R e_7 and returns h.
LieAlgebra reduced_base(const LieAlgebra& g, DerivationShape shape, const char* what) {
    if (g.dim() != 7) throw Error(std::string(what) + ": needs a 7-dimensional algebra");
    if (!g.d_of(7).is_zero()) throw Error(std::string(what) + ": de^7 != 0");
    SquareMatrix D = adjoint_matrix_of_extension(g);
    require_shape(D, shape, what);
    std::vector<KForm> diffs;
    for (int k = 1; k <= 6; ++k) diffs.push_back(restrict_to(g.d_of(k), 6));
    LieAlgebra h(std::move(diffs));
    JacobiReport jac = jacobi_check(h);
    if (!jac.ok())
        throw Error(std::string(what) + ": induced 6-dimensional algebra fails Jacobi");
    return h;
}

}  // namespace

SU3Structure reduce_closed(const LieAlgebra& g, const G2Structure& G) {
    // Shape first: a violated derivation shape is the more specific report.
    LieAlgebra h = reduced_base(g, DerivationShape::Sl3cReal, "reduce_closed");
    if (!ce_d(g, G.phi).is_zero()) throw Error("reduce_closed: phi is not closed");
    KForm omega = restrict_to(contract(7, G.phi), 6);
    KForm psi_plus = restrict_to(G.phi, 6);
    SquareMatrix Jstar = su3_acs(psi_plus, omega);
    // J on vectors is -J*^T in the row-acts convention.
    SquareMatrix Jvec = -Jstar.transpose();
    KForm psi_minus = ParamExpr(Rational(-1, 3)) * matrix_action(Jvec, psi_plus);
    SU3Structure s = SU3Structure::make(std::move(omega), std::move(psi_plus),
                                        std::move(psi_minus));
    if (!classify_su3(h, s).symplectic_half_flat)
        throw Error("reduce_closed: recovered structure is not symplectic half-flat");
    return s;
}

SU3Structure reduce_coclosed(const LieAlgebra& g, const G2Structure& G) {
    LieAlgebra h = reduced_base(g, DerivationShape::Sp6r, "reduce_coclosed");
    if (!ce_d(g, G.star_phi).is_zero()) throw Error("reduce_coclosed: phi is not coclosed");
    KForm omega = restrict_to(contract(7, G.phi), 6);
    KForm psi_minus = -restrict_to(G.phi, 6);
    KForm candidate = hodge_star(psi_minus);
    KForm omega3 = wedge(omega, wedge(omega, omega));
    // psi_plus = +-*psi_minus; the sign is pinned by psi+ ^ psi- = (2/3) omega^3.
    KForm target = ParamExpr(Rational(2, 3)) * omega3;
    KForm psi_plus(6, 3);
    if (wedge(candidate, psi_minus) == target) {
        psi_plus = std::move(candidate);
    } else if (wedge(-candidate, psi_minus) == target) {
        psi_plus = -candidate;
    } else {
        throw Error("reduce_coclosed: no orientation of *psi_minus satisfies the "
                    "volume normalization");
    }
    SU3Structure s = SU3Structure::make(std::move(omega), std::move(psi_plus),
                                        std::move(psi_minus));
    if (!classify_su3(h, s).half_flat)
        throw Error("reduce_coclosed: recovered structure is not half-flat");
    return s;
}

}  // namespace g2ext
