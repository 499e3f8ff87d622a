#pragma once

// Lie algebras given by structure equations de^1, ..., de^n: the
// Chevalley-Eilenberg differential, Jacobi checking, derivation templates
// and solving, and the twisted extension h +_D R e_{n+1}.

#include <vector>

#include "g2ext/exterior.hpp"

namespace g2ext {

// Structure equations only; brackets are recovered on demand as
// [e_i, e_j]^k = -de^k(e_i, e_j).  Parametric coefficients are allowed (they
// arise as extension outputs) but such algebras cannot be solve inputs.
class LieAlgebra {
public:
    explicit LieAlgebra(std::vector<KForm> diffs, bool check_jacobi = false);

    int dim() const { return static_cast<int>(diffs_.size()); }
    // de^k, 1-based.
    const KForm& d_of(int k) const;
    const std::vector<KForm>& diffs() const { return diffs_; }
    bool is_parametric() const;
    LieAlgebra substitute(const std::map<std::string, FieldElement>& values) const;

    friend bool operator==(const LieAlgebra& a, const LieAlgebra& b) {
        return a.diffs_ == b.diffs_;
    }

private:
    std::vector<KForm> diffs_;
};

LieAlgebra make_lie_algebra(std::vector<KForm> diffs, bool check_jacobi = false);

// d on generators from the structure equations, extended as an
// anti-derivation over the wedge.
KForm ce_d(const LieAlgebra& L, const KForm& a);

struct JacobiReport {
    struct Failure {
        int k;           // generator with d^2 e^k != 0
        KForm residual;  // the nonzero d^2 e^k
    };
    std::vector<Failure> failures;
    bool ok() const { return failures.empty(); }
};

// Passes iff d(de^k) = 0 for every k; parametric residuals are reported as
// forms with ParamExpr coefficients.
JacobiReport jacobi_check(const LieAlgebra& L);

// h +_D R e_7 with [e_7, U] = D(U):  de^k gains sum_j D(j,k) e^{j7} for
// k <= 6 and de^7 = 0.  D(j,k) is the coefficient of e_k in D(e_j); this is
// the convention under which the abelian extension reproduces the printed
// equations (de^1 gains -a12 e^{27} from the (2,1) slot).
LieAlgebra extend(const LieAlgebra& h, const SquareMatrix& D);

// D is a derivation of h iff the extension satisfies d^2 = 0.
JacobiReport is_derivation(const LieAlgebra& h, const SquareMatrix& D);

enum class DerivationShape { Sl3cReal, Sp6r, General };

struct DerivationTemplate {
    DerivationShape shape;
    int dim;
    std::vector<std::string> parameters;  // solver order
    SquareMatrix matrix;                  // entries are ParamExpr in the parameters
};

// Sl3cReal: the 16-parameter real representation of trace-free 3x3 complex
// matrices.  Sp6r: the 21-parameter infinitesimal symplectic shape.  General:
// dim^2 independent parameters d{j}{k}.
DerivationTemplate derivation_template(DerivationShape shape, int dim = 6);

// Entrywise linear conditions cutting out the template's span; returns one
// (description, residual) pair per violated condition, empty when M lies in
// the span.
std::vector<std::pair<std::string, ParamExpr>> shape_residuals(const SquareMatrix& M,
                                                               DerivationShape shape);

// The homogeneous system cutting out the derivations of shape t: every
// coefficient of every d^2 e^k on the parametric extension.  Each row is
// affine-linear with zero constant part because h satisfies Jacobi;
// violations abort.
std::vector<ParamExpr> derivation_system(const LieAlgebra& h, const DerivationTemplate& t);

// Solves derivation_system(h, t).
SolutionSpace solve_derivations(const LieAlgebra& h, const DerivationTemplate& t);

// The template evaluated at a point of the solution space, coordinates taken
// in the basis of s.
SquareMatrix instantiate(const DerivationTemplate& t, const SolutionSpace& s,
                         const std::vector<FieldElement>& coords);

// The template with the solution substituted in, leaving one symbolic
// parameter per free column (named by that column's parameter).
SquareMatrix solved_template(const DerivationTemplate& t, const SolutionSpace& s);

// Reads D back off a dim-7 extension: D(j,k) = coefficient of e^{j7} in de^k.
SquareMatrix adjoint_matrix_of_extension(const LieAlgebra& g);

}  // namespace g2ext
