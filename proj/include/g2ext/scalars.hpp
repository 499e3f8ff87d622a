#pragma once

// Exact scalar arithmetic: rationals, a single algebraic extension Q(alpha),
// affine-linear expressions in named parameters, and an exact homogeneous
// linear solver.  Everything here is an immutable value; operations are pure.

#include <gmpxx.h>

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace g2ext {

using Rational = mpq_class;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Product of two genuinely parametric expressions.  The derivation systems
// solved here are affine-linear by construction, so this always means a bug
// in the caller, never a representable value.
struct QuadraticParamError : Error {
    using Error::Error;
};

// A homogeneous solve was handed a row with a nonzero constant part.
struct InconsistentSystemError : Error {
    using Error::Error;
};

struct ParseError : Error {
    int line;
    int column;
    ParseError(const std::string& msg, int line_, int column_)
        : Error(msg + " (line " + std::to_string(line_) + ", column " +
                std::to_string(column_) + ")"),
          line(line_),
          column(column_) {}
};

class NumberField;
using FieldPtr = std::shared_ptr<const NumberField>;

// Q(alpha) for alpha a root of a declared monic polynomial.  Degree 1 is
// plain Q.  Irreducibility is checked by a rational-root test for degree 2
// and 3; higher degrees are the caller's responsibility.
class NumberField {
public:
    static FieldPtr make(std::vector<Rational> min_poly,
                         std::string generator_name = "a");
    static FieldPtr rationals();  // the degree-1 field x

    int degree() const { return static_cast<int>(min_poly_.size()) - 1; }
    const std::vector<Rational>& min_poly() const { return min_poly_; }
    const std::string& generator_name() const { return generator_name_; }
    bool same_as(const NumberField& other) const;

private:
    NumberField(std::vector<Rational> min_poly, std::string generator_name)
        : min_poly_(std::move(min_poly)),
          generator_name_(std::move(generator_name)) {}

    std::vector<Rational> min_poly_;  // c0 + c1 x + ... + x^d
    std::string generator_name_;
};

// Element of Q(alpha) in the power basis 1, alpha, ..., alpha^{d-1}.
// A null field pointer means plain Q; rationals promote silently into any
// extension, but two distinct proper extensions never mix.
class FieldElement {
public:
    FieldElement() : coeffs_{Rational(0)} {}
    FieldElement(Rational r) : coeffs_{std::move(r)} {}
    FieldElement(int n) : coeffs_{Rational(n)} {}
    FieldElement(long n) : coeffs_{Rational(n)} {}

    static FieldElement generator(const FieldPtr& field);
    static FieldElement from_coeffs(FieldPtr field, std::vector<Rational> coeffs);

    const FieldPtr& field() const { return field_; }
    const std::vector<Rational>& coeffs() const { return coeffs_; }

    bool is_zero() const;
    bool is_one() const;
    bool is_rational() const;
    // Throws unless is_rational().
    Rational rational_value() const;

    FieldElement operator-() const;
    FieldElement& operator+=(const FieldElement& o);
    FieldElement& operator-=(const FieldElement& o);
    FieldElement& operator*=(const FieldElement& o);
    FieldElement& operator/=(const FieldElement& o);
    FieldElement inverse() const;

    friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
    friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
    friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
    friend FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }
    friend bool operator==(const FieldElement& a, const FieldElement& b);
    friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }

private:
    FieldElement(FieldPtr field, std::vector<Rational> coeffs)
        : field_(std::move(field)), coeffs_(std::move(coeffs)) {}

    // Promotes *this and o to a common field in place; throws on a genuine mix.
    static void align(FieldElement& a, FieldElement& b);
    void reduce();  // canonical form: exactly degree() coefficients

    FieldPtr field_;  // null = plain Q
    std::vector<Rational> coeffs_;
};

// Affine-linear expression  constant + sum coeff_p * p  over named parameters.
// Canonical form stores no zero parameter coefficients.  Multiplication is
// defined only when at least one factor is constant.
class ParamExpr {
public:
    ParamExpr() = default;
    ParamExpr(FieldElement c) : constant_(std::move(c)) {}
    ParamExpr(Rational r) : constant_(FieldElement(std::move(r))) {}
    ParamExpr(int n) : constant_(FieldElement(n)) {}

    static ParamExpr parameter(const std::string& name,
                               FieldElement coeff = FieldElement(1));

    bool is_zero() const;
    bool is_constant() const { return terms_.empty(); }
    const FieldElement& constant() const { return constant_; }
    const std::map<std::string, FieldElement>& terms() const { return terms_; }
    FieldElement coefficient(const std::string& name) const;

    // Partial substitution: parameters absent from the map stay symbolic.
    ParamExpr substitute(const std::map<std::string, FieldElement>& values) const;

    ParamExpr operator-() const;
    ParamExpr& operator+=(const ParamExpr& o);
    ParamExpr& operator-=(const ParamExpr& o);
    ParamExpr& operator*=(const ParamExpr& o);

    friend ParamExpr operator+(ParamExpr a, const ParamExpr& b) { return a += b; }
    friend ParamExpr operator-(ParamExpr a, const ParamExpr& b) { return a -= b; }
    friend ParamExpr operator*(ParamExpr a, const ParamExpr& b) { return a *= b; }
    friend bool operator==(const ParamExpr& a, const ParamExpr& b);
    friend bool operator!=(const ParamExpr& a, const ParamExpr& b) { return !(a == b); }

private:
    void prune();

    FieldElement constant_;
    std::map<std::string, FieldElement> terms_;
};

// Basis of a linear subspace of parameter assignments.  The basis is the
// reduced row-echelon null-space basis: one vector per free column, with 1
// at its own free column and 0 at every other free column, free columns in
// parameter order.
struct SolutionSpace {
    std::vector<std::string> parameter_names;
    std::vector<std::vector<FieldElement>> basis;
    std::vector<int> free_columns;  // index into parameter_names, one per basis vector

    int dimension() const { return static_cast<int>(basis.size()); }
    bool contains(const std::vector<FieldElement>& v) const;
    // Mutual containment of spans.
    bool same_span(const SolutionSpace& other) const;
};

// Exact null space of a homogeneous system.  Every row must have zero
// constant part; a nonzero constant row throws InconsistentSystemError
// ("template admits no derivation of this shape").  Pivoting is by first
// nonzero entry in parameter order, so the result is deterministic.
SolutionSpace solve_homogeneous(const std::vector<ParamExpr>& rows,
                                const std::vector<std::string>& parameters);

}  // namespace g2ext
