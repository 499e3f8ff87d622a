#pragma once

// Text grammar for structure equations, forms, matrices and scalars, plus
// the matching printers.  The grammar is ASCII and round-trip stable:
// parse(print(x)) == x.
//
//   algebra file :=  [ "field:" poly NEWLINE ]
//                    "(" expr ("," expr)* ")"
//                    { name ":" expr }                 -- optional named forms
//   poly         :=  monic polynomial in x over Q, e.g. "x^2-5", "x^6-3", "x"
//   expr         :=  "0" | [sign] term { sign term }
//   term         :=  { factor "*" } "e^{" digit+ "}"   -- digits are single indices
//   factor       :=  rational | "a^" int | ident       -- ident in matrix files only
//   matrix file  :=  [ "field:" poly NEWLINE ]  n rows "[" scalar ("," scalar)* "]"
//   scalar       :=  "0" | [sign] { factor "*" } factor
//
// Algebraic constants print as polynomials in the generator ("1/2+1/2*a^1"),
// never as radicals.  Dimension is inferred from the number of structure
// equations; multi-digit indices (dim > 9) are not supported.

#include <string>

#include "g2ext/liealg.hpp"

namespace g2ext {

struct ParsedAlgebra {
    FieldPtr field;  // null when the file declares no extension
    std::vector<KForm> diffs;
    std::map<std::string, KForm> named_forms;

    LieAlgebra algebra() const { return LieAlgebra(diffs); }
};

// allow_parameters admits bare identifiers as parameter coefficients; the
// CLI file surface keeps it off for forms, on for matrices.
ParsedAlgebra parse_algebra(const std::string& text, bool allow_parameters = false);

KForm parse_form(const std::string& text, int dim, const FieldPtr& field = nullptr,
                 bool allow_parameters = false);

// A forms-only file: optional field header, then "name: expr" entries.
std::map<std::string, KForm> parse_named_forms(const std::string& text, int dim,
                                               bool allow_parameters = false);

struct ParsedMatrix {
    FieldPtr field;
    SquareMatrix matrix;
};

ParsedMatrix parse_matrix(const std::string& text);

ParamExpr parse_scalar(const std::string& text, const FieldPtr& field = nullptr,
                       bool allow_parameters = true);

FieldPtr parse_field_poly(const std::string& poly_text);

std::string print_rational(const Rational& r);
std::string print_scalar(const FieldElement& x);
std::string print_scalar(const ParamExpr& x);
std::string print_form(const KForm& f);
std::string print_algebra(const LieAlgebra& L, const FieldPtr& field = nullptr);
std::string print_matrix(const SquareMatrix& m, const FieldPtr& field = nullptr);
std::string print_field_poly(const NumberField& f);

}  // namespace g2ext
