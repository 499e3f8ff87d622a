#include "g2ext/io.hpp"

#include <cctype>
#include <sstream>

namespace g2ext {

namespace {

struct Cursor {
    const std::string& text;
    size_t pos = 0;

    explicit Cursor(const std::string& t) : text(t) {}

    int line() const {
        return 1 + static_cast<int>(std::count(text.begin(), text.begin() + pos, '\n'));
    }
    int column() const {
        size_t nl = text.rfind('\n', pos == 0 ? 0 : pos - 1);
        return pos == 0 ? 1
                        : static_cast<int>(pos - (nl == std::string::npos ? 0 : nl + 1)) + 1;
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg, line(), column());
    }

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= text.size();
    }
    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }
    bool accept(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    bool at_digit() { return std::isdigit(static_cast<unsigned char>(peek())); }
    bool at_alpha() { return std::isalpha(static_cast<unsigned char>(peek())); }

    std::string read_digits() {
        skip_ws();
        size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) fail("expected digits");
        return text.substr(start, pos - start);
    }

    Rational read_unsigned_rational() {
        std::string num = read_digits();
        std::string den = "1";
        if (pos < text.size() && text[pos] == '/') {
            ++pos;
            den = read_digits();
        }
        Rational r{mpz_class(num), mpz_class(den)};
        r.canonicalize();
        return r;
    }

    std::string read_ident() {
        skip_ws();
        size_t start = pos;
        if (pos >= text.size() || !(std::isalpha(static_cast<unsigned char>(text[pos]))))
            fail("expected identifier");
        ++pos;
        while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) ||
                                     text[pos] == '_'))
            ++pos;
        return text.substr(start, pos - start);
    }

    int read_int() {
        std::string d = read_digits();
        return std::stoi(d);
    }
};

struct ScalarContext {
    FieldPtr field;  // may be null (plain Q)
    bool allow_parameters = false;
};

FieldElement generator_power(const ScalarContext& ctx, int power, Cursor& cur) {
    if (!ctx.field || ctx.field->degree() == 1)
        cur.fail("generator power used without a field declaration");
    if (power < 0) cur.fail("negative generator power");
    FieldElement g = FieldElement::generator(ctx.field);
    FieldElement acc(1);
    for (int i = 0; i < power; ++i) acc *= g;
    return acc;
}

// One signed product of factors:  rational, generator powers, at most one
// parameter.  Stops before "e^{...}" when form_context is set, reporting the
// pending factor through 'leading'.
struct Factors {
    FieldElement constant = FieldElement(1);
    std::string parameter;  // empty = none
};

// Parses factors up to (not including) a monomial token.  Returns false if
// the term is just a monomial with implicit coefficient 1.
Factors parse_factors(Cursor& cur, const ScalarContext& ctx, bool form_context,
                      bool& saw_any) {
    Factors f;
    saw_any = false;
    for (;;) {
        cur.skip_ws();
        if (cur.at_digit()) {
            f.constant *= FieldElement(cur.read_unsigned_rational());
            saw_any = true;
        } else if (cur.at_alpha()) {
            size_t save = cur.pos;
            std::string id = cur.read_ident();
            if (form_context && id == "e" && cur.peek() == '^') {
                cur.pos = save;  // monomial follows; leave it to the caller
                return f;
            }
            if (ctx.field && id == ctx.field->generator_name() && cur.peek() == '^') {
                cur.expect('^');
                int p = cur.read_int();
                f.constant *= generator_power(ctx, p, cur);
                saw_any = true;
            } else if (!ctx.field && id == "a" && cur.peek() == '^') {
                cur.pos = save;
                cur.fail("generator power used without a field declaration");
            } else {
                if (!ctx.allow_parameters) {
                    cur.pos = save;
                    cur.fail("parameter '" + id + "' not allowed here");
                }
                if (id == "e") {
                    cur.pos = save;
                    cur.fail("'e' is reserved for basis monomials");
                }
                if (!f.parameter.empty()) {
                    cur.pos = save;
                    cur.fail("product of two parameters is not affine");
                }
                f.parameter = id;
                saw_any = true;
            }
        } else {
            if (!saw_any) cur.fail("expected coefficient or monomial");
            return f;
        }
        if (!cur.accept('*')) {
            // '*' is optional before a monomial; mandatory between factors
            // otherwise, so a following letter/digit without '*' is only
            // legal when it starts a monomial.
            cur.skip_ws();
            if (form_context && cur.at_alpha()) continue;  // possibly e^{...}
            return f;
        }
    }
}

ParamExpr factors_to_scalar(const Factors& f) {
    if (f.parameter.empty()) return ParamExpr(f.constant);
    return ParamExpr::parameter(f.parameter, f.constant);
}

// Raw monomial term collected before the ambient dimension is known.
struct RawTerm {
    IndexTuple indices;
    ParamExpr coeff;
};

struct RawForm {
    std::vector<RawTerm> terms;
    int max_index = 0;
    bool explicit_zero = false;
};

IndexTuple parse_monomial_indices(Cursor& cur) {
    std::string e = cur.read_ident();
    if (e != "e") cur.fail("expected basis monomial e^{...}");
    cur.expect('^');
    cur.expect('{');
    IndexTuple idx;
    for (;;) {
        char c = cur.peek();
        if (c == ',') cur.fail("multi-digit indices not implemented");
        if (!std::isdigit(static_cast<unsigned char>(c))) break;
        ++cur.pos;
        int v = c - '0';
        if (v == 0) cur.fail("basis indices start at 1");
        for (int seen : idx)
            if (seen == v) cur.fail("repeated index inside one monomial");
        idx.push_back(v);
    }
    if (idx.empty()) cur.fail("empty monomial");
    cur.expect('}');
    return idx;
}

RawForm parse_expr(Cursor& cur, const ScalarContext& ctx) {
    RawForm out;
    cur.skip_ws();
    // A literal lone zero.
    if (cur.peek() == '0') {
        size_t save = cur.pos;
        ++cur.pos;
        cur.skip_ws();
        char c = cur.pos < cur.text.size() ? cur.text[cur.pos] : '\0';
        if (c != '/' && !std::isdigit(static_cast<unsigned char>(c))) {
            out.explicit_zero = true;
            return out;
        }
        cur.pos = save;
    }
    bool first = true;
    for (;;) {
        cur.skip_ws();
        int sign = 1;
        if (cur.accept('-')) {
            sign = -1;
        } else if (cur.accept('+')) {
            sign = 1;
        } else if (!first) {
            break;
        }
        bool saw_factors = false;
        Factors f = parse_factors(cur, ctx, /*form_context=*/true, saw_factors);
        IndexTuple idx = parse_monomial_indices(cur);
        ParamExpr c = factors_to_scalar(f);
        if (sign < 0) c = -c;
        for (int i : idx) out.max_index = std::max(out.max_index, i);
        out.terms.push_back({std::move(idx), std::move(c)});
        first = false;
    }
    return out;
}

ParamExpr parse_scalar_expr(Cursor& cur, const ScalarContext& ctx) {
    cur.skip_ws();
    if (cur.peek() == '0') {
        size_t save = cur.pos;
        ++cur.pos;
        cur.skip_ws();
        char c = cur.pos < cur.text.size() ? cur.text[cur.pos] : '\0';
        if (c != '/' && !std::isdigit(static_cast<unsigned char>(c))) return ParamExpr();
        cur.pos = save;
    }
    ParamExpr acc;
    bool first = true;
    for (;;) {
        cur.skip_ws();
        int sign = 1;
        if (cur.accept('-')) {
            sign = -1;
        } else if (cur.accept('+')) {
            sign = 1;
        } else if (!first) {
            break;
        }
        bool saw = false;
        Factors f = parse_factors(cur, ctx, /*form_context=*/false, saw);
        if (!saw) cur.fail("expected scalar term");
        ParamExpr t = factors_to_scalar(f);
        acc += sign < 0 ? -t : t;
        first = false;
    }
    return acc;
}

// Monic polynomial in x, e.g. "x^6-3", "x^2-5", "x".
std::vector<Rational> parse_poly(Cursor& cur) {
    std::map<int, Rational> coeffs;
    bool first = true;
    for (;;) {
        cur.skip_ws();
        int sign = 1;
        if (cur.accept('-')) {
            sign = -1;
        } else if (cur.accept('+')) {
            sign = 1;
        } else if (!first) {
            break;
        }
        Rational c(1);
        bool have_coeff = false;
        if (cur.at_digit()) {
            c = cur.read_unsigned_rational();
            have_coeff = true;
            if (!cur.accept('*')) {
                // allow "2x" style? keep strict: a power must follow * or stand alone
            }
        }
        int power = 0;
        cur.skip_ws();
        if (cur.at_alpha()) {
            std::string id = cur.read_ident();
            if (id != "x") cur.fail("polynomial variable must be x");
            power = 1;
            if (cur.accept('^')) power = cur.read_int();
        } else if (!have_coeff) {
            cur.fail("expected polynomial term");
        }
        Rational signed_c = sign < 0 ? Rational(-c) : c;
        coeffs[power] += signed_c;
        first = false;
    }
    if (coeffs.empty()) cur.fail("empty polynomial");
    int deg = coeffs.rbegin()->first;
    std::vector<Rational> out(deg + 1, Rational(0));
    for (const auto& [p, c] : coeffs) out[p] = c;
    return out;
}

FieldPtr parse_field_header(Cursor& cur) {
    size_t save = cur.pos;
    cur.skip_ws();
    if (!cur.at_alpha()) return nullptr;
    std::string id = cur.read_ident();
    if (id != "field" || !cur.accept(':')) {
        cur.pos = save;
        return nullptr;
    }
    std::vector<Rational> poly = parse_poly(cur);
    return NumberField::make(std::move(poly));
}

KForm materialize(const RawForm& raw, int dim, int default_degree, Cursor& cur) {
    int degree = default_degree;
    if (!raw.terms.empty()) degree = static_cast<int>(raw.terms.front().indices.size());
    KForm f(dim, degree);
    for (const auto& t : raw.terms) {
        if (static_cast<int>(t.indices.size()) != degree)
            cur.fail("mixed degrees inside one expression");
        for (int i : t.indices)
            if (i > dim) cur.fail("index " + std::to_string(i) + " exceeds dimension " +
                                  std::to_string(dim));
        f.add_term(t.indices, t.coeff);
    }
    return f;
}

}  // namespace

FieldPtr parse_field_poly(const std::string& poly_text) {
    Cursor cur(poly_text);
    std::vector<Rational> poly = parse_poly(cur);
    if (!cur.eof()) cur.fail("trailing input after polynomial");
    return NumberField::make(std::move(poly));
}

ParsedAlgebra parse_algebra(const std::string& text, bool allow_parameters) {
    Cursor cur(text);
    ParsedAlgebra out;
    out.field = parse_field_header(cur);
    ScalarContext ctx{out.field, allow_parameters};

    cur.expect('(');
    std::vector<RawForm> raw;
    for (;;) {
        raw.push_back(parse_expr(cur, ctx));
        if (cur.accept(')')) break;
        cur.expect(',');
    }
    const int n = static_cast<int>(raw.size());
    if (n > 9) cur.fail("dimensions above 9 are not supported");
    for (RawForm& r : raw) {
        if (r.max_index > n)
            cur.fail("index " + std::to_string(r.max_index) + " exceeds dimension " +
                     std::to_string(n));
    }
    for (RawForm& r : raw) out.diffs.push_back(materialize(r, n, 2, cur));
    for (const KForm& d : out.diffs)
        if (d.degree() != 2 && !d.is_zero())
            cur.fail("structure equations must be 2-forms");
    // Zero entries parse as degree-2 zero forms.
    for (KForm& d : out.diffs)
        if (d.is_zero() && d.degree() != 2) d = KForm(n, 2);

    while (!cur.eof()) {
        std::string name = cur.read_ident();
        cur.expect(':');
        RawForm r = parse_expr(cur, ctx);
        KForm f = materialize(r, n, 0, cur);
        if (out.named_forms.count(name)) cur.fail("duplicate named form '" + name + "'");
        out.named_forms.emplace(std::move(name), std::move(f));
    }
    return out;
}

std::map<std::string, KForm> parse_named_forms(const std::string& text, int dim,
                                               bool allow_parameters) {
    Cursor cur(text);
    FieldPtr field = parse_field_header(cur);
    ScalarContext ctx{field, allow_parameters};
    std::map<std::string, KForm> out;
    while (!cur.eof()) {
        std::string name = cur.read_ident();
        cur.expect(':');
        RawForm r = parse_expr(cur, ctx);
        KForm f = materialize(r, dim, 0, cur);
        if (out.count(name)) cur.fail("duplicate named form '" + name + "'");
        out.emplace(std::move(name), std::move(f));
    }
    return out;
}

KForm parse_form(const std::string& text, int dim, const FieldPtr& field,
                 bool allow_parameters) {
    Cursor cur(text);
    ScalarContext ctx{field, allow_parameters};
    RawForm raw = parse_expr(cur, ctx);
    if (!cur.eof()) cur.fail("trailing input after form");
    return materialize(raw, dim, 0, cur);
}

ParsedMatrix parse_matrix(const std::string& text) {
    Cursor cur(text);
    FieldPtr field = parse_field_header(cur);
    ScalarContext ctx{field, /*allow_parameters=*/true};
    std::vector<std::vector<ParamExpr>> rows;
    while (!cur.eof()) {
        cur.expect('[');
        std::vector<ParamExpr> row;
        for (;;) {
            row.push_back(parse_scalar_expr(cur, ctx));
            if (cur.accept(']')) break;
            cur.expect(',');
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) cur.fail("matrix file has no rows");
    const int n = static_cast<int>(rows.size());
    for (const auto& r : rows)
        if (static_cast<int>(r.size()) != n) cur.fail("matrix is not square");
    SquareMatrix m(n);
    for (int j = 1; j <= n; ++j)
        for (int k = 1; k <= n; ++k) m.at(j, k) = rows[j - 1][k - 1];
    return {std::move(field), std::move(m)};
}

ParamExpr parse_scalar(const std::string& text, const FieldPtr& field, bool allow_parameters) {
    Cursor cur(text);
    ScalarContext ctx{field, allow_parameters};
    ParamExpr e = parse_scalar_expr(cur, ctx);
    if (!cur.eof()) cur.fail("trailing input after scalar");
    return e;
}

namespace {

// One printable product: sign * |rat| * a^power * parameter * e^{indices}.
struct Piece {
    Rational rat;
    int apow = 0;
    std::string parameter;
    const IndexTuple* indices = nullptr;
};

void emit_piece(std::ostringstream& os, const Piece& p, bool first) {
    Rational mag = p.rat;
    bool neg = mag < 0;
    if (neg) mag = -mag;
    if (neg)
        os << '-';
    else if (!first)
        os << '+';
    bool printed = false;
    bool unit = (mag == 1);
    bool has_tail = p.apow > 0 || !p.parameter.empty() || p.indices != nullptr;
    if (!unit || !has_tail) {
        os << mag.get_str();
        printed = true;
    }
    if (p.apow > 0) {
        if (printed) os << '*';
        os << "a^" << p.apow;
        printed = true;
    }
    if (!p.parameter.empty()) {
        if (printed) os << '*';
        os << p.parameter;
        printed = true;
    }
    if (p.indices) {
        if (printed) os << '*';
        os << "e^{";
        for (int i : *p.indices) os << i;
        os << '}';
    }
}

void pieces_of_field_element(const FieldElement& x, const std::string& parameter,
                             const IndexTuple* indices, std::vector<Piece>& out) {
    const auto& c = x.coeffs();
    for (size_t p = 0; p < c.size(); ++p) {
        if (c[p] == 0) continue;
        out.push_back({c[p], static_cast<int>(p), parameter, indices});
    }
}

void pieces_of_scalar(const ParamExpr& x, const IndexTuple* indices, std::vector<Piece>& out) {
    pieces_of_field_element(x.constant(), "", indices, out);
    for (const auto& [name, coeff] : x.terms())
        pieces_of_field_element(coeff, name, indices, out);
}

std::string emit_pieces(const std::vector<Piece>& pieces) {
    if (pieces.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const Piece& p : pieces) {
        emit_piece(os, p, first);
        first = false;
    }
    return os.str();
}

}  // namespace

std::string print_rational(const Rational& r) { return r.get_str(); }

std::string print_scalar(const FieldElement& x) {
    std::vector<Piece> pieces;
    pieces_of_field_element(x, "", nullptr, pieces);
    return emit_pieces(pieces);
}

std::string print_scalar(const ParamExpr& x) {
    std::vector<Piece> pieces;
    pieces_of_scalar(x, nullptr, pieces);
    return emit_pieces(pieces);
}

std::string print_form(const KForm& f) {
    if (f.dim() > 9) throw Error("printing dimensions above 9 is not supported");
    std::vector<Piece> pieces;
    for (const auto& [idx, c] : f.terms())
        pieces_of_scalar(c, idx.empty() ? nullptr : &idx, pieces);
    return emit_pieces(pieces);
}

std::string print_algebra(const LieAlgebra& L, const FieldPtr& field) {
    std::ostringstream os;
    if (field && field->degree() > 1) os << "field: " << print_field_poly(*field) << "\n";
    os << '(';
    for (int k = 1; k <= L.dim(); ++k) {
        if (k > 1) os << ',';
        os << print_form(L.d_of(k));
    }
    os << ')';
    return os.str();
}

std::string print_matrix(const SquareMatrix& m, const FieldPtr& field) {
    std::ostringstream os;
    if (field && field->degree() > 1) os << "field: " << print_field_poly(*field) << "\n";
    for (int j = 1; j <= m.dim(); ++j) {
        os << '[';
        for (int k = 1; k <= m.dim(); ++k) {
            if (k > 1) os << ',';
            os << print_scalar(m.at(j, k));
        }
        os << "]";
        if (j < m.dim()) os << "\n";
    }
    return os.str();
}

std::string print_field_poly(const NumberField& f) {
    std::ostringstream os;
    const auto& c = f.min_poly();
    bool first = true;
    for (int p = static_cast<int>(c.size()) - 1; p >= 0; --p) {
        if (c[p] == 0) continue;
        Rational mag = c[p];
        bool neg = mag < 0;
        if (neg) mag = -mag;
        if (neg)
            os << '-';
        else if (!first)
            os << '+';
        if (p == 0) {
            os << mag.get_str();
        } else {
            if (mag != 1) os << mag.get_str() << '*';
            os << 'x';
            if (p > 1) os << '^' << p;
        }
        first = false;
    }
    return os.str();
}

}  // namespace g2ext
