#include "g2ext/scalars.hpp"

#include <algorithm>

namespace g2ext {

namespace {

// Dense polynomials over Q, lowest degree first, with no trailing zeros
// except that the zero polynomial is the empty vector.
using Poly = std::vector<Rational>;

void poly_trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

Poly poly_mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, Rational(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    poly_trim(r);
    return r;
}

Poly poly_sub(Poly a, const Poly& b) {
    if (a.size() < b.size()) a.resize(b.size(), Rational(0));
    for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    poly_trim(a);
    return a;
}

Poly poly_scale(Poly a, const Rational& c) {
    for (auto& x : a) x *= c;
    poly_trim(a);
    return a;
}

// Remainder of a by b; b need not be monic.
Poly poly_mod(Poly a, const Poly& b) {
    poly_trim(a);
    while (a.size() >= b.size() && !a.empty()) {
        Rational q = a.back() / b.back();
        size_t shift = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= q * b[i];
        poly_trim(a);
    }
    return a;
}

// Extended Euclid: returns (g, u) with u*a = g mod m, g the monic gcd.
std::pair<Poly, Poly> poly_half_ext_gcd(Poly a, Poly m) {
    Poly r0 = std::move(m), r1 = std::move(a);
    Poly u0 = {}, u1 = {Rational(1)};
    while (!r1.empty()) {
        // r0 = q*r1 + r2
        Poly q;
        Poly rem = r0;
        poly_trim(rem);
        if (rem.size() >= r1.size()) {
            q.assign(rem.size() - r1.size() + 1, Rational(0));
            while (rem.size() >= r1.size() && !rem.empty()) {
                Rational c = rem.back() / r1.back();
                size_t shift = rem.size() - r1.size();
                q[shift] = c;
                for (size_t i = 0; i < r1.size(); ++i) rem[shift + i] -= c * r1[i];
                poly_trim(rem);
            }
        }
        Poly u2 = poly_sub(u0, poly_mul(q, u1));
        r0 = std::move(r1);
        r1 = std::move(rem);
        u0 = std::move(u1);
        u1 = std::move(u2);
    }
    if (!r0.empty() && r0.back() != 1) {
        Rational inv = 1 / r0.back();
        r0 = poly_scale(r0, inv);
        u0 = poly_scale(u0, inv);
    }
    return {r0, u0};
}

// Rational-root test; valid as an irreducibility test for degrees 2 and 3.
bool has_rational_root(const std::vector<Rational>& poly) {
    // Clear denominators to an integer polynomial.
    mpz_class lcm_den(1);
    for (const auto& c : poly) {
        mpz_class d = c.get_den();
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), lcm_den.get_mpz_t(), d.get_mpz_t());
        lcm_den = lcm_den / g * d;
    }
    std::vector<mpz_class> ip;
    ip.reserve(poly.size());
    for (const auto& c : poly) {
        Rational scaled = c * Rational(lcm_den);
        ip.push_back(scaled.get_num());
    }
    auto eval_at = [&](const Rational& x) {
        Rational acc(0);
        for (auto it = ip.rbegin(); it != ip.rend(); ++it) acc = acc * x + Rational(*it);
        return acc == 0;
    };
    if (ip.front() == 0) return true;  // root 0
    mpz_class a0 = abs(ip.front());
    mpz_class an = abs(ip.back());
    for (mpz_class p(1); p <= a0; ++p) {
        if (a0 % p != 0) continue;
        for (mpz_class q(1); q <= an; ++q) {
            if (an % q != 0) continue;
            Rational cand(p, q);
            cand.canonicalize();
            if (eval_at(cand) || eval_at(-cand)) return true;
        }
    }
    return false;
}

}  // namespace

FieldPtr NumberField::make(std::vector<Rational> min_poly, std::string generator_name) {
    if (min_poly.size() < 2) throw Error("number field: minimal polynomial must have degree >= 1");
    if (min_poly.back() != 1) throw Error("number field: minimal polynomial must be monic");
    int deg = static_cast<int>(min_poly.size()) - 1;
    if ((deg == 2 || deg == 3) && has_rational_root(min_poly))
        throw Error("number field: polynomial of degree " + std::to_string(deg) +
                    " has a rational root, not irreducible");
    if (generator_name.empty()) throw Error("number field: empty generator name");
    return FieldPtr(new NumberField(std::move(min_poly), std::move(generator_name)));
}

FieldPtr NumberField::rationals() {
    static FieldPtr q = FieldPtr(new NumberField({Rational(0), Rational(1)}, "a"));
    return q;
}

bool NumberField::same_as(const NumberField& other) const {
    return min_poly_ == other.min_poly_;
}

FieldElement FieldElement::generator(const FieldPtr& field) {
    if (!field) throw Error("generator of null field");
    std::vector<Rational> c(field->degree(), Rational(0));
    if (field->degree() == 1) {
        c[0] = -field->min_poly()[0];  // x - r: the generator is just r
    } else {
        c[1] = 1;
    }
    return FieldElement(field, std::move(c));
}

FieldElement FieldElement::from_coeffs(FieldPtr field, std::vector<Rational> coeffs) {
    if (!field) throw Error("from_coeffs: null field");
    if (static_cast<int>(coeffs.size()) != field->degree())
        throw Error("from_coeffs: expected " + std::to_string(field->degree()) +
                    " coefficients");
    return FieldElement(std::move(field), std::move(coeffs));
}

bool FieldElement::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(),
                       [](const Rational& c) { return c == 0; });
}

bool FieldElement::is_one() const {
    if (coeffs_[0] != 1) return false;
    return std::all_of(coeffs_.begin() + 1, coeffs_.end(),
                       [](const Rational& c) { return c == 0; });
}

bool FieldElement::is_rational() const {
    return std::all_of(coeffs_.begin() + 1, coeffs_.end(),
                       [](const Rational& c) { return c == 0; });
}

Rational FieldElement::rational_value() const {
    if (!is_rational()) throw Error("field element is not rational");
    return coeffs_[0];
}

void FieldElement::align(FieldElement& a, FieldElement& b) {
    const bool a_ext = a.field_ && a.field_->degree() > 1;
    const bool b_ext = b.field_ && b.field_->degree() > 1;
    if (a_ext && b_ext) {
        if (!a.field_->same_as(*b.field_))
            throw Error("mixed number fields: " + a.field_->generator_name() + " vs " +
                        b.field_->generator_name());
        return;
    }
    if (a_ext && !b_ext) {
        Rational v = b.coeffs_[0];
        b.field_ = a.field_;
        b.coeffs_.assign(a.coeffs_.size(), Rational(0));
        b.coeffs_[0] = std::move(v);
        return;
    }
    if (b_ext && !a_ext) {
        align(b, a);
        return;
    }
    // Both effectively rational; normalize representation to length 1.
    a = FieldElement(a.coeffs_[0]);
    b = FieldElement(b.coeffs_[0]);
}

void FieldElement::reduce() {
    if (!field_) return;
    Poly p(coeffs_.begin(), coeffs_.end());
    p = poly_mod(std::move(p), Poly(field_->min_poly().begin(), field_->min_poly().end()));
    coeffs_.assign(field_->degree(), Rational(0));
    for (size_t i = 0; i < p.size(); ++i) coeffs_[i] = p[i];
}

FieldElement FieldElement::operator-() const {
    FieldElement r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

FieldElement& FieldElement::operator+=(const FieldElement& o) {
    FieldElement b = o;
    align(*this, b);
    for (size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += b.coeffs_[i];
    return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& o) {
    FieldElement b = o;
    align(*this, b);
    for (size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= b.coeffs_[i];
    return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& o) {
    FieldElement b = o;
    align(*this, b);
    Poly prod = poly_mul(Poly(coeffs_.begin(), coeffs_.end()),
                         Poly(b.coeffs_.begin(), b.coeffs_.end()));
    if (field_ && prod.size() > coeffs_.size())
        prod = poly_mod(std::move(prod),
                        Poly(field_->min_poly().begin(), field_->min_poly().end()));
    coeffs_.assign(coeffs_.size(), Rational(0));
    for (size_t i = 0; i < prod.size(); ++i) coeffs_[i] = prod[i];
    return *this;
}

FieldElement FieldElement::inverse() const {
    if (is_zero()) throw Error("division by zero");
    if (is_rational() && (!field_ || field_->degree() == 1))
        return FieldElement(1 / coeffs_[0]);
    Poly a(coeffs_.begin(), coeffs_.end());
    poly_trim(a);
    Poly m(field_->min_poly().begin(), field_->min_poly().end());
    auto [g, u] = poly_half_ext_gcd(a, m);
    if (g.size() != 1)
        throw Error("element not invertible: minimal polynomial is not irreducible");
    Poly inv = poly_mod(std::move(u), m);
    std::vector<Rational> c(field_->degree(), Rational(0));
    for (size_t i = 0; i < inv.size(); ++i) c[i] = inv[i];
    return FieldElement(field_, std::move(c));
}

FieldElement& FieldElement::operator/=(const FieldElement& o) {
    FieldElement b = o;
    FieldElement a = *this;
    align(a, b);
    *this = a * b.inverse();
    return *this;
}

bool operator==(const FieldElement& a, const FieldElement& b) {
    FieldElement x = a, y = b;
    FieldElement::align(x, y);
    return x.coeffs_ == y.coeffs_;
}

ParamExpr ParamExpr::parameter(const std::string& name, FieldElement coeff) {
    ParamExpr e;
    if (!coeff.is_zero()) e.terms_.emplace(name, std::move(coeff));
    return e;
}

bool ParamExpr::is_zero() const { return terms_.empty() && constant_.is_zero(); }

FieldElement ParamExpr::coefficient(const std::string& name) const {
    auto it = terms_.find(name);
    return it == terms_.end() ? FieldElement(0) : it->second;
}

ParamExpr ParamExpr::substitute(const std::map<std::string, FieldElement>& values) const {
    ParamExpr r(constant_);
    for (const auto& [name, coeff] : terms_) {
        auto it = values.find(name);
        if (it == values.end())
            r.terms_.emplace(name, coeff);
        else
            r.constant_ += coeff * it->second;
    }
    r.prune();
    return r;
}

void ParamExpr::prune() {
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (it->second.is_zero())
            it = terms_.erase(it);
        else
            ++it;
    }
}

ParamExpr ParamExpr::operator-() const {
    ParamExpr r;
    r.constant_ = -constant_;
    for (const auto& [name, coeff] : terms_) r.terms_.emplace(name, -coeff);
    return r;
}

ParamExpr& ParamExpr::operator+=(const ParamExpr& o) {
    constant_ += o.constant_;
    for (const auto& [name, coeff] : o.terms_) {
        auto [it, inserted] = terms_.emplace(name, coeff);
        if (!inserted) it->second += coeff;
    }
    prune();
    return *this;
}

ParamExpr& ParamExpr::operator-=(const ParamExpr& o) { return *this += -o; }

ParamExpr& ParamExpr::operator*=(const ParamExpr& o) {
    if (!is_constant() && !o.is_constant())
        throw QuadraticParamError("product of two parametric expressions");
    if (o.is_constant()) {
        const FieldElement& c = o.constant_;
        constant_ *= c;
        for (auto& [name, coeff] : terms_) coeff *= c;
        prune();
        return *this;
    }
    // *this is constant.
    ParamExpr r = o;
    r *= *this;
    *this = std::move(r);
    return *this;
}

bool operator==(const ParamExpr& a, const ParamExpr& b) {
    if (!(a.constant_ == b.constant_)) return false;
    if (a.terms_.size() != b.terms_.size()) return false;
    auto it = a.terms_.begin();
    auto jt = b.terms_.begin();
    for (; it != a.terms_.end(); ++it, ++jt) {
        if (it->first != jt->first || !(it->second == jt->second)) return false;
    }
    return true;
}

bool SolutionSpace::contains(const std::vector<FieldElement>& v) const {
    if (v.size() != parameter_names.size()) return false;
    std::vector<FieldElement> rem = v;
    for (size_t b = 0; b < basis.size(); ++b) {
        FieldElement c = rem[free_columns[b]];
        if (c.is_zero()) continue;
        for (size_t j = 0; j < rem.size(); ++j) rem[j] -= c * basis[b][j];
    }
    return std::all_of(rem.begin(), rem.end(),
                       [](const FieldElement& x) { return x.is_zero(); });
}

bool SolutionSpace::same_span(const SolutionSpace& other) const {
    if (parameter_names != other.parameter_names) return false;
    if (dimension() != other.dimension()) return false;
    for (const auto& v : other.basis)
        if (!contains(v)) return false;
    for (const auto& v : basis)
        if (!other.contains(v)) return false;
    return true;
}

SolutionSpace solve_homogeneous(const std::vector<ParamExpr>& rows,
                                const std::vector<std::string>& parameters) {
    const size_t n = parameters.size();
    std::map<std::string, size_t> index;
    for (size_t j = 0; j < n; ++j) index.emplace(parameters[j], j);

    std::vector<std::vector<FieldElement>> mat;
    for (const auto& row : rows) {
        if (!row.constant().is_zero())
            throw InconsistentSystemError(
                "homogeneous system has a row with nonzero constant part: "
                "template admits no derivation of this shape");
        if (row.is_zero()) continue;
        std::vector<FieldElement> r(n, FieldElement(0));
        for (const auto& [name, coeff] : row.terms()) {
            auto it = index.find(name);
            if (it == index.end()) throw Error("unknown parameter in system: " + name);
            r[it->second] = coeff;
        }
        mat.push_back(std::move(r));
    }

    // Exact Gauss-Jordan; pivot = first column in parameter order with a
    // nonzero entry among the remaining rows.
    std::vector<int> pivot_col_of_row;
    size_t next_row = 0;
    for (size_t col = 0; col < n && next_row < mat.size(); ++col) {
        size_t sel = next_row;
        while (sel < mat.size() && mat[sel][col].is_zero()) ++sel;
        if (sel == mat.size()) continue;
        std::swap(mat[next_row], mat[sel]);
        FieldElement inv = mat[next_row][col].inverse();
        for (size_t j = col; j < n; ++j) mat[next_row][j] *= inv;
        for (size_t r = 0; r < mat.size(); ++r) {
            if (r == next_row || mat[r][col].is_zero()) continue;
            FieldElement f = mat[r][col];
            for (size_t j = col; j < n; ++j) mat[r][j] -= f * mat[next_row][j];
        }
        pivot_col_of_row.push_back(static_cast<int>(col));
        ++next_row;
    }

    std::vector<bool> is_pivot(n, false);
    for (int c : pivot_col_of_row) is_pivot[c] = true;

    SolutionSpace sol;
    sol.parameter_names = parameters;
    for (size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        std::vector<FieldElement> v(n, FieldElement(0));
        v[f] = FieldElement(1);
        for (size_t r = 0; r < pivot_col_of_row.size(); ++r)
            v[pivot_col_of_row[r]] = -mat[r][f];
        sol.basis.push_back(std::move(v));
        sol.free_columns.push_back(static_cast<int>(f));
    }
    return sol;
}

}  // namespace g2ext
