// Command-line interface: structure-equation files in, classification,
// derivation solving, extensions/reductions and the reference reports out.
// Exit codes: 0 = all checks pass, 1 = a mathematical check failed,
// 2 = input error.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "g2ext/catalog.hpp"
#include "g2ext/gstruct.hpp"
#include "g2ext/io.hpp"

namespace {

using namespace g2ext;

constexpr int kExitPass = 0;
constexpr int kExitMathFail = 1;
constexpr int kExitInputError = 2;

// Bad files, bad dimensions, bad flags: exit 2 rather than 1.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

SU3Structure su3_from_file(const ParsedAlgebra& file) {
    auto need = [&](const char* name) {
        auto it = file.named_forms.find(name);
        if (it == file.named_forms.end())
            throw Error(std::string("forms file must name '") + name + "'");
        return it->second;
    };
    if (file.named_forms.count("omega") || file.named_forms.count("psi_plus") ||
        file.named_forms.count("psi_minus"))
        return SU3Structure::make(need("omega"), need("psi_plus"), need("psi_minus"));
    return canonical_su3();
}

int cmd_check_jacobi(const std::string& path) {
    ParsedAlgebra file = parse_algebra(slurp(path));
    JacobiReport rep = jacobi_check(file.algebra());
    if (rep.ok()) {
        std::cout << "jacobi: pass\n";
        return kExitPass;
    }
    std::cout << "jacobi: fail\n";
    for (const auto& f : rep.failures)
        std::cout << "  d^2 e^" << f.k << " = " << print_form(f.residual) << "\n";
    return kExitMathFail;
}

int cmd_classify(const std::string& path, bool su3, bool g2, const std::string& forms_path) {
    ParsedAlgebra file = parse_algebra(slurp(path));
    LieAlgebra L = file.algebra();
    std::map<std::string, KForm> forms = file.named_forms;
    if (!forms_path.empty()) {
        for (auto& [k, v] : parse_named_forms(slurp(forms_path), L.dim()))
            forms.insert_or_assign(k, v);
    }
    if (su3) {
        if (L.dim() != 6) throw InputError("--su3 expects a 6-dimensional algebra");
        ParsedAlgebra view{file.field, file.diffs, forms};
        SU3Structure s = su3_from_file(view);
        SU3Class c = classify_su3(L, s);
        std::cout << "symplectic_half_flat: " << (c.symplectic_half_flat ? "true" : "false")
                  << "\n"
                  << "half_flat: " << (c.half_flat ? "true" : "false") << "\n"
                  << "d omega = " << print_form(c.d_omega) << "\n"
                  << "d omega^2 = " << print_form(c.d_omega2) << "\n"
                  << "d psi+ = " << print_form(c.d_psi_plus) << "\n";
        return (c.symplectic_half_flat || c.half_flat) ? kExitPass : kExitMathFail;
    }
    if (!g2) throw InputError("pass --su3 or --g2");
    if (L.dim() != 7) throw InputError("--g2 expects a 7-dimensional algebra");
    KForm phi = canonical_g2_closed_candidate().phi;
    auto it = forms.find("phi");
    if (it != forms.end()) phi = it->second;
    G2Structure G = G2Structure::from_phi(phi);
    G2Class c = classify_g2(L, G);
    std::cout << "closed: " << (c.closed ? "true" : "false") << "\n"
              << "coclosed: " << (c.coclosed ? "true" : "false") << "\n"
              << "d phi = " << print_form(c.d_phi) << "\n"
              << "d *phi = " << print_form(c.d_star_phi) << "\n";
    return (c.closed || c.coclosed) ? kExitPass : kExitMathFail;
}

DerivationShape shape_of(const std::string& name) {
    if (name == "sl3c") return DerivationShape::Sl3cReal;
    if (name == "sp6r") return DerivationShape::Sp6r;
    if (name == "general") return DerivationShape::General;
    throw InputError("unknown template: " + name);
}

int cmd_solve(const std::string& path, const std::string& tname, bool as_json) {
    ParsedAlgebra file = parse_algebra(slurp(path));
    LieAlgebra h = file.algebra();
    DerivationTemplate t = derivation_template(shape_of(tname), h.dim());
    SolutionSpace s = solve_derivations(h, t);
    if (as_json) {
        std::ostringstream os;
        os << "{\n  \"dimension\": " << s.dimension() << ",\n  \"parameters\": [";
        for (size_t i = 0; i < s.free_columns.size(); ++i)
            os << (i ? "," : "") << "\"" << s.parameter_names[s.free_columns[i]] << "\"";
        os << "],\n  \"basis_matrices\": [";
        for (size_t b = 0; b < s.basis.size(); ++b) {
            SquareMatrix m = instantiate(t, s, [&] {
                std::vector<FieldElement> coords(s.basis.size(), FieldElement(0));
                coords[b] = FieldElement(1);
                return coords;
            }());
            os << (b ? "," : "") << "\n    [";
            for (int j = 1; j <= m.dim(); ++j) {
                os << (j > 1 ? "," : "") << "[";
                for (int k = 1; k <= m.dim(); ++k)
                    os << (k > 1 ? "," : "") << "\"" << print_scalar(m.at(j, k)) << "\"";
                os << "]";
            }
            os << "]";
        }
        os << "\n  ]\n}\n";
        std::cout << os.str();
        return kExitPass;
    }
    std::cout << "dimension: " << s.dimension() << "\n";
    for (size_t b = 0; b < s.basis.size(); ++b) {
        std::vector<FieldElement> coords(s.basis.size(), FieldElement(0));
        coords[b] = FieldElement(1);
        SquareMatrix m = instantiate(t, s, coords);
        std::cout << "direction " << s.parameter_names[s.free_columns[b]] << ":\n"
                  << print_matrix(m) << "\n";
    }
    if (s.dimension() > 0)
        std::cout << "solved template:\n" << print_matrix(solved_template(t, s)) << "\n";
    return kExitPass;
}

int cmd_extend(const std::string& path, const std::string& matrix_path,
               const std::string& build) {
    ParsedAlgebra file = parse_algebra(slurp(path));
    LieAlgebra h = file.algebra();
    if (h.dim() != 6) throw InputError("extend expects a 6-dimensional algebra");
    ParsedMatrix pm = parse_matrix(slurp(matrix_path));
    if (pm.matrix.dim() != 6) throw InputError("derivation matrix must be 6x6");
    FieldPtr field = pm.field ? pm.field : file.field;

    if (build.empty()) {
        LieAlgebra g = extend(h, pm.matrix);
        JacobiReport rep = jacobi_check(g);
        std::cout << print_algebra(g, field) << "\n";
        if (!rep.ok()) {
            std::cout << "not a Lie algebra: D is not a derivation\n";
            for (const auto& f : rep.failures)
                std::cout << "  d^2 e^" << f.k << " = " << print_form(f.residual) << "\n";
            return kExitMathFail;
        }
        return kExitPass;
    }

    SU3Structure s = canonical_su3();
    if (build == "closed") {
        auto [g, G] = build_closed(h, s, pm.matrix);
        G2Class c = classify_g2(g, G);
        std::cout << print_algebra(g, field) << "\n"
                  << "phi = " << print_form(G.phi) << "\n"
                  << "*phi = " << print_form(G.star_phi) << "\n"
                  << "closed: " << (c.closed ? "true" : "false")
                  << ", coclosed: " << (c.coclosed ? "true" : "false") << "\n";
        return c.closed ? kExitPass : kExitMathFail;
    }
    if (build == "coclosed") {
        auto [g, G] = build_coclosed(h, s, pm.matrix);
        G2Class c = classify_g2(g, G);
        std::cout << print_algebra(g, field) << "\n"
                  << "phi = " << print_form(G.phi) << "\n"
                  << "*phi = " << print_form(G.star_phi) << "\n"
                  << "closed: " << (c.closed ? "true" : "false")
                  << ", coclosed: " << (c.coclosed ? "true" : "false") << "\n";
        return c.coclosed ? kExitPass : kExitMathFail;
    }
    throw InputError("--build expects 'closed' or 'coclosed'");
}

int cmd_reduce(const std::string& path, bool closed, bool coclosed) {
    ParsedAlgebra file = parse_algebra(slurp(path));
    LieAlgebra g = file.algebra();
    if (g.dim() != 7) throw InputError("reduce expects a 7-dimensional algebra");
    if (closed == coclosed) throw InputError("pass exactly one of --closed / --coclosed");
    KForm phi = closed ? canonical_g2_closed_candidate().phi
                       : canonical_g2_coclosed_candidate().phi;
    auto it = file.named_forms.find("phi");
    if (it != file.named_forms.end()) phi = it->second;
    G2Structure G = G2Structure::from_phi(phi);
    SU3Structure s = closed ? reduce_closed(g, G) : reduce_coclosed(g, G);
    LieAlgebra h = [&] {
        std::vector<KForm> diffs;
        for (int k = 1; k <= 6; ++k) diffs.push_back(restrict_to(g.d_of(k), 6));
        return LieAlgebra(diffs);
    }();
    SU3Class c = classify_su3(h, s);
    std::cout << "base algebra: " << print_algebra(h, file.field) << "\n"
              << "omega = " << print_form(s.omega) << "\n"
              << "psi+ = " << print_form(s.psi_plus) << "\n"
              << "psi- = " << print_form(s.psi_minus) << "\n"
              << "symplectic_half_flat: " << (c.symplectic_half_flat ? "true" : "false")
              << ", half_flat: " << (c.half_flat ? "true" : "false") << "\n";
    return kExitPass;
}

int cmd_table1(bool as_json, const std::string& out_dir) {
    Table1Report rep = reproduce_table1();
    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        std::ofstream t(out_dir + "/table1.txt");
        t << rep.text();
        std::ofstream j(out_dir + "/table1.json");
        j << rep.json_text();
    }
    std::cout << (as_json ? rep.json_text() : rep.text());
    // Exit contract: nonzero iff a d phi residual is nonzero.  Display
    // discrepancies are report content, not failures.
    return rep.all_dphi_zero() ? kExitPass : kExitMathFail;
}

int cmd_verify_examples() {
    ExamplesReport rep = verify_examples();
    std::cout << rep.text();
    return rep.all_pass() ? kExitPass : kExitMathFail;
}

int cmd_lattice(int which) {
    LatticeReport rep = lattice_example(which);
    std::cout << rep.text();
    return rep.all_pass() ? kExitPass : kExitMathFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact constructions of closed and coclosed G2-structures on "
                 "7-dimensional Lie algebras from 6-dimensional SU(3) data"};
    app.require_subcommand(1);

    std::string file, forms_file, matrix_file, template_name = "sl3c", build, out_dir;
    bool flag_su3 = false, flag_g2 = false, flag_json = false;
    bool flag_closed = false, flag_coclosed = false;
    int example = 1;

    auto* jac = app.add_subcommand("check-jacobi", "check d^2 = 0 for a structure-equation file");
    jac->add_option("file", file)->required();

    auto* cls = app.add_subcommand("classify", "classify an SU(3) or G2 structure");
    cls->add_flag("--su3", flag_su3);
    cls->add_flag("--g2", flag_g2);
    cls->add_option("--forms", forms_file);
    cls->add_option("file", file)->required();

    auto* slv = app.add_subcommand("solve-derivations",
                                   "solve the derivation system for a template shape");
    slv->add_option("--template", template_name)->check(CLI::IsMember({"sl3c", "sp6r", "general"}));
    slv->add_flag("--json", flag_json);
    slv->add_option("file", file)->required();

    auto* ext = app.add_subcommand("extend", "extend a 6-dimensional algebra by a derivation");
    ext->add_option("--derivation", matrix_file)->required();
    ext->add_option("--build", build)->check(CLI::IsMember({"closed", "coclosed"}));
    ext->add_option("file", file)->required();

    auto* red = app.add_subcommand("reduce", "recover the SU(3) structure from an extension");
    red->add_flag("--closed", flag_closed);
    red->add_flag("--coclosed", flag_coclosed);
    red->add_option("file", file)->required();

    auto* tab = app.add_subcommand("reproduce-table1", "reproduce the classification table");
    tab->add_flag("--json", flag_json);
    tab->add_option("--out", out_dir);

    app.add_subcommand("verify-examples", "run every worked example end-to-end");

    auto* lat = app.add_subcommand("lattice-check", "verify the lattice conjugation identities");
    lat->add_option("--example", example)->check(CLI::IsMember({1, 2}))->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitInputError;
    }

    try {
        if (jac->parsed()) return cmd_check_jacobi(file);
        if (cls->parsed()) return cmd_classify(file, flag_su3, flag_g2, forms_file);
        if (slv->parsed()) return cmd_solve(file, template_name, flag_json);
        if (ext->parsed()) return cmd_extend(file, matrix_file, build);
        if (red->parsed()) return cmd_reduce(file, flag_closed, flag_coclosed);
        if (tab->parsed()) return cmd_table1(flag_json, out_dir);
        if (app.get_subcommand("verify-examples")->parsed()) return cmd_verify_examples();
        if (lat->parsed()) return cmd_lattice(example);
    } catch (const ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMathFail;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}
