// divalg: classify finite-dimensional real associative algebras given by
// structure constants, or certify with a witness why they are not division
// algebras.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "divalg/divalg.hpp"

namespace {

using namespace divalg;

constexpr int kExitSuccess = 0;
constexpr int kExitMathFailure = 1;
constexpr int kExitInputError = 2;
constexpr int kExitPrecondition = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

void print_witness_human(const Witness& w, std::ostream& os) {
    if (const auto* zd = std::get_if<ZeroDivisorWitness>(&w.kind)) {
        os << "witness: zero divisor, |a*b| = " << zd->product_residual << "\n  a =";
        for (double v : zd->a) os << ' ' << v;
        os << "\n  b =";
        for (double v : zd->b) os << ' ' << v;
        os << "\n";
    } else if (const auto* na = std::get_if<NonAssociativeWitness>(&w.kind)) {
        os << "witness: non-associative triple (" << na->triple[0] << ", " << na->triple[1] << ", " << na->triple[2]
           << "), residual " << na->residual << "\n";
    } else if (std::holds_alternative<NoUnityWitness>(w.kind)) {
        os << "witness: no multiplicative unity\n";
    } else {
        const auto& ns = std::get<NotAlgebraicStepWitness>(w.kind);
        os << "witness: construction obstruction: " << ns.detail << "\n";
    }
}

void emit_report(const ReportDocument& rep, bool json, std::ostream& os) {
    if (json) {
        os << serialize(rep);
        return;
    }
    os << rep.command << ": " << (rep.ok ? "ok" : "failure") << " (" << rep.outcome << ")";
    if (!rep.branch.empty()) os << " via " << rep.branch;
    os << "\n";
    if (rep.residual) os << "residual: " << *rep.residual << "\n";
    if (rep.iso) {
        os << "isomorphism (input coordinates -> canonical basis):\n";
        for (int i = 0; i < rep.iso->rows; ++i) {
            os << " ";
            for (int j = 0; j < rep.iso->cols; ++j) os << ' ' << rep.iso->at(i, j);
            os << "\n";
        }
    }
    if (rep.witness) print_witness_human(*rep.witness, os);
    if (rep.axioms)
        os << "axioms: unity=" << (rep.axioms->has_unity ? "yes" : "no")
           << " associative=" << (rep.axioms->associative ? "yes" : "no")
           << " worst_assoc_residual=" << rep.axioms->worst_assoc_residual << "\n";
    os << "time: " << rep.timing_ms << " ms\n";
}

int cmd_classify(const std::string& path, double tol_eps, bool json) {
    const auto t0 = std::chrono::steady_clock::now();
    const Tolerance tol(tol_eps, tol_eps);
    const StructureTensor T = to_structure_tensor(parse_tensor_document(read_file(path)));
    const ClassificationOutcome outcome = classify(T, tol);

    ReportDocument rep;
    rep.command = "classify";
    rep.tolerance = tol;
    rep.branch = outcome.branch;
    rep.axioms = outcome.axioms;
    rep.ok = outcome.ok();
    if (outcome.ok()) {
        rep.outcome = label_name(outcome.success().label);
        rep.iso = outcome.success().iso;
        rep.residual = outcome.success().residual;
    } else {
        rep.outcome = outcome.witness().kind_name();
        rep.witness = outcome.witness();
    }
    rep.timing_ms = elapsed_ms(t0);
    emit_report(rep, json, std::cout);
    return rep.ok ? kExitSuccess : kExitMathFailure;
}

int cmd_verify(const std::string& path, double tol_eps, bool json) {
    const auto t0 = std::chrono::steady_clock::now();
    const Tolerance tol(tol_eps, tol_eps);
    const StructureTensor T = to_structure_tensor(parse_tensor_document(read_file(path)));
    const AxiomReport rep_ax = check_axioms(T, tol);

    ReportDocument rep;
    rep.command = "verify";
    rep.tolerance = tol;
    rep.axioms = rep_ax;
    rep.ok = rep_ax.has_unity && rep_ax.associative;
    if (rep.ok) {
        rep.outcome = "unital_associative";
    } else if (!rep_ax.has_unity) {
        rep.outcome = "no_unity";
        rep.witness = Witness{NoUnityWitness{}};
    } else {
        rep.outcome = "non_associative";
        NonAssociativeWitness w;
        w.triple = *rep_ax.witness_triple;
        w.residual = rep_ax.worst_assoc_residual;
        rep.witness = Witness{std::move(w)};
    }
    rep.timing_ms = elapsed_ms(t0);
    emit_report(rep, json, std::cout);
    return rep.ok ? kExitSuccess : kExitMathFailure;
}

int cmd_shortcut(const std::string& path, double tol_eps, bool json) {
    const auto t0 = std::chrono::steady_clock::now();
    const Tolerance tol(tol_eps, tol_eps);
    const StructureTensor T = to_structure_tensor(parse_tensor_document(read_file(path)));
    if (T.dim() % 2 == 0) {
        std::cerr << "shortcut: input dimension " << T.dim() << " is even\n";
        return kExitPrecondition;
    }
    const auto result = odd_dimension_shortcut(T, tol);

    ReportDocument rep;
    rep.command = "shortcut";
    rep.tolerance = tol;
    rep.ok = std::holds_alternative<Success>(result);
    if (rep.ok) {
        const Success& s = std::get<Success>(result);
        rep.outcome = label_name(s.label);
        rep.iso = s.iso;
        rep.residual = s.residual;
    } else {
        const Witness& w = std::get<Witness>(result);
        rep.outcome = w.kind_name();
        rep.witness = w;
    }
    rep.timing_ms = elapsed_ms(t0);
    emit_report(rep, json, std::cout);
    return rep.ok ? kExitSuccess : kExitMathFailure;
}

int cmd_generate(const std::string& kind, const std::string& out_path, std::uint64_t seed, int dim) {
    StructureTensor T = generate_tensor(kind, seed, dim);
    const std::string text = serialize(to_document(T));
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        std::cerr << "generate: cannot open output file '" << out_path << "'\n";
        return kExitInputError;
    }
    out << text;
    return kExitSuccess;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"constructive classification of finite-dimensional real division algebras"};
    app.require_subcommand(1);

    std::string path, out_path, kind;
    double tol_eps = 1e-9;
    bool json = false;
    std::uint64_t seed = 0;
    int dim = 3;

    auto* classify_cmd = app.add_subcommand("classify", "classify a structure tensor as R, C, H or emit a witness");
    classify_cmd->add_option("path", path, "tensor document (JSON)")->required();
    classify_cmd->add_option("--tol", tol_eps, "absolute tolerance (default 1e-9)");
    classify_cmd->add_flag("--json", json, "machine-readable report");

    auto* verify_cmd = app.add_subcommand("verify", "check unity and associativity only");
    verify_cmd->add_option("path", path, "tensor document (JSON)")->required();
    verify_cmd->add_option("--tol", tol_eps, "absolute tolerance (default 1e-9)");
    verify_cmd->add_flag("--json", json, "machine-readable report");

    auto* shortcut_cmd = app.add_subcommand("shortcut", "odd-dimension fast path");
    shortcut_cmd->add_option("path", path, "tensor document (JSON)")->required();
    shortcut_cmd->add_option("--tol", tol_eps, "absolute tolerance (default 1e-9)");
    shortcut_cmd->add_flag("--json", json, "machine-readable report");

    auto* generate_cmd = app.add_subcommand("generate", "write a fixture tensor document");
    generate_cmd->add_option("kind", kind,
                             "one of: r, c, h, twist-r, twist-c, twist-h, m2r, dual, "
                             "rn-componentwise, r-plus-c, octonion, zero")
        ->required();
    generate_cmd->add_option("out", out_path, "output path")->required();
    generate_cmd->add_option("--seed", seed, "64-bit generator seed (twist-* kinds)");
    generate_cmd->add_option("--dim", dim, "dimension for rn-componentwise and zero (default 3)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? kExitInputError : kExitInputError;
    }

    try {
        if (classify_cmd->parsed()) return cmd_classify(path, tol_eps, json);
        if (verify_cmd->parsed()) return cmd_verify(path, tol_eps, json);
        if (shortcut_cmd->parsed()) return cmd_shortcut(path, tol_eps, json);
        if (generate_cmd->parsed()) return cmd_generate(kind, out_path, seed, dim);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}
