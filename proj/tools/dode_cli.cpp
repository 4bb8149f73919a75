// Command-line front end: analyze / eval / limit-eval / compile-tm /
// run-tm / selftest.  Exit codes: 0 success, 1 property failure,
// 2 usage or parse errors.
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "dode/codec.hpp"
#include "dode/dsl.hpp"
#include "dode/errors.hpp"
#include "dode/selftest.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

std::string render(const dode::Dyadic& v) {
    if (v.is_integer()) return v.str();
    return v.str() + " = " + v.decimal();
}

int cmd_analyze(const std::string& file, const std::string& fn) {
    dode::Program prog = dode::parse_program_file(file);
    std::cout << dode::analyze_report(prog, fn);
    return kExitOk;
}

int cmd_eval(const std::string& file, const std::string& fn,
             const std::vector<std::string>& arg_text, std::optional<std::int64_t> prec,
             bool prec_required) {
    dode::Program prog = dode::parse_program_file(file);
    const dode::Program::Decl& decl = prog.get(fn);
    dode::Signature sig = dode::typecheck(decl.term);
    if (arg_text.size() != sig.in.size())
        throw dode::Error("'" + fn + "' expects " + std::to_string(sig.in.size()) +
                          " arguments, got " + std::to_string(arg_text.size()));
    std::vector<dode::Dyadic> args;
    for (const auto& t : arg_text) args.push_back(dode::Dyadic::parse(t));
    bool needs_limit = dode::has_limit_node(decl.term);
    if (needs_limit && !prec)
        throw dode::Error("'" + fn + "' contains a limit; pass --prec n");
    if (prec_required && !prec) throw dode::Error("limit-eval requires --prec n");
    std::vector<dode::Dyadic> out;
    if (prec)
        out = dode::eval_approx(decl.term, args, *prec);
    else
        out = dode::eval_exact(decl.term, args);
    for (const auto& v : out) std::cout << render(v) << "\n";
    return kExitOk;
}

int cmd_compile_tm(const std::string& file) {
    dode::TMSpec spec = dode::TMSpec::parse_file(file);
    std::vector<dode::Expr> next = dode::compile_next(spec);
    dode::LLODESystem exec = dode::compile_exec(spec);

    std::cout << "# compiled from " << file << "\n";
    const char* names[3] = {"next_q", "next_l", "next_r"};
    for (int i = 0; i < 3; ++i)
        std::cout << "fn " << names[i] << "(q:R, l:R, r:R) -> R = " << dode::to_string(next[i])
                  << "\n";
    std::cout << "llode exec(x:N, q:R, l:R, r:R) -> R^3 {\n  init: ";
    for (std::size_t i = 0; i < exec.init().size(); ++i)
        std::cout << (i ? ", " : "") << dode::to_string(exec.init()[i]);
    std::cout << ";\n  wrt len(x): ";
    for (std::size_t i = 0; i < exec.rhs().size(); ++i)
        std::cout << (i ? ", " : "") << dode::to_string(exec.rhs()[i]);
    std::cout << ";\n}\n";
    return kExitOk;
}

int cmd_run_tm(const std::string& file, const std::string& input, long long steps, bool check) {
    dode::TMSpec spec = dode::TMSpec::parse_file(file);
    dode::Word w = dode::word_from_string(input);
    dode::Configuration direct = dode::tm_run_direct(spec, w, steps);
    std::string tape = dode::word_to_string(dode::tape_word(direct));
    if (tape.empty()) tape = "-";
    if (!check) {
        std::cout << tape << "\n";
        return kExitOk;
    }
    dode::RunResult compiled = dode::run_compiled(spec, w, dode::Int(steps));
    bool match = compiled.config == dode::gamma_config(direct);
    std::cout << tape << ' ' << (match ? "MATCH" : "MISMATCH") << "\n";
    return match ? kExitOk : kExitFailure;
}

int cmd_selftest(std::uint64_t seed, bool corrupt) {
    auto results = dode::run_suites(seed, corrupt);
    std::cout << dode::format_report(results, seed);
    return dode::all_pass(results) ? kExitOk : kExitFailure;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact interpreter and analyzer for the discrete length-ODE function algebra"};
    app.require_subcommand(1);

    std::string file, fn, input;
    std::vector<std::string> args;
    std::int64_t prec = -1;
    long long steps = 0;
    bool check = false;
    std::uint64_t seed = 20240917;
    bool corrupt = false;

    auto* analyze = app.add_subcommand("analyze", "degree and linearity report");
    analyze->add_option("file", file)->required();
    analyze->add_option("name", fn)->required();

    auto add_eval_opts = [&](CLI::App* c) {
        c->add_option("file", file)->required();
        c->add_option("name", fn)->required();
        c->add_option("args", args);
        c->add_option("--prec", prec, "output precision bits (2^-n guarantee)");
    };
    auto* eval = app.add_subcommand("eval", "evaluate a declaration on dyadic arguments");
    add_eval_opts(eval);
    auto* limit_eval = app.add_subcommand("limit-eval", "eval with a required --prec");
    add_eval_opts(limit_eval);

    auto* compile_tm = app.add_subcommand("compile-tm", "emit Next and Exec as a program");
    compile_tm->add_option("file", file)->required();

    auto* run_tm = app.add_subcommand("run-tm", "run a machine at clock 2^steps");
    run_tm->add_option("file", file)->required();
    run_tm->add_option("input", input)->required();
    run_tm->add_option("--steps", steps)->required();
    run_tm->add_flag("--check", check, "cross-check the compiled run against the simulator");

    auto* selftest = app.add_subcommand("selftest", "run the property suites");
    selftest->add_option("--seed", seed);
    selftest->add_flag("--corrupt", corrupt)->group(""); // hidden test hook

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (app.got_subcommand(analyze)) return cmd_analyze(file, fn);
        if (app.got_subcommand(eval)) {
            return cmd_eval(file, fn, args, prec >= 0 ? std::optional(prec) : std::nullopt, false);
        }
        if (app.got_subcommand(limit_eval)) {
            return cmd_eval(file, fn, args, prec >= 0 ? std::optional(prec) : std::nullopt, true);
        }
        if (app.got_subcommand(compile_tm)) return cmd_compile_tm(file);
        if (app.got_subcommand(run_tm)) return cmd_run_tm(file, input, steps, check);
        if (app.got_subcommand(selftest)) return cmd_selftest(seed, corrupt);
    } catch (const dode::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
