#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dode/algebra.hpp"

namespace dode {

/// A parsed and name-resolved program file: an ordered list of fn /
/// llode / elim / elimstar declarations, each compiled to a
/// FunctionTerm.
struct Program {
    struct Decl {
        enum class Kind { Fn, Llode, Elim, ElimStar };
        Kind kind = Kind::Fn;
        std::string name;
        std::vector<std::pair<std::string, Sort>> params;
        Sort ret_sort = Sort::R;
        std::size_t ret_count = 1;
        std::optional<Expr> body;  // call-free fn bodies (analyzable)
        std::string body_src;      // original body text (round-trip for calls)
        std::shared_ptr<const LLODESystem> sys; // llode
        std::string h_name;
        std::string inner_name; // elim / elimstar
        std::vector<Int> witness;
        TermPtr term;
    };

    std::vector<Decl> decls;

    const Decl* find(const std::string& name) const;
    const Decl& get(const std::string& name) const; // throws ParseError
};

/// Parses, resolves names in order, compiles every declaration to a
/// term and typechecks it.  Throws ParseError / SortMismatch with line
/// information.
Program parse_program(const std::string& text);
Program parse_program_file(const std::string& path);

/// Renders a program in the surface syntax; the result re-parses to
/// declarations that evaluate identically.
std::string print_program(const Program& p);

/// Degree / essential-linearity report for one declaration.
std::string analyze_report(const Program& p, const std::string& name);

} // namespace dode
