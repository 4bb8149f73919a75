#include "dode/dsl.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "dode/errors.hpp"

namespace dode {

namespace {

// ---------------------------------------------------------------- lexer

struct Token {
    enum class Kind { Name, Number, Punct, End };
    Kind kind = Kind::End;
    std::string text;
    int line = 0;
};

class Lexer {
public:
    explicit Lexer(const std::string& src) : src_(src) { advance(); }

    const Token& peek() const { return tok_; }

    Token next() {
        Token t = tok_;
        advance();
        return t;
    }

    [[noreturn]] void fail(const std::string& why) const {
        throw ParseError("line " + std::to_string(tok_.line ? tok_.line : line_) + ": " + why);
    }

private:
    void advance() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '\n') {
                ++line_;
                ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else if (c == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
        tok_ = Token{Token::Kind::End, "", line_};
        if (pos_ >= src_.size()) return;
        char c = src_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                                          src_[pos_] == '_'))
                ++pos_;
            tok_ = Token{Token::Kind::Name, src_.substr(start, pos_ - start), line_};
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                ++pos_;
            tok_ = Token{Token::Kind::Number, src_.substr(start, pos_ - start), line_};
        } else {
            std::string punct(1, c);
            if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
                punct = "->";
                ++pos_;
            }
            ++pos_;
            tok_ = Token{Token::Kind::Punct, punct, line_};
        }
    }

    const std::string& src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    Token tok_;
};

// ---------------------------------------------------------- surface AST

struct SNode {
    enum class Kind { Int, Var, Add, Sub, Mul, Neg, Sgb, Half, If, Call };
    Kind kind;
    Int value;
    std::string name;
    std::vector<SNode> kids;
};

class ExprParser {
public:
    ExprParser(Lexer& lx) : lx_(lx) {}

    SNode parse() { return sum(); }

private:
    bool punct(const std::string& p) {
        if (lx_.peek().kind == Token::Kind::Punct && lx_.peek().text == p) {
            lx_.next();
            return true;
        }
        return false;
    }

    void expect(const std::string& p) {
        if (!punct(p)) lx_.fail("expected '" + p + "', got '" + lx_.peek().text + "'");
    }

    SNode sum() {
        SNode acc = product();
        for (;;) {
            if (punct("+")) {
                SNode r = product();
                acc = SNode{SNode::Kind::Add, 0, "", {std::move(acc), std::move(r)}};
            } else if (punct("-")) {
                SNode r = product();
                acc = SNode{SNode::Kind::Sub, 0, "", {std::move(acc), std::move(r)}};
            } else {
                return acc;
            }
        }
    }

    SNode product() {
        SNode acc = unary();
        while (punct("*")) {
            SNode r = unary();
            acc = SNode{SNode::Kind::Mul, 0, "", {std::move(acc), std::move(r)}};
        }
        return acc;
    }

    SNode unary() {
        if (punct("-")) {
            SNode e = unary();
            if (e.kind == SNode::Kind::Int) {
                e.value = -e.value;
                return e;
            }
            return SNode{SNode::Kind::Neg, 0, "", {std::move(e)}};
        }
        return atom();
    }

    SNode atom() {
        Token t = lx_.next();
        if (t.kind == Token::Kind::Number) return SNode{SNode::Kind::Int, Int(t.text), "", {}};
        if (t.kind == Token::Kind::Punct && t.text == "(") {
            SNode e = sum();
            expect(")");
            return e;
        }
        if (t.kind != Token::Kind::Name) lx_.fail("expected an expression, got '" + t.text + "'");
        if (t.text == "sgb" || t.text == "half") {
            expect("(");
            SNode e = sum();
            expect(")");
            return SNode{t.text == "sgb" ? SNode::Kind::Sgb : SNode::Kind::Half, 0, "",
                         {std::move(e)}};
        }
        if (t.text == "if") {
            expect("(");
            SNode b = sum();
            expect(";");
            SNode then = sum();
            expect(";");
            SNode els = sum();
            expect(")");
            return SNode{SNode::Kind::If, 0, "", {std::move(b), std::move(then), std::move(els)}};
        }
        if (lx_.peek().kind == Token::Kind::Punct && lx_.peek().text == "(") {
            lx_.next();
            SNode call{SNode::Kind::Call, 0, t.text, {}};
            if (!(lx_.peek().kind == Token::Kind::Punct && lx_.peek().text == ")")) {
                call.kids.push_back(sum());
                while (punct(",")) call.kids.push_back(sum());
            }
            expect(")");
            return call;
        }
        return SNode{SNode::Kind::Var, 0, t.text, {}};
    }

    Lexer& lx_;
};

bool has_call(const SNode& n) {
    if (n.kind == SNode::Kind::Call) return true;
    for (const auto& k : n.kids)
        if (has_call(k)) return true;
    return false;
}

Expr lower_expr(const SNode& n) {
    switch (n.kind) {
    case SNode::Kind::Int:
        return Expr::integer(n.value);
    case SNode::Kind::Var:
        return Expr::var(n.name);
    case SNode::Kind::Add:
        return lower_expr(n.kids[0]) + lower_expr(n.kids[1]);
    case SNode::Kind::Sub:
        return lower_expr(n.kids[0]) - lower_expr(n.kids[1]);
    case SNode::Kind::Mul:
        return lower_expr(n.kids[0]) * lower_expr(n.kids[1]);
    case SNode::Kind::Neg:
        return Expr::integer(0) - lower_expr(n.kids[0]);
    case SNode::Kind::Sgb:
        return Expr::sgnbar(lower_expr(n.kids[0]));
    case SNode::Kind::Half:
        return Expr::div2(lower_expr(n.kids[0]));
    case SNode::Kind::If:
        return build_if(lower_expr(n.kids[0]), lower_expr(n.kids[1]), lower_expr(n.kids[2]));
    case SNode::Kind::Call:
        throw ParseError("calls are not allowed in this position");
    }
    throw Error("unreachable");
}

// ------------------------------------------------- term compilation (fn)

struct FnContext {
    const Program* program;
    std::vector<std::string> param_names;
    std::vector<Sort> param_sorts;
};

TermPtr int_term(const Int& c, const std::vector<Sort>& in) {
    if (c == 0) return make_base(BaseOp::Zero, in);
    if (c == 1) return make_base(BaseOp::One, in);
    if (c < 0)
        return make_compose(make_base(BaseOp::Sub, {Sort::N, Sort::N}),
                            {make_base(BaseOp::Zero, in), int_term(-c, in)});
    // c = 2q + r via doubling
    TermPtr two = make_compose(make_base(BaseOp::Add, {Sort::N, Sort::N}),
                               {make_base(BaseOp::One, in), make_base(BaseOp::One, in)});
    TermPtr rec = make_compose(make_base(BaseOp::Mul, {Sort::N, Sort::N}),
                               {two, int_term(c >> 1, in)});
    if ((c & 1) != 0)
        rec = make_compose(make_base(BaseOp::Add, {Sort::N, Sort::N}),
                           {rec, make_base(BaseOp::One, in)});
    return rec;
}

Sort out_sort(const TermPtr& t) { return typecheck(t).out.at(0); }

TermPtr compile_fn_body(const SNode& n, const FnContext& cx) {
    auto binop = [&](BaseOp op, const SNode& a, const SNode& b) {
        TermPtr ta = compile_fn_body(a, cx);
        TermPtr tb = compile_fn_body(b, cx);
        return make_compose(make_base(op, {out_sort(ta), out_sort(tb)}), {ta, tb});
    };
    switch (n.kind) {
    case SNode::Kind::Int:
        return int_term(n.value, cx.param_sorts);
    case SNode::Kind::Var: {
        for (std::size_t i = 0; i < cx.param_names.size(); ++i)
            if (cx.param_names[i] == n.name) return make_proj(i + 1, cx.param_sorts);
        const Program::Decl* d = cx.program->find(n.name);
        if (d && d->params.empty()) // zero-argument reference
            throw ParseError("reference '" + n.name + "' needs a call with ()");
        throw ParseError("unknown variable '" + n.name + "'");
    }
    case SNode::Kind::Add:
        return binop(BaseOp::Add, n.kids[0], n.kids[1]);
    case SNode::Kind::Sub:
        return binop(BaseOp::Sub, n.kids[0], n.kids[1]);
    case SNode::Kind::Mul:
        return binop(BaseOp::Mul, n.kids[0], n.kids[1]);
    case SNode::Kind::Neg: {
        TermPtr t = compile_fn_body(n.kids[0], cx);
        return make_compose(make_base(BaseOp::Sub, {Sort::N, out_sort(t)}),
                            {int_term(0, cx.param_sorts), t});
    }
    case SNode::Kind::Sgb: {
        TermPtr t = compile_fn_body(n.kids[0], cx);
        return make_compose(make_base(BaseOp::SgnBar, {out_sort(t)}), {t});
    }
    case SNode::Kind::Half: {
        TermPtr t = compile_fn_body(n.kids[0], cx);
        return make_compose(make_base(BaseOp::Half, {out_sort(t)}), {t});
    }
    case SNode::Kind::If: {
        // sgb(b)*then + (1 - sgb(b))*else
        TermPtr b = compile_fn_body(n.kids[0], cx);
        TermPtr s = make_compose(make_base(BaseOp::SgnBar, {out_sort(b)}), {b});
        TermPtr then = compile_fn_body(n.kids[1], cx);
        TermPtr els = compile_fn_body(n.kids[2], cx);
        TermPtr lhs = make_compose(make_base(BaseOp::Mul, {Sort::R, out_sort(then)}), {s, then});
        TermPtr ns = make_compose(make_base(BaseOp::Sub, {Sort::N, Sort::R}),
                                  {int_term(1, cx.param_sorts), s});
        TermPtr rhs = make_compose(make_base(BaseOp::Mul, {Sort::R, out_sort(els)}), {ns, els});
        return make_compose(make_base(BaseOp::Add, {out_sort(lhs), out_sort(rhs)}), {lhs, rhs});
    }
    case SNode::Kind::Call: {
        const Program::Decl* d = cx.program->find(n.name);
        if (!d) throw ParseError("call to unknown declaration '" + n.name + "'");
        Signature sig = typecheck(d->term);
        if (sig.in.size() != n.kids.size())
            throw ParseError("call to '" + n.name + "': expected " +
                             std::to_string(sig.in.size()) + " arguments, got " +
                             std::to_string(n.kids.size()));
        std::vector<TermPtr> args;
        for (const auto& k : n.kids) args.push_back(compile_fn_body(k, cx));
        return make_compose(d->term, std::move(args));
    }
    }
    throw Error("unreachable");
}

std::string render_snode(const SNode& n, int parent_prec, bool right) {
    auto prec = [](const SNode& m) {
        switch (m.kind) {
        case SNode::Kind::Add:
        case SNode::Kind::Sub:
            return 1;
        case SNode::Kind::Mul:
            return 2;
        case SNode::Kind::Neg:
            return 2;
        default:
            return 3;
        }
    };
    int p = prec(n);
    bool parens = p < parent_prec || (p == parent_prec && right && p <= 2);
    std::string s;
    switch (n.kind) {
    case SNode::Kind::Int:
        s = n.value.str();
        break;
    case SNode::Kind::Var:
        s = n.name;
        break;
    case SNode::Kind::Add:
        s = render_snode(n.kids[0], p, false) + " + " + render_snode(n.kids[1], p, true);
        break;
    case SNode::Kind::Sub:
        s = render_snode(n.kids[0], p, false) + " - " + render_snode(n.kids[1], p, true);
        break;
    case SNode::Kind::Mul:
        s = render_snode(n.kids[0], p, false) + " * " + render_snode(n.kids[1], p, true);
        break;
    case SNode::Kind::Neg:
        s = "-" + render_snode(n.kids[0], 3, true);
        break;
    case SNode::Kind::Sgb:
        s = "sgb(" + render_snode(n.kids[0], 0, false) + ")";
        break;
    case SNode::Kind::Half:
        s = "half(" + render_snode(n.kids[0], 0, false) + ")";
        break;
    case SNode::Kind::If:
        s = "if(" + render_snode(n.kids[0], 0, false) + "; " + render_snode(n.kids[1], 0, false) +
            "; " + render_snode(n.kids[2], 0, false) + ")";
        break;
    case SNode::Kind::Call: {
        s = n.name + "(";
        for (std::size_t i = 0; i < n.kids.size(); ++i)
            s += (i ? ", " : "") + render_snode(n.kids[i], 0, false);
        s += ")";
        break;
    }
    }
    return parens ? "(" + s + ")" : s;
}

// ---------------------------------------------------------- declarations

class ProgramParser {
public:
    explicit ProgramParser(const std::string& src) : lx_(src) {}

    Program parse() {
        Program prog;
        while (lx_.peek().kind != Token::Kind::End) {
            Token t = lx_.next();
            if (t.kind != Token::Kind::Name) lx_.fail("expected a declaration");
            if (t.text == "fn")
                parse_fn(prog);
            else if (t.text == "llode")
                parse_llode(prog);
            else if (t.text == "elim")
                parse_elim(prog, false);
            else if (t.text == "elimstar")
                parse_elim(prog, true);
            else
                lx_.fail("unknown declaration '" + t.text + "'");
        }
        return prog;
    }

private:
    void add_decl(Program& prog, Program::Decl d) {
        if (prog.find(d.name)) lx_.fail("duplicate declaration '" + d.name + "'");
        typecheck(d.term);
        prog.decls.push_back(std::move(d));
    }

    std::string name_token() {
        Token t = lx_.next();
        if (t.kind != Token::Kind::Name) lx_.fail("expected a name, got '" + t.text + "'");
        return t.text;
    }

    Int number_token() {
        bool neg = false;
        if (lx_.peek().kind == Token::Kind::Punct && lx_.peek().text == "-") {
            lx_.next();
            neg = true;
        }
        Token t = lx_.next();
        if (t.kind != Token::Kind::Number) lx_.fail("expected a number, got '" + t.text + "'");
        Int v(t.text);
        return neg ? Int(-v) : v;
    }

    void expect(const std::string& p) {
        Token t = lx_.next();
        if (t.kind != Token::Kind::Punct || t.text != p)
            lx_.fail("expected '" + p + "', got '" + t.text + "'");
    }

    bool try_punct(const std::string& p) {
        if (lx_.peek().kind == Token::Kind::Punct && lx_.peek().text == p) {
            lx_.next();
            return true;
        }
        return false;
    }

    std::vector<std::pair<std::string, Sort>> parse_params() {
        std::vector<std::pair<std::string, Sort>> params;
        expect("(");
        if (!try_punct(")")) {
            do {
                std::string n = name_token();
                expect(":");
                params.emplace_back(n, parse_sort(name_token()));
            } while (try_punct(","));
            expect(")");
        }
        return params;
    }

    void parse_fn(Program& prog) {
        Program::Decl d;
        d.kind = Program::Decl::Kind::Fn;
        d.name = name_token();
        d.params = parse_params();
        expect("->");
        d.ret_sort = parse_sort(name_token());
        expect("=");
        SNode body = ExprParser(lx_).parse();
        d.body_src = render_snode(body, 0, false);
        FnContext cx{&prog, {}, {}};
        for (const auto& [n, s] : d.params) {
            cx.param_names.push_back(n);
            cx.param_sorts.push_back(s);
        }
        d.term = compile_fn_body(body, cx);
        Signature sig = typecheck(d.term);
        if (!subsort(sig.out.at(0), d.ret_sort))
            throw SortMismatch("fn " + d.name + ": body has sort " + sort_name(sig.out.at(0)) +
                               ", declared " + sort_name(d.ret_sort));
        if (!has_call(body)) d.body = lower_expr(body);
        add_decl(prog, std::move(d));
    }

    void parse_llode(Program& prog) {
        Program::Decl d;
        d.kind = Program::Decl::Kind::Llode;
        d.name = name_token();
        d.params = parse_params();
        if (d.params.empty() || d.params.front().second != Sort::N)
            lx_.fail("llode " + d.name + ": first parameter must be the length variable of sort N");
        expect("->");
        d.ret_sort = parse_sort(name_token());
        expect("^");
        d.ret_count = number_token().convert_to<std::size_t>();
        expect("{");
        auto keyword = [&](const std::string& kw) {
            Token t = lx_.next();
            if (t.kind != Token::Kind::Name || t.text != kw)
                lx_.fail("expected '" + kw + "', got '" + t.text + "'");
        };
        keyword("init");
        expect(":");
        std::vector<Expr> init;
        init.push_back(lower_expr(ExprParser(lx_).parse()));
        while (try_punct(",")) init.push_back(lower_expr(ExprParser(lx_).parse()));
        expect(";");
        keyword("wrt");
        keyword("len");
        expect("(");
        std::string xname = name_token();
        if (xname != d.params.front().first)
            lx_.fail("llode " + d.name + ": derivation variable must be '" +
                     d.params.front().first + "'");
        expect(")");
        expect(":");
        std::vector<Expr> rhs;
        rhs.push_back(lower_expr(ExprParser(lx_).parse()));
        while (try_punct(",")) rhs.push_back(lower_expr(ExprParser(lx_).parse()));
        expect(";");
        TermPtr h;
        if (lx_.peek().kind == Token::Kind::Name && lx_.peek().text == "h") {
            lx_.next();
            expect(":");
            d.h_name = name_token();
            const Program::Decl* hd = prog.find(d.h_name);
            if (!hd) lx_.fail("llode " + d.name + ": unknown h '" + d.h_name + "'");
            h = hd->term;
            expect(";");
        }
        expect("}");
        if (init.size() != d.ret_count || rhs.size() != d.ret_count)
            lx_.fail("llode " + d.name + ": expected " + std::to_string(d.ret_count) +
                     " components");
        std::vector<std::string> y_names;
        std::vector<Sort> y_sorts;
        for (std::size_t i = 1; i < d.params.size(); ++i) {
            y_names.push_back(d.params[i].first);
            y_sorts.push_back(d.params[i].second);
        }
        d.sys = std::make_shared<LLODESystem>(std::move(init), std::move(rhs), y_names,
                                              d.params.front().first, h);
        d.term = make_llode(d.sys, y_sorts, std::vector<Sort>(d.ret_count, d.ret_sort));
        add_decl(prog, std::move(d));
    }

    void parse_elim(Program& prog, bool star) {
        Program::Decl d;
        d.kind = star ? Program::Decl::Kind::ElimStar : Program::Decl::Kind::Elim;
        d.name = name_token();
        expect("=");
        Token t = lx_.next();
        if (t.kind != Token::Kind::Name || t.text != (star ? "elimstar" : "elim"))
            lx_.fail(std::string("expected '") + (star ? "elimstar" : "elim") + "'");
        expect("(");
        d.inner_name = name_token();
        const Program::Decl* inner = prog.find(d.inner_name);
        if (!inner) lx_.fail("unknown inner declaration '" + d.inner_name + "'");
        if (star) {
            expect(";");
            keywordp();
            expect("=");
            expect("[");
            d.witness.push_back(number_token());
            while (try_punct(",")) d.witness.push_back(number_token());
            expect("]");
        }
        expect(")");
        d.term = star ? make_elimstar(inner->term, d.witness) : make_elim(inner->term);
        add_decl(prog, std::move(d));
    }

    void keywordp() {
        Token t = lx_.next();
        if (t.kind != Token::Kind::Name || t.text != "p") lx_.fail("expected 'p'");
    }

    Lexer lx_;
};

std::string sort_suffix(const Program::Decl& d) {
    std::string s = sort_name(d.ret_sort);
    if (d.kind == Program::Decl::Kind::Llode) s += "^" + std::to_string(d.ret_count);
    return s;
}

std::string params_str(const std::vector<std::pair<std::string, Sort>>& params) {
    std::string s = "(";
    for (std::size_t i = 0; i < params.size(); ++i)
        s += (i ? ", " : "") + params[i].first + ":" + sort_name(params[i].second);
    return s + ")";
}

} // namespace

const Program::Decl* Program::find(const std::string& name) const {
    for (const auto& d : decls)
        if (d.name == name) return &d;
    return nullptr;
}

const Program::Decl& Program::get(const std::string& name) const {
    const Decl* d = find(name);
    if (!d) throw ParseError("no declaration named '" + name + "'");
    return *d;
}

Program parse_program(const std::string& text) { return ProgramParser(text).parse(); }

Program parse_program_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open program '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_program(buf.str());
}

std::string print_program(const Program& p) {
    std::ostringstream os;
    for (const auto& d : p.decls) {
        switch (d.kind) {
        case Program::Decl::Kind::Fn:
            os << "fn " << d.name << params_str(d.params) << " -> " << sort_suffix(d) << " = "
               << (d.body ? to_string(*d.body) : d.body_src) << "\n";
            break;
        case Program::Decl::Kind::Llode: {
            os << "llode " << d.name << params_str(d.params) << " -> " << sort_suffix(d) << " {\n";
            os << "  init: ";
            for (std::size_t i = 0; i < d.sys->init().size(); ++i)
                os << (i ? ", " : "") << to_string(d.sys->init()[i]);
            os << ";\n  wrt len(" << d.sys->x_name() << "): ";
            for (std::size_t i = 0; i < d.sys->rhs().size(); ++i)
                os << (i ? ", " : "") << to_string(d.sys->rhs()[i]);
            os << ";\n";
            if (!d.h_name.empty()) os << "  h: " << d.h_name << ";\n";
            os << "}\n";
            break;
        }
        case Program::Decl::Kind::Elim:
            os << "elim " << d.name << " = elim(" << d.inner_name << ")\n";
            break;
        case Program::Decl::Kind::ElimStar: {
            os << "elimstar " << d.name << " = elimstar(" << d.inner_name << "; p = [";
            for (std::size_t i = 0; i < d.witness.size(); ++i)
                os << (i ? ", " : "") << d.witness[i];
            os << "])\n";
            break;
        }
        }
    }
    return os.str();
}

namespace {

void degree_rows(std::ostringstream& os, const std::vector<Expr>& components,
                 const std::vector<std::string>& vars) {
    for (const auto& v : vars) {
        long deg = 0;
        for (const auto& e : components) deg = std::max(deg, degree(e, v));
        os << "  " << v << ": degree " << deg << " (";
        if (deg == 0)
            os << "essentially constant";
        else if (deg == 1)
            os << "essentially linear";
        else
            os << "not essentially linear";
        os << ")\n";
    }
}

void decomposition_rows(std::ostringstream& os, const std::vector<Expr>& components,
                        const std::vector<std::string>& targets) {
    try {
        LinearDecomposition d = decompose_linear(components, targets);
        os << "  decomposition:\n";
        for (std::size_t i = 0; i < d.A.size(); ++i) {
            os << "    A[" << i << "] =";
            for (const auto& e : d.A[i]) os << " [" << to_string(e) << "]";
            os << "\n    B[" << i << "] = " << to_string(d.B[i]) << "\n";
        }
    } catch (const NotEssentiallyLinear& e) {
        os << "  NotEssentiallyLinear: " << e.what() << "\n";
    }
}

} // namespace

std::string analyze_report(const Program& p, const std::string& name) {
    const Program::Decl& d = p.get(name);
    std::ostringstream os;
    switch (d.kind) {
    case Program::Decl::Kind::Fn: {
        os << "fn " << d.name << " " << typecheck(d.term).str() << "\n";
        if (!d.body) {
            os << "  (body contains calls; degree analysis applies to call-free bodies)\n";
            break;
        }
        std::vector<std::string> vars;
        for (const auto& [n, s] : d.params) vars.push_back(n);
        degree_rows(os, {*d.body}, vars);
        break;
    }
    case Program::Decl::Kind::Llode: {
        os << "llode " << d.name << " " << typecheck(d.term).str() << "\n";
        os << "  components: " << d.sys->dim() << ", state variables:";
        for (const auto& f : d.sys->f_names()) os << ' ' << f;
        os << "\n";
        degree_rows(os, d.sys->rhs(), d.sys->f_names());
        decomposition_rows(os, d.sys->rhs(), d.sys->f_names());
        break;
    }
    case Program::Decl::Kind::Elim:
    case Program::Decl::Kind::ElimStar:
        os << (d.kind == Program::Decl::Kind::Elim ? "elim " : "elimstar ") << d.name << " "
           << typecheck(d.term).str() << "\n  over " << d.inner_name << ", normal form: "
           << (is_normal_form(d.term) ? "yes" : "no") << "\n";
        break;
    }
    return os.str();
}

} // namespace dode
