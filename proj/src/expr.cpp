#include "normalfam/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <map>

#include "normalfam/weierstrass.hpp"

namespace normalfam {

FunctionHandle FunctionHandle::from_tree(ast::Tree t) {
    FunctionHandle h;
    h.tree_ = std::make_shared<const ast::Tree>(std::move(t));
    h.source_ = h.print();
    return h;
}

namespace {

using ast::Kind;
using ast::Node;
using ast::Tree;

// ---------------------------------------------------------------- lexer ----

enum class Tok { number, ident, plus, minus, star, slash, caret, lparen, rparen, comma, end };

struct Token {
    Tok kind;
    size_t pos;
    std::string text;   // ident
    cdouble value{};    // number (possibly imaginary literal)
};

std::vector<Token> lex(const std::string& s) {
    std::vector<Token> out;
    size_t i = 0;
    while (i < s.size()) {
        char ch = s[i];
        if (std::isspace(static_cast<unsigned char>(ch))) {
            ++i;
            continue;
        }
        size_t start = i;
        if (std::isdigit(static_cast<unsigned char>(ch)) ||
            (ch == '.' && i + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[i + 1])))) {
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
            if (i < s.size() && s[i] == '.') {
                ++i;
                while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
            }
            if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
                size_t j = i + 1;
                if (j < s.size() && (s[j] == '+' || s[j] == '-')) ++j;
                if (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) {
                    ++j;
                    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
                    i = j;
                }
            }
            double mag = std::strtod(s.substr(start, i - start).c_str(), nullptr);
            bool imag = false;
            if (i < s.size() && s[i] == 'i') {
                // 'i' suffix only when not the start of an identifier like "inf"
                size_t j = i + 1;
                bool ident_continues = j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_');
                if (!ident_continues) {
                    imag = true;
                    ++i;
                }
            }
            out.push_back({Tok::number, start, "", imag ? cdouble(0.0, mag) : cdouble(mag, 0.0)});
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
            out.push_back({Tok::ident, start, s.substr(start, i - start)});
            continue;
        }
        Tok t;
        switch (ch) {
            case '+': t = Tok::plus; break;
            case '-': t = Tok::minus; break;
            case '*': t = Tok::star; break;
            case '/': t = Tok::slash; break;
            case '^': t = Tok::caret; break;
            case '(': t = Tok::lparen; break;
            case ')': t = Tok::rparen; break;
            case ',': t = Tok::comma; break;
            default: throw parse_error(std::string("unexpected character '") + ch + "'", i);
        }
        out.push_back({t, i, "", {}});
        ++i;
    }
    out.push_back({Tok::end, s.size(), "", {}});
    return out;
}

// --------------------------------------------------------------- parser ----

struct Parser {
    std::vector<Token> toks;
    size_t at = 0;
    Tree tree;

    const Token& peek() const { return toks[at]; }
    Token take() { return toks[at++]; }

    bool accept(Tok t) {
        if (peek().kind == t) {
            ++at;
            return true;
        }
        return false;
    }

    void expect(Tok t, const char* what) {
        if (!accept(t)) throw parse_error(std::string("expected ") + what, peek().pos);
    }

    int push(Node n) {
        tree.nodes.push_back(n);
        return static_cast<int>(tree.nodes.size()) - 1;
    }

    bool subtree_has_variable(int idx) const {
        const Node& n = tree.nodes[static_cast<size_t>(idx)];
        if (n.kind == Kind::variable) return true;
        bool r = false;
        if (n.a >= 0) r = r || subtree_has_variable(n.a);
        if (n.b >= 0) r = r || subtree_has_variable(n.b);
        return r;
    }

    // Evaluates a constant subexpression at parse time.
    cdouble const_arg(int idx, size_t pos);

    int parse_expr() {
        int lhs = parse_term();
        for (;;) {
            if (accept(Tok::plus)) {
                int rhs = parse_term();
                lhs = push({.kind = Kind::add, .a = lhs, .b = rhs});
            } else if (accept(Tok::minus)) {
                int rhs = parse_term();
                lhs = push({.kind = Kind::sub, .a = lhs, .b = rhs});
            } else {
                return lhs;
            }
        }
    }

    int parse_term() {
        int lhs = parse_unary();
        for (;;) {
            if (accept(Tok::star)) {
                int rhs = parse_unary();
                lhs = push({.kind = Kind::mul, .a = lhs, .b = rhs});
            } else if (accept(Tok::slash)) {
                int rhs = parse_unary();
                lhs = push({.kind = Kind::divide, .a = lhs, .b = rhs});
            } else {
                return lhs;
            }
        }
    }

    int parse_unary() {
        if (accept(Tok::minus)) {
            int operand = parse_unary();
            return push({.kind = Kind::neg, .a = operand});
        }
        return parse_postfix();
    }

    int parse_postfix() {
        int base = parse_primary();
        if (accept(Tok::caret)) {
            size_t pos = peek().pos;
            bool negative = accept(Tok::minus);
            if (peek().kind != Tok::number) throw parse_error("expected integer exponent", pos);
            Token t = take();
            if (t.value.imag() != 0.0 || t.value.real() != std::floor(t.value.real()))
                throw parse_error("exponent must be an integer", t.pos);
            long e = static_cast<long>(t.value.real());
            Node n{.kind = Kind::pow, .a = base};
            n.exponent = negative ? -e : e;
            return push(n);
        }
        return base;
    }

    std::vector<int> parse_args(size_t pos, size_t arity, const std::string& name) {
        expect(Tok::lparen, "'('");
        std::vector<int> args;
        args.push_back(parse_expr());
        while (accept(Tok::comma)) args.push_back(parse_expr());
        expect(Tok::rparen, "')'");
        if (args.size() != arity)
            throw parse_error(name + " expects " + std::to_string(arity) + " argument(s), got " +
                                  std::to_string(args.size()),
                              pos);
        return args;
    }

    int parse_primary() {
        const Token t = peek();
        switch (t.kind) {
            case Tok::number:
                take();
                return push({.kind = Kind::constant, .value = t.value});
            case Tok::lparen: {
                take();
                int e = parse_expr();
                expect(Tok::rparen, "')'");
                return e;
            }
            case Tok::ident:
                return parse_call_or_atom();
            default:
                throw parse_error("expected expression", t.pos);
        }
    }

    int parse_call_or_atom() {
        Token t = take();
        const std::string& name = t.text;
        if (name == "z") return push({.kind = Kind::variable});
        if (name == "i") return push({.kind = Kind::constant, .value = cdouble(0.0, 1.0)});
        if (name == "exp" || name == "sin" || name == "cos") {
            auto args = parse_args(t.pos, 1, name);
            Kind k = name == "exp" ? Kind::exp_fn : (name == "sin" ? Kind::sin_fn : Kind::cos_fn);
            return push({.kind = k, .a = args[0]});
        }
        if (name == "wp" || name == "wpp" || name == "wp_prime") {
            auto args = parse_args(t.pos, 3, name);
            Node n{.kind = name == "wp" ? Kind::wp_fn : Kind::wp_prime_fn, .a = args[0]};
            n.g2 = const_arg(args[1], t.pos);
            n.g3 = const_arg(args[2], t.pos);
            if (std::abs(wp_discriminant(n.g2, n.g3)) == 0.0)
                throw parse_error(name + ": degenerate invariants (g2^3 = 27 g3^2)", t.pos);
            return push(n);
        }
        if (name == "mobius") {
            auto args = parse_args(t.pos, 5, name);
            Node n{.kind = Kind::mobius, .a = args[0]};
            for (int k = 0; k < 4; ++k) n.mob[static_cast<size_t>(k)] = const_arg(args[static_cast<size_t>(k) + 1], t.pos);
            if (n.mob[0] * n.mob[3] - n.mob[1] * n.mob[2] == cdouble(0.0, 0.0))
                throw parse_error("mobius: degenerate matrix (ad - bc = 0)", t.pos);
            return push(n);
        }
        throw parse_error("unknown identifier '" + name + "'", t.pos);
    }
};

Jet eval_node(const Tree& tree, int idx, cdouble z, int order);

cdouble Parser::const_arg(int idx, size_t pos) {
    if (subtree_has_variable(idx))
        throw parse_error("argument must be constant (must not contain z)", pos);
    Jet j = eval_node(tree, idx, cdouble(0.0, 0.0), 0);
    ExtendedComplex v = j.extended_value();
    if (v.is_inf()) throw parse_error("constant argument evaluates to infinity", pos);
    return v.value();
}

// ------------------------------------------------------------ evaluator ----

Jet eval_node(const Tree& tree, int idx, cdouble z, int order) {
    const Node& n = tree.nodes[static_cast<size_t>(idx)];
    switch (n.kind) {
        case Kind::variable: return Jet::variable(z, order);
        case Kind::constant: return Jet::constant(n.value, order);
        case Kind::add: return jet_add(eval_node(tree, n.a, z, order), eval_node(tree, n.b, z, order));
        case Kind::sub: return jet_sub(eval_node(tree, n.a, z, order), eval_node(tree, n.b, z, order));
        case Kind::mul: return jet_mul(eval_node(tree, n.a, z, order), eval_node(tree, n.b, z, order));
        case Kind::divide:
            return jet_div(eval_node(tree, n.a, z, order), eval_node(tree, n.b, z, order));
        case Kind::neg: return jet_neg(eval_node(tree, n.a, z, order));
        case Kind::pow: return jet_pow(eval_node(tree, n.a, z, order), n.exponent);
        case Kind::exp_fn: return jet_exp(eval_node(tree, n.a, z, order));
        case Kind::sin_fn: return jet_sin(eval_node(tree, n.a, z, order));
        case Kind::cos_fn: return jet_cos(eval_node(tree, n.a, z, order));
        case Kind::wp_fn:
        case Kind::wp_prime_fn: {
            Jet inner = eval_node(tree, n.a, z, order);
            if (inner.pole) throw eval_error("unrepresentable: wp of a pole");
            cdouble u0 = inner.coeff[0];
            Jet outer = n.kind == Kind::wp_fn ? wp_jet(n.g2, n.g3, u0, order)
                                              : wp_prime_jet(n.g2, n.g3, u0, order);
            if (outer.pole) {
                // Compose the reciprocal chart, then flip back: 1/F(g) = (1/F)(g).
                outer.pole = false;
                Jet rec = jet_compose(outer, inner);
                return jet_div(Jet::constant(1.0, order), rec);
            }
            return jet_compose(outer, inner);
        }
        case Kind::mobius: {
            Jet f = eval_node(tree, n.a, z, order);
            return jet_mobius(f, n.mob[0], n.mob[1], n.mob[2], n.mob[3]);
        }
    }
    throw std::logic_error("eval_node: bad node kind");
}

// -------------------------------------------------------------- printer ----

std::string fmt_complex(cdouble v) {
    char buf[96];
    double re = v.real(), im = v.imag();
    auto fmt_num = [](double x, bool imag_suffix) {
        char b[48];
        if (x == std::floor(x) && std::abs(x) < 1e15)
            std::snprintf(b, sizeof(b), "%.0f%s", x, imag_suffix ? "i" : "");
        else
            std::snprintf(b, sizeof(b), "%.17g%s", x, imag_suffix ? "i" : "");
        return std::string(b);
    };
    if (im == 0.0) {
        if (re < 0.0) return "(" + fmt_num(re, false) + ")";
        return fmt_num(re, false);
    }
    if (re == 0.0) {
        if (im < 0.0) return "(" + fmt_num(im, true) + ")";
        return fmt_num(im, true);
    }
    std::snprintf(buf, sizeof(buf), "(%s%s%s)", fmt_num(re, false).c_str(), im >= 0.0 ? "+" : "",
                  fmt_num(im, true).c_str());
    return buf;
}

int precedence(Kind k) {
    switch (k) {
        case Kind::add:
        case Kind::sub: return 1;
        case Kind::mul:
        case Kind::divide: return 2;
        case Kind::neg: return 3;
        case Kind::pow: return 4;
        default: return 5;
    }
}

std::string print_node(const Tree& tree, int idx) {
    const Node& n = tree.nodes[static_cast<size_t>(idx)];
    auto child = [&](int c, bool strict) {
        std::string s = print_node(tree, c);
        int pc = precedence(tree.nodes[static_cast<size_t>(c)].kind);
        int pn = precedence(n.kind);
        if (pc < pn || (strict && pc == pn)) return "(" + s + ")";
        return s;
    };
    switch (n.kind) {
        case Kind::variable: return "z";
        case Kind::constant: return fmt_complex(n.value);
        case Kind::add: return print_node(tree, n.a) + "+" + child(n.b, false);
        case Kind::sub: return print_node(tree, n.a) + "-" + child(n.b, true);
        case Kind::mul: return child(n.a, false) + "*" + child(n.b, false);
        case Kind::divide: return child(n.a, false) + "/" + child(n.b, true);
        case Kind::neg: return "-" + child(n.a, true);
        case Kind::pow: {
            std::string e = std::to_string(n.exponent);
            return child(n.a, true) + "^" + e;
        }
        case Kind::exp_fn: return "exp(" + print_node(tree, n.a) + ")";
        case Kind::sin_fn: return "sin(" + print_node(tree, n.a) + ")";
        case Kind::cos_fn: return "cos(" + print_node(tree, n.a) + ")";
        case Kind::wp_fn:
        case Kind::wp_prime_fn: {
            std::string head = n.kind == Kind::wp_fn ? "wp(" : "wpp(";
            return head + print_node(tree, n.a) + "," + fmt_complex(n.g2) + "," + fmt_complex(n.g3) +
                   ")";
        }
        case Kind::mobius: {
            std::string s = "mobius(" + print_node(tree, n.a);
            for (const auto& m : n.mob) s += "," + fmt_complex(m);
            return s + ")";
        }
    }
    throw std::logic_error("print_node: bad node kind");
}

} // namespace

std::string FunctionHandle::print() const {
    if (!tree_) return "";
    return print_node(*tree_, tree_->root);
}

FunctionHandle parse(const std::string& text) {
    Parser p;
    p.toks = lex(text);
    p.tree.root = p.parse_expr();
    if (p.peek().kind != Tok::end) throw parse_error("trailing input", p.peek().pos);
    FunctionHandle h = FunctionHandle::from_tree(std::move(p.tree));
    return h;
}

Jet eval_jet(const FunctionHandle& f, cdouble z, int order) {
    if (!f.valid()) throw std::invalid_argument("eval_jet: empty handle");
    if (order < 0 || order > max_jet_order)
        throw std::invalid_argument("eval_jet: order must be within 0..6");
    if (!is_finite(z)) throw std::invalid_argument("eval_jet: z must be finite");
    return eval_node(f.tree(), f.tree().root, z, order);
}

ExtendedComplex eval_extended(const FunctionHandle& f, cdouble z) {
    return eval_jet(f, z, 0).extended_value();
}

FunctionHandle mobius_post(const FunctionHandle& f, cdouble a, cdouble b, cdouble c, cdouble d) {
    if (a * d - b * c == cdouble(0.0, 0.0))
        throw std::invalid_argument("mobius_post: degenerate matrix (ad - bc = 0)");
    ast::Tree t = f.tree();
    ast::Node n{.kind = ast::Kind::mobius, .a = t.root};
    n.mob = {a, b, c, d};
    t.nodes.push_back(n);
    t.root = static_cast<int>(t.nodes.size()) - 1;
    return FunctionHandle::from_tree(std::move(t));
}

FunctionHandle compose(const FunctionHandle& f, const FunctionHandle& g) {
    // Splice g in place of every variable of f.
    ast::Tree t = g.tree();
    int g_root = t.root;
    int base = static_cast<int>(t.nodes.size());
    const ast::Tree& ft = f.tree();
    for (const ast::Node& fn : ft.nodes) {
        ast::Node n = fn;
        if (n.kind == ast::Kind::variable) {
            // replaced below by pointing parents at g_root; keep placeholder
        }
        if (n.a >= 0) n.a += base;
        if (n.b >= 0) n.b += base;
        t.nodes.push_back(n);
    }
    // Redirect child links that land on variable nodes to g's root.
    for (size_t k = static_cast<size_t>(base); k < t.nodes.size(); ++k) {
        ast::Node& n = t.nodes[k];
        auto redirect = [&](int& c) {
            if (c >= base && t.nodes[static_cast<size_t>(c)].kind == ast::Kind::variable) c = g_root;
        };
        if (n.a >= 0) redirect(n.a);
        if (n.b >= 0) redirect(n.b);
    }
    int f_root = ft.root + base;
    if (t.nodes[static_cast<size_t>(f_root)].kind == ast::Kind::variable) f_root = g_root;
    t.root = f_root;
    return FunctionHandle::from_tree(std::move(t));
}

FunctionHandle translate(const FunctionHandle& f, cdouble offset) {
    return affine_precompose(f, cdouble(1.0, 0.0), offset);
}

FunctionHandle affine_precompose(const FunctionHandle& f, cdouble scale, cdouble offset) {
    ast::Tree g;
    g.nodes.push_back({.kind = ast::Kind::variable});
    g.nodes.push_back({.kind = ast::Kind::constant, .value = scale});
    g.nodes.push_back({.kind = ast::Kind::mul, .a = 1, .b = 0});
    g.nodes.push_back({.kind = ast::Kind::constant, .value = offset});
    g.nodes.push_back({.kind = ast::Kind::add, .a = 2, .b = 3});
    g.root = 4;
    return compose(f, FunctionHandle::from_tree(std::move(g)));
}

double spherical_derivative(const FunctionHandle& f, cdouble z) {
    return eval_jet(f, z, 1).spherical();
}

} // namespace normalfam
