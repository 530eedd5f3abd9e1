#ifndef NORMALFAM_EXPR_HPP
#define NORMALFAM_EXPR_HPP

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "normalfam/extended.hpp"
#include "normalfam/jet.hpp"

namespace normalfam {

class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& msg, size_t position)
        : std::runtime_error(msg + " at position " + std::to_string(position)), pos(position) {}
    size_t pos;
};

namespace ast {

enum class Kind {
    variable,   // z
    constant,
    add,
    sub,
    mul,
    divide,
    neg,
    pow,        // integer exponent
    exp_fn,
    sin_fn,
    cos_fn,
    wp_fn,      // wp(u, g2, g3)
    wp_prime_fn,
    mobius,     // (a f + b) / (c f + d)
};

struct Node {
    Kind kind;
    int a = -1;
    int b = -1;
    cdouble value{};                 // constant
    long exponent = 0;               // pow
    cdouble g2{}, g3{};              // wp / wp_prime
    std::array<cdouble, 4> mob{};    // mobius coefficients a,b,c,d
};

struct Tree {
    std::vector<Node> nodes;
    int root = -1;
};

} // namespace ast

/// Immutable parsed expression; evaluation is pure and thread-safe.
class FunctionHandle {
public:
    FunctionHandle() = default;

    const std::string& source() const { return source_; }
    const ast::Tree& tree() const { return *tree_; }
    bool valid() const { return tree_ != nullptr; }

    /// Canonical re-serialization of the tree (parse/print round trip).
    std::string print() const;

    static FunctionHandle from_tree(ast::Tree t);

private:
    std::shared_ptr<const ast::Tree> tree_;
    std::string source_;
};

/// Parses the documented expression grammar (see docs/grammar.md).
/// Errors carry the offending position.
FunctionHandle parse(const std::string& text);

/// Jet of f at z, order <= 6. Near poles the jet describes 1/f and the pole
/// flag is set. Overflow beyond both charts raises eval_error.
Jet eval_jet(const FunctionHandle& f, cdouble z, int order);

/// Value on the Riemann sphere.
ExtendedComplex eval_extended(const FunctionHandle& f, cdouble z);

/// Post-composition with the Moebius transform (a f + b)/(c f + d).
FunctionHandle mobius_post(const FunctionHandle& f, cdouble a, cdouble b, cdouble c, cdouble d);

/// f composed with g: z -> f(g(z)).
FunctionHandle compose(const FunctionHandle& f, const FunctionHandle& g);

/// Convenience for f(z + offset) and f(scale z + offset).
FunctionHandle translate(const FunctionHandle& f, cdouble offset);
FunctionHandle affine_precompose(const FunctionHandle& f, cdouble scale, cdouble offset);

/// Spherical derivative |f'|/(1+|f|^2) at z, computed on whichever chart the
/// jet lands on.
double spherical_derivative(const FunctionHandle& f, cdouble z);

} // namespace normalfam

#endif
