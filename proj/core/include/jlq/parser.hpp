#pragma once

#include "jlq/expr.hpp"
#include "jlq/var_ctx.hpp"

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

namespace jlq {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg + " at position " + std::to_string(pos)), pos_(pos) {}
    std::size_t position() const { return pos_; }

private:
    std::size_t pos_;
};

class UnknownVariable : public ParseError {
public:
    UnknownVariable(const std::string& name, std::size_t pos)
        : ParseError("unknown variable '" + name + "'", pos), name_(name) {}
    const std::string& name() const { return name_; }

private:
    std::string name_;
};

namespace ast {

enum class Kind { number, imag, var, add, sub, mul, div, pow, neg, log };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

// Unnormalized expression tree as written.
struct Node {
    Kind kind;
    GQ value;          // number
    std::string name;  // var
    int exponent = 0;  // pow
    NodePtr a, b;

    static NodePtr number(const GQ& v);
    static NodePtr imag();
    static NodePtr var(std::string n);
    static NodePtr binary(Kind k, NodePtr l, NodePtr r);
    static NodePtr power(NodePtr base, int e);
    static NodePtr neg(NodePtr x);
    static NodePtr log(NodePtr x);
};

std::string print(const Node& n);

}  // namespace ast

ast::NodePtr parse_tree(std::string_view text, const VarCtx& ctx);
Expr parse(std::string_view text, const VarCtx& ctx);
// Parses with an open context (any identifier accepted).
Expr parse(std::string_view text);

// Canonical Expr of a tree.
Expr to_expr(const ast::Node& n);
// Direct evaluation of the tree without normalizing it; log(u) is looked up
// as the atom of the normalized argument.
GQ evaluate_tree(const ast::Node& n, const std::function<GQ(Var)>& value);

// Zero test with a randomized-evaluation cross-check of the tree against its
// normal form at `points` pole-free Gaussian-rational points. Throws
// std::logic_error if the two disagree.
bool is_zero_checked(const ast::Node& n, unsigned points = 5, unsigned seed = 7);

}  // namespace jlq
