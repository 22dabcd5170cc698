#include "jlq/parser.hpp"

#include <cctype>
#include <random>
#include <unordered_map>

namespace jlq {

namespace ast {

NodePtr Node::number(const GQ& v) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::number;
    n->value = v;
    return n;
}

NodePtr Node::imag() {
    auto n = std::make_shared<Node>();
    n->kind = Kind::imag;
    return n;
}

NodePtr Node::var(std::string name) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::var;
    n->name = std::move(name);
    return n;
}

NodePtr Node::binary(Kind k, NodePtr l, NodePtr r) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->a = std::move(l);
    n->b = std::move(r);
    return n;
}

NodePtr Node::power(NodePtr base, int e) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::pow;
    n->a = std::move(base);
    n->exponent = e;
    return n;
}

NodePtr Node::neg(NodePtr x) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::neg;
    n->a = std::move(x);
    return n;
}

NodePtr Node::log(NodePtr x) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::log;
    n->a = std::move(x);
    return n;
}

std::string print(const Node& n) {
    switch (n.kind) {
        case Kind::number: return n.value.sign() < 0 ? "(" + n.value.str() + ")" : n.value.str();
        case Kind::imag: return "i";
        case Kind::var: return n.name;
        case Kind::add: return "(" + print(*n.a) + " + " + print(*n.b) + ")";
        case Kind::sub: return "(" + print(*n.a) + " - " + print(*n.b) + ")";
        case Kind::mul: return "(" + print(*n.a) + "*" + print(*n.b) + ")";
        case Kind::div: return "(" + print(*n.a) + "/" + print(*n.b) + ")";
        case Kind::pow: return "(" + print(*n.a) + ")^" + (n.exponent < 0 ? "(" + std::to_string(n.exponent) + ")" : std::to_string(n.exponent));
        case Kind::neg: return "(-" + print(*n.a) + ")";
        case Kind::log: return "log(" + print(*n.a) + ")";
    }
    return "";
}

}  // namespace ast

namespace {

class Parser {
public:
    Parser(std::string_view s, const VarCtx& ctx) : s_(s), ctx_(ctx) {}

    ast::NodePtr run() {
        auto e = expression();
        skip();
        if (pos_ != s_.size()) throw ParseError(std::string("unexpected '") + s_[pos_] + "'", pos_);
        return e;
    }

private:
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool accept(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c)) {
            if (pos_ >= s_.size()) throw ParseError(std::string("expected '") + c + "' but input ended", pos_);
            throw ParseError(std::string("expected '") + c + "'", pos_);
        }
    }

    ast::NodePtr expression() {
        auto l = term();
        while (true) {
            if (accept('+'))
                l = ast::Node::binary(ast::Kind::add, l, term());
            else if (accept('-'))
                l = ast::Node::binary(ast::Kind::sub, l, term());
            else
                return l;
        }
    }

    ast::NodePtr term() {
        auto l = unary();
        while (true) {
            if (accept('*'))
                l = ast::Node::binary(ast::Kind::mul, l, unary());
            else if (accept('/'))
                l = ast::Node::binary(ast::Kind::div, l, unary());
            else
                return l;
        }
    }

    ast::NodePtr unary() {
        if (accept('-')) return ast::Node::neg(unary());
        if (accept('+')) return unary();
        return power();
    }

    ast::NodePtr power() {
        auto base = primary();
        if (accept('^')) {
            std::size_t at = pos_;
            bool paren = accept('(');
            bool neg = accept('-');
            skip();
            if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
                throw ParseError("exponent must be an integer", at);
            long e = 0;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                e = e * 10 + (s_[pos_] - '0');
                if (e > 100000) throw ParseError("exponent too large", at);
                ++pos_;
            }
            if (paren) expect(')');
            skip();
            if (pos_ < s_.size() && s_[pos_] == '^') throw ParseError("chained exponents are not supported", pos_);
            return ast::Node::power(base, static_cast<int>(neg ? -e : e));
        }
        return base;
    }

    ast::NodePtr primary() {
        skip();
        if (pos_ >= s_.size()) throw ParseError("unexpected end of input", pos_);
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            auto e = expression();
            expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            return ast::Node::number(GQ(mpq_class(std::string(s_.substr(start, pos_ - start)))));
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
            std::string name(s_.substr(start, pos_ - start));
            if (name == "i") return ast::Node::imag();
            if (name == "log") {
                expect('(');
                auto arg = expression();
                expect(')');
                return ast::Node::log(arg);
            }
            if (!ctx_.is_open() && !ctx_.contains(name)) throw UnknownVariable(name, start);
            return ast::Node::var(name);
        }
        throw ParseError(std::string("unexpected '") + c + "'", pos_);
    }

    std::string_view s_;
    const VarCtx& ctx_;
    std::size_t pos_ = 0;
};

}  // namespace

ast::NodePtr parse_tree(std::string_view text, const VarCtx& ctx) { return Parser(text, ctx).run(); }

Expr parse(std::string_view text, const VarCtx& ctx) { return to_expr(*parse_tree(text, ctx)); }

Expr parse(std::string_view text) { return parse(text, VarCtx::open()); }

Expr to_expr(const ast::Node& n) {
    using ast::Kind;
    switch (n.kind) {
        case Kind::number: return Expr(n.value);
        case Kind::imag: return Expr::imaginary_unit();
        case Kind::var: return Expr::variable(n.name);
        case Kind::add: return to_expr(*n.a) + to_expr(*n.b);
        case Kind::sub: return to_expr(*n.a) - to_expr(*n.b);
        case Kind::mul: return to_expr(*n.a) * to_expr(*n.b);
        case Kind::div: return to_expr(*n.a) / to_expr(*n.b);
        case Kind::pow: return to_expr(*n.a).pow(n.exponent);
        case Kind::neg: return -to_expr(*n.a);
        case Kind::log: return Expr::log(to_expr(*n.a));
    }
    return Expr();
}

GQ evaluate_tree(const ast::Node& n, const std::function<GQ(Var)>& value) {
    using ast::Kind;
    switch (n.kind) {
        case Kind::number: return n.value;
        case Kind::imag: return GQ::i();
        case Kind::var: return value(sym(n.name));
        case Kind::add: return evaluate_tree(*n.a, value) + evaluate_tree(*n.b, value);
        case Kind::sub: return evaluate_tree(*n.a, value) - evaluate_tree(*n.b, value);
        case Kind::mul: return evaluate_tree(*n.a, value) * evaluate_tree(*n.b, value);
        case Kind::div: {
            GQ d = evaluate_tree(*n.b, value);
            if (d.is_zero()) throw std::domain_error("evaluation at a pole");
            return evaluate_tree(*n.a, value) / d;
        }
        case Kind::pow: {
            GQ b = evaluate_tree(*n.a, value);
            if (b.is_zero() && n.exponent < 0) throw std::domain_error("evaluation at a pole");
            return b.pow(n.exponent);
        }
        case Kind::neg: return -evaluate_tree(*n.a, value);
        case Kind::log: {
            Expr arg = to_expr(*n.a);
            Expr l = Expr::log(arg);
            return evaluate(l, value);
        }
    }
    return GQ(0);
}

bool is_zero_checked(const ast::Node& n, unsigned points, unsigned seed) {
    Expr e = to_expr(n);
    std::mt19937 rng(seed);
    std::uniform_int_distribution<long> num(-9, 9), den(1, 7);
    unsigned done = 0;
    for (unsigned attempt = 0; done < points && attempt < points * 20; ++attempt) {
        std::unordered_map<Var, GQ> vals;
        auto value = [&](Var v) {
            auto it = vals.find(v);
            if (it != vals.end()) return it->second;
            GQ g(mpq_class(num(rng), den(rng)), mpq_class(num(rng), den(rng)));
            vals.emplace(v, g);
            return g;
        };
        try {
            GQ a = evaluate_tree(n, value);
            GQ b = evaluate(e, value);
            if (a != b) throw std::logic_error("normal form disagrees with direct evaluation of " + ast::print(n));
            ++done;
        } catch (const std::domain_error&) {
            continue;
        }
    }
    return e.is_zero();
}

}  // namespace jlq
