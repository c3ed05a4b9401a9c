#include "wgf/expression.hpp"

#include <cctype>
#include <cmath>
#include <memory>

namespace wgf {

namespace {

struct Node {
    virtual ~Node() = default;
    virtual double eval(double x) const = 0;
};
using NodePtr = std::shared_ptr<const Node>;

struct Constant : Node {
    double v;
    explicit Constant(double v) : v(v) {}
    double eval(double) const override { return v; }
};

struct Variable : Node {
    double eval(double x) const override { return x; }
};

struct Binary : Node {
    char op;
    NodePtr a, b;
    Binary(char op, NodePtr a, NodePtr b) : op(op), a(std::move(a)), b(std::move(b)) {}
    double eval(double x) const override {
        const double u = a->eval(x), v = b->eval(x);
        switch (op) {
            case '+': return u + v;
            case '-': return u - v;
            case '*': return u * v;
            case '/': return u / v;
            case '^': return std::pow(u, v);
        }
        return 0.0;
    }
};

struct Unary : Node {
    int fn;  // 0 = negate, 1 = log, 2 = exp
    NodePtr a;
    Unary(int fn, NodePtr a) : fn(fn), a(std::move(a)) {}
    double eval(double x) const override {
        const double u = a->eval(x);
        switch (fn) {
            case 0: return -u;
            case 1: return std::log(u);
            case 2: return std::exp(u);
        }
        return 0.0;
    }
};

class Parser {
  public:
    explicit Parser(const std::string& s) : s_(s) {}

    NodePtr parse() {
        NodePtr e = expr();
        skip_ws();
        if (pos_ != s_.size())
            throw input_error("expression: trailing input at position " +
                              std::to_string(pos_));
        return e;
    }

  private:
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    bool consume(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    NodePtr expr() {
        NodePtr left = term();
        for (;;) {
            if (consume('+'))
                left = std::make_shared<Binary>('+', left, term());
            else if (consume('-'))
                left = std::make_shared<Binary>('-', left, term());
            else
                return left;
        }
    }

    NodePtr term() {
        NodePtr left = factor();
        for (;;) {
            if (consume('*'))
                left = std::make_shared<Binary>('*', left, factor());
            else if (consume('/'))
                left = std::make_shared<Binary>('/', left, factor());
            else
                return left;
        }
    }

    NodePtr factor() {
        NodePtr base = unary();
        if (consume('^')) return std::make_shared<Binary>('^', base, factor());
        return base;
    }

    NodePtr unary() {
        if (consume('-')) return std::make_shared<Unary>(0, unary());
        return primary();
    }

    NodePtr primary() {
        skip_ws();
        if (pos_ >= s_.size()) throw input_error("expression: unexpected end of input");
        const char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t used = 0;
            double v;
            try {
                v = std::stod(s_.substr(pos_), &used);
            } catch (const std::exception&) {
                throw input_error("expression: bad number at position " +
                                  std::to_string(pos_));
            }
            pos_ += used;
            return std::make_shared<Constant>(v);
        }
        if (consume('(')) {
            NodePtr e = expr();
            if (!consume(')')) throw input_error("expression: missing ')'");
            return e;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t end = pos_;
            while (end < s_.size() && std::isalpha(static_cast<unsigned char>(s_[end])))
                ++end;
            const std::string name = s_.substr(pos_, end - pos_);
            pos_ = end;
            if (name == "x") return std::make_shared<Variable>();
            if (name == "log" || name == "exp") {
                if (!consume('(')) throw input_error("expression: expected '(' after " + name);
                NodePtr e = expr();
                if (!consume(')')) throw input_error("expression: missing ')'");
                return std::make_shared<Unary>(name == "log" ? 1 : 2, e);
            }
            throw input_error("expression: unknown identifier '" + name + "'");
        }
        throw input_error(std::string("expression: unexpected character '") + c + "'");
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

}  // namespace

std::function<double(double)> parse_expression(const std::string& text) {
    Parser p(text);
    NodePtr root = p.parse();
    return [root](double x) { return root->eval(x); };
}

}  // namespace wgf
