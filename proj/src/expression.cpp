#include "hausdorff/expression.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace hausdorff::expr {

namespace {

struct Token {
    enum Type { Number, Ident, Op, End } type = End;
    std::size_t offset = 0;
    char op = 0;
    double value = 0.0;
    std::string text;
};

class Lexer {
  public:
    explicit Lexer(const std::string& s) : src_(s) { advance(); }
    const Token& peek() const { return tok_; }
    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

  private:
    void advance() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        tok_ = Token{};
        tok_.offset = pos_;
        if (pos_ >= src_.size()) {
            tok_.type = Token::End;
            return;
        }
        const char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            const char* begin = src_.data() + pos_;
            const char* end = src_.data() + src_.size();
            double v = 0.0;
            auto [ptr, ec] = std::from_chars(begin, end, v);
            if (ec != std::errc())
                throw UsageError("syntax error at offset " + std::to_string(pos_) +
                                 ": malformed number");
            tok_.type = Token::Number;
            tok_.value = v;
            pos_ += static_cast<std::size_t>(ptr - begin);
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                                          src_[pos_] == '_'))
                ++pos_;
            tok_.type = Token::Ident;
            tok_.text = src_.substr(start, pos_ - start);
            return;
        }
        if (std::string("+-*/^(),").find(c) != std::string::npos) {
            tok_.type = Token::Op;
            tok_.op = c;
            ++pos_;
            return;
        }
        throw UsageError("syntax error at offset " + std::to_string(pos_) +
                         ": unexpected character '" + std::string(1, c) + "'");
    }

    const std::string& src_;
    std::size_t pos_ = 0;
    Token tok_;
};

ExprPtr make(Kind k, std::vector<ExprPtr> args = {}) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->args = std::move(args);
    return n;
}

class Parser {
  public:
    Parser(const std::string& text, int n) : lex_(text), n_(n) {}

    ExprPtr run() {
        ExprPtr e = parse_expr();
        const Token& t = lex_.peek();
        if (t.type != Token::End)
            throw UsageError("syntax error at offset " + std::to_string(t.offset) +
                             ": unexpected trailing input");
        return e;
    }

  private:
    [[noreturn]] void fail(const Token& t, const std::string& what) {
        throw UsageError("syntax error at offset " + std::to_string(t.offset) + ": " + what);
    }

    bool accept(char op) {
        if (lex_.peek().type == Token::Op && lex_.peek().op == op) {
            lex_.take();
            return true;
        }
        return false;
    }

    void expect(char op, const char* what) {
        const Token& t = lex_.peek();
        if (t.type != Token::Op || t.op != op) fail(t, what);
        lex_.take();
    }

    ExprPtr parse_expr() {
        ExprPtr lhs = parse_term();
        for (;;) {
            if (accept('+'))
                lhs = make(Kind::Add, {lhs, parse_term()});
            else if (accept('-'))
                lhs = make(Kind::Sub, {lhs, parse_term()});
            else
                return lhs;
        }
    }

    ExprPtr parse_term() {
        ExprPtr lhs = parse_unary();
        for (;;) {
            if (accept('*'))
                lhs = make(Kind::Mul, {lhs, parse_unary()});
            else if (accept('/'))
                lhs = make(Kind::Div, {lhs, parse_unary()});
            else
                return lhs;
        }
    }

    // '^' binds tighter than unary minus and associates to the right.
    ExprPtr parse_unary() {
        if (accept('-')) return make(Kind::Neg, {parse_unary()});
        return parse_power();
    }

    ExprPtr parse_power() {
        ExprPtr base = parse_primary();
        if (accept('^')) return make(Kind::Pow, {base, parse_unary()});
        return base;
    }

    ExprPtr parse_primary() {
        Token t = lex_.peek();
        if (t.type == Token::Number) {
            lex_.take();
            auto n = std::make_shared<Node>();
            n->kind = Kind::Constant;
            n->value = t.value;
            return n;
        }
        if (t.type == Token::Op && t.op == '(') {
            lex_.take();
            ExprPtr e = parse_expr();
            expect(')', "expected ')'");
            return e;
        }
        if (t.type == Token::Ident) {
            lex_.take();
            const std::string& name = t.text;
            if (name == "chi") {
                expect('(', "expected '(' after chi");
                ExprPtr a = parse_expr();
                expect(',', "expected ',' in chi bounds");
                ExprPtr b = parse_expr();
                expect(')', "expected ')' after chi bounds");
                expect('(', "expected '(' before chi argument");
                ExprPtr x = parse_expr();
                expect(')', "expected ')' after chi argument");
                auto n = std::make_shared<Node>();
                n->kind = Kind::Chi;
                n->args = {a, b, x};
                return n;
            }
            if (name == "exp" || name == "log" || name == "abs" || name == "sqrt") {
                expect('(', "expected '(' after function name");
                ExprPtr x = parse_expr();
                expect(')', "expected ')'");
                auto n = std::make_shared<Node>();
                n->kind = Kind::Call;
                n->name = name;
                n->args = {x};
                return n;
            }
            if (name == "max" || name == "min") {
                expect('(', "expected '(' after function name");
                ExprPtr a = parse_expr();
                expect(',', "expected ',' between arguments");
                ExprPtr b = parse_expr();
                expect(')', "expected ')'");
                auto n = std::make_shared<Node>();
                n->kind = Kind::Call;
                n->name = name;
                n->args = {a, b};
                return n;
            }
            return parse_variable(t);
        }
        fail(t, "expected operand");
    }

    ExprPtr parse_variable(const Token& t) {
        const std::string& name = t.text;
        char base = 0;
        int index = -1;
        if (name == "u" || name == "t") {
            if (n_ != 1)
                throw UsageError("unknown identifier '" + name + "' at offset " +
                                 std::to_string(t.offset) + " (component suffix required for n=" +
                                 std::to_string(n_) + ")");
            base = name[0];
            index = 0;
        } else if ((name[0] == 'u' || name[0] == 't') && name.size() > 1) {
            bool digits = true;
            for (std::size_t k = 1; k < name.size(); ++k)
                digits = digits && std::isdigit(static_cast<unsigned char>(name[k]));
            if (digits) {
                base = name[0];
                index = std::stoi(name.substr(1)) - 1;
            }
        }
        if (base == 0 || index < 0 || index >= n_)
            throw UsageError("unknown identifier '" + name + "' at offset " +
                             std::to_string(t.offset));
        auto n = std::make_shared<Node>();
        n->kind = Kind::Variable;
        n->name = name;
        n->var_base = base;
        n->var_index = index;
        return n;
    }

    Lexer lex_;
    int n_;
};

std::string format_constant(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

ExprPtr parse(const std::string& text, int n) {
    if (text.empty()) throw UsageError("empty expression");
    if (n < 1 || n > 2) throw UsageError("expression dimension must be 1 or 2");
    return Parser(text, n).run();
}

double eval(const Node& node, const Env& env) {
    switch (node.kind) {
        case Kind::Constant:
            return node.value;
        case Kind::Variable: {
            const double* src = node.var_base == 'u' ? env.u : env.t;
            if (src == nullptr || node.var_index >= env.n)
                throw NumericError("variable '" + node.name + "' is not bound");
            return src[node.var_index];
        }
        case Kind::Add:
            return eval(*node.args[0], env) + eval(*node.args[1], env);
        case Kind::Sub:
            return eval(*node.args[0], env) - eval(*node.args[1], env);
        case Kind::Mul:
            return eval(*node.args[0], env) * eval(*node.args[1], env);
        case Kind::Div:
            return eval(*node.args[0], env) / eval(*node.args[1], env);
        case Kind::Pow:
            return std::pow(eval(*node.args[0], env), eval(*node.args[1], env));
        case Kind::Neg:
            return -eval(*node.args[0], env);
        case Kind::Call: {
            const double a = eval(*node.args[0], env);
            if (node.name == "exp") return std::exp(a);
            if (node.name == "log") return std::log(a);
            if (node.name == "abs") return std::abs(a);
            if (node.name == "sqrt") return std::sqrt(a);
            const double b = eval(*node.args[1], env);
            if (node.name == "max") return std::max(a, b);
            return std::min(a, b);
        }
        case Kind::Chi: {
            const double a = eval(*node.args[0], env);
            const double b = eval(*node.args[1], env);
            const double x = eval(*node.args[2], env);
            if (x == a || x == b) return 0.5;
            return (x > a && x < b) ? 1.0 : 0.0;
        }
    }
    throw NumericError("corrupt expression tree");
}

std::string print(const Node& node) {
    switch (node.kind) {
        case Kind::Constant:
            return format_constant(node.value);
        case Kind::Variable:
            return node.name;
        case Kind::Add:
            return "(" + print(*node.args[0]) + " + " + print(*node.args[1]) + ")";
        case Kind::Sub:
            return "(" + print(*node.args[0]) + " - " + print(*node.args[1]) + ")";
        case Kind::Mul:
            return "(" + print(*node.args[0]) + " * " + print(*node.args[1]) + ")";
        case Kind::Div:
            return "(" + print(*node.args[0]) + " / " + print(*node.args[1]) + ")";
        case Kind::Pow:
            return "(" + print(*node.args[0]) + " ^ " + print(*node.args[1]) + ")";
        case Kind::Neg:
            return "(-" + print(*node.args[0]) + ")";
        case Kind::Call:
            if (node.args.size() == 1) return node.name + "(" + print(*node.args[0]) + ")";
            return node.name + "(" + print(*node.args[0]) + ", " + print(*node.args[1]) + ")";
        case Kind::Chi:
            return "chi(" + print(*node.args[0]) + ", " + print(*node.args[1]) + ")(" +
                   print(*node.args[2]) + ")";
    }
    return {};
}

}  // namespace hausdorff::expr
