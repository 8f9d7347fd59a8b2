#include "toolalign/expr.hpp"

#include <json.hpp>

#include <cctype>

namespace toolalign::arith {

ExprPtr Expr::literal(BigInt v, std::size_t offset) {
    auto node = std::make_unique<Expr>();
    node->kind = Kind::literal;
    node->value = std::move(v);
    node->offset = offset;
    return node;
}

ExprPtr Expr::unary(Kind kind, ExprPtr operand, std::size_t offset) {
    auto node = std::make_unique<Expr>();
    node->kind = kind;
    node->lhs = std::move(operand);
    node->offset = offset;
    return node;
}

ExprPtr Expr::binary(Kind kind, ExprPtr lhs, ExprPtr rhs, std::size_t offset) {
    auto node = std::make_unique<Expr>();
    node->kind = kind;
    node->lhs = std::move(lhs);
    node->rhs = std::move(rhs);
    node->offset = offset;
    return node;
}

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    ExprPtr run() {
        skip_ws();
        if (pos_ >= text_.size()) throw ParseError(pos_, "empty expression");
        ExprPtr root = expr();
        skip_ws();
        if (pos_ < text_.size()) {
            if (text_[pos_] == ')') throw ParseError(pos_, "unbalanced ')'");
            throw ParseError(pos_, std::string("unexpected '") + text_[pos_] + "'");
        }
        return root;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    ExprPtr expr() {
        ExprPtr node = term();
        for (;;) {
            const char c = peek();
            if (c != '+' && c != '-') return node;
            const std::size_t at = pos_++;
            node = Expr::binary(c == '+' ? Expr::Kind::add : Expr::Kind::sub, std::move(node), term(),
                                at);
        }
    }

    ExprPtr term() {
        ExprPtr node = factor();
        for (;;) {
            const char c = peek();
            if (c != '*' && c != '/') return node;
            const std::size_t at = pos_++;
            node = Expr::binary(c == '*' ? Expr::Kind::mul : Expr::Kind::div, std::move(node),
                                factor(), at);
        }
    }

    ExprPtr factor() {
        const char c = peek();
        if (pos_ >= text_.size()) throw ParseError(pos_, "expected operand");
        if (c == '-') {
            const std::size_t at = pos_++;
            return Expr::unary(Expr::Kind::negate, factor(), at);
        }
        if (c == '(') {
            const std::size_t at = pos_++;
            ExprPtr inner = expr();
            if (peek() != ')') throw ParseError(pos_, "expected ')' to close '(' at offset " + std::to_string(at));
            ++pos_;
            inner->offset = at;
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return integer();
        throw ParseError(pos_, std::string("expected operand, found '") + c + "'");
    }

    ExprPtr integer() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        return Expr::literal(BigInt::from_string(text_.substr(start, pos_ - start)), start);
    }
};

int precedence(Expr::Kind kind) {
    switch (kind) {
        case Expr::Kind::add:
        case Expr::Kind::sub:
            return 1;
        case Expr::Kind::mul:
        case Expr::Kind::div:
            return 2;
        default:
            return 3;
    }
}

bool is_binary(Expr::Kind kind) {
    return kind == Expr::Kind::add || kind == Expr::Kind::sub || kind == Expr::Kind::mul ||
           kind == Expr::Kind::div;
}

char op_char(Expr::Kind kind) {
    switch (kind) {
        case Expr::Kind::add: return '+';
        case Expr::Kind::sub: return '-';
        case Expr::Kind::mul: return '*';
        case Expr::Kind::div: return '/';
        default: return '?';
    }
}

void render_into(const Expr& expr, std::string& out) {
    switch (expr.kind) {
        case Expr::Kind::literal:
            out += expr.value.to_string();
            return;
        case Expr::Kind::negate:
            out.push_back('-');
            if (is_binary(expr.lhs->kind)) {
                out.push_back('(');
                render_into(*expr.lhs, out);
                out.push_back(')');
            } else {
                render_into(*expr.lhs, out);
            }
            return;
        default:
            break;
    }
    const int prec = precedence(expr.kind);
    const bool paren_lhs = is_binary(expr.lhs->kind) && precedence(expr.lhs->kind) < prec;
    // Right side re-parses left-associatively, so equal precedence needs
    // parens to reproduce the same tree.
    const bool paren_rhs = is_binary(expr.rhs->kind) && precedence(expr.rhs->kind) <= prec;
    if (paren_lhs) out.push_back('(');
    render_into(*expr.lhs, out);
    if (paren_lhs) out.push_back(')');
    out.push_back(op_char(expr.kind));
    if (paren_rhs) out.push_back('(');
    render_into(*expr.rhs, out);
    if (paren_rhs) out.push_back(')');
}

} // namespace

ExprPtr parse(std::string_view text) { return Parser(text).run(); }

Rational evaluate(const Expr& expr) {
    switch (expr.kind) {
        case Expr::Kind::literal:
            return Rational(expr.value, BigInt(1));
        case Expr::Kind::negate:
            return evaluate(*expr.lhs).negated();
        case Expr::Kind::add:
            return evaluate(*expr.lhs) + evaluate(*expr.rhs);
        case Expr::Kind::sub:
            return evaluate(*expr.lhs) - evaluate(*expr.rhs);
        case Expr::Kind::mul:
            return evaluate(*expr.lhs) * evaluate(*expr.rhs);
        case Expr::Kind::div: {
            const Rational denominator = evaluate(*expr.rhs);
            if (denominator.is_zero())
                throw EvalError(render(expr), expr.offset, "division by zero");
            return evaluate(*expr.lhs) / denominator;
        }
    }
    throw Error("evaluate: corrupt expression node");
}

std::string render(const Expr& expr) {
    std::string out;
    render_into(expr, out);
    return out;
}

bool equal(const Expr& a, const Expr& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case Expr::Kind::literal:
            return a.value == b.value;
        case Expr::Kind::negate:
            return equal(*a.lhs, *b.lhs);
        default:
            return equal(*a.lhs, *b.lhs) && equal(*a.rhs, *b.rhs);
    }
}

std::string execute_tool_call(const std::string& call_json) {
    nlohmann::json obj;
    try {
        obj = nlohmann::json::parse(call_json);
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("malformed tool call: ") + e.what());
    }
    if (!obj.is_object() || !obj.contains("tool_name"))
        throw Error("malformed tool call: missing tool_name");
    const std::string name = obj["tool_name"].get<std::string>();
    if (name != "calculator")
        throw Error("tool '" + name + "' is not executable locally");
    if (!obj.contains("expression"))
        throw Error("calculator call missing expression");
    const ExprPtr expr = parse(obj["expression"].get<std::string>());
    return evaluate(*expr).to_string();
}

} // namespace toolalign::arith
