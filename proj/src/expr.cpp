#include "norlund/expr.hpp"

#include "norlund/error.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

namespace norlund::expr {

namespace {

template <typename... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <typename... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

struct NamedFunction {
    std::string_view name;
    Function fn;
};

constexpr std::array<NamedFunction, 6> functions{{
    {"abs", Function::Abs},
    {"exp", Function::Exp},
    {"ln", Function::Ln},
    {"sqrt", Function::Sqrt},
    {"sin", Function::Sin},
    {"cos", Function::Cos},
}};

std::string_view name_of(Function fn)
{
    for (const auto& entry : functions) {
        if (entry.fn == fn) return entry.name;
    }
    return "?";
}

} // namespace

Expr Expr::number(double value)
{
    return Expr(std::make_shared<const Node>(Node{NumberNode{value}}));
}

Expr Expr::variable()
{
    return Expr(std::make_shared<const Node>(Node{VariableNode{}}));
}

Expr Expr::constant(Constant c)
{
    return Expr(std::make_shared<const Node>(Node{ConstantNode{c}}));
}

Expr Expr::negate(Expr operand)
{
    return Expr(std::make_shared<const Node>(Node{NegateNode{std::move(operand)}}));
}

Expr Expr::binary(BinaryOp op, Expr lhs, Expr rhs)
{
    return Expr(std::make_shared<const Node>(Node{BinaryNode{op, std::move(lhs), std::move(rhs)}}));
}

Expr Expr::call(Function fn, Expr argument)
{
    return Expr(std::make_shared<const Node>(Node{CallNode{fn, std::move(argument)}}));
}

Expr Expr::pow_call(Expr base, Expr exponent)
{
    return Expr(std::make_shared<const Node>(Node{PowCallNode{std::move(base), std::move(exponent)}}));
}

bool operator==(const Expr& lhs, const Expr& rhs)
{
    if (lhs.node_ == rhs.node_) {
        return true;
    }
    const auto& a = lhs.node().value;
    const auto& b = rhs.node().value;
    if (a.index() != b.index()) {
        return false;
    }
    return std::visit(
        overloaded{
            [&](const NumberNode& x) { return x.value == std::get<NumberNode>(b).value; },
            [&](const VariableNode&) { return true; },
            [&](const ConstantNode& x) { return x.which == std::get<ConstantNode>(b).which; },
            [&](const NegateNode& x) { return x.operand == std::get<NegateNode>(b).operand; },
            [&](const BinaryNode& x) {
                const auto& y = std::get<BinaryNode>(b);
                return x.op == y.op && x.lhs == y.lhs && x.rhs == y.rhs;
            },
            [&](const CallNode& x) {
                const auto& y = std::get<CallNode>(b);
                return x.fn == y.fn && x.argument == y.argument;
            },
            [&](const PowCallNode& x) {
                const auto& y = std::get<PowCallNode>(b);
                return x.base == y.base && x.exponent == y.exponent;
            },
        },
        a);
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

enum class TokenKind { Number, Identifier, Plus, Minus, Star, Slash, Caret, LParen, RParen, Comma, End };

struct Token {
    TokenKind kind;
    std::size_t offset;
    std::string_view text;
    double number = 0.0;
};

const std::vector<std::string> primary_expected{"number", "'t'", "identifier", "'('"};

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_ident_start(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }
bool is_ident_char(char c) { return is_ident_start(c) || is_digit(c); }

std::string describe(const Token& token)
{
    if (token.kind == TokenKind::End) {
        return "end of input";
    }
    return "'" + std::string(token.text) + "'";
}

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) { advance(); }

    Expr parse_all()
    {
        Expr e = parse_expr();
        if (current_.kind != TokenKind::End) {
            fail({"'+'", "'-'", "'*'", "'/'", "'^'", "end of input"});
        }
        return e;
    }

private:
    [[noreturn]] void fail(std::vector<std::string> expected) const
    {
        throw SyntaxError(current_.offset, std::move(expected), describe(current_));
    }

    void expect(TokenKind kind, const char* label)
    {
        if (current_.kind != kind) {
            fail({label});
        }
        advance();
    }

    void advance()
    {
        while (pos_ < text_.size() &&
               (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' || text_[pos_] == '\r')) {
            ++pos_;
        }
        const std::size_t start = pos_;
        if (pos_ == text_.size()) {
            current_ = {TokenKind::End, start, {}};
            return;
        }
        const char c = text_[pos_];
        if (is_digit(c) || (c == '.' && pos_ + 1 < text_.size() && is_digit(text_[pos_ + 1]))) {
            lex_number(start);
            return;
        }
        if (is_ident_start(c)) {
            while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
            current_ = {TokenKind::Identifier, start, text_.substr(start, pos_ - start)};
            return;
        }
        TokenKind kind;
        switch (c) {
            case '+': kind = TokenKind::Plus; break;
            case '-': kind = TokenKind::Minus; break;
            case '*': kind = TokenKind::Star; break;
            case '/': kind = TokenKind::Slash; break;
            case '^': kind = TokenKind::Caret; break;
            case '(': kind = TokenKind::LParen; break;
            case ')': kind = TokenKind::RParen; break;
            case ',': kind = TokenKind::Comma; break;
            default:
                throw SyntaxError(start, {"number", "identifier", "operator", "'('", "')'", "','"},
                                  "'" + std::string(1, c) + "'");
        }
        ++pos_;
        current_ = {kind, start, text_.substr(start, 1)};
    }

    void lex_number(std::size_t start)
    {
        while (pos_ < text_.size() && is_digit(text_[pos_])) ++pos_;
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            while (pos_ < text_.size() && is_digit(text_[pos_])) ++pos_;
        }
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t look = pos_ + 1;
            if (look < text_.size() && (text_[look] == '+' || text_[look] == '-')) ++look;
            if (look < text_.size() && is_digit(text_[look])) {
                pos_ = look;
                while (pos_ < text_.size() && is_digit(text_[pos_])) ++pos_;
            }
        }
        const std::string_view literal = text_.substr(start, pos_ - start);
        double value = 0.0;
        const auto [end, ec] = std::from_chars(literal.data(), literal.data() + literal.size(), value);
        if (ec != std::errc{} || end != literal.data() + literal.size() || !std::isfinite(value)) {
            throw SyntaxError(start, {"finite number"}, "'" + std::string(literal) + "'");
        }
        current_ = {TokenKind::Number, start, literal, value};
    }

    Expr parse_expr()
    {
        Expr lhs = parse_term();
        while (current_.kind == TokenKind::Plus || current_.kind == TokenKind::Minus) {
            const BinaryOp op = current_.kind == TokenKind::Plus ? BinaryOp::Add : BinaryOp::Sub;
            advance();
            lhs = Expr::binary(op, std::move(lhs), parse_term());
        }
        return lhs;
    }

    Expr parse_term()
    {
        Expr lhs = parse_unary();
        while (current_.kind == TokenKind::Star || current_.kind == TokenKind::Slash) {
            const BinaryOp op = current_.kind == TokenKind::Star ? BinaryOp::Mul : BinaryOp::Div;
            advance();
            lhs = Expr::binary(op, std::move(lhs), parse_unary());
        }
        return lhs;
    }

    Expr parse_unary()
    {
        if (current_.kind == TokenKind::Minus) {
            advance();
            return Expr::negate(parse_unary());
        }
        return parse_power();
    }

    Expr parse_power()
    {
        Expr base = parse_primary();
        if (current_.kind != TokenKind::Caret) {
            return base;
        }
        advance();
        if (current_.kind == TokenKind::Minus) {
            // 2^-t is ambiguous at a glance; require 2^(-t).
            fail(primary_expected);
        }
        return Expr::binary(BinaryOp::Pow, std::move(base), parse_power());
    }

    Expr parse_primary()
    {
        switch (current_.kind) {
            case TokenKind::Number: {
                const double value = current_.number;
                advance();
                return Expr::number(value);
            }
            case TokenKind::LParen: {
                advance();
                Expr inner = parse_expr();
                expect(TokenKind::RParen, "')'");
                return inner;
            }
            case TokenKind::Identifier: return parse_identifier();
            default: fail(primary_expected);
        }
    }

    Expr parse_identifier()
    {
        const Token token = current_;
        const std::string_view name = token.text;
        if (name == "t") {
            advance();
            return Expr::variable();
        }
        if (name == "pi") {
            advance();
            return Expr::constant(Constant::Pi);
        }
        if (name == "e") {
            advance();
            return Expr::constant(Constant::E);
        }
        if (name == "pow") {
            advance();
            expect(TokenKind::LParen, "'('");
            Expr base = parse_expr();
            expect(TokenKind::Comma, "','");
            Expr exponent = parse_expr();
            expect(TokenKind::RParen, "')'");
            return Expr::pow_call(std::move(base), std::move(exponent));
        }
        for (const auto& entry : functions) {
            if (entry.name == name) {
                advance();
                expect(TokenKind::LParen, "'('");
                Expr argument = parse_expr();
                expect(TokenKind::RParen, "')'");
                return Expr::call(entry.fn, std::move(argument));
            }
        }
        throw UnknownIdentifier(token.offset, std::string(name));
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    Token current_{TokenKind::End, 0, {}};
};

} // namespace

Expr parse(std::string_view text)
{
    return Parser(text).parse_all();
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

[[noreturn]] void fault(const Expr& e, double t, const char* reason)
{
    throw DomainFault(format(e), t, reason);
}

double checked(const Expr& e, double t, double value)
{
    if (!std::isfinite(value)) {
        fault(e, t, "non-finite result");
    }
    return value;
}

double power(const Expr& e, double t, double base, double exponent)
{
    if (base == 0.0 && exponent < 0.0) {
        fault(e, t, "zero raised to a negative power");
    }
    if (base < 0.0 && std::trunc(exponent) != exponent) {
        fault(e, t, "negative base raised to a non-integer power");
    }
    return checked(e, t, std::pow(base, exponent));
}

double eval(const Expr& e, double t)
{
    return std::visit(
        overloaded{
            [](const NumberNode& n) { return n.value; },
            [t](const VariableNode&) { return t; },
            [](const ConstantNode& c) {
                return c.which == Constant::Pi ? std::numbers::pi : std::numbers::e;
            },
            [&](const NegateNode& n) { return -eval(n.operand, t); },
            [&](const BinaryNode& n) {
                const double lhs = eval(n.lhs, t);
                const double rhs = eval(n.rhs, t);
                switch (n.op) {
                    case BinaryOp::Add: return checked(e, t, lhs + rhs);
                    case BinaryOp::Sub: return checked(e, t, lhs - rhs);
                    case BinaryOp::Mul: return checked(e, t, lhs * rhs);
                    case BinaryOp::Div:
                        if (rhs == 0.0) fault(e, t, "division by zero");
                        return checked(e, t, lhs / rhs);
                    case BinaryOp::Pow: return power(e, t, lhs, rhs);
                }
                return 0.0;
            },
            [&](const CallNode& n) {
                const double x = eval(n.argument, t);
                switch (n.fn) {
                    case Function::Abs: return std::abs(x);
                    case Function::Exp: return checked(e, t, std::exp(x));
                    case Function::Ln:
                        if (!(x > 0.0)) fault(e, t, "logarithm of a non-positive number");
                        return std::log(x);
                    case Function::Sqrt:
                        if (x < 0.0) fault(e, t, "square root of a negative number");
                        return std::sqrt(x);
                    case Function::Sin: return std::sin(x);
                    case Function::Cos: return std::cos(x);
                }
                return 0.0;
            },
            [&](const PowCallNode& n) { return power(e, t, eval(n.base, t), eval(n.exponent, t)); },
        },
        e.node().value);
}

} // namespace

double evaluate(const Expr& e, double t)
{
    return eval(e, t);
}

RealFunction to_function(Expr e)
{
    return [e = std::move(e)](double t) { return evaluate(e, t); };
}

// ---------------------------------------------------------------------------
// Formatting

namespace {

// Binding strength; higher binds tighter.
constexpr int additive = 1;
constexpr int multiplicative = 2;
constexpr int prefix = 3;
constexpr int exponential = 4;
constexpr int atomic = 5;

int precedence(const Expr& e)
{
    return std::visit(overloaded{
                          [](const NumberNode& n) { return std::signbit(n.value) ? prefix : atomic; },
                          [](const NegateNode&) { return prefix; },
                          [](const BinaryNode& n) {
                              switch (n.op) {
                                  case BinaryOp::Add:
                                  case BinaryOp::Sub: return additive;
                                  case BinaryOp::Mul:
                                  case BinaryOp::Div: return multiplicative;
                                  case BinaryOp::Pow: return exponential;
                              }
                              return atomic;
                          },
                          [](const auto&) { return atomic; },
                      },
                      e.node().value);
}

void render(const Expr& e, std::string& out);

void render_wrapped(const Expr& e, bool wrap, std::string& out)
{
    if (wrap) out += '(';
    render(e, out);
    if (wrap) out += ')';
}

char symbol(BinaryOp op)
{
    switch (op) {
        case BinaryOp::Add: return '+';
        case BinaryOp::Sub: return '-';
        case BinaryOp::Mul: return '*';
        case BinaryOp::Div: return '/';
        case BinaryOp::Pow: return '^';
    }
    return '?';
}

void render(const Expr& e, std::string& out)
{
    std::visit(overloaded{
                   [&](const NumberNode& n) {
                       std::array<char, 32> buffer{};
                       const auto result = std::to_chars(buffer.data(), buffer.data() + buffer.size(), n.value);
                       out.append(buffer.data(), result.ptr);
                   },
                   [&](const VariableNode&) { out += 't'; },
                   [&](const ConstantNode& c) { out += c.which == Constant::Pi ? "pi" : "e"; },
                   [&](const NegateNode& n) {
                       out += '-';
                       render_wrapped(n.operand, precedence(n.operand) < prefix, out);
                   },
                   [&](const BinaryNode& n) {
                       if (n.op == BinaryOp::Pow) {
                           render_wrapped(n.lhs, precedence(n.lhs) < atomic, out);
                           out += '^';
                           render_wrapped(n.rhs, precedence(n.rhs) < exponential, out);
                           return;
                       }
                       const int own = precedence(e);
                       render_wrapped(n.lhs, precedence(n.lhs) < own, out);
                       out += symbol(n.op);
                       render_wrapped(n.rhs, precedence(n.rhs) <= own, out);
                   },
                   [&](const CallNode& n) {
                       out += name_of(n.fn);
                       out += '(';
                       render(n.argument, out);
                       out += ')';
                   },
                   [&](const PowCallNode& n) {
                       out += "pow(";
                       render(n.base, out);
                       out += ',';
                       render(n.exponent, out);
                       out += ')';
                   },
               },
               e.node().value);
}

} // namespace

std::string format(const Expr& e)
{
    std::string out;
    render(e, out);
    return out;
}

} // namespace norlund::expr
