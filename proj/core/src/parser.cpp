#include "ivsolve/parser.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <optional>
#include <sstream>
#include <vector>

namespace ivsolve {

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

enum class Tok {
    ident, number, lparen, rparen, lbracket, rbracket, comma, semi, colon,
    plus, minus, star, slash, caret, dotdot, end
};

struct Token {
    Tok kind;
    std::string text;
    double num = 0.0;
    int line = 1;
    int col = 1;
};

class Lexer {
public:
    explicit Lexer(const std::string& src) : src_(src) { advance(); }

    const Token& peek() const { return tok_; }

    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    void advance() {
        skip_space();
        tok_.line = line_;
        tok_.col = col_;
        if (pos_ >= src_.size()) {
            tok_.kind = Tok::end;
            tok_.text = "<end of input>";
            return;
        }
        char ch = src_[pos_];
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            std::size_t start = pos_;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                bump();
            tok_.kind = Tok::ident;
            tok_.text = src_.substr(start, pos_ - start);
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(ch)) ||
            (ch == '.' && pos_ + 1 < src_.size() &&
             std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
            double value = 0.0;
            auto res = std::from_chars(src_.data() + pos_, src_.data() + src_.size(), value);
            if (res.ec != std::errc{} || !std::isfinite(value))
                throw SyntaxError("malformed number", line_, col_);
            std::size_t len = static_cast<std::size_t>(res.ptr - (src_.data() + pos_));
            tok_.kind = Tok::number;
            tok_.text = src_.substr(pos_, len);
            tok_.num = value;
            for (std::size_t i = 0; i < len; ++i) bump();
            return;
        }
        if (ch == '.' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '.') {
            tok_.kind = Tok::dotdot;
            tok_.text = "..";
            bump();
            bump();
            return;
        }
        bump();
        switch (ch) {
            case '(': tok_.kind = Tok::lparen; break;
            case ')': tok_.kind = Tok::rparen; break;
            case '[': tok_.kind = Tok::lbracket; break;
            case ']': tok_.kind = Tok::rbracket; break;
            case ',': tok_.kind = Tok::comma; break;
            case ';': tok_.kind = Tok::semi; break;
            case ':': tok_.kind = Tok::colon; break;
            case '+': tok_.kind = Tok::plus; break;
            case '-': tok_.kind = Tok::minus; break;
            case '*': tok_.kind = Tok::star; break;
            case '/': tok_.kind = Tok::slash; break;
            case '^': tok_.kind = Tok::caret; break;
            default:
                throw SyntaxError(std::string("unexpected character '") + ch + "'", tok_.line,
                                  tok_.col);
        }
        tok_.text = std::string(1, ch);
    }

    void skip_space() {
        while (pos_ < src_.size()) {
            char ch = src_[pos_];
            if (ch == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n') bump();
            } else if (std::isspace(static_cast<unsigned char>(ch))) {
                bump();
            } else {
                break;
            }
        }
    }

    void bump() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    const std::string& src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    Token tok_;
};

class Parser {
public:
    explicit Parser(const std::string& text) : lex_(text) {}

    SystemModel parse(const std::string& name) {
        expect_keyword("states");
        n_ = parse_var_range('x');
        expect(Tok::semi);
        if (peek_keyword("params")) {
            lex_.take();
            p_ = parse_var_range('u');
            expect(Tok::semi);
        }

        std::vector<ExprPtr> eqs;
        while (peek_keyword("eq")) {
            lex_.take();
            expect(Tok::colon);
            eqs.push_back(parse_expr());
            expect(Tok::semi);
        }
        if (static_cast<int>(eqs.size()) != n_) {
            Token t = lex_.peek();
            throw DimensionMismatchError("declared " + std::to_string(n_) + " states but found " +
                                             std::to_string(eqs.size()) + " equations",
                                         t.line, t.col);
        }

        expect_keyword("X0");
        expect(Tok::colon);
        Box x0 = parse_box(n_, "X0");
        expect(Tok::semi);

        Box u;
        if (p_ > 0) {
            expect_keyword("U");
            expect(Tok::colon);
            u = parse_box(p_, "U");
            expect(Tok::semi);
        } else if (peek_keyword("U")) {
            Token t = lex_.peek();
            throw DimensionMismatchError("U given but no parameters are declared", t.line, t.col);
        }
        Token t = lex_.peek();
        if (t.kind != Tok::end) throw SyntaxError("unexpected trailing input", t.line, t.col);

        return SystemModel::make(name, std::move(eqs), std::move(x0), std::move(u));
    }

private:
    Lexer lex_;
    int n_ = 0;
    int p_ = 0;

    bool peek_keyword(const std::string& kw) const {
        return lex_.peek().kind == Tok::ident && lex_.peek().text == kw;
    }

    void expect_keyword(const std::string& kw) {
        Token t = lex_.take();
        if (t.kind != Tok::ident || t.text != kw)
            throw SyntaxError("expected '" + kw + "', found '" + t.text + "'", t.line, t.col);
    }

    Token expect(Tok kind) {
        Token t = lex_.take();
        if (t.kind != kind) throw SyntaxError("unexpected '" + t.text + "'", t.line, t.col);
        return t;
    }

    // "x1..xN" (or a single "x1" for one variable); returns N.
    int parse_var_range(char prefix) {
        Token first = expect(Tok::ident);
        int lo = var_index(first, prefix);
        if (lo != 1)
            throw SyntaxError(std::string("variable range must start at ") + prefix + "1",
                              first.line, first.col);
        if (lex_.peek().kind != Tok::dotdot) return 1;
        lex_.take();
        Token last = expect(Tok::ident);
        int hi = var_index(last, prefix);
        if (hi < 1) throw SyntaxError("empty variable range", last.line, last.col);
        return hi;
    }

    static int var_index(const Token& t, char prefix) {
        const std::string& s = t.text;
        if (s.size() < 2 || s[0] != prefix)
            throw SyntaxError("expected a variable like " + std::string(1, prefix) + "1", t.line,
                              t.col);
        int value = 0;
        auto res = std::from_chars(s.data() + 1, s.data() + s.size(), value);
        if (res.ec != std::errc{} || res.ptr != s.data() + s.size() || value < 1)
            throw SyntaxError("expected a variable like " + std::string(1, prefix) + "1", t.line,
                              t.col);
        return value;
    }

    Box parse_box(int count, const std::string& what) {
        std::vector<Interval> comps;
        comps.push_back(parse_interval());
        while (peek_keyword("x")) {
            lex_.take();
            comps.push_back(parse_interval());
        }
        if (static_cast<int>(comps.size()) != count) {
            Token t = lex_.peek();
            throw DimensionMismatchError(what + " has " + std::to_string(comps.size()) +
                                             " components, expected " + std::to_string(count),
                                         t.line, t.col);
        }
        return Box(std::move(comps));
    }

    Interval parse_interval() {
        Token open = expect(Tok::lbracket);
        double lo = parse_signed_number();
        expect(Tok::comma);
        double hi = parse_signed_number();
        expect(Tok::rbracket);
        if (lo > hi) throw SyntaxError("interval endpoints out of order", open.line, open.col);
        return Interval(lo, hi);
    }

    double parse_signed_number() {
        bool negate = false;
        while (lex_.peek().kind == Tok::minus) {
            lex_.take();
            negate = !negate;
        }
        Token t = expect(Tok::number);
        return negate ? -t.num : t.num;
    }

    ExprPtr parse_expr() {
        ExprPtr e = parse_term();
        while (true) {
            Tok k = lex_.peek().kind;
            if (k == Tok::plus) {
                lex_.take();
                e = Expr::make_add(std::move(e), parse_term());
            } else if (k == Tok::minus) {
                lex_.take();
                e = Expr::make_sub(std::move(e), parse_term());
            } else {
                return e;
            }
        }
    }

    ExprPtr parse_term() {
        ExprPtr e = parse_factor();
        while (true) {
            Tok k = lex_.peek().kind;
            if (k == Tok::star) {
                lex_.take();
                e = Expr::make_mul(std::move(e), parse_factor());
            } else if (k == Tok::slash) {
                lex_.take();
                e = Expr::make_div(std::move(e), parse_factor());
            } else {
                return e;
            }
        }
    }

    ExprPtr parse_factor() {
        if (lex_.peek().kind == Tok::minus) {
            lex_.take();
            return Expr::make_neg(parse_factor());
        }
        return parse_power();
    }

    ExprPtr parse_power() {
        ExprPtr base = parse_atom();
        if (lex_.peek().kind != Tok::caret) return base;
        lex_.take();
        Token t = expect(Tok::number);
        double k = t.num;
        if (k < 0 || k != std::floor(k) || k > 1e9 || t.text.find_first_of(".eE") != std::string::npos)
            throw SyntaxError("exponent must be a nonnegative integer literal", t.line, t.col);
        return Expr::make_pow(std::move(base), static_cast<unsigned>(k));
    }

    ExprPtr parse_atom() {
        Token t = lex_.take();
        switch (t.kind) {
            case Tok::number: return Expr::constant(t.num);
            case Tok::lparen: {
                ExprPtr e = parse_expr();
                expect(Tok::rparen);
                return e;
            }
            case Tok::ident: {
                if (t.text.size() >= 2 && (t.text[0] == 'x' || t.text[0] == 'u')) {
                    int idx = 0;
                    auto res = std::from_chars(t.text.data() + 1, t.text.data() + t.text.size(), idx);
                    if (res.ec == std::errc{} && res.ptr == t.text.data() + t.text.size() &&
                        idx >= 1) {
                        int limit = t.text[0] == 'x' ? n_ : p_;
                        if (idx > limit)
                            throw UnknownIdentifierError("'" + t.text + "' is not declared", t.line,
                                                         t.col);
                        return t.text[0] == 'x' ? Expr::state(idx - 1) : Expr::param(idx - 1);
                    }
                }
                throw UnknownIdentifierError("unknown identifier '" + t.text + "'", t.line, t.col);
            }
            default: throw SyntaxError("unexpected '" + t.text + "'", t.line, t.col);
        }
    }
};

// Printing: precedence levels add/sub = 1, mul/div = 2, neg = 3, pow = 4,
// atoms = 5; a child is parenthesized when its level is below the context.
int precedence(const ExprPtr& e) {
    switch (e->kind) {
        case ExprKind::add:
        case ExprKind::sub: return 1;
        case ExprKind::mul:
        case ExprKind::div: return 2;
        case ExprKind::neg: return 3;
        case ExprKind::int_pow: return 4;
        case ExprKind::constant: return e->value < 0 ? 3 : 5;
        default: return 5;
    }
}

void print_rec(std::ostream& os, const ExprPtr& e, int min_prec) {
    int prec = precedence(e);
    bool parens = prec < min_prec;
    if (parens) os << '(';
    switch (e->kind) {
        case ExprKind::constant:
            if (std::signbit(e->value) && e->value == 0.0)
                os << '0'; // canonical: never print -0
            else
                os << format_double(e->value);
            break;
        case ExprKind::state_var: os << 'x' << e->index + 1; break;
        case ExprKind::param_var: os << 'u' << e->index + 1; break;
        case ExprKind::neg:
            os << '-';
            print_rec(os, e->left, 4);
            break;
        case ExprKind::add:
            print_rec(os, e->left, 1);
            os << " + ";
            print_rec(os, e->right, 2);
            break;
        case ExprKind::sub:
            print_rec(os, e->left, 1);
            os << " - ";
            print_rec(os, e->right, 2);
            break;
        case ExprKind::mul:
            print_rec(os, e->left, 2);
            os << " * ";
            print_rec(os, e->right, 3);
            break;
        case ExprKind::div:
            print_rec(os, e->left, 2);
            os << " / ";
            print_rec(os, e->right, 3);
            break;
        case ExprKind::int_pow:
            print_rec(os, e->left, 5);
            os << '^' << e->exponent;
            break;
    }
    if (parens) os << ')';
}

void print_box(std::ostream& os, const Box& b) {
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (i) os << " x ";
        os << '[' << format_double(b[i].lo()) << ", " << format_double(b[i].hi()) << ']';
    }
}

} // namespace

SystemModel parse_system(const std::string& text, const std::string& name) {
    Parser p(text);
    return p.parse(name);
}

std::string print_expr(const ExprPtr& e) {
    std::ostringstream os;
    print_rec(os, e, 0);
    return os.str();
}

std::string print_system(const SystemModel& m) {
    std::ostringstream os;
    os << "states x1..x" << m.n << ";\n";
    if (m.p > 0) os << "params u1..u" << m.p << ";\n";
    for (const auto& eq : m.equations) os << "eq: " << print_expr(eq) << ";\n";
    os << "X0: ";
    print_box(os, m.x0);
    os << ";\n";
    if (m.p > 0) {
        os << "U: ";
        print_box(os, m.u);
        os << ";\n";
    }
    return os.str();
}

} // namespace ivsolve
