#include "asym/field_expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

namespace asym {

namespace {

struct Token {
    enum class Kind { Number, Ident, Op, End };
    Kind kind = Kind::End;
    double number = 0.0;
    std::string text;  // ident name or operator char
};

struct Lexer {
    std::vector<Token> tokens;

    explicit Lexer(std::string_view src) {
        size_t i = 0;
        while (i < src.size()) {
            char c = src[i];
            if (std::isspace(static_cast<unsigned char>(c))) {
                ++i;
                continue;
            }
            if (std::isdigit(static_cast<unsigned char>(c)) ||
                (c == '.' && i + 1 < src.size() &&
                 std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
                const char* begin = src.data() + i;
                char* end = nullptr;
                double v = std::strtod(begin, &end);
                Token t;
                t.kind = Token::Kind::Number;
                t.number = v;
                tokens.push_back(t);
                i += static_cast<size_t>(end - begin);
                continue;
            }
            if (std::isalpha(static_cast<unsigned char>(c))) {
                size_t j = i;
                while (j < src.size() && std::isalnum(static_cast<unsigned char>(src[j]))) ++j;
                Token t;
                t.kind = Token::Kind::Ident;
                t.text = std::string(src.substr(i, j - i));
                tokens.push_back(t);
                i = j;
                continue;
            }
            if (std::string("+-*/^(){},").find(c) != std::string::npos) {
                Token t;
                t.kind = Token::Kind::Op;
                t.text = std::string(1, c);
                tokens.push_back(t);
                ++i;
                continue;
            }
            throw ParseError(std::string("unexpected character '") + c + "' in expression");
        }
        tokens.push_back(Token{});
    }
};

/// Polynomial in x over asymptotic numbers; degree 0 for plain values.
/// Everything is computed complex-kind and demoted at the end.
using Poly = std::vector<AsymptoticNumber>;

Poly poly_const(AsymptoticNumber v) { return {v.as_kind(ScalarKind::Complex)}; }

Poly poly_add(const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), AsymptoticNumber::zero(ScalarKind::Complex));
    for (size_t i = 0; i < r.size(); ++i) {
        AsymptoticNumber v = AsymptoticNumber::zero(ScalarKind::Complex);
        if (i < a.size()) v = add(v, a[i]);
        if (i < b.size()) v = add(v, b[i]);
        r[i] = v;
    }
    return r;
}

Poly poly_neg(const Poly& a) {
    Poly r = a;
    for (auto& c : r) c = neg(c);
    return r;
}

Poly poly_mul(const Poly& a, const Poly& b) {
    Poly r(a.size() + b.size() - 1, AsymptoticNumber::zero(ScalarKind::Complex));
    for (size_t i = 0; i < a.size(); ++i) {
        for (size_t j = 0; j < b.size(); ++j) {
            r[i + j] = add(r[i + j], mul(a[i], b[j]));
        }
    }
    if (r.size() > 64) throw ParseError("polynomial degree too large");
    return r;
}

struct Parser {
    const std::vector<Token>& toks;
    size_t pos = 0;
    bool allow_x;
    bool saw_x = false;

    Parser(const std::vector<Token>& t, bool ax) : toks(t), allow_x(ax) {}

    const Token& peek() const { return toks[pos]; }
    const Token& get() { return toks[pos++]; }
    bool accept_op(const char* op) {
        if (peek().kind == Token::Kind::Op && peek().text == op) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect_op(const char* op) {
        if (!accept_op(op)) throw ParseError(std::string("expected '") + op + "'");
    }

    Rat parse_rational() {
        bool negative = accept_op("-");
        if (accept_op("{")) {
            bool inner_neg = accept_op("-");
            Rat r = parse_rational_body();
            expect_op("}");
            if (inner_neg) r = -r;
            return negative ? -r : r;
        }
        Rat r = parse_rational_body();
        return negative ? -r : r;
    }

    Rat parse_rational_body() {
        if (peek().kind != Token::Kind::Number) throw ParseError("expected rational number");
        double whole = get().number;
        long long num = static_cast<long long>(whole);
        if (static_cast<double>(num) != whole)
            throw ParseError("exponents must be integer/integer rationals");
        if (accept_op("/")) {
            if (peek().kind != Token::Kind::Number) throw ParseError("expected denominator");
            double dv = get().number;
            long long den = static_cast<long long>(dv);
            if (static_cast<double>(den) != dv || den == 0)
                throw ParseError("bad rational denominator");
            return Rat(num, den);
        }
        return Rat(num);
    }

    /// Try the complex literal tail "re (+|-) im i )" after an already
    /// consumed '('. Returns false (with pos restored) if it is not one.
    bool try_complex(double& re, double& im) {
        size_t save = pos;
        bool neg_re = accept_op("-");
        if (peek().kind != Token::Kind::Number) {
            pos = save;
            return false;
        }
        re = get().number * (neg_re ? -1.0 : 1.0);
        bool minus = false;
        if (accept_op("-")) {
            minus = true;
        } else if (!accept_op("+")) {
            pos = save;
            return false;
        }
        if (peek().kind != Token::Kind::Number) {
            pos = save;
            return false;
        }
        im = get().number * (minus ? -1.0 : 1.0);
        if (!(peek().kind == Token::Kind::Ident && peek().text == "i")) {
            pos = save;
            return false;
        }
        ++pos;
        if (!accept_op(")")) {
            pos = save;
            return false;
        }
        return true;
    }

    Poly parse_expr() {
        bool lead_minus = accept_op("-");
        Poly acc = parse_term();
        if (lead_minus) acc = poly_neg(acc);
        while (true) {
            if (accept_op("+")) {
                acc = poly_add(acc, parse_term());
            } else if (accept_op("-")) {
                acc = poly_add(acc, poly_neg(parse_term()));
            } else {
                break;
            }
        }
        return acc;
    }

    Poly parse_term() {
        Poly acc = parse_factor();
        while (true) {
            if (accept_op("*")) {
                acc = poly_mul(acc, parse_factor());
            } else if (peek().kind == Token::Kind::Op && peek().text == "/") {
                throw ParseError("division is not part of the grammar; use inv(expr, Q)");
            } else {
                break;
            }
        }
        return acc;
    }

    Poly parse_factor() {
        Poly base = parse_atom();
        if (!accept_op("^")) return base;
        Rat q = parse_rational();
        if (q.denominator() == 1 && q >= Rat(0)) {
            long long n = q.numerator();
            Poly acc = poly_const(AsymptoticNumber::constant(1.0));
            for (long long k = 0; k < n; ++k) acc = poly_mul(acc, base);
            return acc;
        }
        // negative or fractional power: only on degree-0 single-term monomials
        if (base.size() != 1 || base[0].terms().size() != 1 || base[0].error_order())
            throw ParseError("fractional or negative powers apply to exact monomials only");
        const auto& t = base[0].terms()[0];
        Cplx c = std::pow(t.coeff, Cplx(to_double(q), 0.0));
        if (t.coeff.imag() == 0.0 && t.coeff.real() > 0.0)
            c = Cplx(std::pow(t.coeff.real(), to_double(q)), 0.0);
        return poly_const(AsymptoticNumber::monomial(c, t.exponent * q, ScalarKind::Complex));
    }

    Poly parse_atom() {
        const Token& t = peek();
        if (t.kind == Token::Kind::Number) {
            return poly_const(AsymptoticNumber::constant(get().number));
        }
        if (t.kind == Token::Kind::Ident) {
            if (t.text == "r" || t.text == "rho") {
                ++pos;
                return poly_const(AsymptoticNumber::rho());
            }
            if (t.text == "x") {
                if (!allow_x) throw ParseError("'x' is only allowed inside roots(...)");
                ++pos;
                saw_x = true;
                return {AsymptoticNumber::zero(ScalarKind::Complex),
                        AsymptoticNumber::constant(1.0).as_kind(ScalarKind::Complex)};
            }
            if (t.text == "O") {
                ++pos;
                expect_op("(");
                if (!(peek().kind == Token::Kind::Ident &&
                      (peek().text == "r" || peek().text == "rho")))
                    throw ParseError("O(...) expects r^q");
                ++pos;
                expect_op("^");
                Rat q = parse_rational();
                expect_op(")");
                return poly_const(AsymptoticNumber::o_term(q, ScalarKind::Complex));
            }
            if (t.text == "inv" || t.text == "sqrt") {
                std::string fn = get().text;
                expect_op("(");
                Poly arg = parse_expr();
                expect_op(",");
                Rat q = parse_rational();
                expect_op(")");
                if (arg.size() != 1)
                    throw ParseError(fn + "(...) expects a scalar argument");
                if (fn == "inv") return poly_const(inverse(arg[0], q));
                AsymptoticNumber real_arg = arg[0].real_part();
                if (!sub(arg[0], real_arg.as_kind(ScalarKind::Complex)).has_terms())
                    return poly_const(sqrt(real_arg, q).as_kind(ScalarKind::Complex));
                throw ParseError("sqrt expects a real-kind argument");
            }
            throw ParseError("unknown identifier '" + t.text + "'");
        }
        if (t.kind == Token::Kind::Op && t.text == "(") {
            ++pos;
            double re = 0.0, im = 0.0;
            if (try_complex(re, im)) {
                return poly_const(AsymptoticNumber::constant(Cplx(re, im)));
            }
            Poly e = parse_expr();
            expect_op(")");
            return e;
        }
        throw ParseError("unexpected token in expression");
    }
};

AsymptoticNumber demote_if_real(const AsymptoticNumber& a) {
    for (const auto& t : a.terms()) {
        if (t.coeff.imag() != 0.0) return a;
    }
    return a.as_kind(ScalarKind::Real);
}

}  // namespace

FieldParse parse_field_expression(std::string_view text) {
    FieldParse out;

    // top-level roots(poly, Q)
    size_t i = 0;
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (text.substr(i).rfind("roots", 0) == 0) {
        std::string_view rest = text.substr(i + 5);
        Lexer lex(rest);
        Parser p(lex.tokens, true);
        p.expect_op("(");
        Poly poly = p.parse_expr();
        p.expect_op(",");
        Rat q = p.parse_rational();
        p.expect_op(")");
        if (p.peek().kind != Token::Kind::End) throw ParseError("trailing input after roots(...)");
        out.is_roots = true;
        out.poly = std::move(poly);
        out.roots_target = q;
        return out;
    }

    Lexer lex(text);
    Parser p(lex.tokens, false);
    Poly v = p.parse_expr();
    if (p.peek().kind != Token::Kind::End) throw ParseError("trailing input after expression");
    if (v.size() != 1) throw ParseError("expression must be scalar outside roots(...)");
    out.poly = {demote_if_real(v[0])};
    return out;
}

AsymptoticNumber parse_asymptotic_number(std::string_view text) {
    FieldParse p = parse_field_expression(text);
    if (p.is_roots) throw ParseError("expected a number, got roots(...)");
    return p.poly[0];
}

}  // namespace asym
