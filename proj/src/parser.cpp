#include "weylflow/parser.hpp"

#include <cctype>

#include "weylflow/errors.hpp"

namespace weylflow {

namespace {

struct ExprParser {
    std::string_view text;
    std::size_t pos = 0;
    const Context& ctx;

    explicit ExprParser(std::string_view t, const Context& c) : text(t), ctx(c) {}

    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError("parse error at offset " + std::to_string(pos) + ": " + what);
    }

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }

    RationalFunction parse() {
        RationalFunction e = expr();
        skip_ws();
        if (pos != text.size()) fail("trailing input");
        return e;
    }

    RationalFunction expr() {
        RationalFunction acc = term();
        while (true) {
            if (eat('+')) {
                acc = acc + term();
            } else if (eat('-')) {
                acc = acc - term();
            } else {
                return acc;
            }
        }
    }

    RationalFunction term() {
        RationalFunction acc = factor();
        while (true) {
            if (eat('*')) {
                acc = acc * factor();
            } else if (eat('/')) {
                RationalFunction d = factor();
                if (d.is_zero()) fail("division by zero");
                acc = acc / d;
            } else {
                return acc;
            }
        }
    }

    RationalFunction factor() {
        if (eat('-')) return -factor();
        if (eat('+')) return factor();
        RationalFunction base = primary();
        skip_ws();
        if (eat('^')) {
            // Right-associative: a^b^c parses as a^(b^c). Exponents are plain
            // non-negative integers, so the tower collapses before pow().
            std::vector<unsigned> tower{exponent()};
            skip_ws();
            while (eat('^')) {
                tower.push_back(exponent());
                skip_ws();
            }
            unsigned long e = tower.back();
            for (auto it = tower.rbegin() + 1; it != tower.rend(); ++it) {
                unsigned long acc = 1;
                for (unsigned long i = 0; i < e; ++i) {
                    acc *= *it;
                    if (acc > 4096) fail("exponent too large");
                }
                e = acc;
            }
            base = base.pow(static_cast<int>(e));
        }
        return base;
    }

    unsigned exponent() {
        skip_ws();
        if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos]))) {
            fail("expected a non-negative integer exponent");
        }
        unsigned long v = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            v = v * 10 + static_cast<unsigned long>(text[pos] - '0');
            if (v > 4096) fail("exponent too large");
            ++pos;
        }
        return static_cast<unsigned>(v);
    }

    RationalFunction primary() {
        skip_ws();
        if (pos >= text.size()) fail("unexpected end of input");
        const char c = text[pos];
        if (c == '(') {
            ++pos;
            RationalFunction e = expr();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            BigInt v = 0;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
                v = v * 10 + (text[pos] - '0');
                ++pos;
            }
            return RationalFunction::constant(ctx, BigRational(v));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos;
            while (pos < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) {
                ++pos;
            }
            const std::string name(text.substr(start, pos - start));
            const int idx = ctx.index_of(name);
            if (idx < 0) fail("unknown symbol '" + name + "' in context " + ctx.name());
            return RationalFunction::variable(ctx, idx);
        }
        fail(std::string("unexpected character '") + c + "'");
    }
};

} // namespace

RationalFunction parse_expression(std::string_view text, const Context& ctx) {
    ExprParser p(text, ctx);
    return p.parse();
}

} // namespace weylflow
