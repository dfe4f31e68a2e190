#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include "sifs/quartic.hpp"

namespace sifs {

namespace detail {

/// Recursive-descent evaluator over the field. Grammar:
///
///   expr   := term (('+' | '-') term)*
///   term   := unary (('*' | '/') unary)*
///   unary  := ('+' | '-') unary | factor
///   factor := integer | 'sqrt3' | 'sqrt5' | 'sqrt15' | 'r3' | 'r5' | 'r15' | '(' expr ')'
///
/// A rational p/q is the quotient of two factors. The r-names and sqrt15 accept
/// the serialized form a + b*r3 + c*r5 + d*r15 produced by QuarticScalar::str().
class ExprParser {
public:
    explicit ExprParser(std::string_view text) : text_(text) {}

    QuarticScalar parse() {
        skip();
        if (pos_ == text_.size()) throw ParseError("empty expression", pos_);
        QuarticScalar v = expr();
        skip();
        if (pos_ != text_.size()) throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
        return v;
    }

private:
    QuarticScalar expr() {
        QuarticScalar v = term();
        for (;;) {
            skip();
            if (accept('+')) {
                v += term();
            } else if (accept('-')) {
                v -= term();
            } else {
                return v;
            }
        }
    }

    QuarticScalar term() {
        QuarticScalar v = unary();
        for (;;) {
            skip();
            if (accept('*')) {
                v *= unary();
            } else if (peek() == '/') {
                std::size_t at = pos_++;
                QuarticScalar d = unary();
                if (d.is_zero()) throw ParseError("division by zero", at);
                v /= d;
            } else {
                return v;
            }
        }
    }

    QuarticScalar unary() {
        skip();
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return factor();
    }

    QuarticScalar factor() {
        skip();
        if (pos_ == text_.size()) throw ParseError("expression ends early", pos_);
        char ch = text_[pos_];
        if (ch == '(') {
            std::size_t open = pos_++;
            QuarticScalar v = expr();
            skip();
            if (!accept(')')) throw ParseError("unbalanced '(' opened at " + std::to_string(open), pos_);
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            return QuarticScalar(Rational(BigInt(std::string(text_.substr(start, pos_ - start)), 10)));
        }
        if (std::isalpha(static_cast<unsigned char>(ch))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            std::string_view name = text_.substr(start, pos_ - start);
            if (name == "sqrt3" || name == "r3") return QuarticScalar::sqrt3();
            if (name == "sqrt5" || name == "r5") return QuarticScalar::sqrt5();
            if (name == "sqrt15" || name == "r15") return QuarticScalar::sqrt15();
            throw ParseError("unknown name '" + std::string(name) + "'", start);
        }
        throw ParseError(std::string("unexpected '") + ch + "'", pos_);
    }

    void skip() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
    bool accept(char ch) {
        if (peek() != ch) return false;
        ++pos_;
        return true;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace detail

/// Exact value of an expression such as "1/(1+sqrt3)" or "-1/2 + 1/2*r3".
inline QuarticScalar parse_param(std::string_view text) { return detail::ExprParser(text).parse(); }

}  // namespace sifs
