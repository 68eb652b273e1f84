#pragma once

// Polynomial expression parsing shared by tests and the manifest reader.
// Grammar: sums/differences of products of powers; numeric literals may be
// integer or fractions (2/3); inv(expr) is resolved through a caller-supplied
// hook (declared inverses only, no silent localization).

#include "sep/poly.hpp"

#include <cctype>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace sep {

// Given the argument of inv(...), return its inverse as an element of the
// ambient ring, or nullopt when the argument is not a declared invertible.
using InvResolver = std::function<std::optional<Poly>(const Poly&)>;

class ExprParser {
  public:
    ExprParser(std::string_view text, const std::vector<std::string>& names,
               InvResolver inv = nullptr)
        : text_(text), names_(names), inv_(std::move(inv))
    {
    }

    Poly parse()
    {
        Poly p = parse_expr();
        skip_ws();
        if (pos_ != text_.size())
            fail("unexpected trailing input");
        return p;
    }

  private:
    [[noreturn]] void fail(const std::string& msg) const
    {
        throw Error("expression error at offset " + std::to_string(pos_) + ": " + msg);
    }

    void skip_ws()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool eat(char c)
    {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek()
    {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    Poly parse_expr()
    {
        Poly acc = parse_term();
        for (;;) {
            if (eat('+')) {
                acc = acc + parse_term();
            } else if (eat('-')) {
                acc = acc - parse_term();
            } else {
                return acc;
            }
        }
    }

    Poly parse_term()
    {
        Poly acc = parse_power();
        for (;;) {
            if (eat('*')) {
                acc = acc * parse_power();
            } else {
                return acc;
            }
        }
    }

    Poly parse_power()
    {
        Poly base = parse_atom();
        if (eat('^')) {
            std::uint64_t e = parse_uint();
            Poly r = Poly::constant(base.nvars(), Rational(1));
            for (std::uint64_t i = 0; i < e; ++i) r = r * base;
            return r;
        }
        return base;
    }

    Poly parse_atom()
    {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of expression");
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Poly p = parse_expr();
            if (!eat(')')) fail("expected ')'");
            return p;
        }
        if (c == '-') {
            ++pos_;
            return -parse_power();
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_name();
        fail(std::string("unexpected character '") + c + "'");
    }

    std::uint64_t parse_uint()
    {
        skip_ws();
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
            fail("expected integer");
        std::uint64_t v = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            v = v * 10 + (text_[pos_++] - '0');
        return v;
    }

    Poly parse_number()
    {
        BigInt num = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            num = num * 10 + (text_[pos_++] - '0');
        BigInt den = 1;
        std::size_t save = pos_;
        if (eat('/')) {
            skip_ws();
            if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                den = 0;
                while (pos_ < text_.size() &&
                       std::isdigit(static_cast<unsigned char>(text_[pos_])))
                    den = den * 10 + (text_[pos_++] - '0');
                if (den == 0) fail("division by zero literal");
            } else {
                pos_ = save; // not a fraction literal
            }
        }
        return Poly::constant(names_.size(), Rational(num, den));
    }

    Poly parse_name()
    {
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        std::string name(text_.substr(start, pos_ - start));
        if (name == "inv") {
            if (!eat('(')) fail("expected '(' after inv");
            Poly arg = parse_expr();
            if (!eat(')')) fail("expected ')'");
            if (!inv_) fail("inv(...) is not allowed in this context");
            auto r = inv_(arg);
            if (!r) fail("inv(...) argument is not a declared invertible element");
            return *r;
        }
        for (std::size_t i = 0; i < names_.size(); ++i)
            if (names_[i] == name) return Poly::variable(names_.size(), i);
        fail("unknown variable '" + name + "'");
    }

    std::string_view text_;
    const std::vector<std::string>& names_;
    InvResolver inv_;
    std::size_t pos_ = 0;
};

inline Poly parse_poly(std::string_view text, const std::vector<std::string>& names,
                       InvResolver inv = nullptr)
{
    return ExprParser(text, names, std::move(inv)).parse();
}

} // namespace sep
