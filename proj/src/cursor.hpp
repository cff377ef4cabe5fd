#pragma once

// Small hand-rolled scanner shared by the text formats. Tracks 1-based
// line/column positions so that parse errors point at the offending byte.

#include "lri/error.hpp"
#include "lri/rational.hpp"

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>

namespace lri::detail {

class Cursor {
public:
    explicit Cursor(std::string_view text) : text_(text) {}

    bool at_end() const noexcept { return pos_ >= text_.size(); }
    char peek() const noexcept { return at_end() ? '\0' : text_[pos_]; }
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return col_; }

    char get() noexcept {
        const char c = text_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    /// Skips blanks on the current line and any '#' comment up to the newline.
    void skip_inline_space() {
        while (!at_end()) {
            const char c = peek();
            if (c == '#') {
                while (!at_end() && peek() != '\n') get();
            } else if (c == ' ' || c == '\t' || c == '\r') {
                get();
            } else {
                break;
            }
        }
    }

    /// Skips all whitespace, newlines included, and comments.
    void skip_space() {
        while (!at_end()) {
            skip_inline_space();
            if (peek() == '\n') get();
            else break;
        }
    }

    [[noreturn]] void fail(const std::string& message) const { throw ParseError(line_, col_, message); }

    bool consume(char c) {
        skip_inline_space();
        if (peek() != c) return false;
        get();
        return true;
    }

    void expect(char c) {
        if (!consume(c))
            fail(std::string("expected '") + c + "'" + (at_end() ? " before end of input" : std::string(", found '") + peek() + "'"));
    }

    bool consume_keyword(std::string_view word) {
        skip_inline_space();
        if (text_.substr(pos_, word.size()) != word) return false;
        const auto after = pos_ + word.size();
        if (after < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[after])) || text_[after] == '_'))
            return false;
        for (std::size_t i = 0; i < word.size(); ++i) get();
        return true;
    }

    void expect_keyword(std::string_view word) {
        if (!consume_keyword(word)) fail("expected '" + std::string(word) + "'");
    }

    void expect_line_end() {
        skip_inline_space();
        if (at_end()) return;
        if (peek() != '\n') fail(std::string("unexpected '") + peek() + "'");
        get();
    }

    bool peek_identifier_start() {
        skip_inline_space();
        const char c = peek();
        return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
    }

    std::string identifier() {
        skip_inline_space();
        if (!peek_identifier_start()) fail("expected an identifier");
        std::string id;
        while (!at_end()) {
            const char c = peek();
            if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') break;
            id.push_back(get());
        }
        return id;
    }

    bool peek_number() {
        skip_inline_space();
        const char c = peek();
        return std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+';
    }

    std::int64_t integer() {
        skip_inline_space();
        bool negative = false;
        if (peek() == '-' || peek() == '+') negative = get() == '-';
        skip_inline_space();
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected an integer");
        std::int64_t value = 0;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            const auto digit = get() - '0';
            if (value > (INT64_MAX - digit) / 10) fail("integer literal out of range");
            value = value * 10 + digit;
        }
        return negative ? -value : value;
    }

    std::uint64_t unsigned_integer() {
        const auto line = line_;
        const auto col = col_;
        const auto v = integer();
        if (v < 0) throw ParseError(line, col, "expected a nonnegative integer");
        return static_cast<std::uint64_t>(v);
    }

    /// integer or integer/integer; the pair is returned unreduced so that
    /// callers can decide how to interpret a zero denominator.
    std::pair<std::int64_t, std::int64_t> fraction() {
        const auto num = integer();
        std::int64_t den = 1;
        if (consume('/')) {
            const auto line = line_;
            const auto col = col_;
            den = integer();
            if (den < 0) {
                den = -den;
                return {-num, den};
            }
            if (den == 0) throw ParseError(line, col, "zero denominator");
        }
        return {num, den};
    }

    Rational rational() {
        auto [num, den] = fraction();
        return Rational(num, den);
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
};

} // namespace lri::detail
