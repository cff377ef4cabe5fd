#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lri {

enum class Errc {
    not_prime,
    zero_inverse,
    missing_inverse,
    dimension_mismatch,
    field_mismatch,
    not_a_subspace,
    unbound_variable,
    unknown_variable,
    unknown_name,
    syntax,
    size_limit,
    budget,
    invalid_strategy,
    unjustified_conditional,
    negative_edge_coefficient,
    nonpositive_denominator,
    degenerate_demand,
    invalid_network,
    duplicate_name,
    invalid_distribution,
};

std::string_view to_string(Errc code) noexcept;

/// Every failure raised by the library carries one of the codes above so that
/// callers (the CLI in particular) can map it onto an exit status.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

/// Parse failure with a 1-based source position.
class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& message, Errc code = Errc::syntax)
        : Error(code, std::to_string(line) + ":" + std::to_string(column) + ": " + message),
          line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

} // namespace lri
