#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <string>

namespace lri {

using Rational = boost::rational<std::int64_t>;

/// "p/q" in lowest terms, or "p" for integers.
std::string to_string(const Rational& r);

} // namespace lri
