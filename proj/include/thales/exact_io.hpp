#pragma once

#include <string_view>

#include <json.hpp>

#include "thales/constructible.hpp"

namespace thales {

/// Parses "p/q", "-7", "0.25" or "1.5e-3" into an exact rational.
/// Throws InputError on anything else (including a zero denominator).
Rational parse_rational(std::string_view text);

/// Expression-tree form {"op": ..., "args": [...]}.
///
/// Ops: "rat" (one string arg in parse_rational syntax), "neg", "sqrt"
/// (one expression arg), "add", "sub", "mul", "div" (two expression args).
nlohmann::json to_json(const Constructible& x);

/// Evaluates an expression tree exactly. Throws InputError on malformed
/// trees and ArithmeticError on division by zero or negative square roots.
Constructible from_json(const nlohmann::json& j);

}  // namespace thales
