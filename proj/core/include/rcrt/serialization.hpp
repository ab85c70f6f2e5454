#pragma once

#include <string>
#include <variant>

#include "rcrt/flat_design.hpp"
#include "rcrt/layered_design.hpp"

namespace rcrt {

using AnyDesign = std::variant<ModuliSet, LayeredDesign>;

// Exact decimal rendering (truncated to `digits` fractional digits, trailing
// zeros trimmed). Display-only: parsing always goes through num/den.
std::string rational_decimal(const Rat& r, int digits = 12);

// Accepts "a/b", plain integers, and decimal literals ("3.25" -> 13/4).
Rat parse_rational(const std::string& text);

// JSON design files, version "rcrt-design/1". Rationals are stored as
// {"num": "...", "den": "...", "decimal": "..."} with exact num/den strings.
std::string design_to_json(const AnyDesign& design);
AnyDesign design_from_json(const std::string& json_text);

void save_design(const AnyDesign& design, const std::string& path);
AnyDesign load_design(const std::string& path);

}  // namespace rcrt
