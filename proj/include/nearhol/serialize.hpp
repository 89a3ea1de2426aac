#pragma once

// Text formats for decomposition tables and reports. Tables carry the schema tag
// "nearhol.table/1" and round-trip through JSON and CSV byte for byte.

#include "nearhol/conjecture.hpp"
#include "nearhol/verify.hpp"

#include <json.hpp>

namespace nearhol {

enum class Format { Json, Csv, Markdown };

Format parse_format(const std::string& text);

inline constexpr const char* kTableSchema = "nearhol.table/1";
inline constexpr const char* kVerifySchema = "nearhol.verify/1";
inline constexpr const char* kConjectureSchema = "nearhol.conjecture/1";

nlohmann::ordered_json table_to_json(const DecompositionTable& table);
DecompositionTable table_from_json(const nlohmann::ordered_json& j);

std::string write_table(const DecompositionTable& table, Format format);

/// Parses JSON or CSV output of write_table. Throws ParameterError on malformed input.
DecompositionTable read_table(const std::string& text, Format format);

std::string write_verify(const VerifyReport& report, Format format);
std::string write_conjecture(const ConjectureReport& report, Format format);

/// Fixed-precision scientific notation used in all reports ("1.234567e-08").
std::string format_residual(double x);

} // namespace nearhol
