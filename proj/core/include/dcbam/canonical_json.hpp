#pragma once

#include <string>

#include <nlohmann/json.hpp>

namespace dcbam {

using Json = nlohmann::json;

/// Shortest decimal text that parses back to exactly `value`.
/// Throws DomainError for NaN or infinity.
std::string format_number(double value);

/// Deterministic JSON text: object keys in byte order, two-space indent,
/// numbers via format_number. Equal documents always produce equal bytes.
std::string canonical_dump(const Json& doc);

}  // namespace dcbam
