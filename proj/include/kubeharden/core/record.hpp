#pragma once

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace kubeharden {

/// Universal ingestion shape: an arbitrary nested key/value record, carried as
/// parsed JSON. Objects keep unique keys; the canonical text form is JSON with
/// lexicographically sorted keys (nlohmann::json object storage is an ordered
/// map, so dump() is already canonical) and numbers rendered shortest-round-trip.
using NestedRecord = nlohmann::json;

/// Canonical text rendering of a scalar (null/bool/number/string). Strings are
/// rendered without quotes so set ordering reads naturally; everything else
/// uses the JSON form.
std::string canonical_scalar(const NestedRecord& scalar);

/// Canonical single-line JSON text of any record (sorted keys).
std::string canonical_text(const NestedRecord& record);

/// Parse JSON text into a NestedRecord. Throws SyntaxError with byte position.
NestedRecord parse_record(const std::string& text);

/// 64-bit FNV-1a over the canonical text. Stable across platforms; used for
/// replay keys and sub-document fingerprints, not for security.
std::uint64_t stable_hash(const std::string& text);
std::string stable_hash_hex(const std::string& text);

} // namespace kubeharden
