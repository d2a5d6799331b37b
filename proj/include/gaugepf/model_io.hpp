#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "json.hpp"

#include "gaugepf/model.hpp"

namespace gaugepf {

/// Parses a JSON model document:
///
///   {"nodes": ["a", "b"],
///    "edges": [{"id": "e", "tail": "a", "head": "b"}],
///    "factors": {"a": {"order": ["e+"], "table": {"0": 1, "1": 2}},
///                "b": {"order": ["e-"], "table": {"0": 3, "1": 4}}}}
///
/// Node and edge ids may be strings or integers. Character i of a table key
/// is the bit of `order[i]`. A factor (or the whole document) marked
/// `"soft": false` may omit keys, which then default to 0. Both "-" and the
/// Unicode minus sign are accepted as the tail marker of a directed-edge name.
/// Throws InputError naming the offending node or field.
[[nodiscard]] MultiGM parse_model(std::string_view text);

/// Reads and parses a file; I/O failures are reported as InputError.
[[nodiscard]] MultiGM load_model(const std::filesystem::path& path);

/// Complete tables laid out over each node's incidence order.
[[nodiscard]] nlohmann::ordered_json model_to_json(const MultiGM& m);
[[nodiscard]] std::string serialize_model(const MultiGM& m);

/// 64-bit FNV-1a of `bytes`, as 16 lowercase hex digits.
[[nodiscard]] std::string fnv1a_hex(std::string_view bytes);

/// Reads a whole file into memory; throws InputError.
[[nodiscard]] std::string read_file(const std::filesystem::path& path);

}  // namespace gaugepf
