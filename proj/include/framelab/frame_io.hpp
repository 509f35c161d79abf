#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "framelab/frame.hpp"

namespace framelab {

/// On-disk frame:
///
///   {
///     "atoms": [{"label": "...", "vector": [...], "weight": 1.0}, ...],
///     "dim": 2,
///     "field": "real" | "complex",
///     "provenance": {...}            // optional
///   }
///
/// Complex vectors are lists of [re, im] pairs. Serialization is canonical:
/// sorted keys, two-space indent, shortest round-trip decimals.
struct FrameFile {
  Frame frame;
  nlohmann::json provenance;  // null when absent
};

nlohmann::json frame_to_json(const Frame& frame, const nlohmann::json& provenance = nullptr);

/// Throws InvalidArgument on schema violations.
FrameFile frame_from_json(const nlohmann::json& doc);

std::string canonical_dump(const nlohmann::json& doc);

void save_frame(const std::filesystem::path& path, const Frame& frame,
                const nlohmann::json& provenance = nullptr);
FrameFile load_frame(const std::filesystem::path& path);

/// Vector as a JSON list (real entries, or [re, im] pairs for complex).
nlohmann::json vector_to_json(const Vector& v, Field field);
Vector vector_from_json(const nlohmann::json& j, Field field);

std::string read_file(const std::filesystem::path& path);

/// Lowercase hex SHA-256 of a byte string.
std::string sha256_hex(std::string_view bytes);

}  // namespace framelab
