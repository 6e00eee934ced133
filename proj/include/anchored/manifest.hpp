#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace anchored {

inline constexpr std::string_view kToolVersion = "anchored 0.1.0";

std::uint64_t fnv1a64(std::string_view bytes);
std::string fnv1a64_hex(std::string_view bytes);

// Provenance record for one CLI run. The digest covers command, parameters,
// seed, input digests and tool version — not wall time — so re-running a
// command writes byte-identical analytical outputs.
struct RunManifest {
  std::string command;
  std::vector<std::pair<std::string, std::string>> params;  // sorted on digest
  std::optional<std::uint64_t> seed;
  std::vector<std::pair<std::string, std::string>> input_digests;  // path -> hex
  std::vector<std::string> output_paths;
  double wall_seconds = 0.0;

  void add_param(std::string key, std::string value);
  void add_input(const std::string& path);  // reads and digests the file

  std::string digest() const;       // 16 hex chars
  std::string header_comment() const;  // "manifest=<digest> cmd=<command>"
  std::string to_json() const;      // full record, wall time included
};

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace anchored
