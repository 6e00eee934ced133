#include "anchored/manifest.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "anchored/error.hpp"

namespace anchored {

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string fnv1a64_hex(std::string_view bytes) {
  static const char* digits = "0123456789abcdef";
  std::uint64_t h = fnv1a64(bytes);
  std::string out(16, '0');
  for (int k = 15; k >= 0; --k) {
    out[k] = digits[h & 0xf];
    h >>= 4;
  }
  return out;
}

void RunManifest::add_param(std::string key, std::string value) {
  params.emplace_back(std::move(key), std::move(value));
}

void RunManifest::add_input(const std::string& path) {
  input_digests.emplace_back(path, fnv1a64_hex(read_file(path)));
}

std::string RunManifest::digest() const {
  auto sorted_params = params;
  std::sort(sorted_params.begin(), sorted_params.end());
  std::string canon = "cmd=" + command + ";v=" + std::string(kToolVersion) + ";";
  for (const auto& [k, v] : sorted_params) canon += k + "=" + v + ";";
  if (seed) canon += "seed=" + std::to_string(*seed) + ";";
  auto sorted_inputs = input_digests;
  std::sort(sorted_inputs.begin(), sorted_inputs.end());
  for (const auto& [p, d] : sorted_inputs) canon += "in:" + p + "=" + d + ";";
  return fnv1a64_hex(canon);
}

std::string RunManifest::header_comment() const {
  return "manifest=" + digest() + " cmd=" + command;
}

std::string RunManifest::to_json() const {
  nlohmann::json j;
  j["command"] = command;
  nlohmann::json p = nlohmann::json::object();
  for (const auto& [k, v] : params) p[k] = v;
  j["parameters"] = p;
  if (seed) j["seed"] = *seed;
  nlohmann::json in = nlohmann::json::object();
  for (const auto& [path, d] : input_digests) in[path] = d;
  j["input_digests"] = in;
  j["output_paths"] = output_paths;
  j["tool_version"] = kToolVersion;
  j["wall_seconds"] = wall_seconds;
  j["digest"] = digest();
  return j.dump(2);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::IoError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::IoError, "cannot open " + path + " for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) fail(ErrorCode::IoError, "write failed for " + path);
}

}  // namespace anchored
