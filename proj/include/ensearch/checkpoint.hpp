#pragma once

// Resumable state for the streaming subcommands, stored as a small JSON
// document. The digest chains every emitted output line so a resumed run can
// be checked against the prefix it continues.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

namespace ensearch {

struct Checkpoint {
  static constexpr std::string_view kFormat = "ensearch-checkpoint";
  static constexpr int kVersion = 1;

  std::string subcommand;
  nlohmann::json params = nlohmann::json::object();
  std::uint64_t next_m = 0;
  std::uint64_t emitted = 0;
  std::uint64_t digest = kDigestSeed;
  bool finished = false;
  std::string outcome;  // set once finished, e.g. "found" or "budget_exhausted"

  static constexpr std::uint64_t kDigestSeed = 0xcbf29ce484222325ull;

  // Folds one output line (without its newline) into the digest.
  void record(std::string_view line);

  nlohmann::json to_json() const;
  static Checkpoint from_json(const nlohmann::json& j);
};

// Written to a sibling temp file and renamed over `path`.
void save_checkpoint(const std::filesystem::path& path, const Checkpoint& cp);

// nullopt when the file does not exist; ParseError when it is malformed.
std::optional<Checkpoint> load_checkpoint(const std::filesystem::path& path);

}  // namespace ensearch
