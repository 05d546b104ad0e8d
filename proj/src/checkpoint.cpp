#include "ensearch/checkpoint.hpp"

#include <fstream>

#include "ensearch/errors.hpp"

namespace ensearch {

void Checkpoint::record(std::string_view line) {
  // FNV-1a over the line plus a terminating newline.
  for (unsigned char c : line) {
    digest ^= c;
    digest *= 0x100000001b3ull;
  }
  digest ^= '\n';
  digest *= 0x100000001b3ull;
  ++emitted;
}

nlohmann::json Checkpoint::to_json() const {
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(digest));
  return {{"format", kFormat},  {"version", kVersion}, {"subcommand", subcommand},
          {"params", params},   {"next_m", next_m},    {"emitted", emitted},
          {"digest", hex},      {"finished", finished}, {"outcome", outcome}};
}

Checkpoint Checkpoint::from_json(const nlohmann::json& j) {
  try {
    if (j.at("format").get<std::string>() != kFormat) throw ParseError("not a checkpoint file");
    if (j.at("version").get<int>() != kVersion) {
      throw ParseError("unsupported checkpoint version " + j.at("version").dump());
    }
    Checkpoint cp;
    cp.subcommand = j.at("subcommand").get<std::string>();
    cp.params = j.at("params");
    cp.next_m = j.at("next_m").get<std::uint64_t>();
    cp.emitted = j.at("emitted").get<std::uint64_t>();
    cp.digest = std::stoull(j.at("digest").get<std::string>(), nullptr, 16);
    cp.finished = j.value("finished", false);
    cp.outcome = j.value("outcome", std::string());
    return cp;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed checkpoint: ") + e.what());
  } catch (const std::logic_error& e) {
    throw ParseError(std::string("malformed checkpoint digest: ") + e.what());
  }
}

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& cp) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write checkpoint " + tmp.string());
    out << cp.to_json().dump(2) << '\n';
    if (!out.flush()) throw std::runtime_error("cannot write checkpoint " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::optional<Checkpoint> load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("checkpoint " + path.string() + " is not JSON: " + e.what());
  }
  return Checkpoint::from_json(j);
}

}  // namespace ensearch
