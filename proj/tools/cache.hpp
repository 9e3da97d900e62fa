#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

namespace cycletheta::cli {

inline constexpr const char* kVersion = "0.1.0";

/// --cache-dir, else $CYCLETHETA_CACHE, else $XDG_CACHE_HOME/cycletheta or
/// ~/.cache/cycletheta.
std::filesystem::path cache_directory(const std::string& flag);

/// 64-bit FNV-1a of the canonical input, as 16 hex digits.
std::string digest(const std::string& canonical_input);

/// One JSON file per (operation, digest). Entries whose version or stored
/// input differ are ignored; writes go through a temp file and rename.
class ResultCache {
 public:
  explicit ResultCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  std::optional<nlohmann::json> load(const std::string& op, const std::string& input) const;
  /// Failures to write are swallowed; the cache is an optimization only.
  void store(const std::string& op, const std::string& input, const nlohmann::json& payload) const;
  std::filesystem::path entry_path(const std::string& op, const std::string& input) const;

 private:
  std::filesystem::path dir_;
};

}  // namespace cycletheta::cli
