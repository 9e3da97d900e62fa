#include "cache.hpp"

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <random>
#include <sstream>

namespace cycletheta::cli {

namespace fs = std::filesystem;

fs::path cache_directory(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("CYCLETHETA_CACHE"); env && *env) return env;
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) return fs::path(xdg) / "cycletheta";
  if (const char* home = std::getenv("HOME"); home && *home) return fs::path(home) / ".cache" / "cycletheta";
  return fs::temp_directory_path() / "cycletheta";
}

std::string digest(const std::string& canonical_input) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : canonical_input) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

fs::path ResultCache::entry_path(const std::string& op, const std::string& input) const {
  return dir_ / (op + "-" + digest(input) + ".json");
}

std::optional<nlohmann::json> ResultCache::load(const std::string& op, const std::string& input) const {
  std::ifstream in(entry_path(op, input));
  if (!in) return std::nullopt;
  try {
    nlohmann::json entry = nlohmann::json::parse(in);
    const auto& key = entry.at("key");
    if (key.at("operation") != op || key.at("version") != kVersion || entry.at("input") != input) return std::nullopt;
    return entry.at("payload");
  } catch (const nlohmann::json::exception&) {
    return std::nullopt;
  }
}

void ResultCache::store(const std::string& op, const std::string& input, const nlohmann::json& payload) const {
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec) return;
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  nlohmann::json entry = {{"key", {{"operation", op}, {"digest", digest(input)}, {"version", kVersion}}},
                          {"input", input},
                          {"created_at", stamp},
                          {"payload", payload}};
  const fs::path target = entry_path(op, input);
  std::random_device rd;
  fs::path tmp = target;
  tmp += ".tmp" + std::to_string(rd());
  {
    std::ofstream out(tmp);
    if (!out) return;
    out << entry.dump(1) << '\n';
    if (!out) {
      fs::remove(tmp, ec);
      return;
    }
  }
  fs::rename(tmp, target, ec);
  if (ec) fs::remove(tmp, ec);
}

}  // namespace cycletheta::cli
