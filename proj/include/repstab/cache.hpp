#pragma once

// On-disk cache of character tables and cohomology traces. One JSON document
// per entry, named <kind>-<key>-<sha256>.json, where the checksum covers the
// canonical dump of the payload.

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>

namespace repstab {

class Cache {
 public:
  static constexpr int kSchemaVersion = 1;
  /// Environment variable naming the default cache directory.
  static constexpr const char* kEnvVar = "REPSTAB_CACHE_DIR";

  enum class Status { hit, miss, stale, corrupt };

  struct Loaded {
    Status status = Status::miss;
    nlohmann::json payload;
    std::filesystem::path file;
  };

  /// Creates the directory if needed. Throws CacheError if it cannot.
  explicit Cache(std::filesystem::path dir);

  /// Directory from the environment variable, if set and non-empty.
  static std::optional<std::filesystem::path> default_dir();

  /// Looks up kind/key. Anything other than hit means the caller recomputes.
  Loaded load(const std::string& kind, const std::string& key) const;

  /// Writes the entry atomically and drops older files for the same kind/key.
  std::filesystem::path store(const std::string& kind, const std::string& key, const nlohmann::json& payload);

  const std::filesystem::path& dir() const { return dir_; }

  static std::string checksum(const nlohmann::json& payload);
  static const char* status_name(Status s);

 private:
  std::filesystem::path dir_;
};

}  // namespace repstab
