#include "repstab/cache.hpp"

#include "repstab/errors.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <vector>

namespace repstab {

namespace fs = std::filesystem;

namespace {

bool is_hex64(const std::string& s) {
  if (s.size() != 64) return false;
  for (char c : s) {
    if (!((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f'))) return false;
  }
  return true;
}

// Files whose name is exactly <kind>-<key>-<64 hex>.json.
std::vector<fs::path> entries_for(const fs::path& dir, const std::string& kind, const std::string& key) {
  std::vector<fs::path> out;
  const std::string prefix = kind + "-" + key + "-";
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    const std::string name = entry.path().filename().string();
    if (name.size() != prefix.size() + 64 + 5) continue;
    if (name.compare(0, prefix.size(), prefix) != 0) continue;
    if (name.compare(name.size() - 5, 5, ".json") != 0) continue;
    if (!is_hex64(name.substr(prefix.size(), 64))) continue;
    out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

Cache::Cache(fs::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (!fs::is_directory(dir_)) throw CacheError("cannot create cache directory " + dir_.string());
}

std::optional<fs::path> Cache::default_dir() {
  const char* env = std::getenv(kEnvVar);
  if (env == nullptr || *env == '\0') return std::nullopt;
  return fs::path(env);
}

std::string Cache::checksum(const nlohmann::json& payload) {
  const std::string text = payload.dump();
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(text.data(), text.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw CacheError("SHA-256 failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int k = 0; k < len; ++k) {
    out += hex[digest[k] >> 4];
    out += hex[digest[k] & 15];
  }
  return out;
}

const char* Cache::status_name(Status s) {
  switch (s) {
    case Status::hit: return "hit";
    case Status::miss: return "miss";
    case Status::stale: return "stale";
    case Status::corrupt: return "corrupt";
  }
  return "?";
}

Cache::Loaded Cache::load(const std::string& kind, const std::string& key) const {
  Loaded out;
  auto files = entries_for(dir_, kind, key);
  if (files.empty()) return out;
  // Newest write wins when several survive a crash between rename and cleanup.
  std::sort(files.begin(), files.end(), [](const fs::path& a, const fs::path& b) {
    std::error_code ec;
    return fs::last_write_time(a, ec) > fs::last_write_time(b, ec);
  });
  out.file = files.front();
  std::ifstream in(out.file);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const std::exception&) {
    out.status = Status::corrupt;
    return out;
  }
  if (!doc.is_object() || !doc.contains("schema_version") || !doc["schema_version"].is_number_integer()) {
    out.status = Status::corrupt;
    return out;
  }
  if (doc["schema_version"].get<int>() != kSchemaVersion) {
    out.status = Status::stale;
    return out;
  }
  if (!doc.contains("payload") || !doc.contains("checksum") || !doc["checksum"].is_string() ||
      doc.value("kind", "") != kind || doc.value("key", "") != key) {
    out.status = Status::corrupt;
    return out;
  }
  const std::string expected = doc["checksum"].get<std::string>();
  const std::string name = out.file.filename().string();
  if (checksum(doc["payload"]) != expected || name.find(expected) == std::string::npos) {
    out.status = Status::corrupt;
    return out;
  }
  out.status = Status::hit;
  out.payload = std::move(doc["payload"]);
  return out;
}

fs::path Cache::store(const std::string& kind, const std::string& key, const nlohmann::json& payload) {
  const std::string sum = checksum(payload);
  nlohmann::json doc{{"schema_version", kSchemaVersion}, {"kind", kind}, {"key", key},
                     {"payload", payload}, {"checksum", sum}};
  const fs::path target = dir_ / (kind + "-" + key + "-" + sum + ".json");

  std::random_device rd;
  std::ostringstream tmp_name;
  tmp_name << ".tmp-" << kind << "-" << key << "-" << rd();
  const fs::path tmp = dir_ / tmp_name.str();
  {
    std::ofstream out(tmp);
    if (!out) throw CacheError("cannot write " + tmp.string());
    out << doc.dump() << "\n";
    if (!out) throw CacheError("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw CacheError("cannot install cache entry " + target.string());
  }
  for (const auto& old : entries_for(dir_, kind, key)) {
    if (old != target) fs::remove(old, ec);
  }
  return target;
}

}  // namespace repstab
