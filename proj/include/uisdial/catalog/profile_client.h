#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <shared_mutex>
#include <string>

#include "uisdial/domain/errors.h"

namespace uisdial::catalog {

// No article (or an empty lead) exists for the requested person.
class ProfileMissError : public Error {
 public:
  explicit ProfileMissError(const std::string& name)
      : Error("profile_miss", "no profile found for '" + name + "'") {}
};

// Network or protocol failure; retrying later may succeed.
class ProfileTransientError : public Error {
 public:
  explicit ProfileTransientError(const std::string& message) : Error("profile_transient", message) {}
};

struct ProfileClientConfig {
  // MediaWiki action API endpoint.
  std::string base_url = "https://en.wikipedia.org/w/api.php";
  std::filesystem::path cache_dir;    // empty disables the disk cache
  std::filesystem::path fixture_dir;  // name -> sentence files for offline use
  bool offline = true;
  int timeout_ms = 5000;
};

// Fetches the first sentence of a person's encyclopedia article.
//
// Lookup order: in-memory cache, disk cache, then fixtures (offline) or the
// MediaWiki query API (online). Every returned string is cut to one
// sentence, including strings read back from cache. Reads take a shared
// lock; cache writes are exclusive.
class ProfileClient {
 public:
  explicit ProfileClient(ProfileClientConfig config);

  std::string fetch(const std::string& person_name);

  // nullopt on miss or transient failure.
  std::optional<std::string> try_fetch(const std::string& person_name);

  const ProfileClientConfig& config() const noexcept { return config_; }

  // "George Lucas" -> "George_Lucas.txt"
  static std::string file_name_for(const std::string& person_name);

 private:
  std::optional<std::string> cached(const std::string& person_name) const;
  void store(const std::string& person_name, const std::string& sentence);
  std::string fetch_remote(const std::string& person_name) const;

  ProfileClientConfig config_;
  mutable std::shared_mutex mutex_;
  std::map<std::string, std::string> memory_;
};

// Pulls the lead extract out of a MediaWiki "prop=extracts" response body.
// Throws ProfileMissError for missing pages, ProfileTransientError for
// malformed bodies.
std::string extract_from_mediawiki_response(const std::string& body, const std::string& name);

}  // namespace uisdial::catalog
