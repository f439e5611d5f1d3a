#include "uisdial/catalog/profile_client.h"

#include <cctype>
#include <fstream>
#include <mutex>
#include <sstream>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "uisdial/text/text.h"

namespace uisdial::catalog {

namespace {

std::optional<std::string> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

struct SplitUrl {
  std::string origin;  // scheme://host[:port]
  std::string path;
};

SplitUrl split_url(const std::string& url) {
  const auto scheme_end = url.find("://");
  const auto path_start = url.find('/', scheme_end == std::string::npos ? 0 : scheme_end + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

}  // namespace

ProfileClient::ProfileClient(ProfileClientConfig config) : config_(std::move(config)) {}

std::string ProfileClient::file_name_for(const std::string& person_name) {
  std::string out;
  for (char c : text::trim(person_name)) {
    const auto uc = static_cast<unsigned char>(c);
    if (std::isalnum(uc) || uc >= 0x80 || c == '-' || c == '.') {
      out.push_back(c);
    } else {
      out.push_back('_');
    }
  }
  return out + ".txt";
}

std::optional<std::string> ProfileClient::cached(const std::string& person_name) const {
  {
    std::shared_lock lock(mutex_);
    if (auto it = memory_.find(person_name); it != memory_.end()) return it->second;
  }
  if (config_.cache_dir.empty()) return std::nullopt;
  auto content = read_file(config_.cache_dir / file_name_for(person_name));
  if (!content) return std::nullopt;
  std::string sentence = text::first_sentence(*content);
  if (sentence.empty()) return std::nullopt;
  return sentence;
}

void ProfileClient::store(const std::string& person_name, const std::string& sentence) {
  std::unique_lock lock(mutex_);
  memory_[person_name] = sentence;
  if (config_.cache_dir.empty()) return;
  std::error_code ec;
  std::filesystem::create_directories(config_.cache_dir, ec);
  std::ofstream out(config_.cache_dir / file_name_for(person_name), std::ios::binary | std::ios::trunc);
  out << sentence << "\n";
}

std::string ProfileClient::fetch(const std::string& person_name) {
  if (auto hit = cached(person_name)) return *hit;

  std::string sentence;
  if (config_.offline) {
    if (config_.fixture_dir.empty()) throw ProfileMissError(person_name);
    auto content = read_file(config_.fixture_dir / file_name_for(person_name));
    if (!content) throw ProfileMissError(person_name);
    sentence = text::first_sentence(*content);
  } else {
    sentence = text::first_sentence(fetch_remote(person_name));
  }
  if (sentence.empty()) throw ProfileMissError(person_name);
  store(person_name, sentence);
  return sentence;
}

std::optional<std::string> ProfileClient::try_fetch(const std::string& person_name) {
  try {
    return fetch(person_name);
  } catch (const ProfileMissError&) {
    return std::nullopt;
  } catch (const ProfileTransientError&) {
    return std::nullopt;
  }
}

std::string ProfileClient::fetch_remote(const std::string& person_name) const {
  const SplitUrl url = split_url(config_.base_url);
  httplib::Client client(url.origin);
  const auto seconds = config_.timeout_ms / 1000;
  const auto micros = (config_.timeout_ms % 1000) * 1000;
  client.set_connection_timeout(seconds, micros);
  client.set_read_timeout(seconds, micros);
  client.set_follow_location(true);
  httplib::Params params{{"action", "query"},     {"prop", "extracts"},   {"exintro", "1"},
                         {"explaintext", "1"},    {"redirects", "1"},     {"format", "json"},
                         {"titles", person_name}};
  const httplib::Headers headers{{"User-Agent", "uisdial-profile-client/1.0"}};
  auto result = client.Get(url.path, params, headers);
  if (!result) {
    throw ProfileTransientError("profile request for '" + person_name +
                                "' failed: " + httplib::to_string(result.error()));
  }
  if (result->status == 404) throw ProfileMissError(person_name);
  if (result->status != 200) {
    throw ProfileTransientError("profile request for '" + person_name + "' returned HTTP " +
                                std::to_string(result->status));
  }
  return extract_from_mediawiki_response(result->body, person_name);
}

std::string extract_from_mediawiki_response(const std::string& body, const std::string& name) {
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(body);
  } catch (const nlohmann::json::parse_error& e) {
    throw ProfileTransientError("malformed MediaWiki response for '" + name + "': " + e.what());
  }
  if (!root.contains("query") || !root["query"].contains("pages")) {
    throw ProfileTransientError("MediaWiki response for '" + name + "' has no query.pages");
  }
  for (const auto& [id, page] : root["query"]["pages"].items()) {
    if (page.contains("missing") || page.contains("invalid") || id == "-1") continue;
    const std::string extract = page.value("extract", std::string());
    if (!text::trim(extract).empty()) return extract;
  }
  throw ProfileMissError(name);
}

}  // namespace uisdial::catalog
