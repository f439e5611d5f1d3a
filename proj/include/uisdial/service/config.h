#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "uisdial/engine/engine.h"
#include "uisdial/estimator/factory.h"

namespace uisdial::service {

enum class SeedPolicy { Fixed, PerSession };

std::string_view to_string(SeedPolicy policy);
SeedPolicy parse_seed_policy(std::string_view text);

struct ServiceConfig {
  std::filesystem::path catalog_path = std::filesystem::path(UISDIAL_DATA_DIR) / "catalog.json";
  estimator::EstimatorSpec estimator_spec;
  engine::EngineConfig engine;  // thresholds, window, rules_enabled
  SeedPolicy seed_policy = SeedPolicy::PerSession;
  std::uint64_t seed = 0;  // used by the fixed policy
  std::string host = "127.0.0.1";
  int port = 8080;
  bool offline = true;
  std::filesystem::path log_dir = "sessions";
  std::filesystem::path profile_fixture_dir = std::filesystem::path(UISDIAL_DATA_DIR) / "profiles";
  std::filesystem::path profile_cache_dir;
  std::string cors_origin = "*";

  // Throws ValidationError on out-of-range values.
  void validate() const;
};

// Keys mirror the field names; "estimator" holds backend, lexicon_path,
// model_path, external_url, context_window and thresholds
// {"knowledge": [pos, neg], ...}. Unknown keys are rejected.
ServiceConfig config_from_json(const nlohmann::json& j, ServiceConfig base = {});
ServiceConfig load_service_config(const std::filesystem::path& path);
nlohmann::json to_json(const ServiceConfig& config);

using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;

// UIS_CATALOG, UIS_BACKEND, UIS_MODEL, UIS_RULES_ENABLED, UIS_SEED,
// UIS_SEED_POLICY, UIS_HOST, UIS_PORT, UIS_OFFLINE, UIS_LOG_DIR,
// UIS_CORS_ORIGIN. The default lookup reads the process environment.
void apply_env_overrides(ServiceConfig& config, const EnvLookup& lookup = {});

}  // namespace uisdial::service
