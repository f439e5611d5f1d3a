#include "uisdial/service/config.h"

#include <cstdlib>
#include <fstream>
#include <set>

#include "uisdial/text/text.h"

namespace uisdial::service {

using nlohmann::json;

std::string_view to_string(SeedPolicy policy) {
  return policy == SeedPolicy::Fixed ? "fixed" : "per_session";
}

SeedPolicy parse_seed_policy(std::string_view text) {
  if (text == "fixed") return SeedPolicy::Fixed;
  if (text == "per_session" || text == "per-session") return SeedPolicy::PerSession;
  throw ValidationError("unknown seed policy '" + std::string(text) + "'");
}

void ServiceConfig::validate() const {
  engine.validate();
  if (port < 0 || port > 65535) throw ValidationError("port must lie in [0, 65535]");
  if (host.empty()) throw ValidationError("host must not be empty");
  if (log_dir.empty()) throw ValidationError("log_dir must not be empty");
  if (estimator_spec.backend == estimator::Backend::Linear && estimator_spec.model_path.empty()) {
    throw ValidationError("the linear backend needs estimator.model_path");
  }
}

namespace {

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) throw ValidationError("unknown " + where + " key '" + key + "'");
  }
}

bool parse_bool(const std::string& name, const std::string& value) {
  const std::string v = text::to_lower(text::trim(value));
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  throw ValidationError(name + " must be a boolean, got '" + value + "'");
}

template <typename T>
T parse_number(const std::string& name, const std::string& value) {
  try {
    std::size_t used = 0;
    T out;
    if constexpr (std::is_same_v<T, int>) {
      out = std::stoi(value, &used);
    } else {
      out = static_cast<T>(std::stoull(value, &used));
    }
    if (used != value.size()) throw std::invalid_argument("trailing characters");
    return out;
  } catch (const std::exception&) {
    throw ValidationError(name + " must be a number, got '" + value + "'");
  }
}

}  // namespace

ServiceConfig config_from_json(const json& j, ServiceConfig c) {
  if (!j.is_object()) throw ValidationError("service config must be a JSON object");
  reject_unknown(j,
                 {"catalog_path", "estimator", "rules_enabled", "random_selection_probability",
                  "consent_suffix", "answer_questions", "seed_policy", "seed", "host", "port",
                  "offline", "log_dir", "profile_fixture_dir", "profile_cache_dir", "cors_origin"},
                 "config");
  try {
    if (j.contains("catalog_path")) c.catalog_path = j["catalog_path"].get<std::string>();
    if (j.contains("rules_enabled")) c.engine.rules_enabled = j["rules_enabled"].get<bool>();
    if (j.contains("random_selection_probability")) {
      c.engine.random_selection_probability = j["random_selection_probability"].get<double>();
    }
    if (j.contains("consent_suffix")) c.engine.consent_suffix = j["consent_suffix"].get<std::string>();
    if (j.contains("answer_questions")) c.engine.answer_questions = j["answer_questions"].get<bool>();
    if (j.contains("seed_policy")) c.seed_policy = parse_seed_policy(j["seed_policy"].get<std::string>());
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("host")) c.host = j["host"].get<std::string>();
    if (j.contains("port")) c.port = j["port"].get<int>();
    if (j.contains("offline")) c.offline = j["offline"].get<bool>();
    if (j.contains("log_dir")) c.log_dir = j["log_dir"].get<std::string>();
    if (j.contains("profile_fixture_dir")) c.profile_fixture_dir = j["profile_fixture_dir"].get<std::string>();
    if (j.contains("profile_cache_dir")) c.profile_cache_dir = j["profile_cache_dir"].get<std::string>();
    if (j.contains("cors_origin")) c.cors_origin = j["cors_origin"].get<std::string>();
    if (j.contains("estimator")) {
      const json& e = j["estimator"];
      reject_unknown(e,
                     {"backend", "lexicon_path", "model_path", "external_url", "timeout_ms",
                      "context_window", "thresholds"},
                     "estimator");
      if (e.contains("backend")) {
        c.estimator_spec.backend = estimator::parse_backend(e["backend"].get<std::string>());
        c.engine.estimator.backend = c.estimator_spec.backend;
      }
      if (e.contains("lexicon_path")) c.estimator_spec.lexicon_path = e["lexicon_path"].get<std::string>();
      if (e.contains("model_path")) c.estimator_spec.model_path = e["model_path"].get<std::string>();
      if (e.contains("external_url")) c.estimator_spec.external.url = e["external_url"].get<std::string>();
      if (e.contains("timeout_ms")) c.estimator_spec.external.timeout_ms = e["timeout_ms"].get<int>();
      if (e.contains("context_window")) {
        c.engine.estimator.context_window = e["context_window"].get<int>();
        c.estimator_spec.external.context_window = c.engine.estimator.context_window;
      }
      if (e.contains("thresholds")) {
        for (const auto& [key, pair] : e["thresholds"].items()) {
          const UisKind kind = parse_uis_kind(key);
          c.engine.estimator.thresholds[index_of(kind)] =
              estimator::Thresholds{pair.at(0).get<double>(), pair.at(1).get<double>()};
        }
      }
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("service config: ") + e.what());
  }
  c.validate();
  return c;
}

ServiceConfig load_service_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError("config " + path.string() + ": " + e.what(), 0, 0);
  }
  return config_from_json(j);
}

json to_json(const ServiceConfig& c) {
  json thresholds = json::object();
  for (UisKind kind : kAllKinds) {
    const auto& t = c.engine.estimator.thresholds_for(kind);
    thresholds[std::string(to_string(kind))] = {t.positive, t.negative};
  }
  return json{{"catalog_path", c.catalog_path.string()},
              {"estimator",
               {{"backend", std::string(estimator::to_string(c.estimator_spec.backend))},
                {"lexicon_path", c.estimator_spec.lexicon_path},
                {"model_path", c.estimator_spec.model_path},
                {"external_url", c.estimator_spec.external.url},
                {"timeout_ms", c.estimator_spec.external.timeout_ms},
                {"context_window", c.engine.estimator.context_window},
                {"thresholds", thresholds}}},
              {"rules_enabled", c.engine.rules_enabled},
              {"random_selection_probability", c.engine.random_selection_probability},
              {"consent_suffix", c.engine.consent_suffix},
              {"answer_questions", c.engine.answer_questions},
              {"seed_policy", std::string(to_string(c.seed_policy))},
              {"seed", c.seed},
              {"host", c.host},
              {"port", c.port},
              {"offline", c.offline},
              {"log_dir", c.log_dir.string()},
              {"profile_fixture_dir", c.profile_fixture_dir.string()},
              {"profile_cache_dir", c.profile_cache_dir.string()},
              {"cors_origin", c.cors_origin}};
}

void apply_env_overrides(ServiceConfig& c, const EnvLookup& lookup) {
  const EnvLookup get = lookup ? lookup : [](const std::string& name) -> std::optional<std::string> {
    const char* v = std::getenv(name.c_str());
    return v ? std::optional<std::string>(v) : std::nullopt;
  };
  if (auto v = get("UIS_CATALOG")) c.catalog_path = *v;
  if (auto v = get("UIS_BACKEND")) {
    c.estimator_spec.backend = estimator::parse_backend(*v);
    c.engine.estimator.backend = c.estimator_spec.backend;
  }
  if (auto v = get("UIS_MODEL")) c.estimator_spec.model_path = *v;
  if (auto v = get("UIS_RULES_ENABLED")) c.engine.rules_enabled = parse_bool("UIS_RULES_ENABLED", *v);
  if (auto v = get("UIS_SEED")) c.seed = parse_number<std::uint64_t>("UIS_SEED", *v);
  if (auto v = get("UIS_SEED_POLICY")) c.seed_policy = parse_seed_policy(*v);
  if (auto v = get("UIS_HOST")) c.host = *v;
  if (auto v = get("UIS_PORT")) c.port = parse_number<int>("UIS_PORT", *v);
  if (auto v = get("UIS_OFFLINE")) c.offline = parse_bool("UIS_OFFLINE", *v);
  if (auto v = get("UIS_LOG_DIR")) c.log_dir = *v;
  if (auto v = get("UIS_CORS_ORIGIN")) c.cors_origin = *v;
  c.validate();
}

}  // namespace uisdial::service
