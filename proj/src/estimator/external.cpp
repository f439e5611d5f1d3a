#include "uisdial/estimator/external.h"

#include <cmath>

#include <httplib.h>

#include "uisdial/estimator/wire.h"

namespace uisdial::estimator {

ExternalEstimator::ExternalEstimator(ExternalConfig config) : config_(std::move(config)) {
  const auto scheme_end = config_.url.find("://");
  const auto path_start =
      config_.url.find('/', scheme_end == std::string::npos ? 0 : scheme_end + 3);
  if (path_start == std::string::npos) {
    origin_ = config_.url;
    path_ = "/";
  } else {
    origin_ = config_.url.substr(0, path_start);
    path_ = config_.url.substr(path_start);
  }
}

UisScore ExternalEstimator::estimate(const EstimationRequest& request) const {
  httplib::Client client(origin_);
  const auto seconds = config_.timeout_ms / 1000;
  const auto micros = (config_.timeout_ms % 1000) * 1000;
  client.set_connection_timeout(seconds, micros);
  client.set_read_timeout(seconds, micros);
  client.set_write_timeout(seconds, micros);

  const std::string body = to_wire_json(request, config_.context_window).dump() + "\n";
  auto result = client.Post(path_, body, "application/json");
  if (!result) {
    throw EstimatorError("external estimator at " + config_.url +
                         " failed: " + httplib::to_string(result.error()));
  }
  if (result->status != 200) {
    throw EstimatorError("external estimator returned HTTP " + std::to_string(result->status));
  }
  try {
    const auto reply = nlohmann::json::parse(result->body);
    const double score = reply.at("score").get<double>();
    if (!std::isfinite(score)) throw EstimatorError("external estimator returned a non-finite score");
    return UisScore(request.kind, score);
  } catch (const nlohmann::json::exception& e) {
    throw EstimatorError(std::string("malformed external estimator reply: ") + e.what());
  }
}

}  // namespace uisdial::estimator
