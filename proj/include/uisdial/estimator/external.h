#pragma once

#include <string>

#include "uisdial/estimator/estimator.h"

namespace uisdial::estimator {

struct ExternalConfig {
  // POST target of the estimation endpoint.
  std::string url = "http://127.0.0.1:8765/estimate";
  int timeout_ms = 2000;
  int context_window = 10;
};

// Client for an out-of-process regressor (e.g. a fine-tuned transformer).
// Each call POSTs one newline-terminated JSON request (see wire.h) and
// expects {"score": <real>}. Timeouts, transport failures, non-200 replies
// and malformed bodies raise EstimatorError.
class ExternalEstimator final : public Estimator {
 public:
  explicit ExternalEstimator(ExternalConfig config);

  UisScore estimate(const EstimationRequest& request) const override;
  std::string name() const override { return "external"; }

 private:
  ExternalConfig config_;
  std::string origin_;
  std::string path_;
};

}  // namespace uisdial::estimator
