#pragma once

#include <memory>
#include <string>

#include "uisdial/estimator/estimator.h"
#include "uisdial/estimator/external.h"

namespace uisdial::estimator {

struct EstimatorSpec {
  Backend backend = Backend::Lexicon;
  std::string lexicon_path;  // empty: built-in lexicon
  std::string model_path;    // required for Linear
  ExternalConfig external;
};

std::shared_ptr<const Estimator> make_estimator(const EstimatorSpec& spec);

}  // namespace uisdial::estimator
