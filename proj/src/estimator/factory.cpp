#include "uisdial/estimator/factory.h"

#include "uisdial/estimator/lexicon.h"
#include "uisdial/estimator/linear.h"

namespace uisdial::estimator {

std::shared_ptr<const Estimator> make_estimator(const EstimatorSpec& spec) {
  switch (spec.backend) {
    case Backend::Lexicon:
      if (spec.lexicon_path.empty()) return std::make_shared<LexiconEstimator>();
      return std::make_shared<LexiconEstimator>(Lexicon::load(spec.lexicon_path));
    case Backend::Linear:
      if (spec.model_path.empty()) {
        throw ValidationError("the linear backend needs a model file (model_path)");
      }
      return std::make_shared<LinearEstimator>(LinearBundle::load(spec.model_path));
    case Backend::External:
      return std::make_shared<ExternalEstimator>(spec.external);
  }
  throw ValidationError("unknown estimator backend");
}

}  // namespace uisdial::estimator
