#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "uisdial/agreement/krippendorff.h"
#include "uisdial/corpus/corpus.h"

namespace uisdial::agreement {

ReliabilityMatrix matrix_from_corpus(const std::vector<corpus::AnnotatedUtterance>& records,
                                     UisKind kind);

struct AgreementCell {
  UisKind kind = UisKind::Knowledge;
  bool filtered = false;
  std::optional<AlphaResult> result;
  std::string error;  // set when result is empty
};

struct AgreementReport {
  std::vector<UisKind> kinds;
  std::vector<AgreementCell> cells;  // kinds x {Full, Filtered}, row-major

  const AgreementCell& cell(UisKind kind, bool filtered) const;
};

// alpha for every requested kind on the Full corpus and on that kind's
// Filtered subset. A degenerate cell records its error; other cells still
// get computed.
AgreementReport agreement_report(const std::vector<corpus::AnnotatedUtterance>& records,
                                 const std::vector<UisKind>& kinds);

std::string render_agreement(const AgreementReport& report);
nlohmann::json to_json(const AgreementReport& report);

}  // namespace uisdial::agreement
