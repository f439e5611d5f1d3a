#include "uisdial/agreement/report.h"

#include <cctype>

#include <fmt/format.h>

namespace uisdial::agreement {

ReliabilityMatrix matrix_from_corpus(const std::vector<corpus::AnnotatedUtterance>& records,
                                     UisKind kind) {
  ReliabilityMatrix m;
  m.units.reserve(records.size());
  for (const auto& r : records) {
    const auto& t = r.label(kind);
    m.units.push_back({r.dialogue_id + "#" + std::to_string(r.turn_index), {t.a1, t.a2, t.a3}});
  }
  return m;
}

const AgreementCell& AgreementReport::cell(UisKind kind, bool filtered) const {
  for (const auto& c : cells) {
    if (c.kind == kind && c.filtered == filtered) return c;
  }
  throw ValidationError("agreement report has no cell for " + std::string(to_string(kind)));
}

AgreementReport agreement_report(const std::vector<corpus::AnnotatedUtterance>& records,
                                 const std::vector<UisKind>& kinds) {
  AgreementReport report;
  report.kinds = kinds;
  for (auto kind : kinds) {
    for (bool filtered : {false, true}) {
      AgreementCell cell;
      cell.kind = kind;
      cell.filtered = filtered;
      const auto subset = filtered ? corpus::filter_corpus(records, kind) : records;
      try {
        cell.result = krippendorff_alpha_ordinal(matrix_from_corpus(subset, kind));
      } catch (const Error& e) {
        cell.error = e.what();
      }
      report.cells.push_back(std::move(cell));
    }
  }
  return report;
}

std::string render_agreement(const AgreementReport& report) {
  auto value = [](const AgreementCell& c) {
    return c.result ? fmt::format("{:.2f}", c.result->alpha) : std::string("n/a");
  };
  std::string out = fmt::format("{:<12}{:>10}{:>10}\n", "UIS", "Full", "Filtered");
  for (auto kind : report.kinds) {
    std::string name(to_string(kind));
    name[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(name[0])));
    out += fmt::format("{:<12}{:>10}{:>10}\n", name, value(report.cell(kind, false)),
                       value(report.cell(kind, true)));
  }
  return out;
}

nlohmann::json to_json(const AgreementReport& report) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& c : report.cells) {
    nlohmann::json cell;
    cell["kind"] = to_string(c.kind);
    cell["variant"] = c.filtered ? "filtered" : "full";
    if (c.result) {
      cell["alpha"] = c.result->alpha;
      cell["observed_disagreement"] = c.result->observed_disagreement;
      cell["expected_disagreement"] = c.result->expected_disagreement;
      cell["n_pairable"] = c.result->n_pairable;
    } else {
      cell["alpha"] = nullptr;
      cell["error"] = c.error;
    }
    j.push_back(std::move(cell));
  }
  return j;
}

}  // namespace uisdial::agreement
