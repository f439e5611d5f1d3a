#include "uisdial/corpus/stats.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <utility>

#include <fmt/format.h>

#include "uisdial/text/text.h"

namespace uisdial::corpus {

std::array<double, 7> rounded_percents(const std::array<std::size_t, 7>& counts) {
  std::array<double, 7> out{};
  const std::size_t total = std::accumulate(counts.begin(), counts.end(), std::size_t{0});
  if (total == 0) return out;
  // Work in tenths of a percent: 1000 units to distribute.
  std::array<long, 7> units{};
  std::array<std::pair<double, std::size_t>, 7> remainders{};
  long assigned = 0;
  for (std::size_t i = 0; i < 7; ++i) {
    const double exact = 1000.0 * static_cast<double>(counts[i]) / static_cast<double>(total);
    units[i] = static_cast<long>(std::floor(exact));
    remainders[i] = {exact - static_cast<double>(units[i]), i};
    assigned += units[i];
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (long k = 0; k < 1000 - assigned; ++k) ++units[remainders[static_cast<std::size_t>(k)].second];
  for (std::size_t i = 0; i < 7; ++i) out[i] = static_cast<double>(units[i]) / 10.0;
  return out;
}

StatsReport corpus_stats(const std::vector<AnnotatedUtterance>& records) {
  StatsReport report;
  for (auto kind : kAllKinds) report.histograms[index_of(kind)].kind = kind;

  std::set<std::string> dialogues;
  std::set<std::pair<std::string, int>> system_turns;
  std::set<std::string> unique_system;
  std::set<std::string> unique_user;
  std::set<std::string> system_vocab;
  std::set<std::string> user_vocab;
  auto& t = report.totals;

  for (const auto& r : records) {
    dialogues.insert(r.dialogue_id);
    ++t.user_utterances;
    unique_user.insert(r.text);
    for (auto& tok : text::whitespace_tokens(r.text)) {
      ++t.user_tokens;
      user_vocab.insert(std::move(tok));
    }
    for (const auto& u : r.context) {
      if (u.role != Role::System) continue;
      if (!system_turns.insert({r.dialogue_id, u.turn_index}).second) continue;
      unique_system.insert(u.text);
      for (auto& tok : text::whitespace_tokens(u.text)) {
        ++t.system_tokens;
        system_vocab.insert(std::move(tok));
      }
    }
    for (auto kind : kAllKinds) {
      const auto bin = static_cast<std::size_t>(3 - r.score(kind));
      ++report.histograms[index_of(kind)].counts[bin];
    }
  }
  t.dialogues = dialogues.size();
  t.system_utterances = system_turns.size();
  t.unique_system_utterances = unique_system.size();
  t.unique_user_utterances = unique_user.size();
  t.unique_system_tokens = system_vocab.size();
  t.unique_user_tokens = user_vocab.size();
  t.avg_turns = t.dialogues == 0 ? 0.0
                                 : static_cast<double>(t.system_utterances + t.user_utterances) /
                                       static_cast<double>(t.dialogues);
  for (auto& h : report.histograms) h.percents = rounded_percents(h.counts);
  return report;
}

std::string render_stats(const StatsReport& report) {
  const auto& t = report.totals;
  std::string out;
  out += fmt::format("{:<28}{:>10}\n", "# of dialogues", t.dialogues);
  out += fmt::format("{:<28}{:>10.1f}\n", "Avg # of turns", t.avg_turns);
  out += fmt::format("{:<28}{:>10}{:>10}\n", "", "System", "User");
  out += fmt::format("{:<28}{:>10}{:>10}\n", "# of utterances", t.system_utterances,
                     t.user_utterances);
  out += fmt::format("{:<28}{:>10}{:>10}\n", "# of unique utterances", t.unique_system_utterances,
                     t.unique_user_utterances);
  out += fmt::format("{:<28}{:>10}{:>10}\n", "# of tokens (whitespace)", t.system_tokens,
                     t.user_tokens);
  out += fmt::format("{:<28}{:>10}{:>10}\n", "# of unique tokens", t.unique_system_tokens,
                     t.unique_user_tokens);
  out += "\n";
  out += fmt::format("{:>6}", "Score");
  for (const auto& h : report.histograms) {
    std::string name(to_string(h.kind));
    name[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(name[0])));
    out += fmt::format("{:>20}", name);
  }
  out += "\n";
  for (std::size_t bin = 0; bin < 7; ++bin) {
    out += fmt::format("{:>6}", ScoreHistogram::score_of_bin(bin));
    for (const auto& h : report.histograms) {
      out += fmt::format("{:>20}", fmt::format("{:.1f}% ({})", h.percents[bin], h.counts[bin]));
    }
    out += "\n";
  }
  return out;
}

nlohmann::json to_json(const StatsReport& report) {
  const auto& t = report.totals;
  nlohmann::json j;
  j["totals"] = {{"dialogues", t.dialogues},
                 {"system_utterances", t.system_utterances},
                 {"user_utterances", t.user_utterances},
                 {"unique_system_utterances", t.unique_system_utterances},
                 {"unique_user_utterances", t.unique_user_utterances},
                 {"system_tokens", t.system_tokens},
                 {"user_tokens", t.user_tokens},
                 {"unique_system_tokens", t.unique_system_tokens},
                 {"unique_user_tokens", t.unique_user_tokens},
                 {"avg_turns", t.avg_turns},
                 {"token_unit", "whitespace"}};
  for (const auto& h : report.histograms) {
    nlohmann::json bins = nlohmann::json::array();
    for (std::size_t bin = 0; bin < 7; ++bin) {
      bins.push_back({{"score", ScoreHistogram::score_of_bin(bin)},
                      {"count", h.counts[bin]},
                      {"percent", h.percents[bin]}});
    }
    j["histograms"][std::string(to_string(h.kind))] = bins;
  }
  return j;
}

}  // namespace uisdial::corpus
