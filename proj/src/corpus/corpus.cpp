#include "uisdial/corpus/corpus.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>

#include "uisdial/domain/errors.h"

namespace uisdial::corpus {

using nlohmann::json;

std::string CorpusVariant::name() const {
  if (type == Type::Full) return "full";
  return "filtered:" + std::string(to_string(kind));
}

namespace {

std::string at_record(std::size_t n) { return "record " + std::to_string(n); }

LabelTriplet triplet_from_json(const json& j, std::size_t n, UisKind kind) {
  const std::string where = at_record(n) + " " + std::string(to_string(kind));
  if (!j.is_array() || j.size() != 3) {
    throw ValidationError(where + ": labels must be an array of three annotator values");
  }
  std::array<int, 3> v{};
  for (std::size_t i = 0; i < 3; ++i) {
    if (!j[i].is_number_integer()) throw ValidationError(where + ": labels must be integers");
    v[i] = j[i].get<int>();
  }
  try {
    scale7_from_triplet(v[0], v[1], v[2]);
  } catch (const ValidationError& e) {
    throw ValidationError(where + ": " + e.what());
  }
  return {v[0], v[1], v[2]};
}

}  // namespace

AnnotatedUtterance parse_record(const json& j, std::size_t n) {
  const std::string where = at_record(n);
  if (!j.is_object()) throw ValidationError(where + ": not an object");
  try {
    if (j.contains("format_version") && j.at("format_version").get<int>() != kCorpusFormatVersion) {
      throw ValidationError(where + ": unsupported format_version");
    }
    AnnotatedUtterance r;
    r.dialogue_id = j.at("dialogue_id").get<std::string>();
    r.turn_index = j.at("turn_index").get<int>();
    r.text = j.at("text").get<std::string>();
    if (j.contains("s1_pattern") && !j.at("s1_pattern").is_null()) {
      r.s1_pattern = parse_s1_pattern(j.at("s1_pattern").get<std::string>());
    }
    for (const auto& c : j.at("context")) {
      Utterance u;
      u.role = parse_role(c.at("role").get<std::string>());
      u.text = c.at("text").get<std::string>();
      u.turn_index = c.at("turn_index").get<int>();
      if (c.contains("slot") && !c.at("slot").is_null()) {
        u.scenario_slot = parse_slot(c.at("slot").get<std::string>());
      }
      r.context.push_back(std::move(u));
    }
    const json& labels = j.at("labels");
    for (auto kind : kAllKinds) {
      const std::string key(to_string(kind));
      if (!labels.contains(key)) throw ValidationError(where + ": missing labels for " + key);
      r.labels[index_of(kind)] = triplet_from_json(labels.at(key), n, kind);
    }
    if (j.contains("score")) {
      for (auto kind : kAllKinds) {
        const std::string key(to_string(kind));
        if (j.at("score").contains(key) && j.at("score").at(key).get<int>() != r.score(kind)) {
          throw ValidationError(where + ": score for " + key + " is not the sum of its labels");
        }
      }
    }
    if (r.dialogue_id.empty()) throw ValidationError(where + ": empty dialogue_id");
    if (r.text.empty()) throw ValidationError(where + ": empty text");
    if (r.context.empty()) throw ValidationError(where + ": context must start with a system turn");
    validate_transcript(r.context);
    if (r.context.back().role != Role::System) {
      throw ValidationError(where + ": the turn before a user utterance must be a system turn");
    }
    if (r.turn_index <= r.context.back().turn_index) {
      throw ValidationError(where + ": turn_index must follow its context");
    }
    return r;
  } catch (const ValidationError& e) {
    const std::string msg = e.what();
    if (msg.rfind(where, 0) == 0) throw;
    throw ValidationError(where + ": " + msg);
  } catch (const json::exception& e) {
    throw ValidationError(where + ": schema violation: " + e.what());
  }
}

json to_json(const AnnotatedUtterance& r) {
  json j;
  j["format_version"] = kCorpusFormatVersion;
  j["dialogue_id"] = r.dialogue_id;
  j["turn_index"] = r.turn_index;
  j["text"] = r.text;
  j["s1_pattern"] = r.s1_pattern ? json(to_string(*r.s1_pattern)) : json(nullptr);
  j["context"] = json::array();
  for (const auto& u : r.context) {
    json c;
    c["role"] = to_string(u.role);
    c["text"] = u.text;
    c["turn_index"] = u.turn_index;
    c["slot"] = u.scenario_slot ? json(to_string(*u.scenario_slot)) : json(nullptr);
    j["context"].push_back(std::move(c));
  }
  json labels;
  json score;
  for (auto kind : kAllKinds) {
    const auto& t = r.label(kind);
    labels[std::string(to_string(kind))] = {t.a1, t.a2, t.a3};
    score[std::string(to_string(kind))] = r.score(kind);
  }
  j["labels"] = labels;
  j["score"] = score;
  return j;
}

std::vector<AnnotatedUtterance> parse_corpus(std::istream& in) {
  std::vector<AnnotatedUtterance> records;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError("record " + std::to_string(line_number) + ": " + e.what(), line_number,
                       e.byte);
    }
    records.push_back(parse_record(j, line_number));
  }
  return records;
}

std::vector<AnnotatedUtterance> load_corpus(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open corpus '" + path.string() + "'");
  return parse_corpus(in);
}

void write_corpus(std::ostream& out, const std::vector<AnnotatedUtterance>& records) {
  for (const auto& r : records) out << to_json(r).dump() << '\n';
}

void save_corpus(const std::filesystem::path& path, const std::vector<AnnotatedUtterance>& records) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write corpus '" + path.string() + "'");
  write_corpus(out, records);
}

std::vector<AnnotatedUtterance> filter_corpus(const std::vector<AnnotatedUtterance>& records,
                                              UisKind kind) {
  std::vector<AnnotatedUtterance> kept;
  kept.reserve(records.size());
  for (const auto& r : records) {
    if (!is_conflicted(r.label(kind))) kept.push_back(r);
  }
  return kept;
}

std::vector<AnnotatedUtterance> apply_variant(const std::vector<AnnotatedUtterance>& records,
                                              const CorpusVariant& variant) {
  if (variant.type == CorpusVariant::Type::Full) return records;
  return filter_corpus(records, variant.kind);
}

std::vector<std::string> dialogue_ids(const std::vector<AnnotatedUtterance>& records) {
  std::vector<std::string> ids;
  std::set<std::string> seen;
  for (const auto& r : records) {
    if (seen.insert(r.dialogue_id).second) ids.push_back(r.dialogue_id);
  }
  return ids;
}

CorpusSplit split_corpus(const std::vector<AnnotatedUtterance>& records, const SplitSpec& spec) {
  const std::array<double, 3> fracs = {spec.train_frac, spec.dev_frac, spec.test_frac};
  double total = 0.0;
  int buckets = 0;
  for (double f : fracs) {
    if (!(f >= 0.0 && f <= 1.0)) throw ValidationError("split fractions must lie in [0, 1]");
    total += f;
    if (f > 0.0) ++buckets;
  }
  if (std::abs(total - 1.0) > 1e-6) throw ValidationError("split fractions must sum to 1");

  std::vector<std::string> ids = dialogue_ids(records);
  if (ids.size() < static_cast<std::size_t>(buckets)) {
    throw ValidationError("cannot split " + std::to_string(ids.size()) + " dialogues into " +
                          std::to_string(buckets) + " buckets");
  }
  std::sort(ids.begin(), ids.end());
  Rng rng(spec.seed);
  for (std::size_t i = ids.size(); i > 1; --i) {
    std::swap(ids[i - 1], ids[rng.uniform_index(i)]);
  }

  const auto n = static_cast<double>(ids.size());
  const auto n_dev = static_cast<std::size_t>(std::floor(spec.dev_frac * n + 1e-9));
  const auto n_test = static_cast<std::size_t>(std::floor(spec.test_frac * n + 1e-9));

  enum Bucket { kTrain, kDev, kTest };
  std::map<std::string, Bucket> assignment;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    Bucket b = kTrain;
    if (i < n_dev) {
      b = kDev;
    } else if (i < n_dev + n_test) {
      b = kTest;
    }
    assignment[ids[i]] = b;
  }

  CorpusSplit split;
  for (const auto& r : records) {
    switch (assignment.at(r.dialogue_id)) {
      case kTrain: split.train.push_back(r); break;
      case kDev: split.dev.push_back(r); break;
      case kTest: split.test.push_back(r); break;
    }
  }
  return split;
}

}  // namespace uisdial::corpus
