#include "uisdial/estimator/lexicon.h"

#include <fstream>

#include "uisdial/text/text.h"

namespace uisdial::estimator {

namespace {

// Folds typographic apostrophes so "don’t" matches "don't".
std::string normalize(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i + 2 < s.size() && static_cast<unsigned char>(s[i]) == 0xE2 &&
        static_cast<unsigned char>(s[i + 1]) == 0x80 &&
        (static_cast<unsigned char>(s[i + 2]) == 0x99 || static_cast<unsigned char>(s[i + 2]) == 0x98)) {
      out.push_back('\'');
      i += 2;
    } else {
      out.push_back(s[i]);
    }
  }
  return text::to_lower(out);
}

LexiconEntry entry(std::string phrase, double score) { return {std::move(phrase), score, std::nullopt}; }

LexiconEntry after(std::string phrase, double score, std::string context) {
  return {std::move(phrase), score, std::move(context)};
}

Lexicon make_builtin() {
  std::array<std::vector<LexiconEntry>, 3> e;
  e[index_of(UisKind::Knowledge)] = {
      entry("i don't know that movie", -3.0),
      entry("i've never heard of", -3.0),
      entry("never heard of it", -3.0),
      entry("i don't know", -2.5),
      entry("don't know", -2.5),
      entry("no idea", -2.5),
      entry("never heard", -2.5),
      entry("what's it about", -2.5),
      entry("what is it about", -2.5),
      entry("who is that", -2.0),
      entry("i'm not sure", -2.0),
      entry("not sure", -2.0),
      entry("haven't seen it", -2.0),
      entry("i watched it", 3.0),
      entry("watched it on dvd", 3.0),
      entry("i've seen it", 3.0),
      entry("i have seen it", 3.0),
      entry("i saw it", 3.0),
      entry("i know that movie", 3.0),
      entry("i know it", 2.5),
      entry("i know", 2.0),
      entry("you know well", 2.0),
      entry("i think so too", 2.0),
      entry("of course", 2.0),
      entry("heard the title", 1.0),
      after("yes", 2.0, "do you know"),
      after("yeah", 2.0, "do you know"),
      after("no", -2.5, "do you know"),
  };
  e[index_of(UisKind::Interest)] = {
      entry("i'm interested in it", 3.0),
      entry("i'm interested", 3.0),
      entry("i am interested", 3.0),
      entry("interested", 2.0),
      entry("sounds interesting", 2.5),
      entry("i want to see it", 3.0),
      entry("i want to watch", 3.0),
      entry("i'd like to see", 3.0),
      entry("i love", 2.5),
      entry("i like", 2.0),
      entry("it's nice", 2.0),
      entry("that's nice", 2.0),
      entry("not interested", -3.0),
      entry("not so interested", -3.0),
      entry("not really interested", -3.0),
      entry("i'm not interested", -3.0),
      entry("not interested at all", -3.0),
      entry("don't care", -3.0),
      entry("i don't like", -2.5),
      entry("not my thing", -2.5),
      entry("not a fan", -2.5),
      entry("boring", -2.5),
  };
  e[index_of(UisKind::Engagement)] = {
      entry("okay", -2.0),
      entry("ok", -2.0),
      entry("hmm", -2.0),
      entry("whatever", -3.0),
      entry("fine", -1.5),
      entry("i see", -1.2),
      entry("sure", -1.2),
      entry("tell me more", 3.0),
      entry("sounds great", 3.0),
      entry("i'm interested", 3.0),
      entry("that's nice", 2.5),
      entry("it's nice", 2.5),
      entry("i think so too", 2.5),
      entry("i want to", 2.5),
      entry("interesting", 2.5),
      entry("wow", 2.5),
      entry("i love", 2.5),
      entry("really", 1.5),
  };
  return Lexicon(std::move(e));
}

}  // namespace

Lexicon::Lexicon(std::array<std::vector<LexiconEntry>, 3> entries) : entries_(std::move(entries)) {
  for (auto& list : entries_) {
    for (auto& item : list) {
      item.phrase = normalize(item.phrase);
      if (item.after) item.after = normalize(*item.after);
    }
  }
}

const Lexicon& Lexicon::builtin() {
  static const Lexicon lexicon = make_builtin();
  return lexicon;
}

Lexicon Lexicon::from_json(const nlohmann::json& j) {
  std::array<std::vector<LexiconEntry>, 3> e;
  for (auto kind : kAllKinds) {
    const std::string key(to_string(kind));
    if (!j.contains(key)) continue;
    for (const auto& item : j.at(key)) {
      LexiconEntry le;
      le.phrase = item.at("phrase").get<std::string>();
      le.score = item.at("score").get<double>();
      if (item.contains("after") && !item.at("after").is_null()) {
        le.after = item.at("after").get<std::string>();
      }
      if (le.phrase.empty()) throw ValidationError("lexicon phrase for " + key + " is empty");
      e[index_of(kind)].push_back(std::move(le));
    }
  }
  return Lexicon(std::move(e));
}

Lexicon Lexicon::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open lexicon '" + path + "'");
  try {
    return from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("lexicon '" + path + "': " + e.what());
  }
}

nlohmann::json Lexicon::to_json() const {
  nlohmann::json j;
  for (auto kind : kAllKinds) {
    auto& list = j[std::string(to_string(kind))] = nlohmann::json::array();
    for (const auto& item : entries(kind)) {
      nlohmann::json o{{"phrase", item.phrase}, {"score", item.score}};
      if (item.after) o["after"] = *item.after;
      list.push_back(std::move(o));
    }
  }
  return j;
}

double Lexicon::lookup(UisKind kind, const std::string& target, const std::string& last_system) const {
  const std::string t = normalize(target);
  const std::string sys = normalize(last_system);
  const LexiconEntry* best = nullptr;
  for (const auto& item : entries(kind)) {
    if (item.after && sys.find(*item.after) == std::string::npos) continue;
    if (!text::contains_word_ci(t, item.phrase)) continue;
    if (!best || item.phrase.size() > best->phrase.size()) best = &item;
  }
  return best ? best->score : 0.0;
}

UisScore LexiconEstimator::estimate(const EstimationRequest& request) const {
  const auto* sys = last_system_turn(request, static_cast<int>(request.context.size()));
  return UisScore(request.kind,
                  lexicon_.lookup(request.kind, request.target, sys ? sys->text : std::string()));
}

}  // namespace uisdial::estimator
