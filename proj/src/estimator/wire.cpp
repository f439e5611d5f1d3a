#include "uisdial/estimator/wire.h"

#include <algorithm>
#include <vector>

namespace uisdial::estimator {

std::string escape_field(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '\t': out += "\\t"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string unescape_field(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '\\') {
      out.push_back(text[i]);
      continue;
    }
    if (i + 1 >= text.size()) throw ValidationError("dangling escape in serialized context");
    switch (text[++i]) {
      case '\\': out.push_back('\\'); break;
      case 't': out.push_back('\t'); break;
      case 'n': out.push_back('\n'); break;
      case 'r': out.push_back('\r'); break;
      default: throw ValidationError("unknown escape in serialized context");
    }
  }
  return out;
}

std::string serialize_context(const EstimationRequest& request, int window) {
  std::string line(to_string(request.kind));
  line += "\tTARGET\t";
  line += escape_field(request.target);
  const auto limit = std::min(request.context.size(), static_cast<std::size_t>(std::max(window, 0)));
  for (std::size_t i = 0; i < limit; ++i) {
    const auto& turn = request.context[i];
    line += turn.role == Role::System ? "\tSYS\t" : "\tUSR\t";
    line += escape_field(turn.text);
  }
  return line;
}

EstimationRequest parse_serialized_context(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    fields.push_back(line.substr(start, tab == std::string_view::npos ? std::string_view::npos
                                                                       : tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  if (fields.size() < 3 || fields.size() % 2 == 0 || fields[1] != "TARGET") {
    throw ValidationError("serialized context must start with <kind> TARGET <text>");
  }
  EstimationRequest request;
  request.kind = parse_uis_kind(fields[0]);
  request.target = unescape_field(fields[2]);
  for (std::size_t i = 3; i + 1 < fields.size(); i += 2) {
    Role role;
    if (fields[i] == "SYS") {
      role = Role::System;
    } else if (fields[i] == "USR") {
      role = Role::User;
    } else {
      throw ValidationError("unknown role marker in serialized context");
    }
    request.context.push_back({role, unescape_field(fields[i + 1])});
  }
  return request;
}

nlohmann::json to_wire_json(const EstimationRequest& request, int window) {
  nlohmann::json j;
  j["kind"] = to_string(request.kind);
  j["target"] = request.target;
  j["context"] = nlohmann::json::array();
  const auto limit = std::min(request.context.size(), static_cast<std::size_t>(std::max(window, 0)));
  for (std::size_t i = 0; i < limit; ++i) {
    j["context"].push_back(
        {{"role", to_string(request.context[i].role)}, {"text", request.context[i].text}});
  }
  j["window"] = window;
  j["turn_index"] = request.turn_index;
  j["s1_pattern"] = request.s1_pattern ? nlohmann::json(to_string(*request.s1_pattern))
                                       : nlohmann::json(nullptr);
  j["line"] = serialize_context(request, window);
  return j;
}

EstimationRequest from_wire_json(const nlohmann::json& j) {
  try {
    EstimationRequest request;
    request.kind = parse_uis_kind(j.at("kind").get<std::string>());
    request.target = j.at("target").get<std::string>();
    for (const auto& turn : j.at("context")) {
      request.context.push_back(
          {parse_role(turn.at("role").get<std::string>()), turn.at("text").get<std::string>()});
    }
    request.turn_index = j.value("turn_index", 0);
    if (j.contains("s1_pattern") && !j.at("s1_pattern").is_null()) {
      request.s1_pattern = parse_s1_pattern(j.at("s1_pattern").get<std::string>());
    }
    return request;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed estimation request: ") + e.what());
  }
}

}  // namespace uisdial::estimator
