#include "uisdial/service/http.h"

#include <httplib.h>
#include <spdlog/spdlog.h>

#include "uisdial/service/service.h"

namespace uisdial::service {

namespace {

void send(httplib::Response& res, const ServiceResponse& r) {
  res.status = r.status;
  res.set_content(r.body.dump(), "application/json");
}

// nullopt and a 400 reply when the body is not JSON.
std::optional<nlohmann::json> parse_body(const httplib::Request& req, httplib::Response& res) {
  if (req.body.empty()) return nlohmann::json::object();
  try {
    return nlohmann::json::parse(req.body);
  } catch (const nlohmann::json::parse_error& e) {
    send(res, {400, error_body("parse", std::string("request body is not JSON: ") + e.what())});
    return std::nullopt;
  }
}

}  // namespace

void register_routes(httplib::Server& server, SessionService& service) {
  const std::string origin = service.config().cors_origin;
  server.set_default_headers({{"Access-Control-Allow-Origin", origin},
                              {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                              {"Access-Control-Allow-Headers", "Content-Type"}});

  server.Options(R"(.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

  server.Get("/health", [&service](const httplib::Request&, httplib::Response& res) {
    send(res, service.health());
  });

  server.Post("/sessions", [&service](const httplib::Request&, httplib::Response& res) {
    send(res, service.create_session());
  });

  server.Post(R"(/sessions/([^/]+)/utterance)",
              [&service](const httplib::Request& req, httplib::Response& res) {
                auto body = parse_body(req, res);
                if (body) send(res, service.post_utterance(req.matches[1], *body));
              });

  server.Post(R"(/sessions/([^/]+)/questionnaire)",
              [&service](const httplib::Request& req, httplib::Response& res) {
                auto body = parse_body(req, res);
                if (body) send(res, service.post_questionnaire(req.matches[1], *body));
              });

  server.Get(R"(/sessions/([^/]+))", [&service](const httplib::Request& req, httplib::Response& res) {
    send(res, service.get_session(req.matches[1]));
  });

  server.set_exception_handler(
      [](const httplib::Request& req, httplib::Response& res, std::exception_ptr ep) {
        std::string message = "internal error";
        std::string category = "internal";
        try {
          std::rethrow_exception(ep);
        } catch (const Error& e) {
          category = e.category();
          message = e.what();
        } catch (const std::exception& e) {
          message = e.what();
        }
        spdlog::error("{} {} failed: {}", req.method, req.path, message);
        send(res, {500, error_body(category, message)});
      });
}

bool run_server(SessionService& service, httplib::Server& server) {
  register_routes(server, service);
  const auto& c = service.config();
  spdlog::info("listening on {}:{}", c.host, c.port);
  return server.listen(c.host, c.port);
}

}  // namespace uisdial::service
