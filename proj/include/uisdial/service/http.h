#pragma once

#include <string>

namespace httplib {
class Server;
}

namespace uisdial::service {

class SessionService;

// Routes:
//   POST /sessions                          201 {session_id, first_system_utterance, ...}
//   POST /sessions/{id}/utterance {text}    200 {reply, slot, fired_rules, uis, done, ...}
//   POST /sessions/{id}/questionnaire       200 ack
//   GET  /sessions/{id}                     200 transcript
//   GET  /health
// CORS headers are added to every response; OPTIONS preflights return 204.
void register_routes(httplib::Server& server, SessionService& service);

// Binds and serves until stop() is called on the server or the process ends.
// Returns false if the address could not be bound.
bool run_server(SessionService& service, httplib::Server& server);

}  // namespace uisdial::service
