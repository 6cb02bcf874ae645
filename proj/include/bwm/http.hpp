#ifndef BWM_HTTP_HPP
#define BWM_HTTP_HPP

#include <string>

// Eigen first: httplib pulls in <resolv.h>, whose _res macro breaks it.
#include "bwm/session.hpp"

#include "httplib.h"

namespace bwm {

inline void reply(httplib::Response& res, const ApiResponse& r) {
  res.status = r.status;
  res.set_content(r.body.dump(), "application/json");
}

//   POST /sessions                    create
//   PUT  /sessions/{id}/comparisons   merge judgments
//   POST /sessions/{id}/reset         overwrite or clear one judgment
//   GET  /sessions/{id}/result        current state and result
inline void register_routes(httplib::Server& server, SessionService& service) {
  server.Post("/sessions", [&](const httplib::Request& req, httplib::Response& res) {
    reply(res, service.create(req.body));
  });
  server.Put(R"(/sessions/([0-9A-Za-z]+)/comparisons)", [&](const httplib::Request& req, httplib::Response& res) {
    reply(res, service.update(req.matches[1], req.body));
  });
  server.Post(R"(/sessions/([0-9A-Za-z]+)/reset)", [&](const httplib::Request& req, httplib::Response& res) {
    reply(res, service.reset(req.matches[1], req.body));
  });
  server.Get(R"(/sessions/([0-9A-Za-z]+)/result)", [&](const httplib::Request& req, httplib::Response& res) {
    reply(res, service.result(req.matches[1]));
  });
  // Browser companion served from another origin.
  server.set_default_headers({{"Access-Control-Allow-Origin", "*"}});
  server.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Methods", "GET, POST, PUT, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
    res.status = 204;
  });
}

}  // namespace bwm

#endif  // BWM_HTTP_HPP
