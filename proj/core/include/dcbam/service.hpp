#pragma once

// Transport-free HTTP facade. A server binds handle() to a socket; tests
// call it directly.

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "dcbam/project_io.hpp"

namespace dcbam::service {

inline constexpr const char* kRevisionHeader = "X-Dcbam-Revision";

struct Request {
  std::string method;
  std::string path;  // may carry a ?query
  std::string body;
};

struct Response {
  int status = 200;
  std::string body;
  std::map<std::string, std::string> headers;
};

/// In-memory project sessions with optimistic concurrency.
///
/// Routes (all JSON):
///   GET  /v1/schema
///   POST /v1/projects                      {"project": {...}} | {"path": "..."}
///   GET  /v1/projects/{id}
///   PUT  /v1/projects/{id}                 {"revision": n, "project": {...}}
///   POST /v1/projects/{id}/valuation       valuation request
///   POST /v1/projects/{id}/whatif          {"request": {...}, "range": {...}}
///   GET  /v1/projects/{id}/lattice?portfolio=P&horizon=t[&u=..&d=..&r=..&vs=..&base=..]
///   POST /v1/projects/{id}/save            {"path": "..."}
///
/// Session routes echo the revision in kRevisionHeader; project routes also
/// carry it in the body. Status codes: 400 invalid data, 404 unknown id or
/// route, 409 stale revision, 422 no-arbitrage violation.
class Service {
 public:
  Response handle(const Request& request);

  /// Machine-readable route table served at /v1/schema.
  static Json route_schema();

 private:
  struct Session {
    std::mutex mutex;
    std::shared_ptr<const Project> project;
    std::int64_t revision = 0;
  };

  std::shared_ptr<Session> find(const std::string& id);
  std::pair<std::shared_ptr<const Project>, std::int64_t> snapshot(Session& session);

  Response create(const Json& body);
  Response read(const std::string& id);
  Response update(const std::string& id, const Json& body);
  Response value(const std::string& id, const Json& body);
  Response whatif(const std::string& id, const Json& body);
  Response lattice(const std::string& id, const std::map<std::string, std::string>& query);
  Response save(const std::string& id, const Json& body);

  std::mutex sessions_mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::uint64_t next_session_ = 1;
};

}  // namespace dcbam::service
