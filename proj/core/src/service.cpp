#include "dcbam/service.hpp"

#include <cstdlib>
#include <sstream>
#include <vector>

#include "dcbam/errors.hpp"
#include "dcbam/json_codec.hpp"
#include "dcbam/portfolio.hpp"

namespace dcbam::service {

namespace {

class NotFound : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Conflict : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Response json_response(int status, const Json& body) {
  Response r;
  r.status = status;
  r.body = canonical_dump(body) + "\n";
  r.headers["Content-Type"] = "application/json";
  return r;
}

Response error_response(int status, const std::string& kind, const std::string& message,
                        Json extra = Json::object()) {
  Json err = {{"kind", kind}, {"message", message}};
  for (auto it = extra.begin(); it != extra.end(); ++it) err[it.key()] = it.value();
  return json_response(status, {{"error", std::move(err)}});
}

// Maps the engine's exception kinds onto status codes. Must be called from
// inside a catch block.
Response current_error() {
  try {
    throw;
  } catch (const NotFound& e) {
    return error_response(404, "not-found", e.what());
  } catch (const Conflict& e) {
    return error_response(409, "stale-revision", e.what());
  } catch (const NoArbitrageError& e) {
    return error_response(422, "no-arbitrage", e.what(), {{"inequality", e.inequality()}});
  } catch (const DegenerateLatticeError& e) {
    return error_response(422, "degenerate-lattice", e.what());
  } catch (const ReferenceError& e) {
    return error_response(404, "unknown-id", e.what(), {{"id", e.id()}});
  } catch (const ParseError& e) {
    return error_response(400, "parse", e.what(), {{"location", e.location()}});
  } catch (const BudgetError& e) {
    return error_response(400, "budget", e.what(),
                          {{"total", e.total()}, {"budget", e.budget()}, {"excess", e.excess()}});
  } catch (const Error& e) {
    return error_response(400, "validation", e.what());
  } catch (const std::exception& e) {
    return error_response(500, "internal", e.what());
  }
}

Json parse_body(const std::string& body) {
  if (body.empty()) throw ParseError("body", "request body is empty");
  try {
    return Json::parse(body);
  } catch (const Json::parse_error& e) {
    throw ParseError("body", std::string("malformed JSON: ") + e.what());
  }
}

// Dangling references inside a submitted project are bad data (400), not a
// missing resource.
Project decode_project(const Json& doc) {
  Project p;
  try {
    p = project_from_json(doc);
    validate_project(p);
  } catch (const ReferenceError& e) {
    throw ValidationError(e.what());
  }
  return p;
}

std::string url_decode(const std::string& text) {
  std::string out;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '+') {
      out += ' ';
    } else if (text[i] == '%' && i + 2 < text.size()) {
      out += static_cast<char>(std::strtol(text.substr(i + 1, 2).c_str(), nullptr, 16));
      i += 2;
    } else {
      out += text[i];
    }
  }
  return out;
}

std::map<std::string, std::string> parse_query(const std::string& query) {
  std::map<std::string, std::string> out;
  std::istringstream in(query);
  std::string pair;
  while (std::getline(in, pair, '&')) {
    if (pair.empty()) continue;
    const auto eq = pair.find('=');
    if (eq == std::string::npos) out[url_decode(pair)] = "";
    else out[url_decode(pair.substr(0, eq))] = url_decode(pair.substr(eq + 1));
  }
  return out;
}

std::vector<std::string> split_path(const std::string& path) {
  std::vector<std::string> parts;
  std::istringstream in(path);
  std::string part;
  while (std::getline(in, part, '/')) {
    if (!part.empty()) parts.push_back(part);
  }
  return parts;
}

double query_number(const std::map<std::string, std::string>& q, const std::string& key) {
  const auto& text = q.at(key);
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw ParseError("query/" + key, "'" + text + "' is not a number");
}

}  // namespace

Json Service::route_schema() {
  auto route = [](const char* method, const char* path, const char* request,
                  const char* response) {
    return Json{{"method", method}, {"path", path}, {"request", request}, {"response", response}};
  };
  return {{"version", "v1"},
          {"content_type", "application/json"},
          {"revision_header", kRevisionHeader},
          {"errors",
           {{"400", "invalid data; body.error.message names the violated invariant"},
            {"404", "unknown session, portfolio or DAD id"},
            {"409", "stale revision on a mutation"},
            {"422", "no-arbitrage constraint d < 1+r < u violated"}}},
          {"routes",
           {route("GET", "/v1/schema", "none", "this document"),
            route("POST", "/v1/projects", "{project: Project} | {path: string}",
                  "{session_id, revision, project}"),
            route("GET", "/v1/projects/{id}", "none", "{session_id, revision, project}"),
            route("PUT", "/v1/projects/{id}", "{revision: int, project: Project}",
                  "{session_id, revision, project}"),
            route("POST", "/v1/projects/{id}/valuation", "PortfolioValuationRequest",
                  "OptionValuation report"),
            route("POST", "/v1/projects/{id}/whatif",
                  "{request: PortfolioValuationRequest, range?: {lo, hi, step}}",
                  "{engine, request, range, rows}"),
            route("GET",
                  "/v1/projects/{id}/lattice?portfolio=&horizon=&u=&d=&r=&vs=&horizons=&"
                  "convention=&style=&base=",
                  "none", "{horizon, levels: [[{j, s, f}]]}"),
            route("POST", "/v1/projects/{id}/save", "{path: string}",
                  "{session_id, revision, path}")}}};
}

std::shared_ptr<Service::Session> Service::find(const std::string& id) {
  std::lock_guard lock(sessions_mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw NotFound("unknown session '" + id + "'");
  return it->second;
}

std::pair<std::shared_ptr<const Project>, std::int64_t> Service::snapshot(Session& session) {
  std::lock_guard lock(session.mutex);
  return {session.project, session.revision};
}

Response Service::handle(const Request& request) {
  try {
    std::string path = request.path;
    std::string query;
    if (auto q = path.find('?'); q != std::string::npos) {
      query = path.substr(q + 1);
      path.resize(q);
    }
    const auto parts = split_path(path);
    const auto& m = request.method;
    if (parts.empty() || parts[0] != "v1") throw NotFound("no route for " + request.path);

    if (parts.size() == 2 && parts[1] == "schema" && m == "GET") {
      return json_response(200, route_schema());
    }
    if (parts.size() >= 2 && parts[1] == "projects") {
      if (parts.size() == 2 && m == "POST") return create(parse_body(request.body));
      if (parts.size() == 3) {
        if (m == "GET") return read(parts[2]);
        if (m == "PUT") return update(parts[2], parse_body(request.body));
      }
      if (parts.size() == 4) {
        const auto& id = parts[2];
        const auto& action = parts[3];
        if (action == "valuation" && m == "POST") return value(id, parse_body(request.body));
        if (action == "whatif" && m == "POST") return whatif(id, parse_body(request.body));
        if (action == "lattice" && m == "GET") return lattice(id, parse_query(query));
        if (action == "save" && m == "POST") return save(id, parse_body(request.body));
      }
    }
    throw NotFound("no route for " + m + " " + path);
  } catch (...) {
    return current_error();
  }
}

namespace {

Response with_revision(Response r, std::int64_t revision) {
  r.headers[kRevisionHeader] = std::to_string(revision);
  return r;
}

Response project_response(int status, const std::string& id, std::int64_t revision,
                          const Project& project) {
  return with_revision(json_response(status, {{"session_id", id},
                                              {"revision", revision},
                                              {"project", project_to_json(project)}}),
                       revision);
}

}  // namespace

Response Service::create(const Json& body) {
  Project project;
  if (body.is_object() && body.contains("path") && !body.contains("project")) {
    if (!body["path"].is_string()) throw ParseError("/path", "expected a string");
    project = load_project_file(body["path"].get<std::string>());
  } else if (body.is_object() && body.contains("project")) {
    project = decode_project(body["project"]);
  } else {
    throw ParseError("body", "expected {\"project\": ...} or {\"path\": ...}");
  }
  auto session = std::make_shared<Session>();
  session->project = std::make_shared<const Project>(std::move(project));
  std::string id;
  {
    std::lock_guard lock(sessions_mutex_);
    id = "s" + std::to_string(next_session_++);
    sessions_[id] = session;
  }
  return project_response(201, id, 0, *session->project);
}

Response Service::read(const std::string& id) {
  auto session = find(id);
  auto [project, revision] = snapshot(*session);
  return project_response(200, id, revision, *project);
}

Response Service::update(const std::string& id, const Json& body) {
  auto session = find(id);
  if (!body.is_object() || !body.contains("revision") || !body["revision"].is_number_integer()) {
    throw ParseError("/revision", "mutations must carry the integer revision they were based on");
  }
  if (!body.contains("project")) throw ParseError("/project", "missing required field");
  const auto based_on = body["revision"].get<std::int64_t>();
  // Decode outside the lock; a rejected edit never touches the session.
  auto next = std::make_shared<const Project>(decode_project(body["project"]));

  std::lock_guard lock(session->mutex);
  if (based_on != session->revision) {
    auto r = error_response(409, "stale-revision",
                            "revision " + std::to_string(based_on) + " is stale; current is " +
                                std::to_string(session->revision),
                            {{"current_revision", session->revision}});
    return with_revision(std::move(r), session->revision);
  }
  session->project = std::move(next);
  ++session->revision;
  return project_response(200, id, session->revision, *session->project);
}

Response Service::value(const std::string& id, const Json& body) {
  auto session = find(id);
  auto [project, revision] = snapshot(*session);
  try {
    const auto request = request_from_json(body);
    const auto valuation = value_portfolio(request, project->catalog());
    return with_revision(json_response(200, valuation_report(request, valuation)), revision);
  } catch (...) {
    return with_revision(current_error(), revision);
  }
}

Response Service::whatif(const std::string& id, const Json& body) {
  auto session = find(id);
  auto [project, revision] = snapshot(*session);
  try {
    if (!body.is_object() || !body.contains("request")) {
      throw ParseError("/request", "missing required field");
    }
    for (auto it = body.begin(); it != body.end(); ++it) {
      if (it.key() != "request" && it.key() != "range") {
        throw ParseError("/" + it.key(), "unknown field");
      }
    }
    const auto request = request_from_json(body["request"], "/request");
    const SweepRange range =
        body.contains("range") ? sweep_range_from_json(body["range"], "/range") : SweepRange{};
    const auto rows = whatif_sweep(request, project->catalog(), range, 0);
    return with_revision(json_response(200, whatif_report(request, range, rows)), revision);
  } catch (...) {
    return with_revision(current_error(), revision);
  }
}

Response Service::lattice(const std::string& id, const std::map<std::string, std::string>& q) {
  auto session = find(id);
  auto [project, revision] = snapshot(*session);
  try {
    if (!q.contains("portfolio")) throw ParseError("query/portfolio", "missing parameter");
    auto request = default_request(*project, resolve_portfolio(*project, q.at("portfolio")));
    auto& s = request.settings;
    if (q.contains("vs")) s.v_s = query_number(q, "vs");
    if (q.contains("u")) s.u = query_number(q, "u");
    if (q.contains("d")) s.d = query_number(q, "d");
    if (q.contains("r")) s.r = query_number(q, "r");
    if (q.contains("horizons")) s.horizons = static_cast<int>(query_number(q, "horizons"));
    if (q.contains("convention")) s.convention = parse_convention(q.at("convention"));
    if (q.contains("style")) s.style = parse_style(q.at("style"));
    if (q.contains("base")) {
      std::vector<double> values;
      std::istringstream in(q.at("base"));
      std::string cell;
      while (std::getline(in, cell, ',')) {
        std::map<std::string, std::string> one{{"base", cell}};
        values.push_back(query_number(one, "base"));
      }
      const auto& members = request.portfolio.dad_ids;
      if (values.size() != members.size()) {
        throw ValidationError("base gives " + std::to_string(values.size()) + " values for " +
                              std::to_string(members.size()) + " DADs");
      }
      request.base_values.clear();
      for (std::size_t i = 0; i < members.size(); ++i) request.base_values[members[i]] = values[i];
    }
    const auto valuation = value_portfolio(request, project->catalog());
    int horizon = valuation.horizons;
    if (q.contains("horizon")) horizon = static_cast<int>(query_number(q, "horizon"));
    if (horizon < 1 || horizon > valuation.horizons) {
      throw IndexError("horizon " + std::to_string(horizon) + " outside 1.." +
                       std::to_string(valuation.horizons));
    }
    Json doc = lattice_to_json(valuation.grids[static_cast<std::size_t>(horizon - 1)]);
    doc["portfolio_id"] = valuation.portfolio_id;
    doc["price"] = valuation.per_horizon_prices[static_cast<std::size_t>(horizon - 1)];
    doc["recommendation"] = to_string(valuation.recommendation);
    return with_revision(json_response(200, doc), revision);
  } catch (...) {
    return with_revision(current_error(), revision);
  }
}

Response Service::save(const std::string& id, const Json& body) {
  auto session = find(id);
  auto [project, revision] = snapshot(*session);
  try {
    if (!body.is_object() || !body.contains("path") || !body["path"].is_string()) {
      throw ParseError("/path", "expected a string");
    }
    const auto path = body["path"].get<std::string>();
    save_project_file(path, *project);
    return with_revision(
        json_response(200, {{"session_id", id}, {"revision", revision}, {"path", path}}),
        revision);
  } catch (...) {
    return with_revision(current_error(), revision);
  }
}

}  // namespace dcbam::service
