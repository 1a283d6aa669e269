// Local HTTP server for the what-if UI. Binds to 127.0.0.1 by default; no
// auth, no TLS.

#include <httplib.h>

#include <CLI11.hpp>
#include <iostream>

#include "dcbam/service.hpp"

namespace {

void bind(httplib::Server& server, dcbam::service::Service& service) {
  auto forward = [&service](const char* method) {
    return [&service, method](const httplib::Request& req, httplib::Response& res) {
      std::string path = req.path;
      if (!req.params.empty()) {
        std::string query;
        for (const auto& [key, value] : req.params) {
          if (!query.empty()) query += '&';
          query += httplib::detail::encode_query_param(key) + "=" +
                   httplib::detail::encode_query_param(value);
        }
        path += "?" + query;
      }
      const auto out = service.handle({method, path, req.body});
      res.status = out.status;
      for (const auto& [k, v] : out.headers) {
        if (k != "Content-Type") res.set_header(k, v);
      }
      res.set_content(out.body, "application/json");
    };
  };
  server.Get(R"(/v1/.*)", forward("GET"));
  server.Post(R"(/v1/.*)", forward("POST"));
  server.Put(R"(/v1/.*)", forward("PUT"));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dcbam HTTP service", "dcbam-server"};
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string preload;
  app.add_option("--host", host, "Bind address");
  app.add_option("--port", port, "Port");
  app.add_option("--project", preload, "Open this project as session s1 at startup");
  CLI11_PARSE(app, argc, argv);

  dcbam::service::Service service;
  if (!preload.empty()) {
    nlohmann::json body = {{"path", preload}};
    const auto r = service.handle({"POST", "/v1/projects", body.dump()});
    if (r.status != 201) {
      std::cerr << r.body;
      return 1;
    }
  }
  httplib::Server server;
  bind(server, service);
  std::cerr << "listening on http://" << host << ":" << port << "/v1/\n";
  if (!server.listen(host, port)) {
    std::cerr << "cannot bind " << host << ":" << port << "\n";
    return 1;
  }
  return 0;
}
