#pragma once

// Interactive proof sessions over HTTP. A session holds a goal, a search
// configuration and the history of partial proofs built so far; clients
// list the open holes, ask which rules fit one, apply a candidate and undo.
//
// SessionStore does all the work and is usable without a socket; the
// routes only translate between httplib requests and Response values.

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include <json.hpp>

#include "veracity/render.hpp"

namespace httplib {
class Server;
}

namespace veracity {

struct Response {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;

  nlohmann::json json() const { return nlohmann::json::parse(body); }
};

// {code, message, path} with the HTTP status chosen from the error code.
Response error_response(const Error& e, const std::string& path = "");

class SessionStore {
 public:
  // With a snapshot path, sessions are loaded from it (if it exists) and
  // written back after every change.
  explicit SessionStore(std::optional<std::string> snapshot_path = std::nullopt);

  Response create(const std::string& body);
  Response get(const std::string& id);
  Response holes(const std::string& id);
  Response rules(const std::string& id, const std::string& hole);
  Response apply(const std::string& id, const std::string& hole, const std::string& body);
  Response undo(const std::string& id);
  // format is latex, nl or machine; latex honours `scale` and `flat`, nl a
  // `vocab` text in "name = text" lines.
  Response export_proof(const std::string& id, const std::map<std::string, std::string>& query);
  Response search(const std::string& body);

  std::size_t size() const;

 private:
  struct Session {
    Session(Goal g, StepConfig c) : goal(std::move(g)), config(std::move(c)) {}
    std::mutex mu;
    std::string id;
    Goal goal;
    StepConfig config;
    std::vector<PartialProof> history;  // never empty; back() is current
  };

  std::shared_ptr<Session> find(const std::string& id) const;
  void save() const;
  void load();
  static nlohmann::json describe(const Session& s);

  mutable std::mutex mu_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::size_t next_id_ = 1;
  std::optional<std::string> snapshot_path_;
  mutable std::mutex save_mu_;
};

void register_routes(httplib::Server& server, SessionStore& store);

}  // namespace veracity
