#include "veracity/service.hpp"

#include <httplib.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "veracity/syntax.hpp"

namespace veracity {

using nlohmann::json;

namespace {

Response json_response(int status, const json& body) {
  return Response{status, "application/json", body.dump(2)};
}

Response problem(int status, const std::string& code, const std::string& message, const std::string& path) {
  return json_response(status, {{"code", code}, {"message", message}, {"path", path}});
}

int status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::InvalidConfig:
    case ErrorCode::WeightOutOfRange: return 400;
    default: return 422;
  }
}

json parse_body(const std::string& body) {
  if (body.empty()) return json::object();
  try {
    return json::parse(body);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, std::string("request body is not JSON: ") + e.what());
  }
}

std::string string_field(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_string()) {
    throw Error(ErrorCode::InvalidConfig, std::string("request needs a string '") + key + "'");
  }
  return it->get<std::string>();
}

std::optional<std::vector<std::size_t>> parse_hole(const std::string& id) {
  if (id == "root") return std::vector<std::size_t>{};
  std::vector<std::size_t> path;
  std::stringstream in(id);
  std::string part;
  while (std::getline(in, part, '.')) {
    if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos || part.size() > 6) {
      return std::nullopt;
    }
    path.push_back(std::stoul(part));
  }
  if (path.empty()) return std::nullopt;
  return path;
}

json holes_json(const PartialProof& p) {
  json out = json::array();
  for (const auto& path : p.hole_paths()) {
    out.push_back({{"id", path_to_string(path)}, {"goal", goal_to_json(p.at(path)->goal())}});
  }
  return out;
}

Response not_found(const std::string& what, const std::string& path) {
  return problem(404, "NotFound", what, path);
}

template <class F>
Response guarded(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    return error_response(e, path);
  } catch (const json::exception& e) {
    return problem(400, "ParseError", e.what(), path);
  }
}

}  // namespace

Response error_response(const Error& e, const std::string& path) {
  return problem(status_for(e.code()), std::string(to_string(e.code())), e.what(), path);
}

SessionStore::SessionStore(std::optional<std::string> snapshot_path) : snapshot_path_(std::move(snapshot_path)) {
  if (snapshot_path_ && std::filesystem::exists(*snapshot_path_)) load();
}

std::size_t SessionStore::size() const {
  std::lock_guard lock(mu_);
  return sessions_.size();
}

std::shared_ptr<SessionStore::Session> SessionStore::find(const std::string& id) const {
  std::lock_guard lock(mu_);
  auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second;
}

json SessionStore::describe(const Session& s) {
  const PartialProof& current = s.history.back();
  return {{"id", s.id},
          {"goal", goal_to_json(s.goal)},
          {"config", config_to_json(s.config)},
          {"proof", partial_to_json(current)},
          {"complete", current.complete()},
          {"holes", holes_json(current)},
          {"steps", s.history.size() - 1}};
}

Response SessionStore::create(const std::string& body) {
  return guarded("/sessions", [&] {
    json req = parse_body(body);
    GoalSpec spec = parse_goal(string_field(req, "goal"));
    StepConfig cfg = config_from_json(req.contains("config") ? req["config"] : json());
    auto s = std::make_shared<Session>(to_goal(spec), std::move(cfg));
    s->history.push_back(PartialProof::hole(s->goal));
    {
      std::lock_guard lock(mu_);
      s->id = "s" + std::to_string(next_id_++);
      sessions_[s->id] = s;
    }
    json out = describe(*s);
    save();
    return json_response(201, out);
  });
}

Response SessionStore::get(const std::string& id) {
  std::string path = "/sessions/" + id;
  auto s = find(id);
  if (!s) return not_found("no session '" + id + "'", path);
  std::lock_guard lock(s->mu);
  return json_response(200, describe(*s));
}

Response SessionStore::holes(const std::string& id) {
  std::string path = "/sessions/" + id + "/holes";
  auto s = find(id);
  if (!s) return not_found("no session '" + id + "'", path);
  std::lock_guard lock(s->mu);
  return json_response(200, {{"holes", holes_json(s->history.back())}});
}

Response SessionStore::rules(const std::string& id, const std::string& hole) {
  std::string path = "/sessions/" + id + "/holes/" + hole + "/rules";
  auto s = find(id);
  if (!s) return not_found("no session '" + id + "'", path);
  return guarded(path, [&] {
    std::lock_guard lock(s->mu);
    auto hp = parse_hole(hole);
    const PartialProof* target = hp ? s->history.back().at(*hp) : nullptr;
    if (!target || !target->is_hole()) return not_found("no open hole '" + hole + "'", path);
    json candidates = json::array();
    auto options = step(s->config, target->goal());
    for (std::size_t i = 0; i < options.size(); ++i) {
      const auto* n = options[i].as_node();
      json premises = json::array();
      for (const auto& p : n->premises) premises.push_back(goal_to_json(p.goal()));
      candidates.push_back({{"candidate", i},
                            {"rule", std::string(to_string(n->instance.name()))},
                            {"params", partial_to_json(options[i])["params"]},
                            {"premises", std::move(premises)}});
    }
    return json_response(200, {{"hole", hole}, {"goal", goal_to_json(target->goal())}, {"candidates", candidates}});
  });
}

Response SessionStore::apply(const std::string& id, const std::string& hole, const std::string& body) {
  std::string path = "/sessions/" + id + "/holes/" + hole + "/apply";
  auto s = find(id);
  if (!s) return not_found("no session '" + id + "'", path);
  Response out = guarded(path, [&] {
    json req = parse_body(body);
    auto c = req.find("candidate");
    if (c == req.end() || !c->is_number_unsigned()) {
      throw Error(ErrorCode::InvalidConfig, "request needs a non-negative integer 'candidate'");
    }
    std::vector<std::string> bind;
    if (req.contains("bind")) bind = req["bind"].get<std::vector<std::string>>();

    std::lock_guard lock(s->mu);
    auto hp = parse_hole(hole);
    const PartialProof& current = s->history.back();
    const PartialProof* target = hp ? current.at(*hp) : nullptr;
    if (!target || !target->is_hole()) return not_found("no open hole '" + hole + "'", path);
    auto options = step(s->config, target->goal());
    std::size_t index = c->get<std::size_t>();
    if (index >= options.size()) {
      return problem(404, "NotFound",
                     "candidate " + std::to_string(index) + " out of range (" + std::to_string(options.size()) +
                         " available)",
                     path);
    }
    PartialProof chosen = rebind_candidate(options[index], bind);
    s->history.push_back(current.replaced(*hp, std::move(chosen)));
    return json_response(200, describe(*s));
  });
  if (out.status == 200) save();
  return out;
}

Response SessionStore::undo(const std::string& id) {
  std::string path = "/sessions/" + id + "/undo";
  auto s = find(id);
  if (!s) return not_found("no session '" + id + "'", path);
  Response out;
  {
    std::lock_guard lock(s->mu);
    if (s->history.size() == 1) return problem(409, "NothingToUndo", "session is at its initial state", path);
    s->history.pop_back();
    out = json_response(200, describe(*s));
  }
  save();
  return out;
}

Response SessionStore::export_proof(const std::string& id, const std::map<std::string, std::string>& query) {
  std::string path = "/sessions/" + id + "/export";
  auto s = find(id);
  if (!s) return not_found("no session '" + id + "'", path);
  return guarded(path, [&]() -> Response {
    auto param = [&](const char* key, const std::string& fallback) {
      auto it = query.find(key);
      return it == query.end() ? fallback : it->second;
    };
    std::string format = param("format", "latex");
    if (format != "latex" && format != "nl" && format != "machine") {
      throw Error(ErrorCode::InvalidConfig, "format must be latex, nl or machine");
    }
    std::lock_guard lock(s->mu);
    const PartialProof& current = s->history.back();
    if (!current.complete()) {
      return problem(409, "Incomplete", std::to_string(current.hole_count()) + " hole(s) still open", path);
    }
    TrustEnv env = s->config.trust_env();
    auto tree = to_proof_tree(current, env);
    if (!tree || !check(*tree, env).ok) throw Error(ErrorCode::InvalidTree, "the completed proof does not check");
    if (format == "machine") return Response{200, "application/json", render_machine(*tree)};
    if (format == "nl") {
      return Response{200, "text/plain; charset=utf-8", render_nl(*tree, parse_vocabulary(param("vocab", "")))};
    }
    LatexOptions opts;
    std::string scale = param("scale", "1");
    try {
      std::size_t used = 0;
      opts.scale = std::stod(scale, &used);
      if (used != scale.size() || !(opts.scale > 0)) throw std::invalid_argument(scale);
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidConfig, "scale must be a positive number");
    }
    std::string flat = param("flat", "0");
    opts.parenthesize_claims = flat == "0" || flat == "false";
    return Response{200, "text/plain; charset=utf-8", render_latex(*tree, opts)};
  });
}

Response SessionStore::search(const std::string& body) {
  return guarded("/search", [&] {
    json req = parse_body(body);
    GoalSpec spec = parse_goal(string_field(req, "goal"));
    StepConfig cfg = config_from_json(req.contains("config") ? req["config"] : json());
    std::string format = req.value("format", "machine");
    if (format != "latex" && format != "nl" && format != "machine") {
      throw Error(ErrorCode::InvalidConfig, "format must be latex, nl or machine");
    }
    auto proofs = veracity::search(cfg, to_goal(spec));
    json list = json::array();
    for (const auto& p : proofs) {
      if (format == "machine") {
        list.push_back(proof_to_json(p));
      } else if (format == "nl") {
        list.push_back(render_nl(p));
      } else {
        list.push_back(render_latex(p));
      }
    }
    return json_response(200, {{"count", proofs.size()}, {"proofs", std::move(list)}});
  });
}

void SessionStore::save() const {
  if (!snapshot_path_) return;
  std::lock_guard save_lock(save_mu_);
  json doc = {{"next_id", 0}, {"sessions", json::array()}};
  {
    std::lock_guard lock(mu_);
    doc["next_id"] = next_id_;
    for (const auto& [id, s] : sessions_) {
      std::lock_guard slock(s->mu);
      json history = json::array();
      for (const auto& p : s->history) history.push_back(partial_to_json(p));
      doc["sessions"].push_back({{"id", id},
                                 {"goal", goal_to_json(s->goal)},
                                 {"config", config_to_json(s->config)},
                                 {"history", std::move(history)}});
    }
  }
  std::string tmp = *snapshot_path_ + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    out << doc.dump(1) << "\n";
    if (!out) throw Error(ErrorCode::InvalidConfig, "cannot write snapshot " + tmp);
  }
  std::filesystem::rename(tmp, *snapshot_path_);
}

void SessionStore::load() {
  std::ifstream in(*snapshot_path_);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, "snapshot " + *snapshot_path_ + " is not JSON: " + e.what());
  }
  next_id_ = doc.value("next_id", std::size_t{1});
  for (const auto& entry : doc.at("sessions")) {
    auto s = std::make_shared<Session>(goal_from_json(entry.at("goal")), config_from_json(entry.at("config")));
    s->id = entry.at("id").get<std::string>();
    for (const auto& p : entry.at("history")) s->history.push_back(partial_from_json(p));
    if (s->history.empty()) throw Error(ErrorCode::ParseError, "session " + s->id + " has no history");
    sessions_[s->id] = s;
  }
}

void register_routes(httplib::Server& server, SessionStore& store) {
  auto send = [](httplib::Response& res, const Response& r) {
    res.status = r.status;
    res.set_content(r.body, r.content_type);
  };
  server.Post("/sessions", [&store, send](const httplib::Request& req, httplib::Response& res) {
    send(res, store.create(req.body));
  });
  server.Get(R"(/sessions/([^/]+))", [&store, send](const httplib::Request& req, httplib::Response& res) {
    send(res, store.get(req.matches[1]));
  });
  server.Get(R"(/sessions/([^/]+)/holes)", [&store, send](const httplib::Request& req, httplib::Response& res) {
    send(res, store.holes(req.matches[1]));
  });
  server.Get(R"(/sessions/([^/]+)/holes/([^/]+)/rules)",
             [&store, send](const httplib::Request& req, httplib::Response& res) {
               send(res, store.rules(req.matches[1], req.matches[2]));
             });
  server.Post(R"(/sessions/([^/]+)/holes/([^/]+)/apply)",
              [&store, send](const httplib::Request& req, httplib::Response& res) {
                send(res, store.apply(req.matches[1], req.matches[2], req.body));
              });
  server.Post(R"(/sessions/([^/]+)/undo)", [&store, send](const httplib::Request& req, httplib::Response& res) {
    send(res, store.undo(req.matches[1]));
  });
  server.Get(R"(/sessions/([^/]+)/export)", [&store, send](const httplib::Request& req, httplib::Response& res) {
    std::map<std::string, std::string> query;
    for (const auto& [k, v] : req.params) query.emplace(k, v);
    send(res, store.export_proof(req.matches[1], query));
  });
  server.Post("/search", [&store, send](const httplib::Request& req, httplib::Response& res) {
    send(res, store.search(req.body));
  });
  server.set_exception_handler([send](const httplib::Request& req, httplib::Response& res, std::exception_ptr ep) {
    try {
      std::rethrow_exception(ep);
    } catch (const Error& e) {
      send(res, error_response(e, req.path));
    } catch (const std::exception& e) {
      send(res, problem(500, "Internal", e.what(), req.path));
    }
  });
}

}  // namespace veracity
