#include "cli.hpp"

#include <unistd.h>

#include <CLI11.hpp>
#include <httplib.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "veracity/render.hpp"
#include "veracity/service.hpp"
#include "veracity/syntax.hpp"
#include "veracity/trust.hpp"

namespace veracity {

namespace {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) throw IoError("cannot write " + path.string());
}

struct Painter {
  bool on;
  std::string operator()(const std::string& text, const char* ansi) const {
    return on ? std::string("\033[") + ansi + "m" + text + "\033[0m" : text;
  }
};

Painter painter_for(const std::ostream& out) {
  const char* env = std::getenv("VERACITY_COLOR");
  bool wanted = !(env && std::string(env) == "0");
  return Painter{wanted && &out == &std::cout && isatty(STDOUT_FILENO)};
}

TrustEnv load_trust(const std::vector<std::string>& files) {
  TrustEnv env;
  for (const auto& f : files)
    for (auto& rel : parse_trust(read_file(f))) env.add(std::move(rel));
  return env;
}

// "1/5 (0.2)", or just "1" for whole numbers.
std::string describe_weight(const Weight& w) {
  std::string frac = w.to_fraction();
  if (frac.find('/') == std::string::npos) return frac;
  auto dec = exact_decimal(w.value());
  return dec ? frac + " (" + *dec + ")" : frac;
}

std::string join_path(const std::vector<ActorId>& path) {
  std::string out;
  for (const auto& a : path) out += (out.empty() ? "" : " -> ") + a.name();
  return out;
}

struct RenderFlags {
  std::string format = "latex";
  double scale = 1.0;
  bool flat = false;
  std::string vocab_file;
};

void add_render_flags(CLI::App* cmd, RenderFlags& f, bool machine_allowed) {
  std::vector<std::string> formats = {"latex", "nl"};
  if (machine_allowed) formats.push_back("machine");
  cmd->add_option("--format", f.format, "Output format")->check(CLI::IsMember(formats));
  cmd->add_option("--scale", f.scale, "LaTeX scale factor")->check(CLI::PositiveNumber);
  cmd->add_flag("--flat-claims", f.flat, "Do not parenthesize compound claims in LaTeX");
  cmd->add_option("--vocab", f.vocab_file, "Display names for the English rendering (name = text)");
}

std::string render_with(const ProofTree& tree, const RenderFlags& f, const Vocabulary& vocab) {
  if (f.format == "nl") return render_nl(tree, vocab);
  if (f.format == "machine") return render_machine(tree);
  return render_latex(tree, LatexOptions{f.scale, !f.flat});
}

int cmd_check(const std::string& file, const std::vector<std::string>& trust_files, bool as_json,
              std::ostream& out) {
  ProofTree tree = parse_machine(read_file(file));
  TrustEnv env = load_trust(trust_files);
  CheckReport report = check(tree, env);
  if (as_json) {
    nlohmann::json j = {{"ok", report.ok}, {"violations", nlohmann::json::array()}};
    for (const auto& v : report.violations) {
      j["violations"].push_back(
          {{"path", path_to_string(v.path)}, {"code", std::string(to_string(v.code))}, {"message", v.message}});
    }
    out << j.dump(2) << "\n";
    return report.ok ? 0 : 1;
  }
  Painter paint = painter_for(out);
  if (report.ok) {
    out << paint("OK", "32") << "\n";
    return 0;
  }
  for (const auto& v : report.violations) {
    out << path_to_string(v.path) << ": " << paint(std::string(to_string(v.code)), "31") << ": " << v.message
        << "\n";
  }
  return 1;
}

int cmd_search(const std::string& goal_text, const std::string& config_file, const RenderFlags& flags,
               const std::string& out_dir, std::ostream& out, std::ostream& err) {
  GoalSpec spec = parse_goal(goal_text);
  StepConfig cfg = config_file.empty() ? StepConfig{} : parse_config(read_file(config_file));
  Vocabulary vocab = flags.vocab_file.empty() ? Vocabulary{} : parse_vocabulary(read_file(flags.vocab_file));
  auto proofs = search(cfg, to_goal(spec));

  std::string count = std::to_string(proofs.size()) + (proofs.size() == 1 ? " proof" : " proofs");
  if (out_dir.empty()) {
    for (std::size_t i = 0; i < proofs.size(); ++i) {
      if (i > 0) out << "\n";
      out << render_with(proofs[i], flags, vocab);
    }
    err << count << "\n";
    return 0;
  }
  std::filesystem::create_directories(out_dir);
  const char* ext = flags.format == "latex" ? ".tex" : flags.format == "nl" ? ".nl.tex" : ".vproof";
  for (std::size_t i = 0; i < proofs.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "proof-%03zu", i + 1);
    write_file(std::filesystem::path(out_dir) / (std::string(name) + ext), render_with(proofs[i], flags, vocab));
  }
  out << count << "\n";
  return 0;
}

int cmd_trust(const std::string& file, const std::string& relation, const std::string& from,
              const std::string& to, const std::vector<std::string>& path, std::ostream& out,
              std::ostream& err) {
  auto rels = parse_trust(read_file(file));
  const TrustRelation* rel = nullptr;
  if (relation.empty()) {
    if (rels.size() != 1) {
      err << "error: " << file << " holds " << rels.size() << " relations; pick one with --relation\n";
      return 2;
    }
    rel = &rels.front();
  } else {
    for (const auto& r : rels)
      if (r.name() == relation) rel = &r;
    if (!rel) {
      err << "error: no relation '" << relation << "' in " << file << "\n";
      return 2;
    }
  }

  if (!path.empty()) {
    std::vector<ActorId> actors;
    for (const auto& p : path) actors.emplace_back(p);
    if ((!from.empty() && actors.front().name() != from) || (!to.empty() && actors.back().name() != to)) {
      err << "error: --path must run from --from to --to\n";
      return 2;
    }
    out << describe_weight(path_weight(*rel, actors)) << "\n";
    return 0;
  }
  if (from.empty() || to.empty()) {
    err << "error: trust needs --from and --to, or --path\n";
    return 2;
  }
  auto best = best_trust(*rel, ActorId(from), ActorId(to));
  if (!best) {
    out << "no trust path from " << from << " to " << to << "\n";
    return 1;
  }
  out << describe_weight(best->weight) << "\n" << "path: " << join_path(best->path) << "\n";
  return 0;
}

int cmd_serve(const std::string& host, int port, const std::string& static_dir, const std::string& snapshot,
              std::ostream& out, std::ostream& err) {
  SessionStore store(snapshot.empty() ? std::nullopt : std::optional<std::string>(snapshot));
  httplib::Server server;
  // httplib's default adds SO_REUSEPORT, which lets two servers share a port silently.
  server.set_socket_options([](socket_t sock) {
    int yes = 1;
    ::setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const char*>(&yes), sizeof(yes));
  });
  register_routes(server, store);
  if (!static_dir.empty() && !server.set_mount_point("/", static_dir)) {
    err << "error: cannot serve static files from " << static_dir << "\n";
    return 3;
  }
  int bound = port;
  if (port == 0) {
    bound = server.bind_to_any_port(host);
    if (bound < 0) bound = 0;
  } else if (!server.bind_to_port(host, port)) {
    bound = 0;
  }
  if (bound == 0) {
    err << "error: cannot bind " << host << ":" << port << "\n";
    return 3;
  }
  out << "listening on http://" << host << ":" << bound << std::endl;
  return server.listen_after_bind() ? 0 : 3;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Veracity logic proof checker, searcher and renderer", "veracity"};
  app.require_subcommand(1);

  auto* check_cmd = app.add_subcommand("check", "Check a .vproof file");
  std::string proof_file;
  std::vector<std::string> trust_files;
  bool as_json = false;
  check_cmd->add_option("proof", proof_file, "Proof in the machine format")->required();
  check_cmd->add_option("--trust", trust_files, "Trust relations in scope (repeatable)");
  check_cmd->add_flag("--json", as_json, "Print the report as JSON");

  auto* search_cmd = app.add_subcommand("search", "Enumerate proofs of a goal");
  std::string goal_text, config_file, out_dir;
  RenderFlags search_flags;
  search_flags.format = "machine";
  search_cmd->add_option("--goal", goal_text, "Goal judgement, e.g. \"_ ^ a1 in C /\\ C\"")->required();
  search_cmd->add_option("--config", config_file, "Search configuration (.vcfg)");
  search_cmd->add_option("--out", out_dir, "Directory for proof-001... files");
  add_render_flags(search_cmd, search_flags, true);

  auto* render_cmd = app.add_subcommand("render", "Render a .vproof file");
  std::string render_file;
  RenderFlags render_flags;
  render_cmd->add_option("proof", render_file, "Proof in the machine format")->required();
  add_render_flags(render_cmd, render_flags, false);

  auto* trust_cmd = app.add_subcommand("trust", "Weigh trust paths in a .vtrust file");
  std::string trust_file, relation, from, to;
  std::vector<std::string> path;
  trust_cmd->add_option("file", trust_file, "Trust relation file")->required();
  trust_cmd->add_option("--relation", relation, "Relation to use when the file has several");
  trust_cmd->add_option("--from", from, "Trusting actor");
  trust_cmd->add_option("--to", to, "Trusted actor");
  trust_cmd->add_option("--path", path, "Explicit path p,q,r")->delimiter(',');

  auto* serve_cmd = app.add_subcommand("serve", "Host the interactive session API");
  std::string host = "127.0.0.1", static_dir, snapshot;
  int port = 8080;
  serve_cmd->add_option("--host", host, "Interface to bind");
  serve_cmd->add_option("--port", port, "Port (0 picks a free one)")->check(CLI::Range(0, 65535));
  serve_cmd->add_option("--static", static_dir, "Directory of UI assets to serve at /");
  serve_cmd->add_option("--snapshot", snapshot, "File sessions are saved to and restored from");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*check_cmd) return cmd_check(proof_file, trust_files, as_json, out);
    if (*search_cmd) return cmd_search(goal_text, config_file, search_flags, out_dir, out, err);
    if (*render_cmd) {
      ProofTree tree = parse_machine(read_file(render_file));
      Vocabulary vocab =
          render_flags.vocab_file.empty() ? Vocabulary{} : parse_vocabulary(read_file(render_flags.vocab_file));
      out << render_with(tree, render_flags, vocab);
      return 0;
    }
    if (*trust_cmd) return cmd_trust(trust_file, relation, from, to, path, out, err);
    if (*serve_cmd) return cmd_serve(host, port, static_dir, snapshot, out, err);
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace veracity
