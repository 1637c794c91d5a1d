// rolemine: command-line driver for the role-mining pipeline.

#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "rolemine/curation.hpp"
#include "rolemine/error.hpp"
#include "rolemine/io.hpp"
#include "rolemine/pipeline.hpp"
#include "rolemine/service.hpp"
#include "rolemine/synth.hpp"

using namespace rolemine;

namespace {

struct StageArgs {
  std::string config;
  std::optional<uint64_t> seed;
  std::optional<double> threshold;
  bool report = false;
  bool verbose = false;
};

PipelineConfig load_config(const StageArgs& a) {
  auto c = PipelineConfig::load(a.config);
  if (a.seed) c.seed = *a.seed;
  if (a.threshold) c.cluster_threshold = *a.threshold;
  c.validate();
  std::filesystem::create_directories(c.work_dir);
  return c;
}

void print_result(const StageResult& r, const StageArgs& a) {
  std::cerr << to_string(r.stage) << ":";
  for (const auto& p : r.outputs) std::cerr << " " << p.string();
  if (!r.diagnostics.empty()) std::cerr << " (" << r.diagnostics.size() << " diagnostics)";
  std::cerr << "\n";
  if (a.verbose) {
    for (const auto& d : r.diagnostics) std::cerr << "  " << d.source << ": " << d.message << "\n";
  }
  if (a.report) std::cout << dump(json{{"stage", to_string(r.stage)}, {"stats", r.stats}});
}

void add_stage_flags(CLI::App* cmd, StageArgs& a) {
  cmd->add_option("-c,--config", a.config, "pipeline config (TOML)")->required();
  cmd->add_option("--seed", a.seed, "override the sampling seed");
  cmd->add_option("--threshold", a.threshold, "override the clustering threshold");
  cmd->add_flag("--report", a.report, "print stage statistics as JSON on stdout");
  cmd->add_flag("-v,--verbose", a.verbose, "list every diagnostic");
}

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::ConfigInvalid: return 2;
    case ErrorCode::MissingPrerequisite: return 3;
    case ErrorCode::PortInUse: return 4;
    case ErrorCode::StateCorrupt: return 5;
    default: return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mine author roles from contributions sections"};
  app.require_subcommand(1);

  StageArgs args;
  std::vector<std::pair<Stage, CLI::App*>> stage_cmds;
  for (auto stage : all_stages()) {
    auto* cmd = app.add_subcommand(std::string(to_string(stage)), "run the " + std::string(to_string(stage)) + " stage");
    add_stage_flags(cmd, args);
    stage_cmds.emplace_back(stage, cmd);
  }
  auto* run_all = app.add_subcommand("run-all", "run every stage in order (eval only when gold is configured)");
  add_stage_flags(run_all, args);

  auto* curate = app.add_subcommand("auto-curate", "curate a discovered synthetic corpus from its templates");
  add_stage_flags(curate, args);

  std::string host = "127.0.0.1";
  int port = 8080;
  std::optional<std::string> static_dir;
  auto* serve = app.add_subcommand("serve", "serve the curation API for a work directory");
  serve->add_option("-c,--config", args.config, "pipeline config (TOML)")->required();
  serve->add_option("--host", host, "bind address");
  serve->add_option("--port", port, "port");
  serve->add_option("--static", static_dir, "directory of the UI bundle");

  SynthOptions synth_opt;
  std::string synth_out;
  auto* synth = app.add_subcommand("synth", "generate a synthetic corpus with gold annotations");
  synth->add_option("-o,--out", synth_out, "output directory (corpus/ and gold.jsonl)")->required();
  synth->add_option("-n,--documents", synth_opt.documents, "number of articles");
  synth->add_option("--seed", synth_opt.seed, "generator seed");

  CLI11_PARSE(app, argc, argv);

  try {
    for (const auto& [stage, cmd] : stage_cmds) {
      if (*cmd) {
        print_result(run_stage(stage, load_config(args)), args);
        return 0;
      }
    }
    if (*run_all) {
      const auto c = load_config(args);
      for (auto stage : all_stages()) {
        if (stage == Stage::Eval && !c.gold) break;
        print_result(run_stage(stage, c), args);
      }
      return 0;
    }
    if (*curate) {
      const auto c = load_config(args);
      const auto state = load_discovery_state(c);
      const auto ops = synthetic_curation(state.state, initial_roleset(state.state), load_stopword_config(c),
                                          load_active_keywords(c));
      write_file_atomic(c.curation_path(), dump(json(ops)));
      std::cerr << "auto-curate: " << ops.size() << " ops -> " << c.curation_path().string() << "\n";
      return 0;
    }
    if (*serve) {
      CurationService service(PipelineConfig::load(args.config));
      std::optional<std::filesystem::path> dir;
      if (static_dir) dir = *static_dir;
      const int bound = service.bind(host, port, dir);
      std::cerr << "serving /api/v1 on http://" << host << ":" << bound << "\n";
      service.listen_after_bind();
      return 0;
    }
    if (*synth) {
      const std::filesystem::path out(synth_out);
      const auto docs = synthesize(synth_opt);
      write_synthetic_corpus(docs, out / "corpus", out / "gold.jsonl");
      std::cerr << "synth: " << docs.size() << " articles -> " << (out / "corpus").string() << "\n";
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
