#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>

#include "rolemine/io.hpp"
#include "rolemine/pipeline.hpp"

namespace httplib {
class Server;
}

namespace rolemine {

/// Curation state of one work directory. Reads may run concurrently;
/// mutations are serialized and each accepted op is appended to the
/// curation log on disk before the call returns.
class CurationService {
 public:
  /// Throws Error(MissingPrerequisite) if discovery has not run and
  /// Error(StateCorrupt) if its artifacts do not agree.
  explicit CurationService(PipelineConfig config);
  ~CurationService();

  json clusters() const;
  json graph() const;
  /// `id` is a role id or an action/object cluster id. Throws UnknownRole.
  json mentions(std::string_view id, size_t offset = 0, size_t limit = 0) const;

  /// Body is one op object or {"ops": [...]}. All ops apply or none do.
  /// Ops whose op_id was already accepted are skipped.
  json curate(const json& body);

  /// Writes roleset.json and returns it.
  json export_roleset();

  RoleSet roleset() const;
  std::vector<CurationOp> log() const;

  /// Blocks until stop(). Throws Error(PortInUse) if the port is taken.
  void serve(const std::string& host, int port, const std::optional<std::filesystem::path>& static_dir = {});
  /// Binds and returns the port; port 0 picks a free one. Use with listen_after_bind().
  int bind(const std::string& host, int port, const std::optional<std::filesystem::path>& static_dir = {});
  void listen_after_bind();
  /// Blocks until a listen_after_bind() on another thread is accepting.
  void wait_until_ready() const;
  void stop();

 private:
  json role_json(const Role& r, bool with_members) const;
  json mention_json(size_t index) const;
  void persist_log() const;
  void install_routes(const std::optional<std::filesystem::path>& static_dir);

  PipelineConfig config_;
  RoleGraphFile state_;
  json graph_;
  std::vector<CurationOp> ops_;  // as recorded in the curation file
  RoleSet roles_;
  mutable std::shared_mutex mu_;
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace rolemine
