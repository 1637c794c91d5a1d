#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rolemine {

enum class ErrorCode {
  MalformedInput,
  DegenerateMention,
  NullMention,
  EmptyTable,
  IsolatedCluster,
  UnknownRole,
  NameCollision,
  EmptyTrainingSet,
  ClassWithNoExamples,
  TableMismatch,
  ListFormatInput,
  TraceUnavailable,
  MissingPrerequisite,
  ConfigInvalid,
  StateCorrupt,
  PortInUse,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI, the HTTP service) can map it to an exit status or a
/// response without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace rolemine
