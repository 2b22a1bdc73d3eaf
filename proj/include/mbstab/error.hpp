#pragma once

#include <stdexcept>
#include <string>

namespace mbstab {

/// Input that violates a documented precondition or file schema.
/// The CLI maps this to exit code 1; everything else is an internal error.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
  ValidationError(std::string stage, const std::string& what)
      : std::runtime_error(what), stage_(std::move(stage)) {}

  /// Pipeline stage that raised the error ("" when raised outside a pipeline).
  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

}  // namespace mbstab
