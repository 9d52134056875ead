#pragma once

#include <stdexcept>
#include <string>

namespace tpc {

struct ParamInvalid : std::invalid_argument {
  explicit ParamInvalid(const std::string& what) : std::invalid_argument(what) {}
};

struct MalformedRLL : std::runtime_error {
  explicit MalformedRLL(const std::string& what) : std::runtime_error(what) {}
};

struct DuplicateWindow : std::runtime_error {
  explicit DuplicateWindow(const std::string& what) : std::runtime_error(what) {}
};

struct LengthMismatch : std::invalid_argument {
  explicit LengthMismatch(const std::string& what) : std::invalid_argument(what) {}
};

struct IoError : std::runtime_error {
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace tpc
