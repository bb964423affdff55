#pragma once

#include <stdexcept>
#include <string>

namespace brw {

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct IncompatibleSize : Error {
  explicit IncompatibleSize(const std::string& w) : Error(w) {}
};
struct RetryExhausted : Error {
  explicit RetryExhausted(const std::string& w) : Error(w) {}
};
struct TooLarge : Error {
  explicit TooLarge(const std::string& w) : Error(w) {}
};
struct NoCutPoints : Error {
  explicit NoCutPoints(const std::string& w) : Error(w) {}
};
struct Disconnected : Error {
  explicit Disconnected(const std::string& w) : Error(w) {}
};
struct NotInSameComponent : Error {
  explicit NotInSameComponent(const std::string& w) : Error(w) {}
};
struct SolverDivergence : Error {
  explicit SolverDivergence(const std::string& w) : Error(w) {}
};
struct NonPositiveInput : Error {
  explicit NonPositiveInput(const std::string& w) : Error(w) {}
};
struct DegenerateSample : Error {
  explicit DegenerateSample(const std::string& w) : Error(w) {}
};
struct PathTooShort : Error {
  explicit PathTooShort(const std::string& w) : Error(w) {}
};
struct StepTooCoarse : Error {
  explicit StepTooCoarse(const std::string& w) : Error(w) {}
};
struct MissingManifest : Error {
  explicit MissingManifest(const std::string& w) : Error(w) {}
};
struct ConfigError : Error {
  explicit ConfigError(const std::string& w) : Error(w) {}
};

}  // namespace brw
