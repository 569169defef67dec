#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "solvgeo/errors.hpp"

namespace solvgeo::cli {

using Json = nlohmann::ordered_json;

enum class Command {
  Canonicalize,
  Curvature,
  Ricci,
  Einstein,
  Isometric,
  SolitonCheck,
  ExtendNilsoliton,
  RandomMetric,
  SelfTest,
};

std::optional<Command> parse_command(const std::string& name);
std::string to_string(Command command);

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitConditioning = 3;
inline constexpr int kExitParse = 4;

int exit_code(ErrorKind kind);

inline constexpr double kDefaultTolerance = 1e-9;

/// Values a job falls back to when its document leaves them out.
struct Defaults {
  std::optional<std::string> command;
  std::optional<int> n;
  std::optional<std::uint64_t> seed;
  double tol = kDefaultTolerance;
};

/// tol from --tol, then SOLVGEO_TOL, then 1e-9. Throws Error(Parse) for an
/// unreadable or non-positive value.
double resolve_tolerance(const std::optional<double>& flag);

struct JobResult {
  int exit_code = kExitOk;
  Json report;
};

/// Runs one job object. Never throws; failures are reported in the document.
JobResult run_job(const Json& job, const Defaults& defaults);

struct BatchResult {
  int exit_code = kExitOk;  // first failing job, in input order
  std::string text;
};

/// Parses a document holding one job object or an array of jobs and runs
/// them on up to `threads` workers. Reports keep the input order.
BatchResult run_document(const std::string& text, const Defaults& defaults, int threads = 1);

/// Job built from flags only, for runs without an input document.
BatchResult run_flags(const Defaults& defaults);

/// Serializes with doubles at 17 significant digits, two-space indentation.
std::string dump(const Json& value);

}  // namespace solvgeo::cli
