#pragma once

// Command-line front end. Each command loads its inputs, calls one library
// operation and renders the result behind a run manifest.
//
// Exit status: 0 success, 2 invalid input or parameters, 3 dimension
// overflow, 4 numerical failure, 5 file I/O.

#include "cohlab/error.hpp"
#include "cohlab/io.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace cohlab {

enum class Command { kCoherence, kChannel, kExchange, kTypical, kLemma1, kErase, kChernoff, kRates };
enum class Format { kTabular, kStructured };

std::string_view to_string(Command c);

inline constexpr const char* kDimCapEnv = "COHLAB_DIM_CAP";

struct RunConfig {
  Command command = Command::kCoherence;
  std::optional<std::filesystem::path> state;
  std::optional<std::filesystem::path> ensemble;
  std::optional<std::filesystem::path> out;
  Format format = Format::kTabular;

  std::size_t copies = 1;  // n, or n_max for rates
  std::size_t n_min = 1;   // rates only
  double eps = 0.1;
  std::optional<double> delta;  // typical; defaults to eps
  std::optional<std::uint64_t> size;  // N; erase defaults to the formula size
  std::size_t seeds = 5;
  std::uint64_t seed = 0;  // master seed
  std::size_t trials = 1000;
  std::size_t dim = 2;
  double a = 0.5;
  double spread = 1.0;
  std::size_t threads = 1;  // not recorded in the manifest
  std::size_t dim_cap = kDefaultDimensionCap;
};

struct Report {
  Json manifest;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  Json body;
};

int exit_code(ErrorCode code);

// Runs the command; throws cohlab::Error. Sets the process dimension cap
// from config.dim_cap.
Report build_report(const RunConfig& config);

// Tabular: "# key: value" manifest lines, then a CSV header and rows.
// Structured: one JSON document {manifest, report}.
std::string render(const Report& report, Format format);

// build_report + render + write to config.out or `out`. Errors become a
// one-line diagnostic on `err` and the matching exit status; nothing is
// written on failure.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Parses argv (CLI11) and calls run.
int cli_main(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace cohlab
