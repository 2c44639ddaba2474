#pragma once

// Command-line front end. Every command writes to the given streams and
// returns a process exit code, so tests can drive the tool in-process.

#include "floorpoly/equidist.hpp"
#include "floorpoly/f_construction.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace floorpoly::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitVerificationFailure = 1,
  kExitUsage = 2,
  kExitPrecisionFailure = 3,
};

inline constexpr int kReportSchemaVersion = 1;

enum class Format { text, json };

struct ExpandOptions {
  unsigned n = 1;
  bool certify = false;
  Format format = Format::text;
};

struct VerifyOptions {
  std::string suite;  // identity | partition | lemma1
  unsigned n = 4;
  unsigned k = 3;
  std::uint64_t l = 1;
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  Format format = Format::text;
};

struct FklOptions {
  unsigned k = 1;
  std::uint64_t l = 1;
  std::vector<std::string> y;
  Format format = Format::text;
};

struct WitnessOptions {
  unsigned k = 3;
  long m = 1;
  std::size_t samples = 1000000;
  std::uint64_t seed = 1;
  WitnessTarget target = WitnessTarget::g_k;
  unsigned jobs = 1;
  Format format = Format::text;
};

struct DistOptions {
  SequenceSpec spec;
  VerdictThresholds thresholds;
  std::optional<std::string> out_path;
  std::optional<std::string> csv_path;
  Format format = Format::text;
};

int cmd_expand(const ExpandOptions& o, std::ostream& out, std::ostream& err);
int cmd_verify(const VerifyOptions& o, std::ostream& out, std::ostream& err);
int cmd_fkl(const FklOptions& o, std::ostream& out, std::ostream& err);
int cmd_witness(const WitnessOptions& o, std::ostream& out, std::ostream& err);
int cmd_dist(const DistOptions& o, std::ostream& out, std::ostream& err);

/// Renders the JSON document written by `dist`.
std::string dist_report_json(const DistOptions& o, const TwoScaleTrend& trend, const GeneratedSequence& samples);
/// One value per line, 17 significant digits.
std::string samples_csv(const GeneratedSequence& samples);

/// Parses `args` (without the program name) and runs the selected command.
/// FLOORPOLY_PRECISION_CAP and FLOORPOLY_JOBS supply defaults for the
/// precision cap and worker count when the flags are absent.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace floorpoly::cli
