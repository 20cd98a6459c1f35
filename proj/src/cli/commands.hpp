#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rulebasis/perturb.hpp"

namespace rulebasis::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

enum class InputFormat { fimi, csv };
enum class OutputFormat { json, csv };

/// Resolved command-line configuration shared by all subcommands.
struct Config {
  std::string input;
  InputFormat format = InputFormat::csv;
  /// "auto" sniffs the first CSV line; "yes"/"no" force it.
  std::string csv_header = "auto";
  std::optional<std::size_t> max_rows;
  std::string target;
  std::size_t min_support = 1;
  std::size_t delete_count = 1;
  std::size_t runs = 1;
  std::string blockers;
  std::optional<std::uint64_t> seed;
  std::size_t workers = 1;
  std::size_t max_transversals = 0;
  OutputFormat out_format = OutputFormat::json;
  std::string out;
  bool timings = false;
  bool progress = false;
};

/// Parses "topk:K" or "minscore:T".
BlockerPolicy parse_blocker_policy(const std::string& text);

/// Entry point for the `rulebasis` tool. Returns the process exit status:
/// 0 success, 2 usage or configuration error, 1 runtime failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rulebasis::cli
