#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "projclass/expr.hpp"

namespace projclass::cli {

using json = nlohmann::json;

inline constexpr const char* kSchema = "projclass/1";

/// Command-line overrides applied on top of the request's policy block.
struct Options {
  std::string kind;
  std::optional<std::uint64_t> seed;
  std::optional<int> samples;
  std::optional<int> precision;
  std::optional<int> threads;
  std::optional<std::pair<Rational, Rational>> box;
  bool timing = false;
};

struct Issue {
  std::string path;
  std::string message;
};

class InvalidRequest : public std::runtime_error {
 public:
  explicit InvalidRequest(std::vector<Issue> issues);
  const std::vector<Issue>& issues() const { return issues_; }

 private:
  std::vector<Issue> issues_;
};

/// Exit codes.
enum Exit : int { Classified = 0, InputError = 1, Unclassified = 2 };

struct Outcome {
  int exit_code = Classified;
  json report;
};

/// Subcommand names, which double as request kinds except for the
/// analyze- prefix.
const std::vector<std::string>& subcommands();
std::string kind_of_subcommand(const std::string& sub);

/// Runs a parsed request. Invalid requests yield an input-error report.
Outcome run(const json& request, const Options& opts);
/// Parses `text` as JSON first.
Outcome run_text(const std::string& text, const Options& opts);

std::string render_json(const json& report);
std::string render_text(const json& report);

/// Parses "lo,hi".
std::pair<Rational, Rational> parse_box(const std::string& text);

}  // namespace projclass::cli
