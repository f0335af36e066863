#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cli.hpp"

namespace {

using namespace projclass::cli;

bool read_input(const std::string& path, std::string& out) {
  std::ostringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) return false;
    buf << in.rdbuf();
  }
  out = buf.str();
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Classification of two-dimensional projective structures, connections and hydrodynamic systems"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string input = "-";
  std::uint64_t seed = 0;
  int samples = 0, precision = 0, threads = 0;
  std::string box;
  bool text = false, as_json = false, timing = false;

  app.add_option("--input", input, "Request file, '-' for standard input");
  auto* seed_opt = app.add_option("--seed", seed, "Sampling seed");
  auto* samples_opt = app.add_option("--samples", samples, "Sample points per zero test")->check(CLI::Range(1, 4096));
  auto* prec_opt = app.add_option("--precision", precision, "Working precision in bits")->check(CLI::Range(64, 65536));
  auto* box_opt = app.add_option("--box", box, "Default sampling interval \"lo,hi\"");
  auto* threads_opt = app.add_option("--threads", threads, "Sampling threads")->check(CLI::Range(1, 64));
  auto* json_flag = app.add_flag("--json", as_json, "JSON report (default)");
  app.add_flag("--text", text, "Flattened text report")->excludes(json_flag);
  app.add_flag("--timing", timing, "Include wall-clock timings in the report");

  for (const std::string& sub : subcommands()) app.add_subcommand(sub, "Run the " + kind_of_subcommand(sub) + " pipeline");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : InputError;
  }

  Options opts;
  opts.kind = kind_of_subcommand(app.get_subcommands().front()->get_name());
  if (*seed_opt) opts.seed = seed;
  if (*samples_opt) opts.samples = samples;
  if (*prec_opt) opts.precision = precision;
  if (*threads_opt) opts.threads = threads;
  opts.timing = timing;
  if (*box_opt) {
    try {
      opts.box = parse_box(box);
    } catch (const std::exception& e) {
      std::cerr << "--box: " << e.what() << "\n";
      return InputError;
    }
  }

  std::string request;
  if (!read_input(input, request)) {
    std::cerr << "cannot read " << input << "\n";
    return InputError;
  }
  Outcome out = run_text(request, opts);
  if (out.exit_code == InputError) {
    for (const auto& e : out.report["errors"]) {
      std::cerr << "input error at " << e["path"].get<std::string>() << ": " << e["message"].get<std::string>() << "\n";
    }
  } else if (out.exit_code == Unclassified) {
    std::cerr << "unclassified stratum\n";
  }
  std::cout << (text ? render_text(out.report) : render_json(out.report));
  return out.exit_code;
}
