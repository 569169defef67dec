#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>

#include "solvgeo/cli.hpp"

namespace {

bool read_all(const std::string& path, std::string& out) {
  if (path == "-") {
    out.assign(std::istreambuf_iterator<char>(std::cin), {});
    return true;
  }
  std::ifstream in(path);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace solvgeo::cli;

  CLI::App app{"Left-invariant metrics on the complex hyperbolic Lie algebra ch^n"};
  std::optional<std::string> command;
  std::optional<int> n;
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
  std::string input, output = "-", format = "json";
  int jobs = 1;

  std::string names;
  for (Command c : {Command::Canonicalize, Command::Curvature, Command::Ricci, Command::Einstein,
                    Command::Isometric, Command::SolitonCheck, Command::ExtendNilsoliton,
                    Command::RandomMetric, Command::SelfTest})
    names += (names.empty() ? "" : ", ") + to_string(c);

  app.add_option("--command", command, "Default command for jobs without one: " + names);
  app.add_option("--n", n, "Default n for jobs without one")->check(CLI::Range(2, 1 << 16));
  app.add_option("--tol", tol, "Tolerance (default SOLVGEO_TOL, then 1e-9)");
  app.add_option("--seed", seed, "Default seed for random-metric and self-test");
  app.add_option("--input", input, "Job document, or - for stdin");
  app.add_option("--output", output, "Report destination, or - for stdout");
  app.add_option("--jobs", jobs, "Worker threads for batch documents")->check(CLI::PositiveNumber);
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitParse;
  }

  Defaults defaults;
  defaults.command = command;
  defaults.n = n;
  defaults.seed = seed;
  BatchResult result;
  try {
    defaults.tol = resolve_tolerance(tol);
  } catch (const solvgeo::Error& e) {
    std::cerr << e.what() << "\n";
    return kExitParse;
  }

  if (input.empty()) {
    if (!command) {
      std::cerr << "either --input or --command is required\n";
      return kExitParse;
    }
    result = run_flags(defaults);
  } else {
    std::string text;
    if (!read_all(input, text)) {
      std::cerr << "cannot read " << input << "\n";
      return kExitParse;
    }
    result = run_document(text, defaults, jobs);
  }

  if (output == "-") {
    std::cout << result.text;
  } else {
    std::ofstream out(output);
    if (!out) {
      std::cerr << "cannot write " << output << "\n";
      return kExitParse;
    }
    out << result.text;
  }
  return result.exit_code;
}
