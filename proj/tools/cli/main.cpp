#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "commands.hpp"
#include "json_codec.hpp"

namespace {

using schwarzian::cli::CommandResult;

std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void setup_logging() {
  auto logger = spdlog::stderr_color_st("schwarzian");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  spdlog::set_level(spdlog::level::warn);
  if (const char* env = std::getenv("SCHWARZIAN_LOG")) spdlog::set_level(spdlog::level::from_str(env));
}

int emit(const CommandResult& r, const std::string& output) {
  if (!r.err.empty()) std::cerr << r.err;
  if (r.out.empty()) return r.exit_code;
  if (output.empty() || output == "-") {
    std::cout << r.out;
  } else {
    std::ofstream out(output, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write " << output << "\n";
      return 2;
    }
    out << r.out;
  }
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();
  CLI::App app{"Exact meromorphic solutions of autonomous Schwarzian equations"};
  app.require_subcommand(1);

  schwarzian::cli::CliOptions opt;
  std::string output, z0_text, beta_text;
  std::optional<int> tau_index;
  app.add_option("--output,-o", output, "Write the report to this file instead of stdout");

  const auto add_sampling = [&](CLI::App* sub) {
    sub->add_option("--samples", opt.samples, "Number of generic sample points")->check(CLI::PositiveNumber);
    sub->add_option("--tol", opt.tolerance, "Relative residual tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--seed", opt.seed, "Sampling seed");
  };

  std::string eq_path, sol_path, points_text = "[]", inv_path;

  auto* classify = app.add_subcommand("classify", "Detect the canonical kind of an equation");
  classify->add_option("equation", eq_path, "Equation document (- for stdin)")->required();

  auto* solve = app.add_subcommand("solve", "Construct and certify a solution");
  solve->add_option("equation", eq_path, "Equation document (- for stdin)")->required();
  solve->add_option("--z0", z0_text, "Translation z0 as [re, im]");
  solve->add_option("--beta", beta_text, "Phase beta for kind V as [re, im]");
  solve->add_option("--tau-index", tau_index, "Kind I: 1-based index into the sorted tau of the pole value a")
      ->check(CLI::Range(1, 4));
  add_sampling(solve);

  auto* verify = app.add_subcommand("verify", "Residual check of a solution against an equation");
  verify->add_option("equation", eq_path, "Equation document")->required();
  verify->add_option("solution", sol_path, "Solution document")->required();
  add_sampling(verify);

  auto* eval = app.add_subcommand("eval", "Evaluate u, u', u'', u''' at points");
  eval->add_option("solution", sol_path, "Solution document (- for stdin)")->required();
  eval->add_option("--points", points_text, "JSON array of complex points, e.g. [[0,0],[0.5,0.1]]");

  auto* periods = app.add_subcommand("periods", "Half-periods and stationary values for invariants");
  periods->add_option("invariants", inv_path, "{\"g2\": .., \"g3\": ..} document (- for stdin)")->required();

  auto* generate = app.add_subcommand("generate", "Kind I equation and solution from (tau, i, b)");
  generate->add_option("request", inv_path, "{\"tau\": [..], \"i\": .., \"b\": ..} document (- for stdin)")->required();

  auto* selftest = app.add_subcommand("selftest", "Run the acceptance suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help and --version exit 0; every usage error is invalid input
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (!z0_text.empty()) {
      opt.z0 = schwarzian::cli::complex_from_json(schwarzian::cli::parse_document(z0_text), "--z0");
    }
    if (!beta_text.empty()) {
      opt.beta = schwarzian::cli::complex_from_json(schwarzian::cli::parse_document(beta_text), "--beta");
    }
    opt.tau_index = tau_index;

    CommandResult r;
    if (*classify) {
      r = schwarzian::cli::cmd_classify(read_input(eq_path));
    } else if (*solve) {
      r = schwarzian::cli::cmd_solve(read_input(eq_path), opt);
    } else if (*verify) {
      r = schwarzian::cli::cmd_verify(read_input(eq_path), read_input(sol_path), opt);
    } else if (*eval) {
      r = schwarzian::cli::cmd_eval(read_input(sol_path), points_text);
    } else if (*periods) {
      r = schwarzian::cli::cmd_periods(read_input(inv_path));
    } else if (*generate) {
      r = schwarzian::cli::cmd_generate(read_input(inv_path));
    } else if (*selftest) {
      r = schwarzian::cli::cmd_selftest();
    }
    return emit(r, output);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
