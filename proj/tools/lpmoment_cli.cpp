// lpmoment: evaluate, scan and verify the moment functional f(n, p) of the
// unit p-ball.
//
// Exit status: 0 when every verdict passes, 1 when some verdict fails,
// 2 on a usage error.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "lpmoment/report.hpp"
#include "lpmoment/verify.hpp"

namespace {

constexpr int kUsageError = 2;

struct CommonFlags {
  std::string format = "csv";
  std::optional<std::uint64_t> samples;
  std::uint64_t seed = 42;
  std::uint32_t streams = 8;
  std::size_t max_terms = 1'000'000;
  double rel_tol = 1e-10;
};

void add_policy_flags(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--max-terms", flags.max_terms, "Product factor budget")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--rel-tol", flags.rel_tol, "Product relative tolerance")
      ->check(CLI::Range(0.0, 1.0));
}

void add_mc_flags(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--samples", flags.samples, "Monte Carlo pairs")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--seed", flags.seed, "Monte Carlo seed");
  cmd->add_option("--streams", flags.streams, "Independent substreams (must divide samples)")
      ->check(CLI::PositiveNumber);
}

lpmoment::ReportOptions report_options(const CommonFlags& flags) {
  lpmoment::ReportOptions options;
  options.policy = {flags.max_terms, flags.rel_tol, true};
  if (flags.samples) {
    options.mc = lpmoment::MCConfig{*flags.samples, flags.seed, flags.streams};
    options.mc->validate();
  }
  return options;
}

void print_rows(const std::vector<lpmoment::ReportRow>& rows, const std::string& format) {
  if (format == "csv") std::cout << lpmoment::csv_header() << '\n';
  for (const auto& row : rows) {
    std::cout << (format == "csv" ? lpmoment::to_csv(row) : lpmoment::to_json(row))
              << '\n';
  }
}

const char* verdict_text(const std::optional<bool>& v) {
  if (!v) return "n/a";
  return *v ? "pass" : "fail";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Moment functional f(n, p) of the unit p-ball: closed form, "
               "infinite product and Monte Carlo routes"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::string n_text, p_text, suite;

  auto* eval = app.add_subcommand("eval", "Evaluate every route at one (n, p)");
  eval->add_option("--n", n_text, "Dimension")->required();
  eval->add_option("--p", p_text, "Exponent: decimal or inf")->required();
  eval->add_option("--format", flags.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  add_policy_flags(eval, flags);
  add_mc_flags(eval, flags);

  auto* scan = app.add_subcommand("scan", "Evaluate a grid of (n, p)");
  scan->add_option("--n", n_text, "Dimensions: 5, 2..7 or a comma list")->required();
  scan->add_option("--p", p_text, "Comma-separated exponents")->required();
  scan->add_option("--format", flags.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  add_policy_flags(scan, flags);
  add_mc_flags(scan, flags);

  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("suite,--suite", suite, "Suite name (default: all)")
      ->check(CLI::IsMember(lpmoment::suite_names()));
  add_policy_flags(verify, flags);
  add_mc_flags(verify, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    if (*eval) {
      const auto ns = lpmoment::parse_n_list(n_text);
      if (ns.size() != 1) throw std::invalid_argument("eval takes a single --n");
      const auto ps = lpmoment::parse_p_list(p_text);
      if (ps.size() != 1) throw std::invalid_argument("eval takes a single --p");
      const auto row = lpmoment::evaluate_row(lpmoment::Dimension{ns[0]}, ps[0],
                                              report_options(flags));
      print_rows({row}, flags.format);
      return row.passed() ? 0 : 1;
    }

    if (*scan) {
      const auto report = lpmoment::run_scan(lpmoment::parse_n_list(n_text),
                                             lpmoment::parse_p_list(p_text),
                                             report_options(flags));
      print_rows(report.rows, flags.format);
      for (const auto& m : report.monotonicity) {
        std::cerr << "# monotonicity n=" << m.n.value()
                  << " increasing_on_[1,2]=" << verdict_text(m.lower)
                  << " decreasing_on_[2,inf]=" << verdict_text(m.upper) << '\n';
      }
      return report.passed() ? 0 : 1;
    }

    if (suite.empty()) suite = "all";
    lpmoment::VerifyOptions options;
    options.policy = {flags.max_terms, flags.rel_tol, true};
    options.mc = {flags.samples.value_or(1'000'000), flags.seed, flags.streams};
    const auto outcomes = lpmoment::run_suite(suite, options);
    bool all_passed = true;
    for (const auto& o : outcomes) {
      all_passed = all_passed && o.passed;
      std::cout << (o.passed ? "PASS " : "FAIL ") << '[' << o.suite << "] " << o.name;
      if (!o.detail.empty()) std::cout << " (" << o.detail << ')';
      std::cout << '\n';
    }
    std::cout << "overall: " << (all_passed ? "PASS" : "FAIL") << '\n';
    return all_passed ? 0 : 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  }
}
