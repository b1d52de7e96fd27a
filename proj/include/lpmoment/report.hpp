#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lpmoment/moments.hpp"
#include "lpmoment/montecarlo.hpp"

namespace lpmoment {

struct ReportOptions {
  TruncationPolicy policy;
  std::optional<MCConfig> mc;  // Monte Carlo column only when set
};

struct ReportRow {
  Dimension n;
  Exponent p;
  double t;
  double f_gamma;
  double f_product;
  double f_product_error;
  std::optional<double> f_mc;
  std::optional<double> mc_std_error;
  double bound;
  double margin;  // bound - f_gamma
  bool bound_ok;
  bool routes_agree;
  std::optional<bool> mc_agrees;

  bool passed() const { return bound_ok && routes_agree && mc_agrees.value_or(true); }
};

/// Evaluates every route for one (n, p). A product that misses its tolerance
/// contributes its best value and achieved bound instead of throwing.
ReportRow evaluate_row(Dimension n, const Exponent& p, const ReportOptions& options);

/// Column order of the CSV output.
const std::vector<std::string>& csv_columns();
std::string csv_header();
std::string to_csv(const ReportRow& row);
/// One JSON object per row, numbers with 17 significant digits.
std::string to_json(const ReportRow& row);

/// "%.17g".
std::string format_double(double v);

/// "5", "2..7" or a comma list of either. Throws std::invalid_argument.
std::vector<std::int64_t> parse_n_list(const std::string& text);
/// Comma-separated exponents ("1,1.5,inf"). Throws std::invalid_argument.
std::vector<Exponent> parse_p_list(const std::string& text);

struct MonotonicityVerdict {
  Dimension n;
  std::optional<bool> lower;  // over grid points in [1, 2], if at least two
  std::optional<bool> upper;  // over grid points in [2, inf], if at least two
};

struct ScanReport {
  std::vector<ReportRow> rows;  // n-major, in input order
  std::vector<MonotonicityVerdict> monotonicity;
  bool passed() const;
};

ScanReport run_scan(const std::vector<std::int64_t>& ns,
                    const std::vector<Exponent>& ps, const ReportOptions& options);

}  // namespace lpmoment
