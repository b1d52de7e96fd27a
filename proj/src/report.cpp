#include "lpmoment/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace lpmoment {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

ReportRow evaluate_row(Dimension n, const Exponent& p, const ReportOptions& options) {
  const MomentResult closed = f_gamma(n, p);
  double product = 0.0, product_error = 0.0;
  try {
    const MomentResult prod = f_product(n, p, options.policy);
    product = prod.value;
    product_error = prod.error_estimate;
  } catch (const TruncationError& e) {
    // best_value and achieved_bound refer to P(t); rescale to f.
    product = n.as_double() / 9.0 * e.best_value();
    product_error = product * e.achieved_bound();
  }

  const double bound = moment_bound(n);
  ReportRow row{n,
                p,
                p.t(),
                closed.value,
                product,
                product_error,
                std::nullopt,
                std::nullopt,
                bound,
                bound - closed.value,
                closed.value <= bound + 1e-12,
                std::fabs(closed.value - product) <=
                    product_error + 1e-10 * std::fabs(product),
                std::nullopt};
  if (options.mc) {
    const MCEstimate mc = estimate_f(n, p, *options.mc);
    row.f_mc = mc.mean;
    row.mc_std_error = mc.std_error;
    row.mc_agrees = std::fabs(mc.mean - closed.value) <= 3.0 * mc.std_error;
  }
  return row;
}

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> columns{
      "n",     "p",      "t",        "f_gamma",      "f_product", "f_mc",
      "mc_std_error", "bound", "margin", "bound_ok", "routes_agree", "mc_agrees"};
  return columns;
}

std::string csv_header() {
  std::string out;
  for (const auto& c : csv_columns()) {
    if (!out.empty()) out += ',';
    out += c;
  }
  return out;
}

namespace {

const char* bool_text(bool b) { return b ? "true" : "false"; }

std::string optional_number(const std::optional<double>& v, const char* missing) {
  return v ? format_double(*v) : std::string(missing);
}

}  // namespace

std::string to_csv(const ReportRow& row) {
  std::ostringstream os;
  os << row.n.value() << ',' << row.p.to_string() << ',' << format_double(row.t)
     << ',' << format_double(row.f_gamma) << ',' << format_double(row.f_product)
     << ',' << optional_number(row.f_mc, "") << ','
     << optional_number(row.mc_std_error, "") << ',' << format_double(row.bound)
     << ',' << format_double(row.margin) << ',' << bool_text(row.bound_ok) << ','
     << bool_text(row.routes_agree) << ','
     << (row.mc_agrees ? bool_text(*row.mc_agrees) : "");
  return os.str();
}

std::string to_json(const ReportRow& row) {
  std::ostringstream os;
  os << "{\"n\":" << row.n.value() << ",\"p\":"
     << (row.p.is_infinite() ? std::string("\"inf\"") : row.p.to_string())
     << ",\"t\":" << format_double(row.t)
     << ",\"f_gamma\":" << format_double(row.f_gamma)
     << ",\"f_product\":" << format_double(row.f_product)
     << ",\"f_mc\":" << optional_number(row.f_mc, "null")
     << ",\"mc_std_error\":" << optional_number(row.mc_std_error, "null")
     << ",\"bound\":" << format_double(row.bound)
     << ",\"margin\":" << format_double(row.margin)
     << ",\"verdicts\":{\"bound_ok\":" << bool_text(row.bound_ok)
     << ",\"routes_agree\":" << bool_text(row.routes_agree) << ",\"mc_agrees\":"
     << (row.mc_agrees ? bool_text(*row.mc_agrees) : "null") << "}}";
  return os.str();
}

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string current;
  for (char c : text) {
    if (c == sep) {
      parts.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  parts.push_back(current);
  return parts;
}

std::int64_t parse_integer(const std::string& token) {
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (token.empty() || ec != std::errc() || ptr != token.data() + token.size()) {
    throw std::invalid_argument("cannot parse dimension '" + token + "'");
  }
  return v;
}

}  // namespace

std::vector<std::int64_t> parse_n_list(const std::string& text) {
  std::vector<std::int64_t> out;
  for (const auto& part : split(text, ',')) {
    const auto dots = part.find("..");
    if (dots == std::string::npos) {
      out.push_back(parse_integer(part));
      continue;
    }
    const std::int64_t lo = parse_integer(part.substr(0, dots));
    const std::int64_t hi = parse_integer(part.substr(dots + 2));
    if (lo > hi) throw std::invalid_argument("empty dimension range '" + part + "'");
    if (hi - lo >= Dimension::kMax) {
      throw std::invalid_argument("dimension range too large '" + part + "'");
    }
    for (std::int64_t n = lo; n <= hi; ++n) out.push_back(n);
  }
  for (auto n : out) (void)Dimension{n};  // range check
  return out;
}

std::vector<Exponent> parse_p_list(const std::string& text) {
  std::vector<Exponent> out;
  for (const auto& part : split(text, ',')) {
    try {
      out.push_back(Exponent::parse(part));
    } catch (const std::domain_error& e) {
      throw std::invalid_argument(e.what());
    }
  }
  return out;
}

bool ScanReport::passed() const {
  for (const auto& r : rows) {
    if (!r.passed()) return false;
  }
  for (const auto& m : monotonicity) {
    if (!m.lower.value_or(true) || !m.upper.value_or(true)) return false;
  }
  return true;
}

namespace {

std::optional<bool> portion_verdict(Dimension n, std::vector<Exponent> portion) {
  std::sort(portion.begin(), portion.end(),
            [](const Exponent& a, const Exponent& b) { return a.p() < b.p(); });
  portion.erase(std::unique(portion.begin(), portion.end(),
                            [](const Exponent& a, const Exponent& b) {
                              return a.p() == b.p();
                            }),
                portion.end());
  if (portion.size() < 2) return std::nullopt;
  return monotonicity_scan(n, portion).verdict;
}

}  // namespace

ScanReport run_scan(const std::vector<std::int64_t>& ns,
                    const std::vector<Exponent>& ps, const ReportOptions& options) {
  ScanReport report;
  std::vector<Exponent> lower, upper;
  for (const auto& p : ps) {
    if (p.p() <= 2.0) lower.push_back(p);
    if (p.p() >= 2.0) upper.push_back(p);
  }
  for (auto raw : ns) {
    const Dimension n{raw};
    for (const auto& p : ps) report.rows.push_back(evaluate_row(n, p, options));
    report.monotonicity.push_back(
        {n, portion_verdict(n, lower), portion_verdict(n, upper)});
  }
  return report;
}

}  // namespace lpmoment
