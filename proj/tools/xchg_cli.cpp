// xchg: command-line front end to the exchange-energy library.
//
// Every command builds its whole output in memory and writes it only after
// all computations succeeded, so a failing run leaves no partial table behind.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "xchg/xchg.hpp"

namespace {

enum ExitCode { kOk = 0, kComputeFailure = 1, kBadArguments = 2, kIoFailure = 3 };

struct RunConfig {
  int digits = 60;
  std::string format = "csv";
  std::string out;  // empty: standard output
};

void emit(const RunConfig& cfg, const std::string& payload) {
  if (cfg.out.empty()) {
    std::cout << payload << std::flush;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary | std::ios::trunc);
  if (!f) throw std::ios_base::failure("cannot open '" + cfg.out + "' for writing");
  f << payload;
  f.close();
  if (!f) throw std::ios_base::failure("write to '" + cfg.out + "' failed");
}

std::vector<xchg::Formula> formulas_for(const std::string& name) {
  if (name == "all") return {std::begin(xchg::kAllFormulas), std::end(xchg::kAllFormulas)};
  return {xchg::parse_formula(name)};
}

std::vector<xchg::mp::Real> parse_r_list(const std::string& list, int digits) {
  std::vector<xchg::mp::Real> out;
  std::stringstream ss(list);
  const auto prec = xchg::mp::working_precision(digits);
  for (std::string item; std::getline(ss, item, ',');) {
    if (item.empty()) throw xchg::DomainError("empty entry in R list");
    try {
      out.emplace_back(item, prec);
    } catch (const std::exception&) {
      throw xchg::DomainError("R list: '" + item + "' is not a number");
    }
  }
  if (out.empty()) throw xchg::DomainError("R list is empty");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "High-precision exchange energy of H + proton from the polarization expansion.\n"
      "\n"
      "Environment overrides (flags win):\n"
      "  XCHG_DIGITS   default for --digits\n"
      "  XCHG_FORMAT   default for --format\n"
      "  XCHG_OUT      default for --out\n"
      "  XCHG_KMAX     default for --kmax of j0, figure1, table1, errors",
      "xchg"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  auto* digits_opt = app.add_option("--digits", cfg.digits, "Significant digits of every reported number")
                         ->envname("XCHG_DIGITS")
                         ->check(CLI::Range(10, 100000))
                         ->capture_default_str();
  app.add_option("--format", cfg.format, "Output format")
      ->envname("XCHG_FORMAT")
      ->check(CLI::IsMember({"csv", "json", "text"}))
      ->capture_default_str();
  app.add_option("--out", cfg.out, "Output file (default: standard output)")->envname("XCHG_OUT");

  int series_kmax = 12;
  auto add_kmax = [&](CLI::App* sub, int lo) {
    sub->add_option("--kmax", series_kmax, "Highest polarization order")
        ->envname("XCHG_KMAX")
        ->check(CLI::Range(lo, 200))
        ->capture_default_str();
  };

  auto* coeffs = app.add_subcommand("coeffs", "Exact rational coefficients t[k][n] of the collinear factors");
  int coeff_kmax = 16;
  int coeff_nmax = 64;
  coeffs->add_option("--kmax", coeff_kmax, "Highest order k")->check(CLI::Range(0, 1000))->capture_default_str();
  coeffs->add_option("--nmax", coeff_nmax, "Highest power n")->check(CLI::Range(0, 10000))->capture_default_str();

  auto* lvalues = app.add_subcommand("lvalues", "Integrals L(k1, k2) on a grid");
  int k1_max = 4;
  int k2_max = 4;
  std::string lmethod = "auto";
  lvalues->add_option("--k1max", k1_max, "Highest k1")->check(CLI::Range(0, 200))->capture_default_str();
  lvalues->add_option("--k2max", k2_max, "Highest k2")->check(CLI::Range(0, 200))->capture_default_str();
  lvalues->add_option("--method", lmethod, "auto: exact rational for k2 = 0, quadrature otherwise")
      ->check(CLI::IsMember({"auto", "quadrature"}))
      ->capture_default_str();

  auto* j0cmd = app.add_subcommand("j0", "Partial sums j0(K) with errors and model errors");
  std::string formula = "all";
  j0cmd->add_option("--formula", formula, "surf, sapt, var or all")
      ->check(CLI::IsMember({"surf", "sapt", "var", "all"}))
      ->capture_default_str();
  add_kmax(j0cmd, 0);

  auto* figure1 = app.add_subcommand("figure1", "Error data of all three formulas for K = 1..kmax");
  add_kmax(figure1, 2);

  auto* table1 = app.add_subcommand("table1", "Decay-rate diagnostics beside the multipole-expansion laws");
  add_kmax(table1, 6);

  auto* errors = app.add_subcommand("errors", "Per-order decay diagnostics of every formula");
  add_kmax(errors, 4);

  auto* oracle = app.add_subcommand("oracle", "Two-center reference solver scan (30 digits unless --digits given)");
  std::string r_list = "8,12,16,20";
  oracle->add_option("--r", r_list, "Comma-separated internuclear distances, bohr, in [1, 40]")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kBadArguments;
  }

  std::string payload;
  try {
    const xchg::io::Format fmt = xchg::io::parse_format(cfg.format);
    if (*coeffs) {
      payload = render(xchg::io::coeff_table(xchg::tcoeffs(coeff_kmax, coeff_nmax)), fmt);
    } else if (*lvalues) {
      std::vector<xchg::LIntegral> values;
      for (int k2 = 0; k2 <= k2_max; ++k2) {
        if (k2 == 0 && lmethod == "auto") {
          for (int k1 = 0; k1 <= k1_max; ++k1) values.push_back(xchg::L_closed_value(k1, cfg.digits));
        } else {
          auto row = xchg::L_quad_row(k1_max, k2, cfg.digits);
          values.insert(values.end(), row.begin(), row.end());
        }
      }
      payload = render(xchg::io::l_table(values), fmt);
    } else if (*j0cmd) {
      std::vector<xchg::J0Series> series;
      for (auto f : formulas_for(formula)) series.push_back(xchg::j0_series(f, series_kmax, cfg.digits, true));
      payload = render(xchg::io::j0_table(series, cfg.digits), fmt);
    } else if (*figure1) {
      std::vector<xchg::J0Series> series;
      for (auto f : xchg::kAllFormulas) series.push_back(xchg::j0_series(f, series_kmax, cfg.digits, true));
      payload = render(xchg::io::figure1_table(series, cfg.digits), fmt);
    } else if (*table1 || *errors) {
      std::vector<xchg::DecayRateReport> reports;
      for (auto f : xchg::kAllFormulas) reports.push_back(xchg::decay_report(f, series_kmax, cfg.digits, true));
      payload = *table1 ? render(xchg::io::table1_table(reports, cfg.digits), fmt)
                        : render(xchg::io::decay_table(reports, cfg.digits), fmt);
    } else if (*oracle) {
      const int digits = digits_opt->count() > 0 ? cfg.digits : 30;
      const auto Rs = parse_r_list(r_list, digits);
      auto solve_one = [&](int i) { return xchg::asymptotic_row(Rs[static_cast<std::size_t>(i)], digits); };
      const auto rows = xchg::detail::indexed_map(static_cast<int>(Rs.size()), solve_one, true);
      payload = render(xchg::io::oracle_table(rows, digits), fmt);
    }
  } catch (const xchg::DomainError& e) {
    std::cerr << "xchg: " << e.what() << "\n";
    return kBadArguments;
  } catch (const xchg::Error& e) {
    std::cerr << "xchg: " << e.what() << "\n";
    return kComputeFailure;
  } catch (const std::exception& e) {
    std::cerr << "xchg: " << e.what() << "\n";
    return kComputeFailure;
  }

  try {
    emit(cfg, payload);
  } catch (const std::exception& e) {
    std::cerr << "xchg: " << e.what() << "\n";
    return kIoFailure;
  }
  return kOk;
}
