// Acceptance run: one PASS/FAIL line per criterion, tolerances pinned below.
// Exit status is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "xchg/xchg.hpp"

namespace {

using namespace xchg;
using mp::Precision;
using mp::Rational;
using mp::Real;

constexpr int kSeriesDigits = 60;
constexpr int kKMax = 12;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double time_limit_s;  // <= 0: none
  std::function<Outcome()> run;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// Leading significant digits shared by x and y.
int agreeing_digits(const Real& x, const Real& y) {
  const Real diff = mp::abs(x - y);
  if (diff.is_zero()) return static_cast<int>(x.precision().bits * 0.30103);
  return static_cast<int>(std::floor(-mp::log10(diff / mp::abs(y)).to_double()));
}

Outcome exact_k1_variational() {
  constexpr int digits = 40;
  constexpr int need = 25;
  const Precision prec = mp::working_precision(digits);
  const Real pi = mp::const_pi(prec);
  const Real exact = mp::const_e(prec) / 2 * (pi * pi / 9 - Real(Rational(989, 540), prec));
  const int got = agreeing_digits(j0_var(1, digits), exact);
  return {got >= need, std::to_string(got) + " digits agree (need >= " + std::to_string(need) + ")"};
}

Outcome limits_at_twelve() {
  struct Row {
    Formula f;
    double bound;
  };
  const Row rows[] = {{Formula::sapt, 1e-5}, {Formula::surf, 1e-8}, {Formula::var, 1e-15}};
  bool ok = true;
  std::string detail;
  for (const auto& r : rows) {
    const J0Series s = j0_series(r.f, kKMax, kSeriesDigits, true);
    const double e = mp::abs(s.error(kKMax)).to_double();
    ok = ok && e < r.bound;
    detail += std::string(to_string(r.f)) + " " + fmt("%.3e", e) + " < " + fmt("%.0e", r.bound) + "; ";
  }
  return {ok, detail};
}

Outcome sapt_rate() {
  constexpr double tol = 0.02;
  const DecayRateReport r = decay_report(Formula::sapt, 10, kSeriesDigits);
  const double v = r.rows[9].diagnostic.to_double();
  return {std::abs(v - 1.0 / 3) <= tol, "eps(11)/eps(10) = " + fmt("%.6f", v) + ", |. - 1/3| <= " + fmt("%.2f", tol)};
}

Outcome surf_rate() {
  constexpr double tol_rate = 0.05;
  constexpr double tol_model = 0.10;
  const DecayRateReport r = decay_report(Formula::surf, 8, kSeriesDigits);
  const DecayRow& row = r.rows[7];
  const double rate = (row.diagnostic / r.limit).to_double();
  const double model = (row.error / row.model).to_double();
  const bool ok = std::abs(rate - 1) <= tol_rate && std::abs(model - 1) <= tol_model;
  return {ok, "(K+2)eps(9)/eps(8)/a = " + fmt("%.5f", rate) + " (tol " + fmt("%.2f", tol_rate) +
                  "), eps(8)/model = " + fmt("%.5f", model) + " (tol " + fmt("%.2f", tol_model) + ")"};
}

Outcome var_rate() {
  constexpr double tol = 0.10;
  const DecayRateReport r = decay_report(Formula::var, 8, kSeriesDigits, true);
  const double v = r.rows[7].diagnostic.to_double();
  return {std::abs(v - 1) <= tol, "eps(9)/eps(8)*90/a^2 = " + fmt("%.5f", v) + " (tol " + fmt("%.2f", tol) + ")"};
}

Outcome closed_form_bridge() {
  constexpr int digits = kSeriesDigits;
  const auto row = L_quad_row(20, 0, digits);
  int worst = 1 << 20;
  int worst_k = -1;
  for (int k = 0; k <= 20; ++k) {
    const Real exact(L_closed(k), row[k].value.precision());
    const int d = agreeing_digits(row[k].value, exact);
    if (d < worst) worst = d, worst_k = k;
  }
  const bool exact_ok =
      L_closed(0) == Rational(8, 3) && L_closed(1) == Rational(2, 9) && L_closed(2) == Rational(11, 135);
  return {worst >= digits - 2 && exact_ok, "min agreement " + std::to_string(worst) + " digits at k=" +
                                               std::to_string(worst_k) + " (need >= " + std::to_string(digits - 2) +
                                               "); L(0..2) = 8/3, 2/9, 11/135 " + (exact_ok ? "exact" : "WRONG")};
}

Outcome collapse_identity() {
  constexpr int digits = 40;
  constexpr double tol = 1e-10;
  bool ok = true;
  std::string detail;
  for (int K : {0, 1, 2}) {
    const auto row = L_quad_row(40, K, digits);
    Real sum(row[0].value.precision());
    for (int k = 0; k <= 40; ++k) sum += row[k].value / Real(mp::factorial(k), sum.precision());
    const double gap = mp::abs(sum - M_of_K(K, digits)).to_double();
    ok = ok && gap < tol;
    detail += "K=" + std::to_string(K) + " " + fmt("%.2e", gap) + "; ";
  }
  return {ok, detail + "tol " + fmt("%.0e", tol)};
}

Outcome recurrence_vs_gf() {
  const auto t = tcoeffs(8, 40);
  int mismatches = 0;
  for (int k = 0; k <= 8; ++k) {
    for (int n = 0; n <= 40; ++n) mismatches += t(k, n) != gf_coeff(k, n);
  }
  return {mismatches == 0, std::to_string(mismatches) + " mismatches over 9 x 41 entries"};
}

Outcome laplace() {
  constexpr int digits = 30;
  bool ok = true;
  std::string detail;
  for (int K : {4, 8, 16}) {
    const double r = (L_quad(K + 1, K, digits).value / laplace_L(K, 1, digits).value).to_double();
    const bool in = r >= 1 - 3.0 / K && r <= 1 + 3.0 / K;
    ok = ok && in;
    detail += "K=" + std::to_string(K) + " " + fmt("%.5f", r) + (in ? "" : " (out)") + "; ";
  }
  return {ok, detail + "window 1 +- 3/K"};
}

Outcome schwartz_chain() {
  constexpr int digits = 40;
  bool ok = true;
  double tightest = 0;
  for (int K = 1; K <= 3; ++K) {
    for (int p = 1; p <= 3; ++p) {
      const BoundChain c = bound_chain(K, p, digits);
      const Real L = L_quad(K + p, K, digits).value;
      ok = ok && L <= c.schwartz;
      tightest = std::max(tightest, (L / c.schwartz).to_double());
    }
  }
  double tightest_p = 0;
  for (int m : {2, 4, 6}) {
    const Real P = P_integral(m, digits).value;
    const Real bound(P_bound(m), P.precision());
    ok = ok && P <= bound;
    tightest_p = std::max(tightest_p, (P / bound).to_double());
  }
  return {ok, "max L/sqrt(PQ) = " + fmt("%.4f", tightest) + ", max P_m/bound = " + fmt("%.4f", tightest_p)};
}

Outcome figure1_regeneration() {
  constexpr double log_tol = 0.15;
  std::vector<J0Series> series;
  for (Formula f : kAllFormulas) series.push_back(j0_series(f, kKMax, kSeriesDigits, true));
  const io::Table table = io::figure1_table(series, kSeriesDigits);

  // read back the emitted text, as a consumer of the file would
  std::vector<std::vector<double>> abs_err(3, std::vector<double>(kKMax + 1));
  double worst_log = 0;
  for (const auto& row : table.rows) {
    const int fi = static_cast<int>(parse_formula(row[0].text));
    const int K = std::stoi(row[1].text);
    abs_err[fi][K] = std::abs(std::stod(row[3].text));
    if (K >= 6) worst_log = std::max(worst_log, std::abs(std::stod(row[5].text) - std::stod(row[6].text)));
  }
  const int surf = static_cast<int>(Formula::surf);
  const int sapt = static_cast<int>(Formula::sapt);
  const int var = static_cast<int>(Formula::var);
  std::string violations;
  for (int K = 1; K <= kKMax; ++K) {
    if (!(abs_err[var][K] < abs_err[surf][K] && abs_err[surf][K] < abs_err[sapt][K])) {
      violations += " K=" + std::to_string(K) + " (var " + fmt("%.3e", abs_err[var][K]) + ", surf " +
                    fmt("%.3e", abs_err[surf][K]) + ", sapt " + fmt("%.3e", abs_err[sapt][K]) + ")";
    }
  }
  const bool ok = violations.empty() && worst_log < log_tol;
  return {ok, "ordering var<surf<sapt for K=1.." + std::to_string(kKMax) + ": " +
                  (violations.empty() ? "holds" : "violated at" + violations) +
                  "; max |log10 eps - log10 model| (K>=6) = " + fmt("%.4f", worst_log) + " (tol " +
                  fmt("%.2f", log_tol) + ")"};
}

Outcome oracle_asymptotics() {
  constexpr int digits = 30;
  constexpr double tol = 0.03;
  const Precision prec = mp::working_precision(digits);
  const auto rows = asymptotic_check({Real(12, prec), Real(20, prec)}, digits, true);
  const double d12 = mp::abs(rows[0].deviation).to_double();
  const double d20 = mp::abs(rows[1].deviation).to_double();
  return {d20 <= tol && d20 < d12, "R=20 scaled " + fmt("%.6f", rows[1].result.scaled_ratio.to_double()) +
                                       ", |dev| " + fmt("%.5f", d20) + " <= " + fmt("%.2f", tol) + "; R=12 |dev| " +
                                       fmt("%.5f", d12)};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "exact K=1 variational value", 10, exact_k1_variational},
      {2, "limits at K=12", 120, limits_at_twelve},
      {3, "SAPT geometric rate", 0, sapt_rate},
      {4, "surface exponential rate", 0, surf_rate},
      {5, "variational rate", 0, var_rate},
      {6, "closed-form bridge", 0, closed_form_bridge},
      {7, "collapse identity", 0, collapse_identity},
      {8, "recurrence equals generating function", 0, recurrence_vs_gf},
      {9, "Laplace approximation", 0, laplace},
      {10, "Schwartz chain", 0, schwartz_chain},
      {11, "figure-1 regeneration", 0, figure1_regeneration},
      {12, "oracle asymptotics", 300, oracle_asymptotics},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::string timing = fmt("%.2f s", secs);
    if (c.time_limit_s > 0) {
      timing += " (limit " + fmt("%.0f", c.time_limit_s) + " s)";
      if (secs >= c.time_limit_s) {
        o.pass = false;
        timing += " TOO SLOW";
      }
    }
    failed += !o.pass;
    std::printf("[%s] %2d %s: %s [%s]\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), timing.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed;
}
