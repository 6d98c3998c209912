#ifndef XCHG_IO_HPP
#define XCHG_IO_HPP

// Tabular output shared by the CLI and the library's serializers.
//
// Reals are written in scientific notation with exactly `digits` significant
// figures, exact rationals as decimal numerator/denominator strings. CSV and
// JSON carry the same text for every number (JSON stores reals as strings so
// nothing is lost to binary doubles).

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "xchg/energy.hpp"
#include "xchg/error.hpp"
#include "xchg/integrals.hpp"
#include "xchg/mp/real.hpp"
#include "xchg/oracle.hpp"
#include "xchg/polarization.hpp"

namespace xchg::io {

enum class Format { csv, json, text };

inline Format parse_format(std::string_view s) {
  if (s == "csv") return Format::csv;
  if (s == "json") return Format::json;
  if (s == "text") return Format::text;
  throw DomainError("unknown format '" + std::string(s) + "' (expected csv, json or text)");
}

struct Cell {
  enum class Kind { integer, number, label, null };
  Kind kind = Kind::null;
  std::string text;

  static Cell integer(long v) { return {Kind::integer, std::to_string(v)}; }
  static Cell number(const mp::Real& x, int digits) { return {Kind::number, mp::to_sci(x, digits)}; }
  static Cell label(std::string s) { return {Kind::label, std::move(s)}; }
  static Cell none() { return {Kind::null, {}}; }
};

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row) {
    if (row.size() != columns.size()) throw Error("table '" + name + "': row arity mismatch");
    rows.push_back(std::move(row));
  }
};

namespace detail {

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace detail

inline std::string to_csv(const Table& t) {
  std::ostringstream os;
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << detail::csv_escape(row[i].text);
    os << '\n';
  }
  return os.str();
}

inline nlohmann::ordered_json to_json_value(const Table& t) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      const Cell& c = row[i];
      switch (c.kind) {
        case Cell::Kind::integer: obj[t.columns[i]] = std::stol(c.text); break;
        case Cell::Kind::number:
        case Cell::Kind::label: obj[t.columns[i]] = c.text; break;
        case Cell::Kind::null: obj[t.columns[i]] = nullptr; break;
      }
    }
    rows.push_back(std::move(obj));
  }
  nlohmann::ordered_json doc;
  doc["table"] = t.name;
  doc["columns"] = t.columns;
  doc["rows"] = std::move(rows);
  return doc;
}

inline std::string to_json(const Table& t) { return to_json_value(t).dump(2) + "\n"; }

inline std::string to_text(const Table& t) {
  std::vector<std::size_t> width(t.columns.size());
  for (std::size_t i = 0; i < t.columns.size(); ++i) width[i] = t.columns[i].size();
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      width[i] = std::max(width[i], row[i].kind == Cell::Kind::null ? 1 : row[i].text.size());
    }
  }
  std::ostringstream os;
  auto emit = [&](std::size_t i, const std::string& s) {
    os << (i ? "  " : "") << s << std::string(width[i] - s.size(), ' ');
  };
  for (std::size_t i = 0; i < t.columns.size(); ++i) emit(i, t.columns[i]);
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) emit(i, row[i].kind == Cell::Kind::null ? "-" : row[i].text);
    os << '\n';
  }
  std::string s = os.str();
  // trailing pad is noise in diffs
  std::string trimmed;
  std::istringstream lines(s);
  for (std::string line; std::getline(lines, line);) {
    line.erase(line.find_last_not_of(' ') + 1);
    trimmed += line + '\n';
  }
  return trimmed;
}

inline std::string render(const Table& t, Format f) {
  switch (f) {
    case Format::csv: return to_csv(t);
    case Format::json: return to_json(t);
    case Format::text: return to_text(t);
  }
  return {};
}

// ---- module tables ---------------------------------------------------------

/// Columns k, n, numerator, denominator; every (k, n) of the table.
inline Table coeff_table(const RationalCoeffTable& t) {
  Table out{"coefficients", {"k", "n", "numerator", "denominator"}, {}};
  for (int k = 0; k <= t.k_max(); ++k) {
    for (int n = 0; n <= t.n_max(); ++n) {
      const mp::Rational& q = t(k, n);
      out.add({Cell::integer(k), Cell::integer(n), Cell::label(mp::numerator_string(q)),
               Cell::label(mp::denominator_string(q))});
    }
  }
  return out;
}

/// Inverse of coeff_table's CSV form.
inline RationalCoeffTable parse_coeff_csv(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  if (!std::getline(in, line) || line != "k,n,numerator,denominator") {
    throw DomainError("coefficient CSV: unexpected header");
  }
  struct Entry {
    int k, n;
    mp::Rational q;
  };
  std::vector<Entry> entries;
  int k_max = 0;
  int n_max = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string k, n, num, den;
    if (!std::getline(fields, k, ',') || !std::getline(fields, n, ',') || !std::getline(fields, num, ',') ||
        !std::getline(fields, den)) {
      throw DomainError("coefficient CSV: malformed row '" + line + "'");
    }
    Entry e{std::stoi(k), std::stoi(n), mp::make_rational(mp::Integer(num), mp::Integer(den))};
    k_max = std::max(k_max, e.k);
    n_max = std::max(n_max, e.n);
    entries.push_back(std::move(e));
  }
  RationalCoeffTable t(k_max, n_max);
  for (auto& e : entries) t(e.k, e.n) = std::move(e.q);
  return t;
}

/// Columns k1, k2, value, method, digits.
inline Table l_table(const std::vector<LIntegral>& values) {
  Table out{"lvalues", {"k1", "k2", "value", "method", "digits"}, {}};
  for (const auto& l : values) {
    out.add({Cell::integer(l.k1), Cell::integer(l.k2), Cell::number(l.value, l.digits),
             Cell::label(to_string(l.method)), Cell::integer(l.digits)});
  }
  return out;
}

/// Columns formula, K, j0, error, model_error (model absent at K = 0).
inline Table j0_table(const std::vector<J0Series>& series, int digits) {
  Table out{"j0", {"formula", "K", "j0", "error", "model_error"}, {}};
  for (const auto& s : series) {
    for (int K = 0; K <= s.K_max; ++K) {
      out.add({Cell::label(to_string(s.formula)), Cell::integer(K),
               Cell::number(s.values[static_cast<std::size_t>(K)], digits), Cell::number(s.error(K), digits),
               K >= 1 ? Cell::number(error_model(s.formula, K, digits), digits) : Cell::none()});
    }
  }
  return out;
}

/// Figure data: formula, K, j0, error, model_error, log10_error, log10_model
/// for K = 1..K_max.
inline Table figure1_table(const std::vector<J0Series>& series, int digits) {
  Table out{"figure1", {"formula", "K", "j0", "error", "model_error", "log10_error", "log10_model"}, {}};
  for (const auto& s : series) {
    for (int K = 1; K <= s.K_max; ++K) {
      const mp::Real err = s.error(K);
      const mp::Real model = error_model(s.formula, K, digits);
      out.add({Cell::label(to_string(s.formula)), Cell::integer(K),
               Cell::number(s.values[static_cast<std::size_t>(K)], digits), Cell::number(err, digits),
               Cell::number(model, digits), Cell::number(mp::log10(mp::abs(err)), digits),
               Cell::number(mp::log10(mp::abs(model)), digits)});
    }
  }
  return out;
}

/// Columns formula, K, j0, error, model_error, diagnostic, reference.
inline Table decay_table(const std::vector<DecayRateReport>& reports, int digits) {
  Table out{"errors", {"formula", "K", "j0", "error", "model_error", "diagnostic", "reference"}, {}};
  for (const auto& r : reports) {
    for (const auto& row : r.rows) {
      out.add({Cell::label(to_string(r.formula)), Cell::integer(row.K), Cell::number(row.j0, digits),
               Cell::number(row.error, digits), Cell::number(row.model, digits),
               Cell::number(row.diagnostic, digits), Cell::number(row.reference, digits)});
    }
  }
  return out;
}

/// Decay-rate comparison: the published multipole-expansion laws next to the
/// computed polarization-expansion diagnostics.
inline Table table1_table(const std::vector<DecayRateReport>& reports, int digits) {
  Table out{"table1",
            {"formula", "multipole_decay", "multipole_source", "polarization_decay", "diagnostic", "K", "value",
             "limit"},
            {}};
  for (const auto& r : reports) {
    for (const auto& row : r.rows) {
      out.add({Cell::label(to_string(r.formula)), Cell::label(r.multipole_law),
               Cell::label("published constant, not recomputed"), Cell::label(r.polarization_law),
               Cell::label(r.diagnostic), Cell::integer(row.K), Cell::number(row.diagnostic, digits),
               Cell::number(r.limit, digits)});
    }
  }
  return out;
}

/// R-scan: R, E_g, E_u, J, scaled_ratio, model, deviation.
inline Table oracle_table(const std::vector<AsymptoticRow>& rows, int digits) {
  Table out{"oracle", {"R", "E_g", "E_u", "J", "scaled_ratio", "model", "deviation"}, {}};
  for (const auto& r : rows) {
    out.add({Cell::number(r.result.R, digits), Cell::number(r.result.E_g, digits),
             Cell::number(r.result.E_u, digits), Cell::number(r.result.J, digits),
             Cell::number(r.result.scaled_ratio, digits), Cell::number(r.model, digits),
             Cell::number(r.deviation, digits)});
  }
  return out;
}

}  // namespace xchg::io

#endif  // XCHG_IO_HPP
