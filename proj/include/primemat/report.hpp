#pragma once

// Rendering of command results as an aligned table, CSV, or a versioned JSON envelope.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <ctime>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "primemat/density.hpp"

namespace primemat::report {

constexpr int schema_version = 1;

enum class Format { Table, Csv, Json };

using Cell = std::variant<std::string, std::uint64_t, std::int64_t, double, Rational>;

struct Section {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  Section& add(std::vector<Cell> row) {
    rows.push_back(std::move(row));
    return *this;
  }
};

struct ReportEnvelope {
  std::string command;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::vector<Section> sections;
};

inline std::string format_double(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

inline std::string format_rational(const Rational& r) {
  const auto num = boost::multiprecision::numerator(r);
  const auto den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

inline std::string to_text(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::string>) return v;
        else if constexpr (std::is_same_v<T, double>) return format_double(v);
        else if constexpr (std::is_same_v<T, Rational>) return format_rational(v);
        else return std::to_string(v);
      },
      c);
}

inline nlohmann::ordered_json big_to_json(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(v);
  return v.str();
}

inline nlohmann::ordered_json to_json(const Cell& c) {
  return std::visit(
      [](const auto& v) -> nlohmann::ordered_json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Rational>) {
          const auto num = boost::multiprecision::numerator(v);
          const auto den = boost::multiprecision::denominator(v);
          if (den == 1) return big_to_json(num);
          return {{"num", big_to_json(num)}, {"den", big_to_json(den)}};
        } else {
          return v;
        }
      },
      c);
}

/// The deterministic part of the JSON document: everything except the timestamp.
inline nlohmann::ordered_json canonical_json(const ReportEnvelope& env) {
  nlohmann::ordered_json doc;
  doc["schema_version"] = schema_version;
  doc["command"] = env.command;
  auto& params = doc["parameters"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : env.parameters) params[k] = v;
  auto& payload = doc["payload"] = nlohmann::ordered_json::object();
  for (const auto& s : env.sections) {
    auto rows = nlohmann::ordered_json::array();
    for (const auto& r : s.rows) {
      nlohmann::ordered_json obj = nlohmann::ordered_json::object();
      for (std::size_t i = 0; i < s.columns.size() && i < r.size(); ++i) obj[s.columns[i]] = to_json(r[i]);
      rows.push_back(std::move(obj));
    }
    payload[s.name] = std::move(rows);
  }
  return doc;
}

inline std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

inline void render_table(const ReportEnvelope& env, std::ostream& os) {
  bool first = true;
  for (const auto& s : env.sections) {
    if (!first) os << '\n';
    first = false;
    os << "== " << s.name << " ==\n";
    std::vector<std::vector<std::string>> text;
    std::vector<std::size_t> width(s.columns.size());
    for (std::size_t i = 0; i < s.columns.size(); ++i) width[i] = s.columns[i].size();
    for (const auto& r : s.rows) {
      auto& line = text.emplace_back();
      for (std::size_t i = 0; i < r.size(); ++i) {
        line.push_back(to_text(r[i]));
        if (i < width.size()) width[i] = std::max(width[i], line.back().size());
      }
    }
    const auto emit = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) os << "  ";
        if (i + 1 == cells.size()) os << cells[i];
        else os << std::left << std::setw(static_cast<int>(width[i])) << cells[i];
      }
      os << '\n';
    };
    emit(s.columns);
    for (const auto& line : text) emit(line);
  }
}

inline void render_csv(const ReportEnvelope& env, std::ostream& os) {
  bool first = true;
  for (const auto& s : env.sections) {
    if (!first) os << '\n';
    first = false;
    os << "# " << s.name << '\n';
    for (std::size_t i = 0; i < s.columns.size(); ++i) os << (i ? "," : "") << csv_escape(s.columns[i]);
    os << '\n';
    for (const auto& r : s.rows) {
      for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << csv_escape(to_text(r[i]));
      os << '\n';
    }
  }
}

inline void render(const ReportEnvelope& env, Format format, std::ostream& os) {
  switch (format) {
  case Format::Table: render_table(env, os); break;
  case Format::Csv: render_csv(env, os); break;
  case Format::Json: {
    auto doc = canonical_json(env);
    doc["generated_at"] = utc_timestamp();
    os << doc.dump(2) << '\n';
    break;
  }
  }
}

} // namespace primemat::report
