#include "syspredict/csv.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>

#include "syspredict/error.hpp"

namespace syspredict::csv {

std::string format(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string quote(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

void write_row(std::ostream& os, std::span<const std::string> fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) os << ',';
    os << quote(fields[i]);
  }
  os << "\r\n";
}

std::size_t Table::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw Error(ErrorCode::kIo, "missing CSV column '" + name + "'");
}

Table parse(std::istream& is) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool quoted = false;
  bool any = false;  // current record has content
  char ch;
  auto end_field = [&] {
    record.push_back(std::move(field));
    field.clear();
  };
  auto end_record = [&] {
    end_field();
    records.push_back(std::move(record));
    record.clear();
    any = false;
  };
  while (is.get(ch)) {
    if (quoted) {
      if (ch == '"') {
        if (is.peek() == '"') {
          is.get(ch);
          field += '"';
        } else {
          quoted = false;
        }
      } else {
        field += ch;
      }
      continue;
    }
    switch (ch) {
      case '"':
        quoted = true;
        any = true;
        break;
      case ',':
        end_field();
        any = true;
        break;
      case '\r':
        if (is.peek() == '\n') is.get(ch);
        [[fallthrough]];
      case '\n':
        if (any || !field.empty()) end_record();
        break;
      default:
        field += ch;
        any = true;
    }
  }
  if (quoted) throw Error(ErrorCode::kIo, "unterminated quoted CSV field");
  if (any || !field.empty()) end_record();
  if (records.empty()) throw Error(ErrorCode::kIo, "CSV input has no header row");

  Table t;
  t.header = std::move(records.front());
  for (std::size_t r = 1; r < records.size(); ++r) {
    if (records[r].size() != t.header.size()) {
      throw Error(ErrorCode::kIo, "CSV row " + std::to_string(r + 1) + " has " +
                                      std::to_string(records[r].size()) + " fields, header has " +
                                      std::to_string(t.header.size()));
    }
    t.rows.push_back(std::move(records[r]));
  }
  return t;
}

double to_double(const std::string& field) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(field, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != field.size()) {
    throw Error(ErrorCode::kIo, "not a number: '" + field + "'");
  }
  return v;
}

void write_curves(std::ostream& os, std::span<const CurveRow> rows) {
  const std::vector<std::string> header{"t", "median", "mean", "lower_50", "upper_50", "lower_90", "upper_90"};
  write_row(os, header);
  for (const CurveRow& r : rows) {
    const std::vector<std::string> f{format(r.t),        format(r.median),   format(r.mean),
                                     format(r.lower_50), format(r.upper_50), format(r.lower_90),
                                     format(r.upper_90)};
    write_row(os, f);
  }
}

void write_samples(std::ostream& os, const SampleSet& s) {
  std::vector<std::string> header;
  for (int i = 1; i <= s.n; ++i) header.push_back("x" + std::to_string(i));
  header.push_back("t1");
  if (s.has_second()) header.push_back("t2");
  header.push_back("t");
  write_row(os, header);
  std::vector<std::string> f;
  for (std::size_t r = 0; r < s.size(); ++r) {
    f.clear();
    for (double x : s.row(r)) f.push_back(format(x));
    f.push_back(format(s.t1[r]));
    if (s.has_second()) f.push_back(format(s.t2[r]));
    f.push_back(format(s.t[r]));
    write_row(os, f);
  }
}

SampleSet read_samples(std::istream& is) {
  const Table table = parse(is);
  SampleSet s;
  std::vector<std::size_t> xcols;
  for (int i = 1;; ++i) {
    const std::string name = "x" + std::to_string(i);
    auto it = std::find(table.header.begin(), table.header.end(), name);
    if (it == table.header.end()) break;
    xcols.push_back(static_cast<std::size_t>(it - table.header.begin()));
  }
  s.n = static_cast<int>(xcols.size());
  const std::size_t c1 = table.column("t1");
  const std::size_t ct = table.column("t");
  const bool second = std::find(table.header.begin(), table.header.end(), "t2") != table.header.end();
  const std::size_t c2 = second ? table.column("t2") : 0;
  for (const auto& row : table.rows) {
    for (std::size_t c : xcols) s.components.push_back(to_double(row[c]));
    s.t1.push_back(to_double(row[c1]));
    if (second) s.t2.push_back(to_double(row[c2]));
    s.t.push_back(to_double(row[ct]));
  }
  return s;
}

void write_coverage(std::ostream& os, std::span<const CoverageReport> reports) {
  const std::vector<std::string> header{"k", "replications", "coverage50", "se50", "coverage90", "se90"};
  write_row(os, header);
  for (const CoverageReport& r : reports) {
    const std::vector<std::string> f{std::to_string(r.k), std::to_string(r.replications),
                                     format(r.coverage50), format(r.se50),
                                     format(r.coverage90), format(r.se90)};
    write_row(os, f);
  }
}

void write_lines(std::ostream& os, std::span<const FittedLine> lines) {
  const std::vector<std::string> header{"tau", "intercept", "slope", "loss"};
  write_row(os, header);
  for (const FittedLine& l : lines) {
    const std::vector<std::string> f{l.tau ? format(*l.tau) : std::string(), format(l.intercept),
                                     format(l.slope), format(l.loss)};
    write_row(os, f);
  }
}

}  // namespace syspredict::csv
