#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "syspredict/montecarlo.hpp"
#include "syspredict/predictor.hpp"
#include "syspredict/qr.hpp"

namespace syspredict::csv {

/// "%.9g", with "inf"/"-inf"/"nan" spelled out.
std::string format(double v);

/// Quotes a field when it holds a comma, quote, CR or LF.
std::string quote(const std::string& field);
void write_row(std::ostream& os, std::span<const std::string> fields);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Index of a header column; throws Io when absent.
  std::size_t column(const std::string& name) const;
};

/// RFC-4180 parse; the first record is the header. Rows must match its width.
Table parse(std::istream& is);
double to_double(const std::string& field);

void write_curves(std::ostream& os, std::span<const CurveRow> rows);
void write_samples(std::ostream& os, const SampleSet& s);
SampleSet read_samples(std::istream& is);
void write_coverage(std::ostream& os, std::span<const CoverageReport> reports);
void write_lines(std::ostream& os, std::span<const FittedLine> lines);

}  // namespace syspredict::csv
