#ifndef CFKIT_CSV_HPP
#define CFKIT_CSV_HPP

#include <ostream>
#include <string>
#include <vector>

namespace cfkit {

/// One double as text, 17 significant digits: enough to round-trip the
/// binary value exactly, so identical inputs give byte-identical files.
/// Locale-independent ('.' decimal point, no grouping).
std::string format_value(double v);

/// Header plus numeric rows, written as CSV with '\n' line endings.
struct OutputTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  void add_row(std::initializer_list<double> row) { rows.emplace_back(row); }
};

void write_csv(std::ostream& os, const OutputTable& table);

}  // namespace cfkit

#endif
