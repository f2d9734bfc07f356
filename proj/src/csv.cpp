#include "cfkit/csv.hpp"

#include <charconv>
#include <stdexcept>

namespace cfkit {

std::string format_value(double v) {
  char buf[40];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  if (ec != std::errc()) throw std::runtime_error("format_value: conversion failed");
  return std::string(buf, ptr);
}

void write_csv(std::ostream& os, const OutputTable& table) {
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (i) os << ',';
    os << table.header[i];
  }
  os << '\n';
  for (const auto& row : table.rows) {
    if (row.size() != table.header.size())
      throw std::invalid_argument("write_csv: row arity does not match header");
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      os << format_value(row[i]);
    }
    os << '\n';
  }
}

}  // namespace cfkit
