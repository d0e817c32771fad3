#include "waveobs/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace waveobs {

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  if (res.ec != std::errc{}) throw std::runtime_error("format_double: conversion failed");
  return std::string(buf, res.ptr);
}

namespace {

std::string csv_escape(const std::string& field) {
  bool needs_quotes = field.find_first_of(",\"\r\n") != std::string::npos;
  if (!needs_quotes) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

template <class RowAccess>
void write_table_impl(const std::filesystem::path& path, const TableSpec& spec,
                      std::size_t n_rows, std::size_t n_cols, RowAccess cell) {
  if (spec.header.size() != n_cols && n_rows > 0)
    throw std::invalid_argument("write_table: header width does not match row width");
  const char* sep = spec.gnuplot ? " " : ",";
  const char* eol = spec.gnuplot ? "\n" : "\r\n";
  std::string out;
  out.reserve(64 * (n_rows + 1));
  if (spec.gnuplot) out += "# ";
  for (std::size_t c = 0; c < spec.header.size(); ++c) {
    if (c) out += sep;
    out += spec.gnuplot ? spec.header[c] : csv_escape(spec.header[c]);
  }
  out += eol;
  for (std::size_t r = 0; r < n_rows; ++r) {
    for (std::size_t c = 0; c < n_cols; ++c) {
      if (c) out += sep;
      out += format_double(cell(r, c));
    }
    out += eol;
  }
  write_text_file(path, out);
}

}  // namespace

void write_table(const std::filesystem::path& path, const TableSpec& spec,
                 const std::vector<std::vector<double>>& rows) {
  std::size_t n_cols = spec.header.size();
  for (const auto& row : rows) {
    if (row.size() != n_cols)
      throw std::invalid_argument("write_table: ragged rows");
  }
  write_table_impl(path, spec, rows.size(), n_cols,
                   [&](std::size_t r, std::size_t c) { return rows[r][c]; });
}

void write_table(const std::filesystem::path& path, const TableSpec& spec,
                 const Eigen::MatrixXd& rows) {
  write_table_impl(path, spec, static_cast<std::size_t>(rows.rows()),
                   static_cast<std::size_t>(rows.cols()),
                   [&](std::size_t r, std::size_t c) {
                     return rows(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
                   });
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path.string());
  f.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!f) throw std::runtime_error("write failed: " + path.string());
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for reading: " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace waveobs
