#pragma once

#include <Eigen/Core>
#include <filesystem>
#include <string>
#include <vector>

namespace waveobs {

// Shortest decimal form that round-trips the exact double (std::to_chars).
std::string format_double(double v);

// Tabular output.  CSV follows RFC 4180: comma separators, CRLF line endings,
// a header row, quoting only when a field needs it.  The gnuplot variant uses
// a '#'-prefixed header, single spaces, and LF endings.
struct TableSpec {
  std::vector<std::string> header;
  bool gnuplot = false;
};

void write_table(const std::filesystem::path& path, const TableSpec& spec,
                 const std::vector<std::vector<double>>& rows);
void write_table(const std::filesystem::path& path, const TableSpec& spec,
                 const Eigen::MatrixXd& rows);

void write_text_file(const std::filesystem::path& path, const std::string& content);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace waveobs
