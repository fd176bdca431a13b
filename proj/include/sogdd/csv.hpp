#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace sogdd {

/// "%.9g", with ".0" appended to integral values so every real column carries
/// a decimal point (0 -> "0.0", 0.75 -> "0.75").
std::string format_real(double v);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Index of a header column; throws FormatError when absent.
  std::size_t column(const std::string& name) const;
};

/// Comma-separated file with a header line. Blank lines are skipped.
CsvTable read_csv(const std::filesystem::path& path);

/// Parses a real-valued CSV field; throws FormatError.
double parse_real(const std::string& field);

class CsvWriter {
 public:
  /// Throws IoError if the file cannot be created.
  CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);

  void row(const std::vector<std::string>& fields);
  /// Flushes and throws IoError on a failed write.
  void close();

 private:
  std::filesystem::path path_;
  std::ofstream out_;
};

}  // namespace sogdd
