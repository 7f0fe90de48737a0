#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace optiverse {

// Locale-independent decimal with 12 significant digits.
std::string format_number(double value);
// Shortest representation that parses back to the same double.
std::string format_exact(double value);

class CsvTable
{
public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

  class Row
  {
  public:
    Row &operator<<(double v);
    Row &operator<<(std::int64_t v);
    Row &operator<<(std::string_view v);

  private:
    friend class CsvTable;
    explicit Row(std::vector<std::string> &cells) : cells_(cells) {}
    std::vector<std::string> &cells_;
  };

  Row add_row();
  std::size_t rows() const { return rows_.size(); }
  std::vector<std::string> const &header() const { return header_; }
  // Header plus rows, comma separated, LF line endings.
  std::string str() const;

private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

// Writes via a temporary file in the same directory and renames over `path`.
void write_file_atomic(std::filesystem::path const &path, std::string_view contents);

} // namespace optiverse
