#include "optiverse/csv.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>
#include <system_error>

#include <unistd.h>

namespace optiverse {

std::string format_number(double value)
{
  char buf[64];
  auto const res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 12);
  return {buf, res.ptr};
}

std::string format_exact(double value)
{
  char buf[64];
  auto const res = std::to_chars(buf, buf + sizeof buf, value);
  return {buf, res.ptr};
}

CsvTable::Row &CsvTable::Row::operator<<(double v)
{
  cells_.push_back(format_number(v));
  return *this;
}

CsvTable::Row &CsvTable::Row::operator<<(std::int64_t v)
{
  cells_.push_back(std::to_string(v));
  return *this;
}

CsvTable::Row &CsvTable::Row::operator<<(std::string_view v)
{
  cells_.emplace_back(v);
  return *this;
}

CsvTable::Row CsvTable::add_row()
{
  rows_.emplace_back();
  return Row(rows_.back());
}

std::string CsvTable::str() const
{
  std::string out;
  auto line = [&](std::vector<std::string> const &cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i)
        out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  line(header_);
  for (auto const &r : rows_)
    line(r);
  return out;
}

void write_file_atomic(std::filesystem::path const &path, std::string_view contents)
{
  namespace fs = std::filesystem;
  if (path.has_parent_path())
    fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os)
      throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    os.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!os)
      throw std::runtime_error("failed writing " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw std::runtime_error("cannot rename " + tmp.string() + ": " + ec.message());
  }
}

} // namespace optiverse
