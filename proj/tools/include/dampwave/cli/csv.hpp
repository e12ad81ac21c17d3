#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace dampwave::cli {

class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shortest decimal with 17 significant digits, '.' separator, independent of
// the locale; nan and inf spelled "nan", "inf", "-inf".
std::string format_number(double value);

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  class RowBuilder {
   public:
    explicit RowBuilder(std::vector<std::string>& row) : row_(row) {}
    RowBuilder& operator<<(double v) {
      row_.push_back(format_number(v));
      return *this;
    }
    RowBuilder& operator<<(const std::string& v) {
      row_.push_back(v);
      return *this;
    }
    RowBuilder& operator<<(const char* v) {
      row_.emplace_back(v);
      return *this;
    }

   private:
    std::vector<std::string>& row_;
  };

  RowBuilder row() { return RowBuilder(rows.emplace_back()); }
};

// Header line, then one line per row; throws std::logic_error on ragged rows.
std::string render_csv(const Table& table);

// Writes through a temporary sibling file and renames it into place.
void write_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace dampwave::cli
