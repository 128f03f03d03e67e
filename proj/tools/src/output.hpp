#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

namespace acflab::cli {

enum class Format { Csv, Json, Both };

/// Provenance written at the top of every artifact.
struct Header {
  std::string command;
  std::vector<std::pair<std::string, std::string>> config;
  std::uint64_t seed = 0;
  std::string anchor;     // the quantity or statement the numbers refer to
  std::string tolerance;
};

using Cell = std::variant<long long, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// Shortest round-trip decimal form; "nan", "inf", "-inf" for non-finite.
std::string format_number(double v);
/// Six significant digits, for console and plot labels.
std::string format_short(double v);

std::string header_block(const Header& header);
nlohmann::json header_json(const Header& header);

std::string table_csv(const Header& header, const Table& table);
std::string table_json(const Header& header, const Table& table);
/// Column-aligned text for the terminal.
void print_table(std::ostream& out, const Table& table);

/// Writes to a sibling temporary file and renames it over path.
void write_atomic(const std::filesystem::path& path, const std::string& content);

/// Writes artifacts under one directory according to the chosen format.
class Emitter {
 public:
  Emitter(std::filesystem::path directory, Format format, Header header);

  const Header& header() const { return header_; }
  void set_anchor(std::string anchor, std::string tolerance);

  /// stem.csv and/or stem.json.
  std::vector<std::filesystem::path> emit(const std::string& stem, const Table& table);
  /// A JSON document with the header merged in under "header".
  std::filesystem::path emit_json(const std::string& stem, nlohmann::json doc);
  /// Raw text, prefixed by the header block when prefix_header is set.
  std::filesystem::path emit_text(const std::string& file_name, const std::string& content,
                                  bool prefix_header);

  bool wants_csv() const { return format_ != Format::Json; }
  bool wants_json() const { return format_ != Format::Csv; }
  const std::vector<std::filesystem::path>& written() const { return written_; }

 private:
  std::filesystem::path directory_;
  Format format_;
  Header header_;
  std::vector<std::filesystem::path> written_;
};

}  // namespace acflab::cli
