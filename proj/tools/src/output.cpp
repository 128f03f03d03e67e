#include "output.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <system_error>

#include "acflab/error.hpp"
#include "acflab/version.hpp"

namespace acflab::cli {

namespace fs = std::filesystem;

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buffer[64];
  const auto res = std::to_chars(buffer, buffer + sizeof(buffer), v);
  return std::string(buffer, res.ptr);
}

std::string format_short(double v) {
  if (!std::isfinite(v)) return format_number(v);
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.6g", v);
  return buffer;
}

namespace {

std::string format_console(double v) {
  if (!std::isfinite(v)) return format_number(v);
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.10g", v);
  return buffer;
}

std::string cell_text(const Cell& cell, bool full_precision) {
  if (const auto* i = std::get_if<long long>(&cell)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&cell)) return full_precision ? format_number(*d) : format_console(*d);
  return std::get<std::string>(cell);
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char c : text) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + '"';
}

nlohmann::json cell_json(const Cell& cell) {
  if (const auto* i = std::get_if<long long>(&cell)) return *i;
  if (const auto* d = std::get_if<double>(&cell)) {
    // JSON has no non-finite numbers.
    if (!std::isfinite(*d)) return nullptr;
    return *d;
  }
  return std::get<std::string>(cell);
}

std::string config_line(const Header& header) {
  std::string line;
  for (const auto& [key, value] : header.config) {
    if (!line.empty()) line += ' ';
    line += key + '=' + value;
  }
  return line;
}

}  // namespace

std::string header_block(const Header& header) {
  std::ostringstream out;
  out << "# acflab " << kVersion << '\n';
  out << "# command: " << header.command << '\n';
  out << "# config: " << config_line(header) << '\n';
  out << "# seed: " << header.seed << '\n';
  out << "# anchor: " << header.anchor << '\n';
  out << "# tolerance: " << header.tolerance << '\n';
  return out.str();
}

nlohmann::json header_json(const Header& header) {
  nlohmann::json config = nlohmann::json::object();
  for (const auto& [key, value] : header.config) config[key] = value;
  return {{"version", kVersion},   {"command", header.command}, {"config", config},
          {"seed", header.seed},   {"anchor", header.anchor},   {"tolerance", header.tolerance}};
}

std::string table_csv(const Header& header, const Table& table) {
  std::string out = header_block(header);
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c > 0) out += ',';
    out += csv_field(table.columns[c]);
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) out += ',';
      out += csv_field(cell_text(row[c], true));
    }
    out += '\n';
  }
  return out;
}

std::string table_json(const Header& header, const Table& table) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : table.rows) {
    nlohmann::json object = nlohmann::json::object();
    for (std::size_t c = 0; c < row.size() && c < table.columns.size(); ++c) {
      object[table.columns[c]] = cell_json(row[c]);
    }
    rows.push_back(std::move(object));
  }
  nlohmann::json doc{{"header", header_json(header)}, {"columns", table.columns}, {"rows", rows}};
  return doc.dump(2) + '\n';
}

void print_table(std::ostream& out, const Table& table) {
  std::vector<std::size_t> width(table.columns.size());
  std::vector<std::vector<std::string>> text;
  for (std::size_t c = 0; c < table.columns.size(); ++c) width[c] = table.columns[c].size();
  for (const auto& row : table.rows) {
    auto& line = text.emplace_back();
    for (std::size_t c = 0; c < row.size() && c < width.size(); ++c) {
      line.push_back(cell_text(row[c], false));
      width[c] = std::max(width[c], line.back().size());
    }
  }
  const auto emit_line = [&](const std::vector<std::string>& cells) {
    std::string line;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (c > 0) line += "  ";
      line += std::string(width[c] - cells[c].size(), ' ') + cells[c];
    }
    out << line << '\n';
  };
  emit_line(table.columns);
  for (const auto& line : text) emit_line(line);
}

void write_atomic(const fs::path& path, const std::string& content) {
  fs::path temp = path;
  temp += ".tmp";
  {
    std::ofstream file(temp, std::ios::binary | std::ios::trunc);
    if (!file) throw InvalidArgument("cannot write " + temp.string());
    file << content;
    file.close();
    if (!file) throw InvalidArgument("failed writing " + temp.string());
  }
  std::error_code ec;
  fs::rename(temp, path, ec);
  if (ec) {
    fs::remove(temp, ec);
    throw InvalidArgument("cannot move output into place at " + path.string());
  }
}

Emitter::Emitter(fs::path directory, Format format, Header header)
    : directory_(std::move(directory)), format_(format), header_(std::move(header)) {
  std::error_code ec;
  fs::create_directories(directory_, ec);
  if (ec || !fs::is_directory(directory_)) {
    throw InvalidArgument("output directory " + directory_.string() + " is not writable");
  }
}

void Emitter::set_anchor(std::string anchor, std::string tolerance) {
  header_.anchor = std::move(anchor);
  header_.tolerance = std::move(tolerance);
}

std::vector<fs::path> Emitter::emit(const std::string& stem, const Table& table) {
  std::vector<fs::path> paths;
  if (wants_csv()) {
    paths.push_back(directory_ / (stem + ".csv"));
    write_atomic(paths.back(), table_csv(header_, table));
  }
  if (wants_json()) {
    paths.push_back(directory_ / (stem + ".json"));
    write_atomic(paths.back(), table_json(header_, table));
  }
  written_.insert(written_.end(), paths.begin(), paths.end());
  return paths;
}

fs::path Emitter::emit_json(const std::string& stem, nlohmann::json doc) {
  doc["header"] = header_json(header_);
  const fs::path path = directory_ / (stem + ".json");
  write_atomic(path, doc.dump(2) + '\n');
  written_.push_back(path);
  return path;
}

fs::path Emitter::emit_text(const std::string& file_name, const std::string& content, bool prefix_header) {
  const fs::path path = directory_ / file_name;
  write_atomic(path, prefix_header ? header_block(header_) + content : content);
  written_.push_back(path);
  return path;
}

}  // namespace acflab::cli
