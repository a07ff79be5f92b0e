#include "repstab/format.hpp"

#include "repstab/errors.hpp"

#include <json.hpp>

namespace repstab {

Format parse_format(std::string_view text) {
  if (text == "tsv") return Format::tsv;
  if (text == "json") return Format::json;
  if (text == "md") return Format::md;
  throw ArgumentError("unknown format '" + std::string(text) + "' (tsv, json, md)");
}

void Table::add(std::vector<std::string> row) {
  if (row.size() != columns.size()) {
    throw ArgumentError("table row has " + std::to_string(row.size()) + " cells, header has " +
                        std::to_string(columns.size()));
  }
  rows.push_back(std::move(row));
}

namespace {

std::string clean_tsv(std::string s) {
  for (char& c : s) {
    if (c == '\t' || c == '\n') c = ' ';
  }
  return s;
}

std::string clean_md(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += '\\';
    out += c == '\n' ? ' ' : c;
  }
  return out;
}

void md_line(std::string& out, const std::vector<std::string>& cells) {
  out += "|";
  for (const auto& c : cells) out += " " + clean_md(c) + " |";
  out += "\n";
}

}  // namespace

std::string Table::render(Format format) const {
  std::string out;
  switch (format) {
    case Format::tsv: {
      auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t k = 0; k < cells.size(); ++k) out += (k ? "\t" : "") + clean_tsv(cells[k]);
        out += "\n";
      };
      line(columns);
      for (const auto& r : rows) line(r);
      break;
    }
    case Format::json: {
      nlohmann::ordered_json doc = nlohmann::ordered_json::array();
      for (const auto& r : rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t k = 0; k < columns.size(); ++k) obj[columns[k]] = r[k];
        doc.push_back(std::move(obj));
      }
      out = doc.dump(2) + "\n";
      break;
    }
    case Format::md: {
      md_line(out, columns);
      out += "|";
      for (std::size_t k = 0; k < columns.size(); ++k) out += " --- |";
      out += "\n";
      for (const auto& r : rows) md_line(out, r);
      break;
    }
  }
  return out;
}

}  // namespace repstab
