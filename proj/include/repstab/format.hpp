#pragma once

// Row-oriented result tables rendered as TSV, JSON or markdown. Cells are
// strings so exact values pass through unchanged.

#include <string>
#include <string_view>
#include <vector>

namespace repstab {

enum class Format { tsv, json, md };

/// Throws ArgumentError for anything but tsv, json, md.
Format parse_format(std::string_view text);

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  /// Throws ArgumentError if the row width differs from the header.
  void add(std::vector<std::string> row);
  /// TSV: header line then rows. JSON: array of objects in column order.
  /// Markdown: pipe table.
  std::string render(Format format) const;
};

}  // namespace repstab
