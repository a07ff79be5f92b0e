#pragma once

// Windows of n and detection of eventually constant sequences.

#include "repstab/errors.hpp"

#include <functional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace repstab {

/// Inclusive range lo..hi of n.
struct Window {
  int lo = 0;
  int hi = 0;

  bool empty() const { return hi < lo; }
  int size() const { return empty() ? 0 : hi - lo + 1; }
  /// "A..B"; a single "A" means A..A. Throws ParseError.
  static Window parse(std::string_view text);
  std::string to_string() const { return std::to_string(lo) + ".." + std::to_string(hi); }
};

/// Minimum length of the constant tail before a value is accepted.
inline constexpr int kMinStableRun = 3;

template <class T>
struct StableValue {
  T value{};
  int onset = 0;                      // first n of the constant tail
  std::vector<std::pair<int, T>> trace;
};

/// Finds the longest constant tail of the (n, value) trace. Throws
/// StabilizationError (carrying the printed trace) if it is shorter than
/// kMinStableRun.
template <class T>
StableValue<T> detect_stable(std::vector<std::pair<int, T>> trace,
                             const std::function<std::string(const T&)>& show,
                             const std::string& what) {
  if (trace.empty()) throw ArgumentError(what + ": empty window");
  std::size_t start = trace.size() - 1;
  while (start > 0 && trace[start - 1].second == trace.back().second) --start;
  const int run = static_cast<int>(trace.size() - start);
  if (run < kMinStableRun) {
    std::ostringstream os;
    for (const auto& [n, v] : trace) os << "  n=" << n << ": " << show(v) << "\n";
    throw StabilizationError(what + ": not constant on the last " + std::to_string(kMinStableRun) +
                                 " values of the window",
                             os.str());
  }
  StableValue<T> out;
  out.value = trace.back().second;
  out.onset = trace[start].first;
  out.trace = std::move(trace);
  return out;
}

}  // namespace repstab
