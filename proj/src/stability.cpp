#include "repstab/stability.hpp"

#include <charconv>

namespace repstab {

namespace {

int parse_int(std::string_view s, std::string_view whole) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError("bad window '" + std::string(whole) + "' (expected A..B)");
  }
  return value;
}

}  // namespace

Window Window::parse(std::string_view text) {
  auto dots = text.find("..");
  Window w;
  if (dots == std::string_view::npos) {
    w.lo = w.hi = parse_int(text, text);
  } else {
    w.lo = parse_int(text.substr(0, dots), text);
    w.hi = parse_int(text.substr(dots + 2), text);
  }
  if (w.lo < 0 || w.empty()) throw ParseError("bad window '" + std::string(text) + "'");
  return w;
}

}  // namespace repstab
