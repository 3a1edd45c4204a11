#include "k3disc/poly.hpp"

namespace k3disc {

std::vector<std::string> scan_identifiers(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = i;
      while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) ++i;
      std::string name(text.substr(start, i - start));
      if (std::find(out.begin(), out.end(), name) == out.end()) out.push_back(std::move(name));
    } else {
      ++i;
    }
  }
  return out;
}

}  // namespace k3disc
