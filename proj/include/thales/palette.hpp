#pragma once

#include <algorithm>
#include <initializer_list>
#include <string>
#include <vector>

namespace thales {

using Color = long;

/// Cofinite color set, stored as its finite complement (sorted, unique).
/// FULL is the empty complement.
class Palette {
 public:
  Palette() = default;
  explicit Palette(std::vector<Color> complement) : complement_(std::move(complement)) {
    std::sort(complement_.begin(), complement_.end());
    complement_.erase(std::unique(complement_.begin(), complement_.end()), complement_.end());
  }
  Palette(std::initializer_list<Color> complement) : Palette(std::vector<Color>(complement)) {}

  static Palette full() { return Palette(); }

  bool is_full() const { return complement_.empty(); }
  bool contains(Color c) const { return !std::binary_search(complement_.begin(), complement_.end(), c); }
  const std::vector<Color>& complement() const { return complement_; }

  friend bool operator==(const Palette&, const Palette&) = default;

 private:
  std::vector<Color> complement_;
};

inline std::string to_string(const Palette& p) {
  if (p.is_full()) return "FULL";
  std::string s = "omega - {";
  for (std::size_t i = 0; i < p.complement().size(); ++i) s += (i ? ", " : "") + std::to_string(p.complement()[i]);
  return s + "}";
}

}  // namespace thales
