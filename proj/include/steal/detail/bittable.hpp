#pragma once

#include <cstdint>
#include <vector>

namespace steal::detail {

// Dense bit array indexed by subsets of an n-element universe (2^n bits).
class BitTable {
 public:
  BitTable() = default;
  explicit BitTable(int domain_bits)
      : domain_bits_(domain_bits),
        words_((std::uint64_t{1} << domain_bits) / 64 + 1, 0) {}

  int domain_bits() const { return domain_bits_; }
  std::uint64_t size() const { return std::uint64_t{1} << domain_bits_; }

  bool get(std::uint64_t i) const {
    return (words_[i >> 6] >> (i & 63)) & 1;
  }
  void set(std::uint64_t i, bool v) {
    if (v)
      words_[i >> 6] |= std::uint64_t{1} << (i & 63);
    else
      words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
  }

  friend bool operator==(const BitTable& a, const BitTable& b) {
    if (a.domain_bits_ != b.domain_bits_) return false;
    for (std::uint64_t i = 0; i < a.size(); ++i)
      if (a.get(i) != b.get(i)) return false;
    return true;
  }

 private:
  int domain_bits_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace steal::detail
