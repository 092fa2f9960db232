#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace modmat {

/// Runtime-sized bitset for relations over more than 64 points.
class DynBitset {
 public:
  DynBitset() = default;
  explicit DynBitset(std::size_t n) : size_(n), words_((n + 63) / 64, 0) {}

  std::size_t size() const noexcept { return size_; }

  void set(std::size_t i) noexcept { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  bool test(std::size_t i) const noexcept { return ((words_[i / 64] >> (i % 64)) & 1U) != 0; }

  DynBitset& operator|=(const DynBitset& o) noexcept {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= o.words_[w];
    return *this;
  }
  DynBitset& operator&=(const DynBitset& o) noexcept {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= o.words_[w];
    return *this;
  }
  DynBitset operator&(const DynBitset& o) const { DynBitset r = *this; r &= o; return r; }
  DynBitset operator|(const DynBitset& o) const { DynBitset r = *this; r |= o; return r; }

  /// this minus o
  DynBitset operator-(const DynBitset& o) const {
    DynBitset r = *this;
    for (std::size_t w = 0; w < words_.size(); ++w) r.words_[w] &= ~o.words_[w];
    return r;
  }

  bool subset_of(const DynBitset& o) const noexcept {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      if ((words_[w] & ~o.words_[w]) != 0) return false;
    }
    return true;
  }
  bool intersects(const DynBitset& o) const noexcept {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      if ((words_[w] & o.words_[w]) != 0) return true;
    }
    return false;
  }
  bool none() const noexcept {
    for (auto w : words_) {
      if (w != 0) return false;
    }
    return true;
  }
  std::size_t count() const noexcept {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  std::vector<std::size_t> indices() const {
    std::vector<std::size_t> out;
    for (std::size_t w = 0; w < words_.size(); ++w) {
      for (std::uint64_t b = words_[w]; b != 0; b &= b - 1) out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(b)));
    }
    return out;
  }

  bool operator==(const DynBitset&) const = default;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace modmat
