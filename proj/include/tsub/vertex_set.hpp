#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace tsub {

/**
 * Dense bitset over vertices 0..capacity-1.
 *
 * All set operations assume both operands share the same capacity; the
 * finders build every set against one tournament so this always holds.
 */
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(int capacity) : capacity_(capacity), words_((capacity + 63) / 64, 0) {}
  VertexSet(int capacity, std::initializer_list<int> members) : VertexSet(capacity) {
    for (int v : members) set(v);
  }

  static VertexSet full(int capacity) {
    VertexSet s(capacity);
    std::fill(s.words_.begin(), s.words_.end(), ~std::uint64_t{0});
    s.trim();
    return s;
  }

  template <typename Range>
  static VertexSet from(int capacity, const Range& members) {
    VertexSet s(capacity);
    for (int v : members) s.set(v);
    return s;
  }

  int capacity() const { return capacity_; }

  bool test(int v) const { return (words_[v >> 6] >> (v & 63)) & 1U; }
  void set(int v) { words_[v >> 6] |= std::uint64_t{1} << (v & 63); }
  void reset(int v) { words_[v >> 6] &= ~(std::uint64_t{1} << (v & 63)); }
  void assign(int v, bool on) { on ? set(v) : reset(v); }
  void clear() { std::fill(words_.begin(), words_.end(), 0); }

  int count() const {
    int c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
  }
  bool empty() const {
    return std::all_of(words_.begin(), words_.end(), [](auto w) { return w == 0; });
  }
  bool any() const { return !empty(); }

  /// Smallest member >= from, or -1.
  int next(int from = 0) const {
    if (from >= capacity_) return -1;
    std::size_t wi = static_cast<std::size_t>(from) >> 6;
    std::uint64_t w = words_[wi] & (~std::uint64_t{0} << (from & 63));
    while (true) {
      if (w != 0) return static_cast<int>(wi * 64 + std::countr_zero(w));
      if (++wi == words_.size()) return -1;
      w = words_[wi];
    }
  }
  int first() const { return next(0); }

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t wi = 0; wi < words_.size(); ++wi) {
      std::uint64_t w = words_[wi];
      while (w != 0) {
        f(static_cast<int>(wi * 64 + std::countr_zero(w)));
        w &= w - 1;
      }
    }
  }

  std::vector<int> members() const {
    std::vector<int> out;
    out.reserve(count());
    for_each([&](int v) { out.push_back(v); });
    return out;
  }

  VertexSet& operator&=(const VertexSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  VertexSet& operator|=(const VertexSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  VertexSet& operator^=(const VertexSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
    return *this;
  }
  /// Set difference.
  VertexSet& operator-=(const VertexSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }
  friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
  friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
  friend VertexSet operator^(VertexSet a, const VertexSet& b) { return a ^= b; }
  friend VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }

  VertexSet complement() const {
    VertexSet c = *this;
    for (auto& w : c.words_) w = ~w;
    c.trim();
    return c;
  }

  bool intersects(const VertexSet& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & o.words_[i]) return true;
    return false;
  }
  bool subset_of(const VertexSet& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

  // Popcount kernels that avoid materializing temporaries.
  static int count_and(const VertexSet& a, const VertexSet& b) {
    int c = 0;
    for (std::size_t i = 0; i < a.words_.size(); ++i) c += std::popcount(a.words_[i] & b.words_[i]);
    return c;
  }
  static int count_and(const VertexSet& a, const VertexSet& b, const VertexSet& c) {
    int n = 0;
    for (std::size_t i = 0; i < a.words_.size(); ++i)
      n += std::popcount(a.words_[i] & b.words_[i] & c.words_[i]);
    return n;
  }
  static int count_xor_and(const VertexSet& a, const VertexSet& b, const VertexSet& mask) {
    int n = 0;
    for (std::size_t i = 0; i < a.words_.size(); ++i)
      n += std::popcount((a.words_[i] ^ b.words_[i]) & mask.words_[i]);
    return n;
  }
  /// Smallest member of a & b & c, or -1.
  static int first_and(const VertexSet& a, const VertexSet& b, const VertexSet& c) {
    for (std::size_t i = 0; i < a.words_.size(); ++i) {
      std::uint64_t w = a.words_[i] & b.words_[i] & c.words_[i];
      if (w != 0) return static_cast<int>(i * 64 + std::countr_zero(w));
    }
    return -1;
  }

  const std::vector<std::uint64_t>& words() const { return words_; }

 private:
  void trim() {
    if (capacity_ % 64 != 0 && !words_.empty()) words_.back() &= (std::uint64_t{1} << (capacity_ % 64)) - 1;
  }

  int capacity_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace tsub
