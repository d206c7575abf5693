#pragma once

// Dense bitset over the vertices of one space.  Spaces at the finest
// resolutions have tens of millions of vertices, so sets are bit-packed and
// the hot operations (iteration, popcount, boolean combinations) run on
// 64-bit words.

#include <cstdint>
#include <vector>

#include "perimin/errors.hpp"
#include "perimin/scaled.hpp"

namespace perimin {

class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(u32 n) : n_(n), words_((n + 63) / 64, 0) {}

  static VertexSet full(u32 n) {
    VertexSet s(n);
    for (auto& w : s.words_) w = ~u64{0};
    s.trim();
    return s;
  }

  u32 universe_size() const { return n_; }

  bool contains(u32 v) const { return (words_[v >> 6] >> (v & 63)) & 1; }
  void insert(u32 v) { words_[v >> 6] |= u64{1} << (v & 63); }
  void erase(u32 v) { words_[v >> 6] &= ~(u64{1} << (v & 63)); }

  u32 count() const {
    u64 total = 0;
    for (u64 w : words_) total += static_cast<u64>(__builtin_popcountll(w));
    return static_cast<u32>(total);
  }

  bool empty() const {
    for (u64 w : words_) {
      if (w != 0) return false;
    }
    return true;
  }

  bool operator==(const VertexSet& o) const = default;

  VertexSet& operator|=(const VertexSet& o) {
    check_same(o);
    for (size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  VertexSet& operator&=(const VertexSet& o) {
    check_same(o);
    for (size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  VertexSet& operator-=(const VertexSet& o) {
    check_same(o);
    for (size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }
  VertexSet& operator^=(const VertexSet& o) {
    check_same(o);
    for (size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
    return *this;
  }

  friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
  friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
  friend VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }
  friend VertexSet operator^(VertexSet a, const VertexSet& b) { return a ^= b; }

  VertexSet complement() const {
    VertexSet r(n_);
    for (size_t i = 0; i < words_.size(); ++i) r.words_[i] = ~words_[i];
    r.trim();
    return r;
  }

  bool is_subset_of(const VertexSet& o) const {
    check_same(o);
    for (size_t i = 0; i < words_.size(); ++i) {
      if (words_[i] & ~o.words_[i]) return false;
    }
    return true;
  }

  bool intersects(const VertexSet& o) const {
    check_same(o);
    for (size_t i = 0; i < words_.size(); ++i) {
      if (words_[i] & o.words_[i]) return true;
    }
    return false;
  }

  /// Calls fn(v) for every member, in increasing vertex order.
  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (size_t i = 0; i < words_.size(); ++i) {
      u64 w = words_[i];
      while (w != 0) {
        u32 bit = static_cast<u32>(__builtin_ctzll(w));
        fn(static_cast<u32>(i * 64 + bit));
        w &= w - 1;
      }
    }
  }

  std::vector<u32> to_vector() const {
    std::vector<u32> out;
    out.reserve(count());
    for_each([&](u32 v) { out.push_back(v); });
    return out;
  }

  template <typename It>
  static VertexSet of(u32 n, It begin, It end) {
    VertexSet s(n);
    for (It it = begin; it != end; ++it) s.insert(static_cast<u32>(*it));
    return s;
  }

  static VertexSet of(u32 n, std::initializer_list<u32> vs) {
    return of(n, vs.begin(), vs.end());
  }

  const std::vector<u64>& words() const { return words_; }

 private:
  void trim() {
    if (n_ % 64 != 0 && !words_.empty()) {
      words_.back() &= (u64{1} << (n_ % 64)) - 1;
    }
  }
  void check_same(const VertexSet& o) const {
    if (n_ != o.n_) throw InputError("vertex sets over different spaces");
  }

  u32 n_ = 0;
  std::vector<u64> words_;
};

}  // namespace perimin
