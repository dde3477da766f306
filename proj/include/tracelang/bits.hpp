/*
 * Copyright (c) 2026, The tracelang Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef TRACELANG_BITS_HPP
#define TRACELANG_BITS_HPP

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace tracelang {

/// Fixed-width bitset with the set operations the views code needs.
class Bits {
 public:
  Bits() = default;
  explicit Bits(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

  std::size_t size() const { return n_; }
  bool test(std::size_t i) const { return (w_[i / 64] >> (i % 64)) & 1u; }
  void set(std::size_t i) { w_[i / 64] |= std::uint64_t{1} << (i % 64); }
  void reset(std::size_t i) { w_[i / 64] &= ~(std::uint64_t{1} << (i % 64)); }

  void set_all() {
    for (auto& x : w_) x = ~std::uint64_t{0};
    trim();
  }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto x : w_) c += static_cast<std::size_t>(std::popcount(x));
    return c;
  }
  bool none() const {
    for (auto x : w_)
      if (x) return false;
    return true;
  }
  bool any() const { return !none(); }

  bool subset_of(const Bits& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & ~o.w_[i]) return false;
    return true;
  }

  Bits& operator|=(const Bits& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
    return *this;
  }
  Bits& operator&=(const Bits& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
    return *this;
  }
  friend Bits operator|(Bits a, const Bits& b) { return a |= b; }
  friend Bits operator&(Bits a, const Bits& b) { return a &= b; }

  /// Calls f(i) for each set bit in increasing order.
  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t k = 0; k < w_.size(); ++k) {
      std::uint64_t x = w_[k];
      while (x) {
        const int t = std::countr_zero(x);
        f(k * 64 + static_cast<std::size_t>(t));
        x &= x - 1;
      }
    }
  }

  std::vector<std::size_t> elements() const {
    std::vector<std::size_t> out;
    for_each([&](std::size_t i) { out.push_back(i); });
    return out;
  }

  friend bool operator==(const Bits&, const Bits&) = default;
  friend std::strong_ordering operator<=>(const Bits& a, const Bits& b) {
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    return a.w_ <=> b.w_;
  }

 private:
  void trim() {
    if (n_ % 64 && !w_.empty()) w_.back() &= (std::uint64_t{1} << (n_ % 64)) - 1;
  }
  std::size_t n_ = 0;
  std::vector<std::uint64_t> w_;
};

}  // namespace tracelang

#endif  // TRACELANG_BITS_HPP
