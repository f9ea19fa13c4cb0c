#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "tpqkd/rng.hpp"

namespace tpqkd {

class BitString {
 public:
  BitString() = default;
  explicit BitString(std::size_t n) : bits_(n, 0) {}

  static BitString random(Rng& rng, std::size_t n);
  static BitString from_string(std::string_view s);  // e.g. "0101"

  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }
  int bit(std::size_t i) const { return bits_.at(i); }
  void set(std::size_t i, int v);

  BitString operator^(const BitString& other) const;
  bool operator==(const BitString&) const = default;

  BitString slice(std::size_t begin, std::size_t len) const;
  BitString concat(const BitString& tail) const;
  std::size_t count_ones() const;
  std::size_t hamming_distance(const BitString& other) const;
  std::string to_string() const;

 private:
  std::vector<std::uint8_t> bits_;
};

// Bijection on {0..n-1}. apply(xs)[i] = xs[map[i]]: slot i of the output is
// filled from slot map[i] of the input, so whoever knows the map can undo it
// with inverse().
class Permutation {
 public:
  explicit Permutation(std::vector<std::size_t> map);

  static Permutation identity(std::size_t n);
  static Permutation random(Rng& rng, std::size_t n);  // Fisher-Yates

  std::size_t size() const { return map_.size(); }
  std::size_t source_of(std::size_t i) const { return map_.at(i); }
  const std::vector<std::size_t>& map() const { return map_; }

  Permutation inverse() const;
  std::size_t fixed_points() const;
  bool is_identity() const { return fixed_points() == size(); }

  template <typename T>
  std::vector<T> apply(const std::vector<T>& xs) const;
  BitString apply(const BitString& xs) const;

  bool operator==(const Permutation&) const = default;

 private:
  std::vector<std::size_t> map_;
};

template <typename T>
std::vector<T> Permutation::apply(const std::vector<T>& xs) const {
  if (xs.size() != map_.size()) throw std::invalid_argument("Permutation: size mismatch");
  std::vector<T> out;
  out.reserve(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) out.push_back(xs[map_[i]]);
  return out;
}

}  // namespace tpqkd
