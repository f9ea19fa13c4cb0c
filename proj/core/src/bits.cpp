#include "tpqkd/bits.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace tpqkd {

BitString BitString::random(Rng& rng, std::size_t n) {
  BitString out(n);
  for (std::size_t i = 0; i < n; ++i) out.bits_[i] = static_cast<std::uint8_t>(rng.next_bit());
  return out;
}

BitString BitString::from_string(std::string_view s) {
  BitString out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '0' && s[i] != '1') throw std::invalid_argument("BitString: expected 0/1");
    out.bits_[i] = static_cast<std::uint8_t>(s[i] - '0');
  }
  return out;
}

void BitString::set(std::size_t i, int v) {
  if (v != 0 && v != 1) throw std::invalid_argument("BitString: bit must be 0 or 1");
  bits_.at(i) = static_cast<std::uint8_t>(v);
}

BitString BitString::operator^(const BitString& other) const {
  if (size() != other.size()) throw std::invalid_argument("BitString: xor length mismatch");
  BitString out(size());
  for (std::size_t i = 0; i < size(); ++i) out.bits_[i] = bits_[i] ^ other.bits_[i];
  return out;
}

BitString BitString::slice(std::size_t begin, std::size_t len) const {
  if (begin + len > size()) throw std::out_of_range("BitString: slice out of range");
  BitString out(len);
  std::copy_n(bits_.begin() + static_cast<std::ptrdiff_t>(begin), len, out.bits_.begin());
  return out;
}

BitString BitString::concat(const BitString& tail) const {
  BitString out(size() + tail.size());
  std::copy(bits_.begin(), bits_.end(), out.bits_.begin());
  std::copy(tail.bits_.begin(), tail.bits_.end(), out.bits_.begin() + static_cast<std::ptrdiff_t>(size()));
  return out;
}

std::size_t BitString::count_ones() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

std::size_t BitString::hamming_distance(const BitString& other) const {
  if (size() != other.size()) throw std::invalid_argument("BitString: length mismatch");
  std::size_t d = 0;
  for (std::size_t i = 0; i < size(); ++i) d += bits_[i] != other.bits_[i];
  return d;
}

std::string BitString::to_string() const {
  std::string s(size(), '0');
  for (std::size_t i = 0; i < size(); ++i) s[i] = static_cast<char>('0' + bits_[i]);
  return s;
}

Permutation::Permutation(std::vector<std::size_t> map) : map_(std::move(map)) {
  std::vector<std::uint8_t> seen(map_.size(), 0);
  for (std::size_t v : map_) {
    if (v >= map_.size() || seen[v]) throw std::invalid_argument("Permutation: not a bijection");
    seen[v] = 1;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<std::size_t> map(n);
  std::iota(map.begin(), map.end(), std::size_t{0});
  return Permutation(std::move(map));
}

Permutation Permutation::random(Rng& rng, std::size_t n) {
  std::vector<std::size_t> map(n);
  std::iota(map.begin(), map.end(), std::size_t{0});
  for (std::size_t i = n; i > 1; --i)
    std::swap(map[i - 1], map[rng.next_below(i)]);
  return Permutation(std::move(map));
}

Permutation Permutation::inverse() const {
  std::vector<std::size_t> inv(map_.size());
  for (std::size_t i = 0; i < map_.size(); ++i) inv[map_[i]] = i;
  return Permutation(std::move(inv));
}

std::size_t Permutation::fixed_points() const {
  std::size_t count = 0;
  for (std::size_t i = 0; i < map_.size(); ++i) count += map_[i] == i;
  return count;
}

BitString Permutation::apply(const BitString& xs) const {
  if (xs.size() != map_.size()) throw std::invalid_argument("Permutation: size mismatch");
  BitString out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) out.set(i, xs.bit(map_[i]));
  return out;
}

}  // namespace tpqkd
