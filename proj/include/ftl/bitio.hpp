#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ftl/error.hpp"
#include "ftl/graph.hpp"

namespace ftl {

// Width of every vertex-sized field for an n-vertex instance. Intervals end at n, so the
// width must hold n itself.
inline int vertex_bits(Vertex n) { return std::max(1, static_cast<int>(std::bit_width(static_cast<std::uint32_t>(n)))); }

// Append-only MSB-first bit buffer. Fields written with put_excluded (instance hashes,
// parameter digests) are counted apart so size statistics can leave them out. A counting
// writer runs the same serialization code but keeps only the totals.
class BitWriter {
 public:
  explicit BitWriter(int vbits, bool counting = false) : vbits_(vbits), counting_(counting) {}

  int vbits() const { return vbits_; }
  bool counting() const { return counting_; }
  // Only meaningful on a counting writer: account for bits without producing them.
  void count(std::size_t bits) {
    if (!counting_) throw std::logic_error("count() on a byte-producing writer");
    bits_ += bits;
  }

  void put(std::uint64_t value, int bits) {
    if (counting_) {
      bits_ += static_cast<std::size_t>(bits);
      return;
    }
    while (bits > 0) {
      if (bits_ % 8 == 0) bytes_.push_back(0);
      int room = 8 - static_cast<int>(bits_ % 8);
      int take = std::min(room, bits);
      auto chunk = static_cast<std::uint8_t>((value >> (bits - take)) & ((1U << take) - 1U));
      bytes_.back() |= static_cast<std::uint8_t>(chunk << (room - take));
      bits_ += static_cast<std::size_t>(take);
      bits -= take;
    }
  }
  void put_bit(bool b) {
    if (!counting_) {
      if (bits_ % 8 == 0) bytes_.push_back(0);
      if (b) bytes_.back() |= static_cast<std::uint8_t>(0x80U >> (bits_ % 8));
    }
    ++bits_;
  }
  void put_excluded(std::uint64_t value, int bits) {
    put(value, bits);
    excluded_ += bits;
  }
  void put_vertex(Vertex v) { put(static_cast<std::uint32_t>(v), vbits_); }
  void put_opt_vertex(std::optional<Vertex> v) {
    put_bit(v.has_value());
    if (v) put_vertex(*v);
  }
  // Counts and lengths share the vertex width; nothing we store outnumbers n.
  void put_count(std::size_t c) { put(c, vbits_); }
  void put_bits(const std::vector<bool>& bs) {
    put_count(bs.size());
    if (counting_) {
      bits_ += bs.size();
      return;
    }
    for (bool b : bs) put_bit(b);
  }
  void append(const BitWriter& other) {
    if (counting_ || other.counting_) {
      bits_ += other.bits_;
    } else {
      for (std::size_t i = 0; i < other.bits_; ++i) put_bit((other.bytes_[i / 8] >> (7 - i % 8)) & 1U);
    }
    excluded_ += other.excluded_;
  }

  std::size_t size_bits() const { return bits_; }
  std::size_t excluded_bits() const { return excluded_; }
  std::size_t payload_bits() const { return bits_ - excluded_; }
  const std::vector<std::uint8_t>& bytes() const { return bytes_; }

 private:
  int vbits_;
  bool counting_;
  std::vector<std::uint8_t> bytes_;
  std::size_t bits_ = 0;
  std::size_t excluded_ = 0;
};

class BitReader {
 public:
  BitReader(std::span<const std::uint8_t> data, int vbits) : data_(data), vbits_(vbits) {}

  int vbits() const { return vbits_; }

  bool get_bit() {
    if (pos_ >= data_.size() * 8) throw LabelError("label record truncated");
    bool b = (data_[pos_ / 8] >> (7 - pos_ % 8)) & 1U;
    ++pos_;
    return b;
  }
  std::uint64_t get(int bits) {
    if (pos_ + static_cast<std::size_t>(bits) > data_.size() * 8) throw LabelError("label record truncated");
    std::uint64_t v = 0;
    while (bits > 0) {
      int room = 8 - static_cast<int>(pos_ % 8);
      int take = std::min(room, bits);
      std::uint64_t chunk = (data_[pos_ / 8] >> (room - take)) & ((1U << take) - 1U);
      v = (v << take) | chunk;
      pos_ += static_cast<std::size_t>(take);
      bits -= take;
    }
    return v;
  }
  Vertex get_vertex() { return static_cast<Vertex>(get(vbits_)); }
  std::optional<Vertex> get_opt_vertex() {
    if (!get_bit()) return std::nullopt;
    return get_vertex();
  }
  std::size_t get_count() { return static_cast<std::size_t>(get(vbits_)); }
  std::vector<bool> get_bits() {
    std::vector<bool> out(get_count());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = get_bit();
    return out;
  }
  std::size_t position() const { return pos_; }
  // Everything after the last field must be byte padding.
  void expect_end() const {
    if (data_.size() * 8 - pos_ >= 8) throw LabelError("trailing bytes in label record");
  }

 private:
  std::span<const std::uint8_t> data_;
  int vbits_;
  std::size_t pos_ = 0;
};

}  // namespace ftl
