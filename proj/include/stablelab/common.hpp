#ifndef STABLELAB_COMMON_HPP
#define STABLELAB_COMMON_HPP

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace stablelab {

// Element subsets are bit-sets over dense indices 0..n-1. Lattices are
// capped at 64 elements so a subset always fits in one word.
using Bitset = std::uint64_t;

constexpr int kMaxElements = 64;

inline constexpr Bitset bit(int i) { return Bitset{1} << i; }
inline constexpr bool has_bit(Bitset s, int i) { return (s >> i) & 1; }

inline constexpr Bitset full_mask(int n) {
  return n >= kMaxElements ? ~Bitset{0} : (Bitset{1} << n) - 1;
}

inline int popcount(Bitset s) { return std::popcount(s); }

// Lowest set bit index; undefined for 0.
inline int first_bit(Bitset s) { return std::countr_zero(s); }

// Iteration helper: for (int i : BitRange(s)) visits set bits ascending.
struct BitRange {
  Bitset s;
  constexpr explicit BitRange(Bitset bits) : s(bits) {}
  struct iterator {
    Bitset rest;
    int operator*() const { return std::countr_zero(rest); }
    iterator& operator++() {
      rest &= rest - 1;
      return *this;
    }
    bool operator!=(const iterator& o) const { return rest != o.rest; }
  };
  iterator begin() const { return {s}; }
  iterator end() const { return {0}; }
};

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Input failed a structural validation (poset axiom, filter clause,
// stability condition, ...). The message names the clause and a witness.
struct ValidationError : Error {
  using Error::Error;
};

// Two filters (or a filter and an operation) refer to different lattices.
struct CarrierMismatch : Error {
  using Error::Error;
};

// A size or search cap was exceeded.
struct CapExceeded : Error {
  using Error::Error;
};

}  // namespace stablelab

#endif
