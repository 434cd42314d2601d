#pragma once

#include <cstdint>
#include <random>

#include "mpent/types.hpp"

namespace mpent {

/// SplitMix64 finalizer; used to derive independent per-task seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(master ^ splitmix64(index + 1));
}

using Rng = std::mt19937_64;

/// i.i.d. standard complex normal entries.
Matrix ginibre(int rows, int cols, Rng& rng);
/// Haar-random unitary (QR of a Ginibre matrix with phase correction).
Matrix haar_unitary(int n, Rng& rng);

}  // namespace mpent
