#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace binquant {

/// Identifies one independent random stream: same (master_seed, stream_id) gives the same sequence.
struct Seed {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_id = 0;

  friend bool operator==(const Seed&, const Seed&) = default;
};

using Engine = std::mt19937_64;

/// Pinned name of the stream derivation, echoed into simulation reports.
inline constexpr std::string_view kRngAlgorithm =
    "mt19937_64 seeded by std::seed_seq{master_lo32, master_hi32, stream_lo32, stream_hi32}";

Engine make_engine(Seed seed);

/// Uniform double on the open interval (0, 1), 53 random bits.
inline double uniform_open01(Engine& engine) {
  return (static_cast<double>(engine() >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace binquant
