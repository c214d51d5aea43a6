#include "binquant/rng.hpp"

#include <array>

namespace binquant {

Engine make_engine(Seed seed) {
  const std::array<std::uint32_t, 4> words = {
      static_cast<std::uint32_t>(seed.master_seed),
      static_cast<std::uint32_t>(seed.master_seed >> 32),
      static_cast<std::uint32_t>(seed.stream_id),
      static_cast<std::uint32_t>(seed.stream_id >> 32),
  };
  std::seed_seq seq(words.begin(), words.end());
  return Engine(seq);
}

}  // namespace binquant
