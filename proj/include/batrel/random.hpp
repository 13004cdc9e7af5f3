// Uniform random number supply: seeded splitmix64 streams or scripted tapes.
//
// Seeded streams are splitmix64 (Steele, Lea & Flood 2014): the state advances
// by 0x9E3779B97F4A7C15 and each output is the state passed through the
// finalizer
//   z ^= z >> 30; z *= 0xBF58476D1CE4E5B9;
//   z ^= z >> 27; z *= 0x94D049BB133111EB;
//   z ^= z >> 31;
// A uniform in [0,1) is (output >> 11) * 2^-53.
//
// Child seeds: derive_seed(base, i) is output number i+1 of a splitmix64
// generator whose state starts at `base`. Every independent stream in the
// library (per stratum, per experiment cell, per run) is obtained this way.
#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "batrel/errors.hpp"

namespace batrel {

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ull;

constexpr std::uint64_t splitmix64_mix(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) noexcept {
  return splitmix64_mix(base + (index + 1) * kGoldenGamma);
}

class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  constexpr std::uint64_t next_u64() noexcept {
    state_ += kGoldenGamma;
    return splitmix64_mix(state_);
  }
  constexpr double next_uniform() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

/// Finite list of uniforms consumed in order.
class ScriptedTape {
 public:
  explicit ScriptedTape(std::vector<double> values);

  double next();
  std::size_t consumed() const noexcept { return position_; }
  std::size_t remaining() const noexcept { return values_.size() - position_; }

 private:
  std::vector<double> values_;
  std::size_t position_ = 0;
};

/// One sequence of uniforms. Either owns a generator or reads a shared tape.
class UniformStream {
 public:
  explicit UniformStream(std::uint64_t seed) : source_(SplitMix64(seed)) {}
  explicit UniformStream(ScriptedTape& tape) : source_(&tape) {}

  double next() {
    ++drawn_;
    if (auto* gen = std::get_if<SplitMix64>(&source_)) {
      return gen->next_uniform();
    }
    return std::get<ScriptedTape*>(source_)->next();
  }
  std::uint64_t drawn() const noexcept { return drawn_; }

 private:
  std::variant<SplitMix64, ScriptedTape*> source_;
  std::uint64_t drawn_ = 0;
};

/// What estimators are handed. A seeded source gives stream `i` the seed
/// derive_seed(seed, i), so streams are independent of the order in which
/// they are requested. A scripted source hands every stream the same tape,
/// so consumption order is the caller's responsibility.
class RandomSource {
 public:
  static RandomSource seeded(std::uint64_t seed);
  static RandomSource scripted(std::vector<double> uniforms);

  bool is_scripted() const noexcept { return tape_ != nullptr; }
  /// Master seed; empty for scripted sources.
  std::optional<std::uint64_t> seed() const noexcept { return seed_; }

  UniformStream stream(std::uint64_t index);

  /// Uniforms taken from the tape so far (always 0 for seeded sources).
  std::size_t tape_consumed() const noexcept { return tape_ ? tape_->consumed() : 0; }

 private:
  RandomSource() = default;

  std::optional<std::uint64_t> seed_;
  std::unique_ptr<ScriptedTape> tape_;
};

/// One decimal uniform per line; blank lines and '#' comments are skipped.
std::vector<double> parse_uniforms(std::istream& in, const std::string& origin);
std::vector<double> load_uniforms_file(const std::string& path);

}  // namespace batrel
