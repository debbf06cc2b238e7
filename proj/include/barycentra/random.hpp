#pragma once

#include <cstdint>
#include <random>

#include "barycentra/scalar.hpp"

namespace barycentra {

inline constexpr std::uint64_t kDefaultSeed = 7;
inline constexpr std::int64_t kMaxWeightDenominator = 1000;

// Independent generator for trial `index` of a run seeded with `seed`;
// trials can therefore be evaluated in any order.
std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t index);

std::int64_t uniform_int(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi);
// a/b with 2 <= b <= max_den and 0 < a < b.
Rational random_open_unit(std::mt19937_64& rng, std::int64_t max_den = kMaxWeightDenominator);
// Draws from the fixed default weight sample half the time, else random_open_unit.
Rational random_weight(std::mt19937_64& rng);
// Integer-over-small-denominator rational in [-bound, bound].
Rational random_rational(std::mt19937_64& rng, std::int64_t bound, std::int64_t max_den = 12);
// Strictly positive weights summing to exactly 1.
Vec random_simplex_weights(std::mt19937_64& rng, std::size_t count);

const std::vector<Rational>& default_weight_sample();

}  // namespace barycentra
