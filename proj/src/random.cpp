#include "barycentra/random.hpp"

namespace barycentra {

std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    return std::mt19937_64(seq);
}

std::int64_t uniform_int(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

Rational random_open_unit(std::mt19937_64& rng, std::int64_t max_den) {
    const std::int64_t den = uniform_int(rng, 2, max_den);
    const std::int64_t num = uniform_int(rng, 1, den - 1);
    return Rational(Integer(num), Integer(den));
}

const std::vector<Rational>& default_weight_sample() {
    static const std::vector<Rational> sample{Rational(1, 2), Rational(1, 3), Rational(2, 3),
                                              Rational(1, 5), Rational(4, 5)};
    return sample;
}

Rational random_weight(std::mt19937_64& rng) {
    if (uniform_int(rng, 0, 1) == 0) {
        const auto& d = default_weight_sample();
        return d[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(d.size()) - 1))];
    }
    return random_open_unit(rng);
}

Rational random_rational(std::mt19937_64& rng, std::int64_t bound, std::int64_t max_den) {
    const std::int64_t den = uniform_int(rng, 1, max_den);
    const std::int64_t num = uniform_int(rng, -bound * den, bound * den);
    return Rational(Integer(num), Integer(den));
}

Vec random_simplex_weights(std::mt19937_64& rng, std::size_t count) {
    Vec raw(count);
    Rational total = 0;
    for (auto& w : raw) {
        w = uniform_int(rng, 1, 20);
        total += w;
    }
    for (auto& w : raw) w /= total;
    return raw;
}

}  // namespace barycentra
