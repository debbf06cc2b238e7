#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

#include "barycentra/error.hpp"

namespace barycentra {

using Integer = boost::multiprecision::mpz_int;
// Always kept in canonical form by GMP arithmetic: gcd(num, den) = 1, den > 0.
using Rational = boost::multiprecision::mpq_rational;
using Vec = std::vector<Rational>;

// Accepts "a/b" or "a" with optional sign; result is canonical.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);
std::string to_string(std::span<const Rational> v);

// A rational strictly inside the open unit interval.
class Weight {
public:
    explicit Weight(Rational value);
    static Weight parse(std::string_view text) { return Weight(parse_rational(text)); }

    const Rational& value() const noexcept { return value_; }
    Weight complement() const { return Weight(1 - value_); }

    friend bool operator==(const Weight&, const Weight&) = default;

private:
    Rational value_;
};

bool is_prime(std::int64_t n) noexcept;

// Residue class modulo a prime.
class FieldElement {
public:
    FieldElement(std::int64_t value, std::int64_t modulus);

    std::int64_t residue() const noexcept { return residue_; }
    std::int64_t modulus() const noexcept { return modulus_; }

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement inverse() const;

    friend bool operator==(const FieldElement&, const FieldElement&) = default;

private:
    std::int64_t residue_;
    std::int64_t modulus_;
};

// Plain residue arithmetic used by the hot loops; the modulus is trusted.
inline std::int64_t mod_reduce(std::int64_t a, std::int64_t p) noexcept {
    a %= p;
    return a < 0 ? a + p : a;
}
std::int64_t mod_inverse(std::int64_t a, std::int64_t p);
// Image of a rational a/b in GF(p); throws DomainError when p divides b.
std::int64_t rational_to_residue(const Rational& q, std::int64_t p);

// (1-p)x + py
Vec weighted_mean(const Weight& p, std::span<const Rational> x, std::span<const Rational> y);
// Same formula with an unrestricted rational coefficient (affine combination).
Vec affine_mean(const Rational& k, std::span<const Rational> x, std::span<const Rational> y);

// r o p = r + p - rp
Weight dual_product(const Weight& r, const Weight& p);
// p / (r o p), the inner weight on the right side of skew-associativity.
Weight skew_assoc_inner_weight(const Weight& r, const Weight& p);

using FieldVec = std::vector<std::int64_t>;

// (1-k)u + kv componentwise in GF(p).
std::vector<FieldElement> field_mean(const FieldElement& k, std::span<const FieldElement> u,
                                     std::span<const FieldElement> v);
FieldVec field_mean(std::int64_t k, std::span<const std::int64_t> u,
                    std::span<const std::int64_t> v, std::int64_t p);

}  // namespace barycentra
