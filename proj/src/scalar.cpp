#include "barycentra/scalar.hpp"

#include <cctype>
#include <sstream>
#include <utility>

namespace barycentra {

namespace {

Integer parse_integer(std::string_view text, std::string_view whole) {
    std::size_t i = 0;
    bool negative = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
        negative = text[i] == '-';
        ++i;
    }
    if (i == text.size()) throw ParseError("malformed rational: \"" + std::string(whole) + "\"");
    Integer value = 0;
    for (; i < text.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(text[i])))
            throw ParseError("malformed rational: \"" + std::string(whole) + "\"");
        value = value * 10 + (text[i] - '0');
    }
    return negative ? Integer(-value) : value;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    const std::string_view t = trim(text);
    const auto slash = t.find('/');
    if (slash == std::string_view::npos) return Rational(parse_integer(t, text));
    const Integer num = parse_integer(trim(t.substr(0, slash)), text);
    const Integer den = parse_integer(trim(t.substr(slash + 1)), text);
    if (den == 0) throw ParseError("zero denominator: \"" + std::string(text) + "\"");
    return Rational(num, den);
}

std::string to_string(const Rational& q) { return q.str(); }

std::string to_string(std::span<const Rational> v) {
    std::ostringstream out;
    out << '(';
    for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i].str();
    out << ')';
    return out.str();
}

Weight::Weight(Rational value) : value_(std::move(value)) {
    if (value_ <= 0 || value_ >= 1)
        throw DomainError("weight must lie strictly between 0 and 1, got " + value_.str());
}

bool is_prime(std::int64_t n) noexcept {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

FieldElement::FieldElement(std::int64_t value, std::int64_t modulus) : modulus_(modulus) {
    if (!is_prime(modulus)) throw DomainError("modulus " + std::to_string(modulus) + " is not prime");
    residue_ = mod_reduce(value, modulus);
}

static void require_same_field(const FieldElement& a, const FieldElement& b) {
    if (a.modulus() != b.modulus())
        throw DomainError("modulus mismatch: " + std::to_string(a.modulus()) + " vs " +
                          std::to_string(b.modulus()));
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
    require_same_field(*this, o);
    return {residue_ + o.residue_, modulus_};
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
    require_same_field(*this, o);
    return {residue_ - o.residue_, modulus_};
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
    require_same_field(*this, o);
    return {residue_ * o.residue_, modulus_};
}

FieldElement FieldElement::inverse() const { return {mod_inverse(residue_, modulus_), modulus_}; }

std::int64_t mod_inverse(std::int64_t a, std::int64_t p) {
    a = mod_reduce(a, p);
    if (a == 0) throw DomainError("0 has no inverse in GF(" + std::to_string(p) + ")");
    // extended Euclid
    std::int64_t t = 0, new_t = 1, r = p, new_r = a;
    while (new_r != 0) {
        const std::int64_t q = r / new_r;
        t = std::exchange(new_t, t - q * new_t);
        r = std::exchange(new_r, r - q * new_r);
    }
    return mod_reduce(t, p);
}

std::int64_t rational_to_residue(const Rational& q, std::int64_t p) {
    const Integer pp = p;
    const auto num = static_cast<std::int64_t>(Integer(numerator(q) % pp));
    const auto den = static_cast<std::int64_t>(Integer(denominator(q) % pp));
    if (den == 0)
        throw DomainError(q.str() + " has no image in GF(" + std::to_string(p) + ")");
    return mod_reduce(mod_reduce(num, p) * mod_inverse(den, p), p);
}

Vec affine_mean(const Rational& k, std::span<const Rational> x, std::span<const Rational> y) {
    if (x.size() != y.size())
        throw DimensionMismatch("weighted mean of vectors of dimension " + std::to_string(x.size()) +
                                " and " + std::to_string(y.size()));
    const Rational left = 1 - k;
    Vec out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = left * x[i] + k * y[i];
    return out;
}

Vec weighted_mean(const Weight& p, std::span<const Rational> x, std::span<const Rational> y) {
    return affine_mean(p.value(), x, y);
}

Weight dual_product(const Weight& r, const Weight& p) {
    return Weight(r.value() + p.value() - r.value() * p.value());
}

Weight skew_assoc_inner_weight(const Weight& r, const Weight& p) {
    return Weight(p.value() / dual_product(r, p).value());
}

std::vector<FieldElement> field_mean(const FieldElement& k, std::span<const FieldElement> u,
                                     std::span<const FieldElement> v) {
    if (u.size() != v.size())
        throw DimensionMismatch("field mean of vectors of dimension " + std::to_string(u.size()) +
                                " and " + std::to_string(v.size()));
    const FieldElement one(1, k.modulus());
    std::vector<FieldElement> out;
    out.reserve(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) out.push_back((one - k) * u[i] + k * v[i]);
    return out;
}

FieldVec field_mean(std::int64_t k, std::span<const std::int64_t> u, std::span<const std::int64_t> v,
                    std::int64_t p) {
    if (u.size() != v.size())
        throw DimensionMismatch("field mean of vectors of dimension " + std::to_string(u.size()) +
                                " and " + std::to_string(v.size()));
    const std::int64_t left = mod_reduce(1 - k, p);
    FieldVec out(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) out[i] = mod_reduce(left * u[i] + k * v[i], p);
    return out;
}

}  // namespace barycentra
