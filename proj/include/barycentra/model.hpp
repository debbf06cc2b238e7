#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "barycentra/scalar.hpp"

namespace barycentra {

// Uniform element representation across algebra kinds. `tag` selects a
// fiber, label or subspace; `point` carries rational coordinates and
// `residues` carries GF(p) coordinates. Unused parts stay empty.
struct Element {
    std::size_t tag = 0;
    Vec point;
    FieldVec residues;

    friend bool operator==(const Element&, const Element&) = default;
};

inline Element point_element(Vec point, std::size_t tag = 0) { return {tag, std::move(point), {}}; }
inline Element label_element(std::size_t tag) { return {tag, {}, {}}; }

// An algebra with one binary operation per scalar. Rational models
// (modulus() == 0) accept weights in ]0,1[; field models accept every
// residue in [0, modulus()). Implementations must be safe for concurrent
// const use.
class Model {
public:
    virtual ~Model() = default;

    virtual std::string name() const = 0;
    virtual std::int64_t modulus() const { return 0; }
    virtual bool is_finite() const { return false; }
    // Full carrier; only valid when is_finite().
    virtual const std::vector<Element>& elements() const;
    virtual bool contains(const Element& e) const = 0;
    virtual Element apply(const Rational& weight, const Element& x, const Element& y) const = 0;
    // Deterministic given the generator state.
    virtual Element sample(std::mt19937_64& rng) const;
    virtual std::string format(const Element& e) const = 0;
};

// Convenience base for models whose carrier is an explicit finite list.
class FiniteModel : public Model {
public:
    bool is_finite() const override { return true; }
    const std::vector<Element>& elements() const override { return carrier_; }
    bool contains(const Element& e) const override;
    Element sample(std::mt19937_64& rng) const override;

protected:
    std::vector<Element> carrier_;
};

}  // namespace barycentra
