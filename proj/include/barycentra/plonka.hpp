#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "barycentra/convex.hpp"
#include "barycentra/error.hpp"
#include "barycentra/model.hpp"
#include "barycentra/random.hpp"
#include "barycentra/semilattice.hpp"

namespace barycentra {

// x -> matrix x + offset; matrix has target-dim rows and source-dim columns.
struct AffineMap {
    Matrix matrix;
    Vec offset;
    std::size_t source_dim = 0;

    static AffineMap identity(std::size_t dim);
    static AffineMap constant(std::size_t source_dim, Vec value);
    Vec operator()(const Vec& x) const;
    // (*this) o first
    AffineMap after(const AffineMap& first) const;
};

// One summand of a Plonka sum: a polytope, a full affine subspace of Q^n, or a point.
class Fiber {
public:
    enum class Kind { Polytope, AffineSubspace, Singleton };

    static Fiber polytope(Polytope p, std::vector<std::string> vertex_names = {});
    // `basis` rows must be linearly independent.
    static Fiber affine_subspace(Vec basepoint, Matrix basis, std::string display_name = {});
    static Fiber singleton(Vec point, std::string name = {});
    static Fiber from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;

    Kind kind() const noexcept { return kind_; }
    std::size_t dim() const noexcept { return dim_; }
    const Polytope& polytope() const;
    const std::vector<std::string>& vertex_names() const noexcept { return names_; }
    const Vec& basepoint() const noexcept { return base_; }
    const Matrix& directions() const noexcept { return basis_; }

    bool contains(const Vec& p) const;
    // Points that determine an affine map on this fiber.
    std::vector<Vec> generators() const;
    Vec sample(std::mt19937_64& rng) const;

    // Named vertex, or symbolic combination of named simplex vertices, or coordinates.
    std::string format_point(const Vec& p) const;
    Vec parse_point(const std::string& text) const;
    // Descriptor of the open cell: "{a}", "]a,b[", "relint conv{a,b,c}", or the affine name.
    std::string cell_descriptor(VertexSet face) const;

private:
    Kind kind_ = Kind::Singleton;
    std::size_t dim_ = 0;
    std::optional<Polytope> polytope_;
    std::vector<std::string> names_;
    Vec base_;
    Matrix basis_;
    std::string display_;
};

struct TransitionMap {
    std::string from;
    std::string to;
    AffineMap map;
};

// Build-time validation failure; `kind` is one of "functoriality",
// "image", "missing-transition", "order".
class PlonkaError : public Error {
public:
    PlonkaError(std::string kind, const std::string& message);
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

class PlonkaSum {
public:
    // fibers[i] belongs to index element i. Transitions are needed at least for
    // every cover pair; identities and composites are filled in.
    static PlonkaSum build(FiniteSemilattice index, std::vector<Fiber> fibers,
                           std::vector<TransitionMap> transitions);
    static PlonkaSum from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;

    const FiniteSemilattice& index() const noexcept { return index_; }
    std::size_t size() const noexcept { return fibers_.size(); }
    const Fiber& fiber(std::size_t s) const { return fibers_.at(s); }
    // phi_{s,t}; requires s <= t
    const AffineMap& transition(std::size_t s, std::size_t t) const;

    bool contains(const Element& e) const;
    Element transport(const Element& x, std::size_t target) const;
    Element eval(const Rational& p, const Element& x, const Element& y) const;
    Element eval(const Weight& p, const Element& x, const Element& y) const { return eval(p.value(), x, y); }

    std::string format(const Element& e) const;
    // "label:point" with point a vertex name or coordinates
    Element parse_element(const std::string& text) const;
    nlohmann::json element_to_json(const Element& e) const;
    Element sample(std::mt19937_64& rng) const;

    // First chain s <= t <= u where phi_{t,u} o phi_{s,t} != phi_{s,u} on a generator.
    std::optional<std::array<std::size_t, 3>> find_functoriality_violation() const;

private:
    FiniteSemilattice index_ = FiniteSemilattice::chain({"0"});
    std::vector<Fiber> fibers_;
    std::vector<std::vector<std::optional<AffineMap>>> maps_;
};

class PlonkaModel : public Model {
public:
    PlonkaModel(PlonkaSum sum, std::string name) : sum_(std::move(sum)), name_(std::move(name)) {}
    std::string name() const override { return name_; }
    bool contains(const Element& e) const override { return sum_.contains(e); }
    Element apply(const Rational& w, const Element& x, const Element& y) const override {
        return sum_.eval(w, x, y);
    }
    Element sample(std::mt19937_64& rng) const override { return sum_.sample(rng); }
    std::string format(const Element& e) const override { return sum_.format(e); }
    const PlonkaSum& sum() const noexcept { return sum_; }

private:
    PlonkaSum sum_;
    std::string name_;
};

using ElementPredicate = std::function<bool(const Element&)>;

// Subalgebra of a Plonka sum cut out by a membership predicate.
class PlonkaSubalgebraModel : public Model {
public:
    PlonkaSubalgebraModel(PlonkaSum sum, ElementPredicate member, std::string name);
    std::string name() const override { return name_; }
    bool contains(const Element& e) const override { return sum_.contains(e) && member_(e); }
    Element apply(const Rational& w, const Element& x, const Element& y) const override {
        return sum_.eval(w, x, y);
    }
    // rejection sampling from the ambient sum
    Element sample(std::mt19937_64& rng) const override;
    std::string format(const Element& e) const override { return sum_.format(e); }
    const PlonkaSum& sum() const noexcept { return sum_; }
    const ElementPredicate& member() const noexcept { return member_; }

private:
    PlonkaSum sum_;
    ElementPredicate member_;
    std::string name_;
};

// One replica class: an open cell of one fiber.
struct ReplicaClass {
    std::size_t fiber = 0;
    VertexSet face = 0;  // polytope fibers only
    std::string descriptor;
    std::string open_certificate;
};

struct ReplicaResult {
    FiniteSemilattice semilattice = FiniteSemilattice::chain({"0"});
    std::vector<ReplicaClass> classes;  // aligned with semilattice element order
    PlonkaSum sum;
    std::size_t validated_samples = 0;

    std::size_t classify(const Element& e) const;
    nlohmann::json to_json() const;
};

class ReplicaError : public Error {
public:
    using Error::Error;
};

// Classes are (fiber, open cell) pairs; joins come from transported
// representatives (three per pair, which must agree); the result is checked to
// be a semilattice with a homomorphic classifier on seeded samples.
ReplicaResult refined_replica(const PlonkaSum& sum, std::uint64_t seed = kDefaultSeed,
                              std::size_t samples = 1000);

// Keeps the classes meeting the subalgebra; closure and homomorphism are
// revalidated on seeded samples drawn from the subalgebra.
ReplicaResult restrict_replica(const PlonkaSum& sum, const ElementPredicate& member,
                               const ReplicaResult& replica, std::uint64_t seed = kDefaultSeed,
                               std::size_t samples = 1000);

// The polytope as the only fiber over a one-element index.
PlonkaSum single_fiber_sum(const Polytope& c, std::vector<std::string> vertex_names = {});

struct PolytopePlonkaReport {
    std::size_t samples = 0;
    std::size_t agree = 0;      // tagged eval equals the direct weighted mean
    std::size_t tags_agree = 0; // result tag = join of tags = carrier of the mean
    bool pass() const { return agree == samples && tags_agree == samples; }
    nlohmann::json to_json() const;
};

struct PolytopePlonka {
    PlonkaSum sum;
    FaceLattice lattice;
    PolytopePlonkaReport report;
};

// Faces as fibers over the face join-semilattice with inclusion maps.
PolytopePlonka polytope_as_plonka(const Polytope& c, std::size_t samples = 200,
                                  std::uint64_t seed = kDefaultSeed,
                                  const std::vector<std::string>& vertex_names = {});

}  // namespace barycentra
