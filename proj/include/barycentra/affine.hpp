#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "barycentra/model.hpp"
#include "barycentra/parallel.hpp"
#include "barycentra/plonka.hpp"
#include "barycentra/scalar.hpp"
#include "barycentra/semilattice.hpp"

namespace barycentra {

// GF(p)^n with p an odd prime.
class FiniteVectorSpace {
public:
    FiniteVectorSpace(std::int64_t modulus, std::size_t dimension);
    // {"modulus": p, "dimension": n}; "p" and "n" are accepted as well
    static FiniteVectorSpace from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;

    std::int64_t modulus() const noexcept { return p_; }
    std::size_t dimension() const noexcept { return n_; }
    // p^n
    std::size_t size() const noexcept { return size_; }
    // i-th vector in lexicographic order (first coordinate slowest)
    FieldVec point(std::size_t i) const;
    std::size_t index_of(const FieldVec& v) const;
    std::string name() const;

    friend bool operator==(const FiniteVectorSpace&, const FiniteVectorSpace&) = default;

private:
    std::int64_t p_;
    std::size_t n_;
    std::size_t size_;
};

// u - v + w
FieldVec parallelogram(const FieldVec& u, const FieldVec& v, const FieldVec& w, std::int64_t p);

// Reduced row echelon form over GF(p) with zero rows removed.
std::vector<FieldVec> gf_rref(std::vector<FieldVec> rows, std::int64_t p);

// A linear subspace in canonical RREF form.
struct Subspace {
    std::vector<FieldVec> basis;
    std::vector<std::size_t> pivots;

    std::size_t dim() const noexcept { return basis.size(); }
    bool contains(const FieldVec& v, std::int64_t p) const;
    // zero the pivot coordinates: the canonical representative of v + U
    FieldVec reduce(const FieldVec& v, std::int64_t p) const;
    friend bool operator==(const Subspace& a, const Subspace& b) { return a.basis == b.basis; }
};

Subspace make_subspace(std::vector<FieldVec> spanning, std::int64_t p);
Subspace subspace_join(const Subspace& a, const Subspace& b, std::int64_t p);
std::string subspace_label(const Subspace& u, std::size_t n);

inline constexpr std::size_t kMaxSpaceSize = 10000;

// Every subspace exactly once, by dimension then pivot columns then free entries.
std::vector<Subspace> enumerate_subspaces(const FiniteVectorSpace& space);

// GF(p)^n with every k in GF(p) acting as (1-k)x + ky.
class AffineSpaceModel : public FiniteModel {
public:
    explicit AffineSpaceModel(FiniteVectorSpace space);
    std::string name() const override { return space_.name(); }
    std::int64_t modulus() const override { return space_.modulus(); }
    Element apply(const Rational& k, const Element& x, const Element& y) const override;
    std::string format(const Element& e) const override;
    const FiniteVectorSpace& space() const noexcept { return space_; }

private:
    FiniteVectorSpace space_;
};

struct Coset {
    std::size_t subspace = 0;
    FieldVec rep;  // canonical
    friend bool operator==(const Coset&, const Coset&) = default;
};

// All cosets of all subspaces; k acts setwise. Elements carry the subspace
// index as tag and the canonical representative as residues.
class CosetAlgebra : public FiniteModel {
public:
    explicit CosetAlgebra(FiniteVectorSpace space);

    std::string name() const override { return "S(" + space_.name() + ")"; }
    std::int64_t modulus() const override { return space_.modulus(); }
    Element apply(const Rational& k, const Element& x, const Element& y) const override;
    std::string format(const Element& e) const override;

    const FiniteVectorSpace& space() const noexcept { return space_; }
    const std::vector<Subspace>& subspaces() const noexcept { return subspaces_; }
    const FiniteSemilattice& lattice() const noexcept { return lattice_; }
    std::size_t join(std::size_t a, std::size_t b) const { return lattice_.join(a, b); }
    std::size_t coset_index(const Element& e) const;
    Element coset(std::size_t subspace, const FieldVec& v) const;
    Element apply(std::int64_t k, const Element& x, const Element& y) const;
    // (x - y + z) + (U1 v U2 v U3)
    Element parallelogram(const Element& x, const Element& y, const Element& z) const;
    // Points of the coset, as indices into the space.
    std::vector<std::size_t> points(const Element& c) const;
    // Cosets of one subspace, in carrier order.
    std::vector<std::size_t> fiber(std::size_t subspace) const;

private:
    FiniteVectorSpace space_;
    std::vector<Subspace> subspaces_;
    FiniteSemilattice lattice_ = FiniteSemilattice::chain({"0"});
    std::vector<std::size_t> fiber_start_;
};

// Projection x + U -> U (index into subspaces()).
inline std::size_t projection_pi(const Element& coset) { return coset.tag; }

struct Witness {
    std::string description;
};

// Setwise image of k and P agrees with the single-coset formula.
struct LiftReport {
    std::string method;  // "exhaustive" or "sampled"
    std::size_t checked = 0;
    std::optional<std::string> witness;
    bool pass() const { return !witness; }
    nlohmann::json to_json() const;
};

LiftReport verify_lifted_operations(const CosetAlgebra& alg, Execution exec = Execution::Parallel,
                                    std::size_t budget = 20'000'000, std::size_t samples = 2000,
                                    std::uint64_t seed = kDefaultSeed);

struct IdentityCheck {
    std::string name;
    std::size_t checked = 0;
    std::optional<std::string> witness;
    bool pass() const { return !witness; }
    nlohmann::json to_json() const;
};

// P(u,v,w) = 2(v, 2^-1(u,w)) over every triple.
IdentityCheck verify_parallelogram_identity(const FiniteVectorSpace& space, Execution exec = Execution::Parallel);
// pi(k(C1,C2)) = pi(C1) v pi(C2) over every pair.
IdentityCheck verify_pi_homomorphism(const CosetAlgebra& alg, std::int64_t k, Execution exec = Execution::Parallel);

struct PlonkaStructureReport {
    nlohmann::json space;
    std::int64_t k = 0;
    std::size_t subspaces = 0;
    std::size_t cosets = 0;
    std::vector<std::size_t> fiber_sizes;
    IdentityCheck fiber_sizes_check;
    IdentityCheck functoriality;
    IdentityCheck agreement;
    bool pass() const { return fiber_sizes_check.pass() && functoriality.pass() && agreement.pass(); }
    nlohmann::json to_json() const;
};

// Fibers pi^-1(U), transitions x+U -> x+U', and k on cosets against transport-then-operate.
PlonkaStructureReport verify_plonka_structure(const CosetAlgebra& alg, std::int64_t k,
                                              Execution exec = Execution::Parallel);

struct FiberCertificate {
    std::string subspace;
    std::size_t size = 0;
    std::string method;  // "exhaustive-wall-search" or "cancellative+argument-closure"
    bool cancellative = false;
    bool open = false;
    std::optional<std::string> witness;
    nlohmann::json to_json() const;
};

struct ProjectiveReplicaReport {
    std::vector<std::int64_t> weights;
    FiniteSemilattice replica = FiniteSemilattice::chain({"0"});
    bool quotient_is_semilattice = false;
    bool isomorphic_to_subspace_lattice = false;
    std::optional<std::string> hom_witness;
    std::vector<FiberCertificate> certificates;
    bool pass() const;
    nlohmann::json to_json() const;
};

inline constexpr std::size_t kExhaustiveWallLimit = 12;

// The quotient of S(V) by pi, computed from the operations, against (L(V), v),
// plus an openness certificate for every fiber.
ProjectiveReplicaReport verify_replica_is_projective(const CosetAlgebra& alg, std::vector<std::int64_t> weights,
                                                     Execution exec = Execution::Parallel);

// Finite join-closed family of subspaces of Q^n.
struct RationalFamily {
    std::size_t ambient_dim = 0;
    std::vector<Matrix> subspaces;  // canonical RREF bases
    std::vector<std::string> names;

    // {"ambient_dim": n, "subspaces": [{"basis": [[...], ...], "name"?}]}
    static RationalFamily from_json(const nlohmann::json& j);
};

class FamilyError : public Error {
public:
    using Error::Error;
};

struct CosetDemoReport {
    std::size_t samples = 0;
    std::size_t agree = 0;
    bool functoriality = false;
    PlonkaSum sum;
    std::optional<std::string> witness;
    bool pass() const { return functoriality && agree == samples; }
    nlohmann::json to_json() const;
};

// Throws FamilyError naming a missing join when the family is not join-closed.
CosetDemoReport rational_coset_demo(const RationalFamily& family, std::size_t samples = 500,
                                    std::uint64_t seed = kDefaultSeed);

}  // namespace barycentra
