#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "barycentra/error.hpp"
#include "barycentra/model.hpp"

namespace barycentra {

// Raised when a join table fails idempotence, commutativity or
// associativity; `witness` holds the offending labels.
class SemilatticeAxiomError : public Error {
public:
    SemilatticeAxiomError(std::string axiom, std::vector<std::string> witness);
    const std::string& axiom() const noexcept { return axiom_; }
    const std::vector<std::string>& witness() const noexcept { return witness_; }

private:
    std::string axiom_;
    std::vector<std::string> witness_;
};

using JoinTriple = std::array<std::string, 3>;

class FiniteSemilattice {
public:
    // Table must be total on elements^2; validated exhaustively.
    static FiniteSemilattice from_join_table(std::vector<std::string> elements,
                                             const std::vector<JoinTriple>& triples);
    static FiniteSemilattice from_table(std::vector<std::string> labels,
                                        std::vector<std::vector<std::size_t>> table);
    static FiniteSemilattice from_json(const nlohmann::json& j);
    // Chain 0 < 1 < ... < n-1 with the given labels.
    static FiniteSemilattice chain(std::vector<std::string> labels);
    // Order generated by the cover pairs (lower, upper); every pair needs a least upper bound.
    static FiniteSemilattice from_covers(std::vector<std::string> labels,
                                         const std::vector<std::pair<std::string, std::string>>& covers);

    std::size_t size() const noexcept { return labels_.size(); }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    const std::string& label(std::size_t i) const { return labels_.at(i); }
    std::size_t index_of(const std::string& label) const;
    std::size_t join(std::size_t a, std::size_t b) const { return table_[a][b]; }
    // a <= b iff a v b = b
    bool leq(std::size_t a, std::size_t b) const { return table_[a][b] == b; }
    // Hasse diagram edges (lower, upper).
    std::vector<std::pair<std::size_t, std::size_t>> covers() const;

    nlohmann::json to_json() const;

private:
    FiniteSemilattice(std::vector<std::string> labels, std::vector<std::vector<std::size_t>> table);
    void validate() const;

    std::vector<std::string> labels_;
    std::vector<std::vector<std::size_t>> table_;
};

// Join-preserving map between finite semilattices (validated on all pairs).
class SemilatticeHom {
public:
    SemilatticeHom(const FiniteSemilattice& source, const FiniteSemilattice& target,
                   std::vector<std::size_t> map);
    std::size_t operator()(std::size_t a) const { return map_[a]; }
    const std::vector<std::size_t>& map() const noexcept { return map_; }

private:
    std::vector<std::size_t> map_;
};

std::optional<std::size_t> find_hom_violation(const FiniteSemilattice& s, const FiniteSemilattice& t,
                                              const std::vector<std::size_t>& map);

// Join-preserving bijection s -> t if one exists.
std::optional<std::vector<std::size_t>> find_isomorphism(const FiniteSemilattice& s,
                                                         const FiniteSemilattice& t);
inline bool is_isomorphic(const FiniteSemilattice& s, const FiniteSemilattice& t) {
    return find_isomorphism(s, t).has_value();
}

// Hasse diagram, nodes and edges in lexicographic label order.
std::string to_dot(const FiniteSemilattice& s, const std::string& graph_name = "semilattice");

// The semilattice read as a barycentric algebra: every operation is the join.
class SemilatticeModel : public FiniteModel {
public:
    SemilatticeModel(FiniteSemilattice s, std::string name);

    std::string name() const override { return name_; }
    Element apply(const Rational& weight, const Element& x, const Element& y) const override;
    std::string format(const Element& e) const override { return lattice_.label(e.tag); }
    const FiniteSemilattice& semilattice() const noexcept { return lattice_; }

private:
    FiniteSemilattice lattice_;
    std::string name_;
};

std::shared_ptr<SemilatticeModel> as_iterated_barycentric(const FiniteSemilattice& s,
                                                          std::string name = "semilattice");

}  // namespace barycentra
