#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"

#include "barycentra/model.hpp"
#include "barycentra/parallel.hpp"
#include "barycentra/term.hpp"

namespace barycentra {

struct Identity {
    Term lhs;
    Term rhs;
    std::vector<std::string> weight_vars;
    std::vector<std::string> element_vars;
};

struct QuasiIdentity {
    std::vector<std::pair<Term, Term>> premises;
    std::pair<Term, Term> conclusion;
    std::vector<std::string> weight_vars;
    std::vector<std::string> element_vars;
};

// Which scalar domains a catalogued law is meant for.
enum class Applicability { Rational, Field, Both };

struct NamedLaw {
    std::string name;
    std::vector<std::string> groups;
    Applicability applies = Applicability::Both;
    std::variant<Identity, QuasiIdentity> law;

    bool is_quasi() const { return std::holds_alternative<QuasiIdentity>(law); }
    bool applicable_to(const Model& m) const;
};

// Throws Error if a variable used in a term is not declared.
Identity make_identity(Term lhs, Term rhs, std::vector<std::string> weight_vars,
                       std::vector<std::string> element_vars);
QuasiIdentity make_quasi_identity(std::vector<std::pair<Term, Term>> premises,
                                  std::pair<Term, Term> conclusion,
                                  std::vector<std::string> weight_vars,
                                  std::vector<std::string> element_vars);

// Both sides use exactly the same element variables.
bool is_regular(const Identity& id);

using Assignment = std::map<std::string, Element>;
using WeightAssignment = std::map<std::string, Rational>;

Rational eval_weight(const WeightExpr& w, const WeightAssignment& weights, std::int64_t modulus);
Element eval_term(const Term& t, const Model& model, const Assignment& assignment,
                  const WeightAssignment& weights);

struct Strategy {
    enum class Kind { Exhaustive, Sampled };
    Kind kind = Kind::Sampled;
    std::size_t samples = 1000;
    std::uint64_t seed = 7;

    static Strategy exhaustive() { return {Kind::Exhaustive, 0, 0}; }
    static Strategy sampled(std::size_t n, std::uint64_t seed) { return {Kind::Sampled, n, seed}; }
    std::string to_string() const;
};

struct Counterexample {
    std::map<std::string, std::string> elements;
    std::map<std::string, std::string> weights;
    std::string lhs;
    std::string rhs;
};

struct CheckReport {
    std::string law;
    std::string model;
    Strategy strategy;
    bool pass = true;
    std::size_t trials = 0;
    std::optional<Counterexample> counterexample;

    nlohmann::json to_json() const;
};

// Exhaustive runs over every element tuple and every scalar in the model's
// weight range (all residues for field models, the default weight sample for
// finite rational models). Exhaustive on an infinite carrier throws Error.
CheckReport check_identity(const Model& model, const NamedLaw& law, const Strategy& strategy,
                           Execution exec = Execution::Parallel);
CheckReport check_identity(const Model& model, const std::string& law_name, const Identity& id,
                           const Strategy& strategy, Execution exec = Execution::Parallel);
CheckReport check_quasi_identity(const Model& model, const std::string& law_name,
                                 const QuasiIdentity& q, const Strategy& strategy,
                                 Execution exec = Execution::Parallel);

struct CancellationWitness {
    Element x, y, z;
};

// Searches for x and y != z with p(x,y) = p(x,z).
std::optional<CancellationWitness> find_cancellation_witness(const Model& model, const Rational& p,
                                                             const Strategy& strategy,
                                                             Execution exec = Execution::Parallel);

const std::vector<NamedLaw>& builtin_identities();
const NamedLaw& find_law(const std::string& name);
// Expands group names ("barycentric", "affine", ...) and law names, keeping
// catalogue order and dropping duplicates. Unknown names throw Error.
std::vector<NamedLaw> resolve_laws(const std::vector<std::string>& names);
std::vector<std::string> law_groups();

// Weight-variable range used by exhaustive checks on this model.
std::vector<Rational> exhaustive_weights(const Model& model);

}  // namespace barycentra
