#include "barycentra/laws.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "barycentra/error.hpp"
#include "barycentra/random.hpp"

namespace barycentra {

namespace {

using W = WeightExpr;

void require_declared(const std::set<std::string>& used, const std::vector<std::string>& declared,
                      const char* what) {
    for (const auto& v : used)
        if (std::find(declared.begin(), declared.end(), v) == declared.end())
            throw Error(std::string("undeclared ") + what + " variable '" + v + "'");
}

void check_declarations(const Term& t, const std::vector<std::string>& weight_vars,
                        const std::vector<std::string>& element_vars) {
    require_declared(t.variables(), element_vars, "element");
    require_declared(t.weight_variables(), weight_vars, "weight");
}

// Variable lookup by position; identities have at most a handful of variables.
struct Env {
    const std::vector<std::string>* element_names;
    std::vector<Element> elements;
    const std::vector<std::string>* weight_names;
    std::vector<Rational> weights;

    const Element& element(const std::string& name) const {
        for (std::size_t i = 0; i < element_names->size(); ++i)
            if ((*element_names)[i] == name) return elements[i];
        throw Error("unassigned element variable '" + name + "'");
    }
    const Rational& weight(const std::string& name) const {
        for (std::size_t i = 0; i < weight_names->size(); ++i)
            if ((*weight_names)[i] == name) return weights[i];
        throw Error("unassigned weight variable '" + name + "'");
    }
};

template <class Lookup>
Rational eval_weight_impl(const WeightExpr& w, const Lookup& lookup, std::int64_t p) {
    using K = WeightExpr::Kind;
    if (p == 0) {
        switch (w.kind()) {
        case K::Constant: return w.value();
        case K::Variable: return lookup(w.name());
        case K::DualProduct: {
            const Rational r = eval_weight_impl(w.args()[0], lookup, p);
            const Rational q = eval_weight_impl(w.args()[1], lookup, p);
            return r + q - r * q;
        }
        case K::Complement: return 1 - eval_weight_impl(w.args()[0], lookup, p);
        case K::Quotient: {
            const Rational den = eval_weight_impl(w.args()[1], lookup, p);
            if (den == 0) throw DomainError("division by zero in weight " + w.to_string());
            return eval_weight_impl(w.args()[0], lookup, p) / den;
        }
        case K::FieldMean: {
            const Rational r = eval_weight_impl(w.args()[0], lookup, p);
            return (1 - r) * eval_weight_impl(w.args()[1], lookup, p) +
                   r * eval_weight_impl(w.args()[2], lookup, p);
        }
        }
    }
    auto sub = [&](std::size_t i) {
        return static_cast<std::int64_t>(numerator(eval_weight_impl(w.args()[i], lookup, p)));
    };
    switch (w.kind()) {
    case K::Constant: return rational_to_residue(w.value(), p);
    case K::Variable: return rational_to_residue(lookup(w.name()), p);
    case K::DualProduct: {
        const auto r = sub(0), q = sub(1);
        return mod_reduce(r + q - r * q, p);
    }
    case K::Complement: return mod_reduce(1 - sub(0), p);
    case K::Quotient: return mod_reduce(sub(0) * mod_inverse(sub(1), p), p);
    case K::FieldMean: {
        const auto r = sub(0);
        return mod_reduce((1 - r) * sub(1) + r * sub(2), p);
    }
    }
    return 0;
}

Element eval_env(const Term& t, const Model& model, const Env& env) {
    if (t.is_variable()) return env.element(t.name());
    const std::int64_t p = model.modulus();
    const Rational w =
        eval_weight_impl(t.weight(), [&](const std::string& n) { return env.weight(n); }, p);
    if (p == 0 && (w <= 0 || w >= 1))
        throw DomainError("weight " + t.weight().to_string() + " = " + w.str() +
                          " escapes ]0,1[ on model " + model.name());
    return model.apply(w, eval_env(t.left(), model, env), eval_env(t.right(), model, env));
}

std::string format_weight(const Rational& w) { return w.str(); }

// Fills env with the assignment for trial `index`.
class TrialSource {
public:
    TrialSource(const Model& model, const Strategy& strategy, std::size_t n_elements,
                std::size_t n_weights)
        : model_(model), strategy_(strategy), n_elements_(n_elements), n_weights_(n_weights) {
        if (strategy.kind == Strategy::Kind::Exhaustive) {
            if (!model.is_finite())
                throw Error("exhaustive check requested on infinite carrier of " + model.name());
            carrier_ = &model.elements();
            weights_ = exhaustive_weights(model);
            long double total = 1;
            for (std::size_t i = 0; i < n_elements; ++i) total *= static_cast<long double>(carrier_->size());
            for (std::size_t i = 0; i < n_weights; ++i) total *= static_cast<long double>(weights_.size());
            if (total > 2e9L) throw Error("exhaustive check too large for " + model.name());
            trials_ = static_cast<std::size_t>(total);
        } else {
            trials_ = strategy.samples;
        }
    }

    std::size_t trials() const { return trials_; }

    void fill(std::size_t index, Env& env) const {
        env.elements.resize(n_elements_);
        env.weights.resize(n_weights_);
        if (strategy_.kind == Strategy::Kind::Exhaustive) {
            // mixed radix: weights vary slowest
            for (std::size_t i = n_elements_; i-- > 0;) {
                env.elements[i] = (*carrier_)[index % carrier_->size()];
                index /= carrier_->size();
            }
            for (std::size_t i = n_weights_; i-- > 0;) {
                env.weights[i] = weights_[index % weights_.size()];
                index /= weights_.size();
            }
            return;
        }
        auto rng = trial_rng(strategy_.seed, index);
        for (auto& w : env.weights)
            w = model_.modulus() == 0 ? random_weight(rng)
                                      : Rational(uniform_int(rng, 0, model_.modulus() - 1));
        for (auto& e : env.elements) e = model_.sample(rng);
    }

private:
    const Model& model_;
    Strategy strategy_;
    std::size_t n_elements_;
    std::size_t n_weights_;
    const std::vector<Element>* carrier_ = nullptr;
    std::vector<Rational> weights_;
    std::size_t trials_ = 0;
};

Counterexample make_counterexample(const Model& model, const Env& env, const Element& lhs,
                                   const Element& rhs) {
    Counterexample c;
    for (std::size_t i = 0; i < env.elements.size(); ++i)
        c.elements[(*env.element_names)[i]] = model.format(env.elements[i]);
    for (std::size_t i = 0; i < env.weights.size(); ++i)
        c.weights[(*env.weight_names)[i]] = format_weight(env.weights[i]);
    c.lhs = model.format(lhs);
    c.rhs = model.format(rhs);
    return c;
}

Term v(const char* n) { return Term::variable(n); }
W wv(const char* n) { return W::variable(n); }
Term op(W w, Term a, Term b) { return Term::apply(std::move(w), std::move(a), std::move(b)); }

std::vector<NamedLaw> make_catalogue() {
    std::vector<NamedLaw> laws;
    const auto p = wv("p"), r = wv("r"), q = wv("q");
    const auto x = v("x"), y = v("y"), z = v("z"), t = v("t");

    laws.push_back({"idempotence", {"barycentric", "affine"}, Applicability::Both,
                    make_identity(op(p, x, x), x, {"p"}, {"x"})});
    laws.push_back({"skew-commutativity", {"barycentric"}, Applicability::Both,
                    make_identity(op(p, x, y), op(W::complement(p), y, x), {"p"}, {"x", "y"})});
    const auto rp = W::dual_product(r, p);
    laws.push_back({"skew-associativity", {"barycentric"}, Applicability::Rational,
                    make_identity(op(p, op(r, x, y), z), op(rp, x, op(W::quotient(p, rp), y, z)),
                                  {"p", "r"}, {"x", "y", "z"})});
    laws.push_back({"entropicity", {"barycentric", "affine"}, Applicability::Both,
                    make_identity(op(p, op(r, x, y), op(r, z, t)), op(r, op(p, x, z), op(p, y, t)),
                                  {"p", "r"}, {"x", "y", "z", "t"})});
    laws.push_back({"projection-left", {"affine"}, Applicability::Field,
                    make_identity(op(W::constant(0), x, y), x, {}, {"x", "y"})});
    laws.push_back({"projection-right", {"affine"}, Applicability::Field,
                    make_identity(op(W::constant(1), y, x), x, {}, {"x", "y"})});
    laws.push_back({"affine-composition", {"affine"}, Applicability::Both,
                    make_identity(op(r, op(p, x, y), op(q, x, y)), op(W::field_mean(r, p, q), x, y),
                                  {"p", "q", "r"}, {"x", "y"})});
    laws.push_back({"iterated-semilattice", {"semilattice"}, Applicability::Rational,
                    make_identity(op(p, x, y), op(r, x, y), {"p", "r"}, {"x", "y"})});
    laws.push_back({"cancellativity", {"cancellativity"}, Applicability::Rational,
                    make_quasi_identity({{op(p, x, y), op(p, x, z)}}, {y, z}, {"p"}, {"x", "y", "z"})});
    return laws;
}

}  // namespace

bool NamedLaw::applicable_to(const Model& m) const {
    if (applies == Applicability::Both) return true;
    return (m.modulus() == 0) == (applies == Applicability::Rational);
}

Identity make_identity(Term lhs, Term rhs, std::vector<std::string> weight_vars,
                       std::vector<std::string> element_vars) {
    check_declarations(lhs, weight_vars, element_vars);
    check_declarations(rhs, weight_vars, element_vars);
    return {std::move(lhs), std::move(rhs), std::move(weight_vars), std::move(element_vars)};
}

QuasiIdentity make_quasi_identity(std::vector<std::pair<Term, Term>> premises,
                                  std::pair<Term, Term> conclusion,
                                  std::vector<std::string> weight_vars,
                                  std::vector<std::string> element_vars) {
    for (const auto& [a, b] : premises) {
        check_declarations(a, weight_vars, element_vars);
        check_declarations(b, weight_vars, element_vars);
    }
    check_declarations(conclusion.first, weight_vars, element_vars);
    check_declarations(conclusion.second, weight_vars, element_vars);
    return {std::move(premises), std::move(conclusion), std::move(weight_vars),
            std::move(element_vars)};
}

bool is_regular(const Identity& id) { return id.lhs.variables() == id.rhs.variables(); }

Rational eval_weight(const WeightExpr& w, const WeightAssignment& weights, std::int64_t modulus) {
    return eval_weight_impl(
        w,
        [&](const std::string& n) -> const Rational& {
            const auto it = weights.find(n);
            if (it == weights.end()) throw Error("unassigned weight variable '" + n + "'");
            return it->second;
        },
        modulus);
}

Element eval_term(const Term& t, const Model& model, const Assignment& assignment,
                  const WeightAssignment& weights) {
    std::vector<std::string> enames, wnames;
    Env env{&enames, {}, &wnames, {}};
    for (const auto& [name, e] : assignment) {
        if (!model.contains(e))
            throw Error("element " + model.format(e) + " assigned to '" + name +
                        "' is not in the carrier of " + model.name());
        enames.push_back(name);
        env.elements.push_back(e);
    }
    for (const auto& [name, w] : weights) {
        wnames.push_back(name);
        env.weights.push_back(w);
    }
    return eval_env(t, model, env);
}

std::string Strategy::to_string() const {
    if (kind == Kind::Exhaustive) return "exhaustive";
    return "sampled(" + std::to_string(samples) + ", seed " + std::to_string(seed) + ")";
}

nlohmann::json CheckReport::to_json() const {
    nlohmann::json j{{"law", law},
                     {"model", model},
                     {"strategy", strategy.to_string()},
                     {"result", pass ? "pass" : "fail"},
                     {"trials", trials}};
    if (counterexample) {
        j["counterexample"] = {{"elements", counterexample->elements},
                               {"weights", counterexample->weights},
                               {"lhs", counterexample->lhs},
                               {"rhs", counterexample->rhs}};
    }
    return j;
}

std::vector<Rational> exhaustive_weights(const Model& model) {
    if (model.modulus() == 0) return default_weight_sample();
    std::vector<Rational> all;
    for (std::int64_t k = 0; k < model.modulus(); ++k) all.emplace_back(k);
    return all;
}

CheckReport check_identity(const Model& model, const std::string& law_name, const Identity& id,
                           const Strategy& strategy, Execution exec) {
    const TrialSource source(model, strategy, id.element_vars.size(), id.weight_vars.size());
    auto fails = [&](std::size_t i) {
        Env env{&id.element_vars, {}, &id.weight_vars, {}};
        source.fill(i, env);
        return !(eval_env(id.lhs, model, env) == eval_env(id.rhs, model, env));
    };
    CheckReport report{law_name, model.name(), strategy, true, source.trials(), std::nullopt};
    if (const auto bad = find_first(source.trials(), fails, exec)) {
        Env env{&id.element_vars, {}, &id.weight_vars, {}};
        source.fill(*bad, env);
        report.pass = false;
        report.counterexample =
            make_counterexample(model, env, eval_env(id.lhs, model, env), eval_env(id.rhs, model, env));
    }
    return report;
}

CheckReport check_quasi_identity(const Model& model, const std::string& law_name,
                                 const QuasiIdentity& q, const Strategy& strategy, Execution exec) {
    const TrialSource source(model, strategy, q.element_vars.size(), q.weight_vars.size());
    auto fails = [&](std::size_t i) {
        Env env{&q.element_vars, {}, &q.weight_vars, {}};
        source.fill(i, env);
        for (const auto& [a, b] : q.premises)
            if (!(eval_env(a, model, env) == eval_env(b, model, env))) return false;
        return !(eval_env(q.conclusion.first, model, env) == eval_env(q.conclusion.second, model, env));
    };
    CheckReport report{law_name, model.name(), strategy, true, source.trials(), std::nullopt};
    if (const auto bad = find_first(source.trials(), fails, exec)) {
        Env env{&q.element_vars, {}, &q.weight_vars, {}};
        source.fill(*bad, env);
        report.pass = false;
        report.counterexample = make_counterexample(model, env, eval_env(q.conclusion.first, model, env),
                                                    eval_env(q.conclusion.second, model, env));
    }
    return report;
}

CheckReport check_identity(const Model& model, const NamedLaw& law, const Strategy& strategy,
                           Execution exec) {
    if (const auto* id = std::get_if<Identity>(&law.law))
        return check_identity(model, law.name, *id, strategy, exec);
    return check_quasi_identity(model, law.name, std::get<QuasiIdentity>(law.law), strategy, exec);
}

std::optional<CancellationWitness> find_cancellation_witness(const Model& model, const Rational& p,
                                                             const Strategy& strategy, Execution exec) {
    std::size_t trials = strategy.samples;
    const std::vector<Element>* carrier = nullptr;
    if (strategy.kind == Strategy::Kind::Exhaustive) {
        if (!model.is_finite())
            throw Error("exhaustive search requested on infinite carrier of " + model.name());
        carrier = &model.elements();
        trials = carrier->size() * carrier->size() * carrier->size();
    }
    auto draw = [&](std::size_t i) {
        CancellationWitness w;
        if (carrier) {
            const std::size_t n = carrier->size();
            w.x = (*carrier)[i / (n * n)];
            w.y = (*carrier)[(i / n) % n];
            w.z = (*carrier)[i % n];
        } else {
            auto rng = trial_rng(strategy.seed, i);
            w.x = model.sample(rng);
            w.y = model.sample(rng);
            w.z = model.sample(rng);
        }
        return w;
    };
    auto fails = [&](std::size_t i) {
        const auto w = draw(i);
        return !(w.y == w.z) && model.apply(p, w.x, w.y) == model.apply(p, w.x, w.z);
    };
    if (const auto hit = find_first(trials, fails, exec)) return draw(*hit);
    return std::nullopt;
}

const std::vector<NamedLaw>& builtin_identities() {
    static const std::vector<NamedLaw> catalogue = make_catalogue();
    return catalogue;
}

const NamedLaw& find_law(const std::string& name) {
    for (const auto& law : builtin_identities())
        if (law.name == name) return law;
    throw Error("unknown law '" + name + "'");
}

std::vector<std::string> law_groups() { return {"barycentric", "affine", "semilattice", "cancellativity"}; }

std::vector<NamedLaw> resolve_laws(const std::vector<std::string>& names) {
    std::set<std::string> wanted;
    for (const auto& n : names) {
        bool matched = false;
        for (const auto& law : builtin_identities()) {
            const bool in_group =
                std::find(law.groups.begin(), law.groups.end(), n) != law.groups.end();
            if (law.name == n || in_group) {
                wanted.insert(law.name);
                matched = true;
            }
        }
        if (!matched) throw Error("unknown law or law group '" + n + "'");
    }
    std::vector<NamedLaw> out;
    for (const auto& law : builtin_identities())
        if (wanted.count(law.name)) out.push_back(law);
    return out;
}

}  // namespace barycentra
