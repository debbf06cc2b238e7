#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "barycentra/scalar.hpp"

namespace barycentra {

// Scalar-level expression naming the weight of one binary operation node.
// Built from constants and weight variables with the weight-level operations.
class WeightExpr {
public:
    enum class Kind { Constant, Variable, DualProduct, Complement, Quotient, FieldMean };

    static WeightExpr constant(Rational value);
    static WeightExpr variable(std::string name);
    static WeightExpr dual_product(WeightExpr r, WeightExpr p);   // r + p - rp
    static WeightExpr complement(WeightExpr p);                   // 1 - p
    static WeightExpr quotient(WeightExpr p, WeightExpr q);       // p / q
    static WeightExpr field_mean(WeightExpr r, WeightExpr p, WeightExpr q);  // (1-r)p + rq

    Kind kind() const noexcept { return node_->kind; }
    const Rational& value() const { return node_->value; }
    const std::string& name() const { return node_->name; }
    const std::vector<WeightExpr>& args() const { return node_->args; }

    void collect_variables(std::set<std::string>& out) const;
    std::string to_string() const;

private:
    struct Node {
        Kind kind;
        Rational value;
        std::string name;
        std::vector<WeightExpr> args;
    };
    explicit WeightExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

// Term over the binary-operation signature: a variable, or w(left, right).
class Term {
public:
    static Term variable(std::string name);
    static Term apply(WeightExpr weight, Term left, Term right);

    bool is_variable() const noexcept { return !node_->left; }
    const std::string& name() const { return node_->name; }
    const WeightExpr& weight() const { return *node_->weight; }
    const Term& left() const { return *node_->left; }
    const Term& right() const { return *node_->right; }

    std::set<std::string> variables() const;
    std::set<std::string> weight_variables() const;
    std::string to_string() const;

private:
    struct Node {
        std::string name;
        std::shared_ptr<const WeightExpr> weight;
        std::shared_ptr<const Term> left;
        std::shared_ptr<const Term> right;
    };
    explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

}  // namespace barycentra
