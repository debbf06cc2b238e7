#include "barycentra/term.hpp"

namespace barycentra {

WeightExpr WeightExpr::constant(Rational value) {
    return WeightExpr(std::make_shared<const Node>(Node{Kind::Constant, std::move(value), {}, {}}));
}

WeightExpr WeightExpr::variable(std::string name) {
    return WeightExpr(std::make_shared<const Node>(Node{Kind::Variable, 0, std::move(name), {}}));
}

WeightExpr WeightExpr::dual_product(WeightExpr r, WeightExpr p) {
    return WeightExpr(std::make_shared<const Node>(
        Node{Kind::DualProduct, 0, {}, {std::move(r), std::move(p)}}));
}

WeightExpr WeightExpr::complement(WeightExpr p) {
    return WeightExpr(std::make_shared<const Node>(Node{Kind::Complement, 0, {}, {std::move(p)}}));
}

WeightExpr WeightExpr::quotient(WeightExpr p, WeightExpr q) {
    return WeightExpr(
        std::make_shared<const Node>(Node{Kind::Quotient, 0, {}, {std::move(p), std::move(q)}}));
}

WeightExpr WeightExpr::field_mean(WeightExpr r, WeightExpr p, WeightExpr q) {
    return WeightExpr(std::make_shared<const Node>(
        Node{Kind::FieldMean, 0, {}, {std::move(r), std::move(p), std::move(q)}}));
}

void WeightExpr::collect_variables(std::set<std::string>& out) const {
    if (kind() == Kind::Variable) out.insert(name());
    for (const auto& a : args()) a.collect_variables(out);
}

std::string WeightExpr::to_string() const {
    switch (kind()) {
    case Kind::Constant: return value().str();
    case Kind::Variable: return name();
    case Kind::DualProduct: return "(" + args()[0].to_string() + " o " + args()[1].to_string() + ")";
    case Kind::Complement: return "(1-" + args()[0].to_string() + ")";
    case Kind::Quotient: return "(" + args()[0].to_string() + "/" + args()[1].to_string() + ")";
    case Kind::FieldMean:
        return args()[0].to_string() + "[" + args()[1].to_string() + "," + args()[2].to_string() + "]";
    }
    return {};
}

Term Term::variable(std::string name) {
    return Term(std::make_shared<const Node>(Node{std::move(name), nullptr, nullptr, nullptr}));
}

Term Term::apply(WeightExpr weight, Term left, Term right) {
    return Term(std::make_shared<const Node>(Node{{},
                                                  std::make_shared<const WeightExpr>(std::move(weight)),
                                                  std::make_shared<const Term>(std::move(left)),
                                                  std::make_shared<const Term>(std::move(right))}));
}

std::set<std::string> Term::variables() const {
    if (is_variable()) return {name()};
    auto out = left().variables();
    out.merge(right().variables());
    return out;
}

std::set<std::string> Term::weight_variables() const {
    std::set<std::string> out;
    if (is_variable()) return out;
    weight().collect_variables(out);
    out.merge(left().weight_variables());
    out.merge(right().weight_variables());
    return out;
}

std::string Term::to_string() const {
    if (is_variable()) return name();
    return weight().to_string() + "(" + left().to_string() + "," + right().to_string() + ")";
}

}  // namespace barycentra
