#include "barycentra/model.hpp"

#include <algorithm>

#include "barycentra/error.hpp"
#include "barycentra/random.hpp"

namespace barycentra {

const std::vector<Element>& Model::elements() const {
    throw Error("model " + name() + " has an infinite carrier");
}

Element Model::sample(std::mt19937_64& rng) const {
    const auto& all = elements();
    return all[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(all.size()) - 1))];
}

bool FiniteModel::contains(const Element& e) const {
    return std::find(carrier_.begin(), carrier_.end(), e) != carrier_.end();
}

Element FiniteModel::sample(std::mt19937_64& rng) const { return Model::sample(rng); }

}  // namespace barycentra
