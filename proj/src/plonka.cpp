#include "barycentra/plonka.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "barycentra/parallel.hpp"

namespace barycentra {

// ---------------------------------------------------------------- AffineMap

AffineMap AffineMap::identity(std::size_t dim) { return {identity_matrix(dim), Vec(dim, 0), dim}; }

AffineMap AffineMap::constant(std::size_t source_dim, Vec value) {
    const std::size_t rows = value.size();
    return {Matrix(rows, Vec(source_dim, 0)), std::move(value), source_dim};
}

Vec AffineMap::operator()(const Vec& x) const {
    if (x.size() != source_dim)
        throw DimensionMismatch("affine map expects dimension " + std::to_string(source_dim) + ", got " +
                                std::to_string(x.size()));
    return add(multiply(matrix, x), offset);
}

AffineMap AffineMap::after(const AffineMap& first) const {
    return {multiply(matrix, first.matrix, source_dim), (*this)(first.offset), first.source_dim};
}

// -------------------------------------------------------------------- Fiber

Fiber Fiber::polytope(Polytope p, std::vector<std::string> vertex_names) {
    if (!vertex_names.empty() && vertex_names.size() != p.size())
        throw Error("fiber has " + std::to_string(p.size()) + " vertices but " +
                    std::to_string(vertex_names.size()) + " names");
    Fiber f;
    f.kind_ = Kind::Polytope;
    f.dim_ = p.ambient_dim();
    f.polytope_ = std::move(p);
    f.names_ = std::move(vertex_names);
    return f;
}

Fiber Fiber::affine_subspace(Vec basepoint, Matrix basis, std::string display_name) {
    for (const auto& b : basis)
        if (b.size() != basepoint.size()) throw DimensionMismatch("basis vector dimension mismatch");
    if (rank(basis) != basis.size()) throw Error("affine fiber basis is not linearly independent");
    Fiber f;
    f.kind_ = Kind::AffineSubspace;
    f.dim_ = basepoint.size();
    f.base_ = std::move(basepoint);
    f.basis_ = std::move(basis);
    f.display_ = std::move(display_name);
    return f;
}

Fiber Fiber::singleton(Vec point, std::string name) {
    Fiber f;
    f.kind_ = Kind::Singleton;
    f.dim_ = point.size();
    f.base_ = std::move(point);
    if (!name.empty()) f.names_ = {std::move(name)};
    return f;
}

Fiber Fiber::from_json(const nlohmann::json& j) {
    const auto kind = j.value("kind", std::string("polytope"));
    if (kind == "polytope") {
        std::vector<std::string> names;
        if (j.contains("names")) names = j.at("names").get<std::vector<std::string>>();
        return polytope(Polytope::from_json(j), std::move(names));
    }
    if (kind == "affine") {
        Matrix basis;
        if (j.contains("basis"))
            for (const auto& b : j.at("basis")) basis.push_back(barycentra::parse_point(b));
        return affine_subspace(barycentra::parse_point(j.at("basepoint")), std::move(basis),
                               j.value("name", std::string()));
    }
    if (kind == "singleton") return singleton(barycentra::parse_point(j.at("point")), j.value("name", std::string()));
    throw ParseError("unknown fiber kind '" + kind + "'");
}

nlohmann::json Fiber::to_json() const {
    switch (kind_) {
    case Kind::Polytope: {
        auto j = polytope_->to_json();
        j["kind"] = "polytope";
        if (!names_.empty()) j["names"] = names_;
        return j;
    }
    case Kind::AffineSubspace: {
        nlohmann::json basis = nlohmann::json::array();
        for (const auto& b : basis_) basis.push_back(point_to_json(b));
        nlohmann::json j{{"kind", "affine"}, {"basepoint", point_to_json(base_)}, {"basis", basis}};
        if (!display_.empty()) j["name"] = display_;
        return j;
    }
    case Kind::Singleton: {
        nlohmann::json j{{"kind", "singleton"}, {"point", point_to_json(base_)}};
        if (!names_.empty()) j["name"] = names_.front();
        return j;
    }
    }
    return {};
}

const Polytope& Fiber::polytope() const {
    if (!polytope_) throw Error("fiber is not a polytope");
    return *polytope_;
}

bool Fiber::contains(const Vec& p) const {
    if (p.size() != dim_) return false;
    switch (kind_) {
    case Kind::Polytope: return polytope_->contains(p);
    case Kind::Singleton: return p == base_;
    case Kind::AffineSubspace: {
        Matrix m = basis_;
        m.push_back(subtract(p, base_));
        return rank(std::move(m)) == basis_.size();
    }
    }
    return false;
}

std::vector<Vec> Fiber::generators() const {
    switch (kind_) {
    case Kind::Polytope: return polytope_->vertices();
    case Kind::Singleton: return {base_};
    case Kind::AffineSubspace: {
        std::vector<Vec> out{base_};
        for (const auto& b : basis_) out.push_back(add(base_, b));
        return out;
    }
    }
    return {};
}

Vec Fiber::sample(std::mt19937_64& rng) const {
    switch (kind_) {
    case Kind::Polytope: return sample_point(*polytope_, rng);
    case Kind::Singleton: return base_;
    case Kind::AffineSubspace: {
        Vec p = base_;
        for (const auto& b : basis_) p = add(p, scale(random_rational(rng, 10), b));
        return p;
    }
    }
    return {};
}

std::string Fiber::format_point(const Vec& p) const {
    if (kind_ == Kind::Singleton && !names_.empty() && p == base_) return names_.front();
    if (kind_ == Kind::Polytope && !names_.empty()) {
        const auto& c = *polytope_;
        for (std::size_t i = 0; i < c.size(); ++i)
            if (c.vertex(i) == p) return names_[i];
        if (c.affine_dim() + 1 == c.size()) {
            // simplex: barycentric coordinates are unique
            if (const auto coords = c.barycentric_coordinates(p)) {
                std::vector<std::size_t> support;
                for (std::size_t i = 0; i < coords->size(); ++i)
                    if ((*coords)[i] != 0) support.push_back(i);
                const bool uniform = std::all_of(support.begin(), support.end(),
                                                 [&](std::size_t i) { return (*coords)[i] == (*coords)[support[0]]; });
                std::string out;
                if (uniform) {
                    out = "(";
                    for (std::size_t k = 0; k < support.size(); ++k) out += (k ? "+" : "") + names_[support[k]];
                    return out + ")/" + std::to_string(support.size());
                }
                for (std::size_t k = 0; k < support.size(); ++k)
                    out += (k ? "+" : "") + (*coords)[support[k]].str() + "*" + names_[support[k]];
                return out;
            }
        }
    }
    return to_string(p);
}

Vec Fiber::parse_point(const std::string& text) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == text) return kind_ == Kind::Polytope ? polytope_->vertex(i) : base_;
    std::string body = text;
    if (!body.empty() && body.front() == '(' && body.back() == ')') body = body.substr(1, body.size() - 2);
    Vec p;
    std::stringstream in(body);
    for (std::string part; std::getline(in, part, ',');) p.push_back(parse_rational(part));
    if (p.size() != dim_) throw ParseError("point '" + text + "' does not have dimension " + std::to_string(dim_));
    return p;
}

std::string Fiber::cell_descriptor(VertexSet face) const {
    auto name = [&](std::size_t i) {
        return i < names_.size() ? names_[i] : to_string(polytope_->vertex(i));
    };
    switch (kind_) {
    case Kind::Singleton: return "{" + (names_.empty() ? to_string(base_) : names_.front()) + "}";
    case Kind::AffineSubspace: {
        if (!display_.empty()) return display_;
        std::string out = to_string(base_) + "+span{";
        for (std::size_t i = 0; i < basis_.size(); ++i) out += (i ? "," : "") + to_string(basis_[i]);
        return out + "}";
    }
    case Kind::Polytope: {
        const auto idx = members(face);
        if (idx.size() == 1) return "{" + name(idx[0]) + "}";
        if (idx.size() == 2) return "]" + name(idx[0]) + "," + name(idx[1]) + "[";
        std::string out = "relint conv{";
        for (std::size_t k = 0; k < idx.size(); ++k) out += (k ? "," : "") + name(idx[k]);
        return out + "}";
    }
    }
    return {};
}

// --------------------------------------------------------------- PlonkaSum

PlonkaError::PlonkaError(std::string kind, const std::string& message)
    : Error(kind + ": " + message), kind_(std::move(kind)) {}

namespace {

bool agree_on(const std::vector<Vec>& gens, const AffineMap& a, const AffineMap& b) {
    return std::all_of(gens.begin(), gens.end(), [&](const Vec& g) { return a(g) == b(g); });
}

// Image of the source fiber must lie in the target fiber.
void check_image(const Fiber& source, const Fiber& target, const AffineMap& map, const std::string& from,
                 const std::string& to) {
    if (map.source_dim != source.dim() || map.offset.size() != target.dim() ||
        map.matrix.size() != target.dim())
        throw PlonkaError("image", "transition " + from + "->" + to + " has the wrong shape");
    for (const auto& row : map.matrix)
        if (row.size() != source.dim())
            throw PlonkaError("image", "transition " + from + "->" + to + " has the wrong shape");
    if (source.kind() == Fiber::Kind::AffineSubspace) {
        const Vec img = map(source.basepoint());
        if (!target.contains(img))
            throw PlonkaError("image", "transition " + from + "->" + to + " sends " + to_string(source.basepoint()) +
                                           " to " + to_string(img) + " outside the target fiber");
        for (const auto& d : source.directions()) {
            const Vec dir = multiply(map.matrix, d);
            if (!target.contains(add(img, dir)))
                throw PlonkaError("image", "transition " + from + "->" + to + " maps direction " + to_string(d) +
                                               " out of the target fiber");
        }
        return;
    }
    for (const auto& g : source.generators()) {
        const Vec img = map(g);
        if (!target.contains(img))
            throw PlonkaError("image", "transition " + from + "->" + to + " sends " + to_string(g) + " to " +
                                           to_string(img) + " outside the target fiber");
    }
}

}  // namespace

PlonkaSum PlonkaSum::build(FiniteSemilattice index, std::vector<Fiber> fibers,
                           std::vector<TransitionMap> transitions) {
    const std::size_t n = index.size();
    if (fibers.size() != n)
        throw Error("Plonka sum has " + std::to_string(n) + " index elements but " + std::to_string(fibers.size()) +
                    " fibers");
    PlonkaSum sum;
    sum.index_ = std::move(index);
    sum.fibers_ = std::move(fibers);
    const auto& idx = sum.index_;

    std::vector<std::vector<std::pair<std::size_t, AffineMap>>> edges(n);
    for (auto& t : transitions) {
        const std::size_t s = idx.index_of(t.from), u = idx.index_of(t.to);
        if (!idx.leq(s, u))
            throw PlonkaError("order", "transition " + t.from + "->" + t.to + " goes against the semilattice order");
        check_image(sum.fibers_[s], sum.fibers_[u], t.map, t.from, t.to);
        edges[s].emplace_back(u, std::move(t.map));
    }

    sum.maps_.assign(n, std::vector<std::optional<AffineMap>>(n));
    for (std::size_t s = 0; s < n; ++s) {
        const auto gens = sum.fibers_[s].generators();
        auto& row = sum.maps_[s];
        row[s] = AffineMap::identity(sum.fibers_[s].dim());
        std::deque<std::size_t> queue{s};
        while (!queue.empty()) {
            const std::size_t t = queue.front();
            queue.pop_front();
            for (const auto& [u, edge] : edges[t]) {
                AffineMap composed = edge.after(*row[t]);
                if (!row[u]) {
                    row[u] = std::move(composed);
                    queue.push_back(u);
                } else if (!agree_on(gens, *row[u], composed)) {
                    throw PlonkaError("functoriality", "paths from " + idx.label(s) + " to " + idx.label(u) +
                                                           " disagree (via " + idx.label(t) + ")");
                }
            }
        }
        for (std::size_t u = 0; u < n; ++u)
            if (idx.leq(s, u) && !row[u])
                throw PlonkaError("missing-transition",
                                  "no transition path from " + idx.label(s) + " to " + idx.label(u));
    }
    if (const auto bad = sum.find_functoriality_violation()) {
        const auto [s, t, u] = *bad;
        throw PlonkaError("functoriality", "phi(" + idx.label(t) + "," + idx.label(u) + ") o phi(" + idx.label(s) +
                                               "," + idx.label(t) + ") != phi(" + idx.label(s) + "," +
                                               idx.label(u) + ")");
    }
    return sum;
}

std::optional<std::array<std::size_t, 3>> PlonkaSum::find_functoriality_violation() const {
    const std::size_t n = size();
    for (std::size_t s = 0; s < n; ++s) {
        const auto gens = fibers_[s].generators();
        for (std::size_t t = 0; t < n; ++t) {
            if (!index_.leq(s, t)) continue;
            for (std::size_t u = 0; u < n; ++u) {
                if (!index_.leq(t, u)) continue;
                if (!agree_on(gens, transition(t, u).after(transition(s, t)), transition(s, u)))
                    return std::array<std::size_t, 3>{s, t, u};
            }
        }
    }
    return std::nullopt;
}

PlonkaSum PlonkaSum::from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("index") || !j.contains("fibers"))
        throw ParseError("Plonka sum JSON needs \"index\" and \"fibers\"");
    auto index = FiniteSemilattice::from_json(j.at("index"));
    std::vector<Fiber> fibers;
    for (const auto& label : index.labels()) {
        if (!j.at("fibers").contains(label)) throw ParseError("no fiber for index element '" + label + "'");
        fibers.push_back(Fiber::from_json(j.at("fibers").at(label)));
    }
    std::vector<TransitionMap> transitions;
    if (j.contains("transitions")) {
        for (const auto& t : j.at("transitions")) {
            const auto from = t.at("from").get<std::string>();
            const auto to = t.at("to").get<std::string>();
            const std::size_t sd = fibers.at(index.index_of(from)).dim();
            AffineMap map;
            map.source_dim = sd;
            for (const auto& row : t.at("matrix")) map.matrix.push_back(parse_point(row));
            map.offset = parse_point(t.at("offset"));
            transitions.push_back({from, to, std::move(map)});
        }
    }
    return build(std::move(index), std::move(fibers), std::move(transitions));
}

nlohmann::json PlonkaSum::to_json() const {
    nlohmann::json fibers = nlohmann::json::object();
    for (std::size_t s = 0; s < size(); ++s) fibers[index_.label(s)] = fibers_[s].to_json();
    nlohmann::json transitions = nlohmann::json::array();
    for (const auto& [s, u] : index_.covers()) {
        const auto& m = transition(s, u);
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& r : m.matrix) rows.push_back(point_to_json(r));
        transitions.push_back({{"from", index_.label(s)},
                               {"to", index_.label(u)},
                               {"matrix", rows},
                               {"offset", point_to_json(m.offset)}});
    }
    return {{"index", index_.to_json()}, {"fibers", fibers}, {"transitions", transitions}};
}

const AffineMap& PlonkaSum::transition(std::size_t s, std::size_t t) const {
    const auto& m = maps_.at(s).at(t);
    if (!m) throw Error("no transition " + index_.label(s) + "->" + index_.label(t) + ": not comparable");
    return *m;
}

bool PlonkaSum::contains(const Element& e) const { return e.tag < size() && fibers_[e.tag].contains(e.point); }

Element PlonkaSum::transport(const Element& x, std::size_t target) const {
    return point_element(transition(x.tag, target)(x.point), target);
}

Element PlonkaSum::eval(const Rational& p, const Element& x, const Element& y) const {
    const std::size_t u = index_.join(x.tag, y.tag);
    return point_element(affine_mean(p, transition(x.tag, u)(x.point), transition(y.tag, u)(y.point)), u);
}

std::string PlonkaSum::format(const Element& e) const {
    return index_.label(e.tag) + ":" + fibers_.at(e.tag).format_point(e.point);
}

Element PlonkaSum::parse_element(const std::string& text) const {
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw ParseError("element '" + text + "' is not of the form label:point");
    const std::size_t s = index_.index_of(text.substr(0, colon));
    Element e = point_element(fibers_[s].parse_point(text.substr(colon + 1)), s);
    if (!contains(e)) throw Error("point " + text + " is not in its fiber");
    return e;
}

nlohmann::json PlonkaSum::element_to_json(const Element& e) const {
    return {{"fiber", index_.label(e.tag)}, {"point", point_to_json(e.point)}, {"text", format(e)}};
}

Element PlonkaSum::sample(std::mt19937_64& rng) const {
    const auto s = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(size()) - 1));
    return point_element(fibers_[s].sample(rng), s);
}

PlonkaSubalgebraModel::PlonkaSubalgebraModel(PlonkaSum sum, ElementPredicate member, std::string name)
    : sum_(std::move(sum)), member_(std::move(member)), name_(std::move(name)) {}

Element PlonkaSubalgebraModel::sample(std::mt19937_64& rng) const {
    for (int attempt = 0; attempt < 10000; ++attempt) {
        Element e = sum_.sample(rng);
        if (member_(e)) return e;
    }
    throw Error("could not sample an element of subalgebra " + name_);
}

// ----------------------------------------------------------------- replicas

namespace {

std::vector<VertexSet> fiber_cells(const Fiber& f) {
    if (f.kind() != Fiber::Kind::Polytope) return {0};
    std::vector<VertexSet> out;
    const FaceLattice lattice = face_lattice(f.polytope());
    for (const auto& face : lattice.faces()) out.push_back(face.vertices);
    return out;
}

VertexSet cell_of(const Fiber& f, const Vec& p) {
    if (f.kind() != Fiber::Kind::Polytope) return 0;
    return carrier_face(f.polytope(), p).vertices;
}

Vec representative(const Fiber& f, VertexSet cell, std::size_t k, std::mt19937_64& rng) {
    switch (f.kind()) {
    case Fiber::Kind::Singleton: return f.basepoint();
    case Fiber::Kind::AffineSubspace: return k == 0 ? f.basepoint() : f.sample(rng);
    case Fiber::Kind::Polytope:
        if (k == 0) return barycenter(points_of(f.polytope(), cell));
        return sample_relative_interior(f.polytope(), cell, rng);
    }
    return {};
}

// No proper nonempty wall inside the cell, asserted through the convex module.
std::string open_certificate(const Fiber& f, VertexSet cell) {
    switch (f.kind()) {
    case Fiber::Kind::Singleton: return "singleton";
    case Fiber::Kind::AffineSubspace: return "affine subspace";
    case Fiber::Kind::Polytope: break;
    }
    const auto pts = points_of(f.polytope(), cell);
    if (pts.size() == 1) return "singleton";
    const Polytope face(pts);
    const auto verdict = wall_test(face, {{barycenter(pts)}, true});
    if (verdict.wall) throw ReplicaError("cell " + f.cell_descriptor(cell) + " is not open");
    return "relative interior";
}

struct ClassKey {
    std::size_t fiber;
    VertexSet cell;
    friend bool operator==(const ClassKey&, const ClassKey&) = default;
};

std::string class_label(const FiniteSemilattice& index, const Fiber& f, std::size_t s, VertexSet cell) {
    return index.label(s) + ":" + f.cell_descriptor(cell);
}

void validate_homomorphism(const ReplicaResult& r, const Model& model, std::uint64_t seed, std::size_t samples,
                           bool check_closure) {
    auto fails = [&](std::size_t i) {
        auto rng = trial_rng(seed, i);
        const Element x = model.sample(rng), y = model.sample(rng);
        const Rational p = random_weight(rng);
        const Element z = model.apply(p, x, y);
        if (check_closure && !model.contains(z)) return true;
        return r.classify(z) != r.semilattice.join(r.classify(x), r.classify(y));
    };
    if (const auto bad = find_first(samples, fails, Execution::Parallel)) {
        auto rng = trial_rng(seed, *bad);
        const Element x = model.sample(rng), y = model.sample(rng);
        const Rational p = random_weight(rng);
        const Element z = model.apply(p, x, y);
        const std::string what = check_closure && !model.contains(z) ? "subalgebra not closed" : "classifier is not a homomorphism";
        throw ReplicaError(what + ": " + p.str() + "(" + model.format(x) + ", " + model.format(y) + ") = " +
                           model.format(z));
    }
}

}  // namespace

std::size_t ReplicaResult::classify(const Element& e) const {
    const VertexSet cell = cell_of(sum.fiber(e.tag), e.point);
    for (std::size_t i = 0; i < classes.size(); ++i)
        if (classes[i].fiber == e.tag && classes[i].face == cell) return i;
    throw ReplicaError("element " + sum.format(e) + " belongs to no replica class");
}

nlohmann::json ReplicaResult::to_json() const {
    nlohmann::json cls = nlohmann::json::array();
    for (std::size_t i = 0; i < classes.size(); ++i)
        cls.push_back({{"label", semilattice.label(i)},
                       {"fiber", sum.index().label(classes[i].fiber)},
                       {"descriptor", classes[i].descriptor},
                       {"open_certificate", classes[i].open_certificate}});
    return {{"class_count", classes.size()},
            {"classes", cls},
            {"semilattice", semilattice.to_json()},
            {"validated_samples", validated_samples}};
}

ReplicaResult refined_replica(const PlonkaSum& sum, std::uint64_t seed, std::size_t samples) {
    std::vector<ClassKey> keys;
    std::vector<ReplicaClass> classes;
    std::vector<std::string> labels;
    for (std::size_t s = 0; s < sum.size(); ++s) {
        const Fiber& f = sum.fiber(s);
        for (const VertexSet cell : fiber_cells(f)) {
            keys.push_back({s, cell});
            classes.push_back({s, cell, f.cell_descriptor(cell), open_certificate(f, cell)});
            labels.push_back(class_label(sum.index(), f, s, cell));
        }
    }

    const std::size_t n = keys.size();
    std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(n));
    auto find_key = [&](const ClassKey& k) {
        const auto it = std::find(keys.begin(), keys.end(), k);
        if (it == keys.end()) throw ReplicaError("internal: unknown cell");
        return static_cast<std::size_t>(it - keys.begin());
    };
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            auto rng = trial_rng(seed, a * n + b);
            const std::size_t u = sum.index().join(keys[a].fiber, keys[b].fiber);
            std::optional<std::size_t> result;
            for (std::size_t k = 0; k < 3; ++k) {
                const Element x = point_element(representative(sum.fiber(keys[a].fiber), keys[a].cell, k, rng), keys[a].fiber);
                const Element y = point_element(representative(sum.fiber(keys[b].fiber), keys[b].cell, k, rng), keys[b].fiber);
                const Rational p = k == 0 ? Rational(1, 2) : random_open_unit(rng);
                const Element z = sum.eval(p, x, y);
                const std::size_t c = find_key({u, cell_of(sum.fiber(u), z.point)});
                if (result && *result != c)
                    throw ReplicaError("representative-dependent join for " + labels[a] + " v " + labels[b] +
                                       ": invalid Plonka sum input");
                result = c;
            }
            table[a][b] = *result;
        }

    ReplicaResult r{FiniteSemilattice::from_table(labels, table), std::move(classes), sum, samples};
    const PlonkaModel model(sum, "sum");
    validate_homomorphism(r, model, seed, samples, false);
    return r;
}

ReplicaResult restrict_replica(const PlonkaSum& sum, const ElementPredicate& member, const ReplicaResult& replica,
                               std::uint64_t seed, std::size_t samples) {
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < replica.classes.size(); ++i) {
        const auto& cls = replica.classes[i];
        auto rng = trial_rng(seed, i);
        for (std::size_t k = 0; k < 3; ++k) {
            const Element rep = point_element(representative(sum.fiber(cls.fiber), cls.face, k, rng), cls.fiber);
            if (member(rep)) {
                kept.push_back(i);
                break;
            }
        }
    }
    if (kept.empty()) throw ReplicaError("subalgebra meets no replica class");

    std::vector<std::string> labels;
    std::vector<ReplicaClass> classes;
    for (auto i : kept) {
        labels.push_back(replica.semilattice.label(i));
        classes.push_back(replica.classes[i]);
    }
    std::vector<std::vector<std::size_t>> table(kept.size(), std::vector<std::size_t>(kept.size()));
    for (std::size_t a = 0; a < kept.size(); ++a)
        for (std::size_t b = 0; b < kept.size(); ++b) {
            const std::size_t j = replica.semilattice.join(kept[a], kept[b]);
            const auto it = std::find(kept.begin(), kept.end(), j);
            if (it == kept.end())
                throw ReplicaError("subalgebra not closed: " + labels[a] + " v " + labels[b] + " = " +
                                   replica.semilattice.label(j) + " was dropped");
            table[a][b] = static_cast<std::size_t>(it - kept.begin());
        }

    ReplicaResult r{FiniteSemilattice::from_table(labels, table), std::move(classes), sum, samples};
    const PlonkaSubalgebraModel model(sum, member, "subalgebra");
    validate_homomorphism(r, model, seed, samples, true);
    return r;
}

PlonkaSum single_fiber_sum(const Polytope& c, std::vector<std::string> vertex_names) {
    if (vertex_names.empty()) vertex_names = default_vertex_names(c);
    return PlonkaSum::build(FiniteSemilattice::chain({"0"}), {Fiber::polytope(c, std::move(vertex_names))}, {});
}

nlohmann::json PolytopePlonkaReport::to_json() const {
    return {{"samples", samples},
            {"agree", agree},
            {"tags_agree", tags_agree},
            {"summary", "agree=" + std::to_string(agree) + "/" + std::to_string(samples)},
            {"result", pass() ? "pass" : "fail"}};
}

PolytopePlonka polytope_as_plonka(const Polytope& c, std::size_t samples, std::uint64_t seed,
                                  const std::vector<std::string>& vertex_names) {
    FaceLattice lattice = face_lattice(c);
    const auto names_in = vertex_names.empty() ? default_vertex_names(c) : vertex_names;
    FiniteSemilattice index = lattice.as_semilattice(names_in);
    std::vector<Fiber> fibers;
    for (const auto& face : lattice.faces()) {
        std::vector<std::string> names;
        for (auto i : members(face.vertices))
            names.push_back(names_in[i]);
        fibers.push_back(Fiber::polytope(Polytope(c.ambient_dim(), points_of(c, face.vertices)), std::move(names)));
    }
    std::vector<TransitionMap> transitions;
    for (const auto& [s, u] : index.covers())
        transitions.push_back({index.label(s), index.label(u), AffineMap::identity(c.ambient_dim())});
    PlonkaSum sum = PlonkaSum::build(index, std::move(fibers), std::move(transitions));

    PolytopePlonkaReport report;
    report.samples = samples;
    std::vector<char> agree(samples, 0), tags(samples, 0);
#pragma omp parallel for schedule(dynamic, 8)
    for (long long k = 0; k < static_cast<long long>(samples); ++k) {
        const auto i = static_cast<std::size_t>(k);
        auto rng = trial_rng(seed, i);
        const Point x = sample_point(c, rng), y = sample_point(c, rng);
        const Rational p = random_weight(rng);
        const std::size_t tx = lattice.index_of(carrier_face(c, x).vertices);
        const std::size_t ty = lattice.index_of(carrier_face(c, y).vertices);
        const Element z = sum.eval(p, point_element(x, tx), point_element(y, ty));
        const Point direct = affine_mean(p, x, y);
        agree[i] = z.point == direct;
        tags[i] = z.tag == lattice.join(tx, ty) && lattice.face(z.tag).vertices == carrier_face(c, direct).vertices;
    }
    report.agree = static_cast<std::size_t>(std::count(agree.begin(), agree.end(), 1));
    report.tags_agree = static_cast<std::size_t>(std::count(tags.begin(), tags.end(), 1));
    return {std::move(sum), std::move(lattice), report};
}

}  // namespace barycentra
