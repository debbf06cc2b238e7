#include "barycentra/semilattice.hpp"

#include <algorithm>
#include <optional>
#include <map>
#include <sstream>

namespace barycentra {

namespace {

std::string join_words(const std::vector<std::string>& words) {
    std::string out;
    for (std::size_t i = 0; i < words.size(); ++i) out += (i ? ", " : "") + words[i];
    return out;
}

}  // namespace

SemilatticeAxiomError::SemilatticeAxiomError(std::string axiom, std::vector<std::string> witness)
    : Error(axiom + " fails at (" + join_words(witness) + ")"),
      axiom_(std::move(axiom)),
      witness_(std::move(witness)) {}

FiniteSemilattice::FiniteSemilattice(std::vector<std::string> labels,
                                     std::vector<std::vector<std::size_t>> table)
    : labels_(std::move(labels)), table_(std::move(table)) {}

FiniteSemilattice FiniteSemilattice::from_table(std::vector<std::string> labels,
                                                std::vector<std::vector<std::size_t>> table) {
    if (labels.empty()) throw Error("semilattice must have at least one element");
    std::vector<std::string> sorted = labels;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw Error("duplicate semilattice label '" + *std::adjacent_find(sorted.begin(), sorted.end()) +
                    "'");
    if (table.size() != labels.size()) throw Error("join table is not total");
    for (const auto& row : table) {
        if (row.size() != labels.size()) throw Error("join table is not total");
        for (auto v : row)
            if (v >= labels.size()) throw Error("join table entry out of range");
    }
    FiniteSemilattice s(std::move(labels), std::move(table));
    s.validate();
    return s;
}

FiniteSemilattice FiniteSemilattice::from_join_table(std::vector<std::string> elements,
                                                     const std::vector<JoinTriple>& triples) {
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < elements.size(); ++i) index[elements[i]] = i;
    auto lookup = [&](const std::string& l) {
        const auto it = index.find(l);
        if (it == index.end()) throw Error("join table mentions unknown element '" + l + "'");
        return it->second;
    };
    constexpr auto unset = static_cast<std::size_t>(-1);
    std::vector<std::vector<std::size_t>> table(elements.size(),
                                                std::vector<std::size_t>(elements.size(), unset));
    for (const auto& [a, b, c] : triples) {
        auto& slot = table[lookup(a)][lookup(b)];
        const auto value = lookup(c);
        if (slot != unset && slot != value)
            throw Error("join table gives two values for " + a + " v " + b);
        slot = value;
    }
    for (std::size_t i = 0; i < elements.size(); ++i)
        for (std::size_t j = 0; j < elements.size(); ++j)
            if (table[i][j] == unset)
                throw Error("join table is not total: missing " + elements[i] + " v " + elements[j]);
    return from_table(std::move(elements), std::move(table));
}

FiniteSemilattice FiniteSemilattice::from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("elements") || !j.contains("join"))
        throw ParseError("semilattice JSON needs \"elements\" and \"join\"");
    auto elements = j.at("elements").get<std::vector<std::string>>();
    std::vector<JoinTriple> triples;
    for (const auto& t : j.at("join")) {
        if (!t.is_array() || t.size() != 3) throw ParseError("join entries must be [a, b, a v b] triples");
        triples.push_back({t[0].get<std::string>(), t[1].get<std::string>(), t[2].get<std::string>()});
    }
    return from_join_table(std::move(elements), triples);
}

FiniteSemilattice FiniteSemilattice::chain(std::vector<std::string> labels) {
    const std::size_t n = labels.size();
    std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) table[i][j] = std::max(i, j);
    return from_table(std::move(labels), std::move(table));
}

FiniteSemilattice FiniteSemilattice::from_covers(
    std::vector<std::string> labels, const std::vector<std::pair<std::string, std::string>>& covers) {
    const std::size_t n = labels.size();
    auto lookup = [&](const std::string& l) {
        const auto it = std::find(labels.begin(), labels.end(), l);
        if (it == labels.end()) throw Error("cover mentions unknown element '" + l + "'");
        return static_cast<std::size_t>(it - labels.begin());
    };
    std::vector<std::vector<char>> le(n, std::vector<char>(n, 0));
    for (std::size_t i = 0; i < n; ++i) le[i][i] = 1;
    for (const auto& [lo, hi] : covers) le[lookup(lo)][lookup(hi)] = 1;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (le[i][k] && le[k][j]) le[i][j] = 1;
    std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            std::optional<std::size_t> least;
            for (std::size_t u = 0; u < n; ++u) {
                if (!le[a][u] || !le[b][u]) continue;
                bool below_all = true;
                for (std::size_t v = 0; v < n; ++v)
                    if (le[a][v] && le[b][v] && !le[u][v]) below_all = false;
                if (below_all) least = u;
            }
            if (!least) throw Error("elements " + labels[a] + " and " + labels[b] + " have no least upper bound");
            table[a][b] = *least;
        }
    return from_table(std::move(labels), std::move(table));
}

void FiniteSemilattice::validate() const {
    const std::size_t n = size();
    for (std::size_t a = 0; a < n; ++a)
        if (table_[a][a] != a) throw SemilatticeAxiomError("idempotence", {labels_[a]});
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
            if (table_[a][b] != table_[b][a])
                throw SemilatticeAxiomError("commutativity", {labels_[a], labels_[b]});
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c)
                if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
                    throw SemilatticeAxiomError("associativity", {labels_[a], labels_[b], labels_[c]});
}

std::size_t FiniteSemilattice::index_of(const std::string& label) const {
    const auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) throw Error("no element labelled '" + label + "'");
    return static_cast<std::size_t>(it - labels_.begin());
}

std::vector<std::pair<std::size_t, std::size_t>> FiniteSemilattice::covers() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    const std::size_t n = size();
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            if (a == b || !leq(a, b)) continue;
            bool direct = true;
            for (std::size_t c = 0; c < n && direct; ++c)
                if (c != a && c != b && leq(a, c) && leq(c, b)) direct = false;
            if (direct) out.emplace_back(a, b);
        }
    return out;
}

nlohmann::json FiniteSemilattice::to_json() const {
    nlohmann::json join = nlohmann::json::array();
    for (std::size_t a = 0; a < size(); ++a)
        for (std::size_t b = 0; b < size(); ++b)
            join.push_back({labels_[a], labels_[b], labels_[table_[a][b]]});
    return {{"elements", labels_}, {"join", join}};
}

std::optional<std::size_t> find_hom_violation(const FiniteSemilattice& s, const FiniteSemilattice& t,
                                              const std::vector<std::size_t>& map) {
    if (map.size() != s.size()) throw Error("homomorphism map has wrong domain size");
    for (auto v : map)
        if (v >= t.size()) throw Error("homomorphism map leaves the target");
    for (std::size_t a = 0; a < s.size(); ++a)
        for (std::size_t b = 0; b < s.size(); ++b)
            if (map[s.join(a, b)] != t.join(map[a], map[b])) return a * s.size() + b;
    return std::nullopt;
}

SemilatticeHom::SemilatticeHom(const FiniteSemilattice& source, const FiniteSemilattice& target,
                               std::vector<std::size_t> map)
    : map_(std::move(map)) {
    if (const auto bad = find_hom_violation(source, target, map_)) {
        const auto a = *bad / source.size(), b = *bad % source.size();
        throw Error("map does not preserve " + source.label(a) + " v " + source.label(b));
    }
}

namespace {

struct Profile {
    std::size_t below = 0;
    std::size_t above = 0;
    friend bool operator==(const Profile&, const Profile&) = default;
};

std::vector<Profile> profiles(const FiniteSemilattice& s) {
    std::vector<Profile> out(s.size());
    for (std::size_t a = 0; a < s.size(); ++a)
        for (std::size_t b = 0; b < s.size(); ++b)
            if (s.leq(b, a)) {
                ++out[a].below;
                ++out[b].above;
            }
    return out;
}

bool extend(const FiniteSemilattice& s, const FiniteSemilattice& t, const std::vector<Profile>& ps,
            const std::vector<Profile>& pt, std::vector<std::size_t>& map, std::vector<bool>& used,
            std::size_t next) {
    if (next == s.size()) return true;
    for (std::size_t cand = 0; cand < t.size(); ++cand) {
        if (used[cand] || !(ps[next] == pt[cand])) continue;
        map[next] = cand;
        bool ok = true;
        for (std::size_t a = 0; a <= next && ok; ++a)
            for (std::size_t b = 0; b <= next && ok; ++b) {
                const std::size_t j = s.join(a, b);
                if (j <= next && map[j] != t.join(map[a], map[b])) ok = false;
            }
        if (!ok) continue;
        used[cand] = true;
        if (extend(s, t, ps, pt, map, used, next + 1)) return true;
        used[cand] = false;
    }
    return false;
}

}  // namespace

std::optional<std::vector<std::size_t>> find_isomorphism(const FiniteSemilattice& s,
                                                         const FiniteSemilattice& t) {
    if (s.size() != t.size()) return std::nullopt;
    const auto ps = profiles(s), pt = profiles(t);
    std::vector<std::size_t> map(s.size());
    std::vector<bool> used(t.size(), false);
    if (!extend(s, t, ps, pt, map, used, 0)) return std::nullopt;
    return map;
}

std::string to_dot(const FiniteSemilattice& s, const std::string& graph_name) {
    std::vector<std::string> nodes = s.labels();
    std::sort(nodes.begin(), nodes.end());
    std::vector<std::pair<std::string, std::string>> edges;
    for (const auto& [a, b] : s.covers()) edges.emplace_back(s.label(a), s.label(b));
    std::sort(edges.begin(), edges.end());

    auto quote = [](const std::string& l) {
        std::string q = "\"";
        for (char c : l) {
            if (c == '"' || c == '\\') q += '\\';
            q += c;
        }
        return q + "\"";
    };
    std::ostringstream out;
    out << "digraph " << quote(graph_name) << " {\n  rankdir=BT;\n";
    for (const auto& n : nodes) out << "  " << quote(n) << ";\n";
    for (const auto& [a, b] : edges) out << "  " << quote(a) << " -> " << quote(b) << ";\n";
    out << "}\n";
    return out.str();
}

SemilatticeModel::SemilatticeModel(FiniteSemilattice s, std::string name)
    : lattice_(std::move(s)), name_(std::move(name)) {
    for (std::size_t i = 0; i < lattice_.size(); ++i) carrier_.push_back(label_element(i));
}

Element SemilatticeModel::apply(const Rational&, const Element& x, const Element& y) const {
    return label_element(lattice_.join(x.tag, y.tag));
}

std::shared_ptr<SemilatticeModel> as_iterated_barycentric(const FiniteSemilattice& s, std::string name) {
    return std::make_shared<SemilatticeModel>(s, std::move(name));
}

}  // namespace barycentra
