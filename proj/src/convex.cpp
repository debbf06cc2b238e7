#include "barycentra/convex.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <set>

#include "barycentra/lp.hpp"
#include "barycentra/random.hpp"

namespace barycentra {

namespace {

// Columns are the points plus a row of ones: sum l_i p_i = x, sum l_i = 1.
lp::Problem hull_problem(const std::vector<Point>& pts, const Point& x) {
    const std::size_t dim = x.size();
    lp::Problem prob;
    prob.a.assign(dim + 1, Vec(pts.size(), 0));
    for (std::size_t j = 0; j < pts.size(); ++j) {
        for (std::size_t i = 0; i < dim; ++i) prob.a[i][j] = pts[j][i];
        prob.a[dim][j] = 1;
    }
    prob.b = x;
    prob.b.push_back(1);
    prob.c.assign(pts.size(), 0);
    return prob;
}

bool in_hull(const std::vector<Point>& pts, const Point& x) {
    if (pts.empty()) return false;
    return lp::solve(hull_problem(pts, x)).status == lp::Status::Optimal;
}

void for_each_subset_of_size(std::size_t n, std::size_t k, const std::function<void(VertexSet)>& f) {
    std::vector<std::size_t> idx(k);
    std::function<void(std::size_t, std::size_t, VertexSet)> rec = [&](std::size_t start, std::size_t depth,
                                                                       VertexSet acc) {
        if (depth == k) {
            f(acc);
            return;
        }
        for (std::size_t i = start; i + (k - depth) <= n; ++i) rec(i + 1, depth + 1, acc | (VertexSet{1} << i));
    };
    rec(0, 0, 0);
}

bool subset_of(VertexSet a, VertexSet b) { return (a & ~b) == 0; }

}  // namespace

DuplicateVertexError::DuplicateVertexError(std::size_t f, std::size_t s, const Point& p)
    : Error("duplicate vertex " + to_string(p) + " at positions " + std::to_string(f) + " and " +
            std::to_string(s)),
      first(f),
      second(s) {}

NonExtremeVertexError::NonExtremeVertexError(std::size_t i, const Point& p)
    : Error("vertex " + std::to_string(i) + " " + to_string(p) +
            " is not extreme: it lies in the hull of the other vertices"),
      index(i) {}

namespace {
std::size_t leading_dim(const std::vector<Point>& v) { return v.empty() ? 0 : v.front().size(); }
}  // namespace

Polytope::Polytope(std::vector<Point> vertices) : Polytope(leading_dim(vertices), vertices) {}

Polytope::Polytope(std::size_t ambient_dim, std::vector<Point> vertices)
    : ambient_dim_(ambient_dim), vertices_(std::move(vertices)) {
    if (vertices_.empty()) throw Error("a polytope needs at least one vertex");
    if (vertices_.size() > 64) throw Error("polytopes are limited to 64 vertices");
    for (const auto& v : vertices_)
        if (v.size() != ambient_dim_)
            throw DimensionMismatch("vertex " + to_string(v) + " does not have dimension " +
                                    std::to_string(ambient_dim_));
    for (std::size_t i = 0; i < vertices_.size(); ++i)
        for (std::size_t j = i + 1; j < vertices_.size(); ++j)
            if (vertices_[i] == vertices_[j]) throw DuplicateVertexError(i, j, vertices_[i]);
    if (vertices_.size() > 1) {
        for (std::size_t i = 0; i < vertices_.size(); ++i) {
            std::vector<Point> others;
            for (std::size_t j = 0; j < vertices_.size(); ++j)
                if (j != i) others.push_back(vertices_[j]);
            if (in_hull(others, vertices_[i])) throw NonExtremeVertexError(i, vertices_[i]);
        }
    }
}

Polytope Polytope::from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("vertices"))
        throw ParseError("polytope JSON needs \"vertices\"");
    std::vector<Point> vs;
    for (const auto& v : j.at("vertices")) vs.push_back(parse_point(v));
    const std::size_t dim =
        j.contains("ambient_dim") ? j.at("ambient_dim").get<std::size_t>() : (vs.empty() ? 0 : vs[0].size());
    return Polytope(dim, std::move(vs));
}

nlohmann::json Polytope::to_json() const {
    nlohmann::json vs = nlohmann::json::array();
    for (const auto& v : vertices_) vs.push_back(point_to_json(v));
    return {{"ambient_dim", ambient_dim_}, {"vertices", vs}};
}

VertexSet Polytope::all() const noexcept {
    return vertices_.size() == 64 ? ~VertexSet{0} : (VertexSet{1} << vertices_.size()) - 1;
}

void Polytope::require_dim(const Point& x) const {
    if (x.size() != ambient_dim_)
        throw DimensionMismatch("point " + to_string(x) + " does not have dimension " +
                                std::to_string(ambient_dim_));
}

bool Polytope::contains(const Point& x) const {
    require_dim(x);
    return in_hull(vertices_, x);
}

std::optional<Vec> Polytope::barycentric_coordinates(const Point& x) const {
    require_dim(x);
    const auto sol = lp::solve(hull_problem(vertices_, x));
    if (sol.status != lp::Status::Optimal) return std::nullopt;
    return sol.z;
}

std::vector<std::size_t> members(VertexSet s) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < 64; ++i)
        if (s & (VertexSet{1} << i)) out.push_back(i);
    return out;
}

std::vector<Point> points_of(const Polytope& c, VertexSet s) {
    std::vector<Point> out;
    for (auto i : members(s)) out.push_back(c.vertex(i));
    return out;
}

std::string face_label(VertexSet s, const std::vector<std::string>& names) {
    std::string out = "{";
    bool first = true;
    for (auto i : members(s)) {
        out += first ? "" : ",";
        out += i < names.size() ? names[i] : "v" + std::to_string(i);
        first = false;
    }
    return out + "}";
}

FaceLattice::FaceLattice(std::vector<Face> faces) : faces_(std::move(faces)) {
    std::sort(faces_.begin(), faces_.end(), [](const Face& a, const Face& b) {
        if (a.dimension != b.dimension) return a.dimension < b.dimension;
        return members(a.vertices) < members(b.vertices);
    });
    const std::size_t n = faces_.size();
    join_.assign(n, std::vector<std::size_t>(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) join_[a][b] = closure(faces_[a].vertices | faces_[b].vertices);
}

std::optional<std::size_t> FaceLattice::find(VertexSet s) const {
    for (std::size_t i = 0; i < faces_.size(); ++i)
        if (faces_[i].vertices == s) return i;
    return std::nullopt;
}

std::size_t FaceLattice::index_of(VertexSet s) const {
    if (const auto i = find(s)) return *i;
    throw Error("vertex set " + face_label(s) + " is not a face");
}

std::optional<std::size_t> FaceLattice::meet(std::size_t a, std::size_t b) const {
    const VertexSet both = faces_[a].vertices & faces_[b].vertices;
    if (both == 0) return std::nullopt;
    return index_of(both);
}

std::size_t FaceLattice::closure(VertexSet s) const {
    std::size_t best = faces_.size();
    for (std::size_t i = 0; i < faces_.size(); ++i) {
        if (!subset_of(s, faces_[i].vertices)) continue;
        if (best == faces_.size() || std::popcount(faces_[i].vertices) < std::popcount(faces_[best].vertices))
            best = i;
    }
    if (best == faces_.size()) throw Error("no face contains " + face_label(s));
    return best;
}

std::vector<std::size_t> FaceLattice::counts_by_dimension() const {
    std::vector<std::size_t> counts;
    for (const auto& f : faces_) {
        if (counts.size() <= f.dimension) counts.resize(f.dimension + 1, 0);
        ++counts[f.dimension];
    }
    return counts;
}

FiniteSemilattice FaceLattice::as_semilattice(const std::vector<std::string>& vertex_names) const {
    std::vector<std::string> labels;
    for (const auto& f : faces_) labels.push_back(face_label(f.vertices, vertex_names));
    return FiniteSemilattice::from_table(std::move(labels), join_);
}

FaceLattice face_lattice(const Polytope& c) {
    const std::size_t n = c.size();
    const auto& vs = c.vertices();
    const std::size_t d = c.affine_dim();
    if (d == 0) return FaceLattice({Face{c.all(), 0}});

    // coordinates inside the affine hull: v_i = v_0 + B coords_i
    Matrix basis_rows;  // d independent directions, as rows
    for (std::size_t i = 1; i < n && basis_rows.size() < d; ++i) {
        Matrix trial = basis_rows;
        trial.push_back(subtract(vs[i], vs[0]));
        if (rank(trial) == trial.size()) basis_rows.push_back(subtract(vs[i], vs[0]));
    }
    Matrix columns(c.ambient_dim(), Vec(d));
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t k = 0; k < c.ambient_dim(); ++k) columns[k][r] = basis_rows[r][k];
    std::vector<Vec> coords;
    for (const auto& v : vs) {
        auto sol = solve_unique(columns, subtract(v, vs[0]));
        if (!sol) throw Error("internal: vertex outside its own affine hull");
        coords.push_back(std::move(*sol));
    }

    // supporting hyperplanes through d affinely independent vertices
    std::set<VertexSet> facets;
    for_each_subset_of_size(n, d, [&](VertexSet subset) {
        const auto idx = members(subset);
        Matrix diffs;
        for (std::size_t i = 1; i < idx.size(); ++i) diffs.push_back(subtract(coords[idx[i]], coords[idx[0]]));
        if (rank(diffs) != d - 1) return;
        const Matrix normal = nullspace(diffs, d);
        if (normal.size() != 1) return;
        const Vec& a = normal.front();
        const Rational offset = dot(a, coords[idx[0]]);
        bool above = false, below = false;
        VertexSet on = 0;
        for (std::size_t v = 0; v < n; ++v) {
            const Rational side = dot(a, coords[v]) - offset;
            if (side > 0) above = true;
            else if (side < 0) below = true;
            else on |= VertexSet{1} << v;
        }
        if (!(above && below)) facets.insert(on);
    });

    std::set<VertexSet> faces(facets.begin(), facets.end());
    for (bool grew = true; grew;) {
        grew = false;
        const std::vector<VertexSet> snapshot(faces.begin(), faces.end());
        for (std::size_t i = 0; i < snapshot.size(); ++i)
            for (std::size_t j = i + 1; j < snapshot.size(); ++j) {
                const VertexSet both = snapshot[i] & snapshot[j];
                if (both != 0 && faces.insert(both).second) grew = true;
            }
    }
    faces.insert(c.all());

    std::vector<Face> out;
    for (auto s : faces) out.push_back(Face{s, affine_rank(points_of(c, s))});
    return FaceLattice(std::move(out));
}

Face carrier_face(const Polytope& c, const Point& x) {
    const auto coords = c.barycentric_coordinates(x);
    if (!coords) throw Error("point " + to_string(x) + " lies outside the polytope");
    VertexSet support = 0;
    for (std::size_t i = 0; i < coords->size(); ++i)
        if ((*coords)[i] > 0) support |= VertexSet{1} << i;
    // a vertex is in the carrier iff its coefficient can be made positive
    for (std::size_t v = 0; v < c.size(); ++v) {
        if (support & (VertexSet{1} << v)) continue;
        auto prob = hull_problem(c.vertices(), x);
        prob.c[v] = 1;
        const auto sol = lp::solve(prob);
        if (sol.status == lp::Status::Optimal && sol.objective > 0)
            for (std::size_t i = 0; i < sol.z.size(); ++i)
                if (sol.z[i] > 0) support |= VertexSet{1} << i;
    }
    return Face{support, affine_rank(points_of(c, support))};
}

WallVerdict wall_test(const Polytope& c, const WallCandidate& w) {
    for (const auto& g : w.generators)
        if (!c.contains(g)) throw Error("wall candidate point " + to_string(g) + " lies outside the polytope");
    if (w.generators.empty()) return {};

    std::vector<Point> gens = w.generators;
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());

    if (!w.convex_hull && gens.size() > 1) {
        // a finite set with two points misses some r(a, b)
        for (std::int64_t den = 2;; ++den) {
            const Rational r(Integer(1), Integer(den));
            const Point m = affine_mean(r, gens[0], gens[1]);
            if (!std::binary_search(gens.begin(), gens.end(), m)) {
                WallVerdict v{false, gens[0], gens[1], r, "not closed: r(a,b) leaves the set"};
                return v;
            }
        }
    }

    // With w* in the relative interior of W: W is a wall iff no vertex outside
    // W can be extended through w* inside the polytope.
    const Point center = barycenter(gens);
    const std::size_t dim = c.ambient_dim();
    for (const auto& v : c.vertices()) {
        if (in_hull(gens, v)) continue;
        // variables: lambda_1..lambda_n, t, slack;  sum l_i v_i - t (w* - v) = w*,
        // sum l_i = 1, t + slack = 1; maximize t
        const std::size_t n = c.size();
        lp::Problem prob;
        prob.a.assign(dim + 2, Vec(n + 2, 0));
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t i = 0; i < dim; ++i) prob.a[i][j] = c.vertex(j)[i];
            prob.a[dim][j] = 1;
        }
        for (std::size_t i = 0; i < dim; ++i) prob.a[i][n] = -(center[i] - v[i]);
        prob.a[dim + 1][n] = 1;
        prob.a[dim + 1][n + 1] = 1;
        prob.b = center;
        prob.b.push_back(1);
        prob.b.push_back(1);
        prob.c.assign(n + 2, 0);
        prob.c[n] = 1;
        const auto sol = lp::solve(prob);
        if (sol.status != lp::Status::Optimal || sol.objective <= 0) continue;
        const Rational t = sol.objective;
        Point far = center;
        for (std::size_t i = 0; i < dim; ++i) far[i] += t * (center[i] - v[i]);
        return {false, v, far, Rational(1) / (1 + t), "r(a,b) lies in the set but a does not"};
    }
    return {};
}

bool OpenCell::contains(const Polytope& c, const Point& x) const {
    if (!c.contains(x)) return false;
    return carrier_face(c, x).vertices == face.vertices;
}

std::vector<OpenCell> open_cells(const Polytope& c) {
    std::vector<OpenCell> out;
    const FaceLattice lattice = face_lattice(c);
    for (const auto& f : lattice.faces()) out.push_back({f});
    return out;
}

std::pair<Term, Point> fold_convex_combination(std::span<const Rational> weights,
                                               std::span<const Point> points) {
    if (points.empty()) throw Error("convex combination needs at least one point");
    if (weights.size() != points.size())
        throw Error("convex combination has " + std::to_string(weights.size()) + " weights for " +
                    std::to_string(points.size()) + " points");
    Rational total = 0;
    for (const auto& w : weights) {
        if (w <= 0) throw DomainError("convex combination weight " + w.str() + " is not positive");
        total += w;
    }
    if (total != 1) throw DomainError("convex combination weights sum to " + total.str() + ", not 1");
    const std::size_t dim = points.front().size();
    Point value(dim, 0);
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i].size() != dim) throw DimensionMismatch("points of different dimensions");
        for (std::size_t k = 0; k < dim; ++k) value[k] += weights[i] * points[i][k];
    }

    // peel the last point: sum = w_n (prefix renormalised, x_n)
    Term term = Term::variable("x1");
    Rational prefix_mass = weights[0];
    for (std::size_t i = 1; i < points.size(); ++i) {
        prefix_mass += weights[i];
        term = Term::apply(WeightExpr::constant(weights[i] / prefix_mass), std::move(term),
                           Term::variable("x" + std::to_string(i + 1)));
    }
    return {std::move(term), std::move(value)};
}

Point parse_point(const nlohmann::json& j) {
    if (!j.is_array()) throw ParseError("point must be a JSON array of rationals");
    Point p;
    for (const auto& c : j) {
        if (c.is_string()) p.push_back(parse_rational(c.get<std::string>()));
        else if (c.is_number_integer()) p.emplace_back(c.get<std::int64_t>());
        else throw ParseError("coordinates must be strings \"a/b\" or integers");
    }
    return p;
}

nlohmann::json point_to_json(const Point& p) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& c : p) j.push_back(c.str());
    return j;
}

Point barycenter(const std::vector<Point>& pts) {
    Point out(pts.front().size(), 0);
    for (const auto& p : pts)
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += p[i];
    for (auto& c : out) c /= static_cast<long>(pts.size());
    return out;
}

Point sample_relative_interior(const Polytope& c, VertexSet face, std::mt19937_64& rng) {
    const auto idx = members(face);
    const Vec w = random_simplex_weights(rng, idx.size());
    Point out(c.ambient_dim(), 0);
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t k = 0; k < out.size(); ++k) out[k] += w[i] * c.vertex(idx[i])[k];
    return out;
}

Point sample_point(const Polytope& c, std::mt19937_64& rng) {
    VertexSet s = 0;
    while (s == 0) {
        for (std::size_t i = 0; i < c.size(); ++i)
            if (uniform_int(rng, 0, 1)) s |= VertexSet{1} << i;
    }
    return sample_relative_interior(c, s, rng);
}

PolytopeModel::PolytopeModel(Polytope c, std::string name) : polytope_(std::move(c)), name_(std::move(name)) {}

bool PolytopeModel::contains(const Element& e) const {
    return e.point.size() == polytope_.ambient_dim() && polytope_.contains(e.point);
}

Element PolytopeModel::apply(const Rational& weight, const Element& x, const Element& y) const {
    return point_element(affine_mean(weight, x.point, y.point));
}

Element PolytopeModel::sample(std::mt19937_64& rng) const { return point_element(sample_point(polytope_, rng)); }

std::vector<std::string> default_vertex_names(const Polytope& c) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < c.size(); ++i)
        names.push_back(c.ambient_dim() == 1 ? c.vertex(i)[0].str() : "v" + std::to_string(i));
    return names;
}

std::string PolytopeModel::format(const Element& e) const { return to_string(e.point); }

Element VectorSpaceModel::apply(const Rational& weight, const Element& x, const Element& y) const {
    return point_element(affine_mean(weight, x.point, y.point));
}

Element VectorSpaceModel::sample(std::mt19937_64& rng) const {
    Point p(dim_);
    for (auto& c : p) c = random_rational(rng, 10);
    return point_element(std::move(p));
}

std::string VectorSpaceModel::format(const Element& e) const { return to_string(e.point); }

}  // namespace barycentra
