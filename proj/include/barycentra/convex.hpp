#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "barycentra/error.hpp"
#include "barycentra/linalg.hpp"
#include "barycentra/model.hpp"
#include "barycentra/semilattice.hpp"
#include "barycentra/term.hpp"

namespace barycentra {

using Point = Vec;
// Bit i set <=> vertex i belongs to the set. Polytopes are limited to 64 vertices.
using VertexSet = std::uint64_t;

class DuplicateVertexError : public Error {
public:
    DuplicateVertexError(std::size_t first, std::size_t second, const Point& p);
    std::size_t first, second;
};

class NonExtremeVertexError : public Error {
public:
    NonExtremeVertexError(std::size_t index, const Point& p);
    std::size_t index;
};

class Polytope {
public:
    // Rejects duplicate vertices and vertices lying in the hull of the others.
    Polytope(std::size_t ambient_dim, std::vector<Point> vertices);
    explicit Polytope(std::vector<Point> vertices);
    static Polytope from_json(const nlohmann::json& j);

    std::size_t ambient_dim() const noexcept { return ambient_dim_; }
    std::size_t size() const noexcept { return vertices_.size(); }
    const std::vector<Point>& vertices() const noexcept { return vertices_; }
    const Point& vertex(std::size_t i) const { return vertices_.at(i); }
    VertexSet all() const noexcept;
    std::size_t affine_dim() const { return affine_rank(vertices_); }

    bool contains(const Point& x) const;
    // Some convex coefficients expressing x, if x is in the polytope.
    std::optional<Vec> barycentric_coordinates(const Point& x) const;

    nlohmann::json to_json() const;

private:
    void require_dim(const Point& x) const;

    std::size_t ambient_dim_;
    std::vector<Point> vertices_;
};

std::vector<std::size_t> members(VertexSet s);
std::vector<Point> points_of(const Polytope& c, VertexSet s);

struct Face {
    VertexSet vertices = 0;
    std::size_t dimension = 0;
    friend bool operator==(const Face&, const Face&) = default;
};

class FaceLattice {
public:
    explicit FaceLattice(std::vector<Face> faces);

    const std::vector<Face>& faces() const noexcept { return faces_; }
    std::size_t size() const noexcept { return faces_.size(); }
    const Face& face(std::size_t i) const { return faces_.at(i); }
    std::optional<std::size_t> find(VertexSet s) const;
    std::size_t index_of(VertexSet s) const;
    // least face containing both
    std::size_t join(std::size_t a, std::size_t b) const { return join_[a][b]; }
    // intersection; nullopt when empty
    std::optional<std::size_t> meet(std::size_t a, std::size_t b) const;
    // smallest face containing all of s
    std::size_t closure(VertexSet s) const;
    // counts[d] = number of faces of dimension d
    std::vector<std::size_t> counts_by_dimension() const;
    // Faces as a join-semilattice labelled by `face_label`.
    FiniteSemilattice as_semilattice(const std::vector<std::string>& vertex_names = {}) const;

private:
    std::vector<Face> faces_;
    std::vector<std::vector<std::size_t>> join_;
};

// "{v0,v2}" using vertex names (defaults v0, v1, ...).
std::string face_label(VertexSet s, const std::vector<std::string>& vertex_names = {});

FaceLattice face_lattice(const Polytope& c);

// Coordinates for points on a line ("0", "1/2"), otherwise v0, v1, ...
std::vector<std::string> default_vertex_names(const Polytope& c);

// Minimal face containing x; x lies in its relative interior. Throws Error when x is outside.
Face carrier_face(const Polytope& c, const Point& x);

// Finite description of a subset of the polytope: the convex hull of the
// generators, or the discrete set of generators themselves.
struct WallCandidate {
    std::vector<Point> generators;
    bool convex_hull = true;
};

struct WallVerdict {
    bool wall = true;
    // Filled when not a wall: r(a, b) violates the two-sided wall condition.
    std::optional<Point> a, b;
    std::optional<Rational> r;
    std::string reason;
};

// Decides r(a,b) in W <=> (a in W and b in W) for all a,b in c and r in ]0,1[.
WallVerdict wall_test(const Polytope& c, const WallCandidate& w);
inline bool is_wall(const Polytope& c, const WallCandidate& w) { return wall_test(c, w).wall; }

// Relative interior of one face (a singleton for vertices).
struct OpenCell {
    Face face;
    bool contains(const Polytope& c, const Point& x) const;
};

std::vector<OpenCell> open_cells(const Polytope& c);

// Right-fold of a convex combination into nested binary operations over the
// variables x1..xn; also returns the direct value sum w_i p_i.
std::pair<Term, Point> fold_convex_combination(std::span<const Rational> weights,
                                               std::span<const Point> points);

Point parse_point(const nlohmann::json& j);
nlohmann::json point_to_json(const Point& p);

// Convex polytope as a cancellative barycentric algebra under weighted means.
class PolytopeModel : public Model {
public:
    PolytopeModel(Polytope c, std::string name);

    std::string name() const override { return name_; }
    bool contains(const Element& e) const override;
    Element apply(const Rational& weight, const Element& x, const Element& y) const override;
    // Random nonempty vertex subset, random positive weights on it.
    Element sample(std::mt19937_64& rng) const override;
    std::string format(const Element& e) const override;
    const Polytope& polytope() const noexcept { return polytope_; }

private:
    Polytope polytope_;
    std::string name_;
};

// The whole space Q^n under weighted means.
class VectorSpaceModel : public Model {
public:
    explicit VectorSpaceModel(std::size_t dim) : dim_(dim) {}
    std::string name() const override { return "Q^" + std::to_string(dim_); }
    bool contains(const Element& e) const override { return e.point.size() == dim_; }
    Element apply(const Rational& weight, const Element& x, const Element& y) const override;
    Element sample(std::mt19937_64& rng) const override;
    std::string format(const Element& e) const override;

private:
    std::size_t dim_;
};

// Random point of the polytope; vertex subsets are drawn uniformly so every
// open cell is hit with positive probability.
Point sample_point(const Polytope& c, std::mt19937_64& rng);
// Point in the relative interior of the face, with random positive weights.
Point sample_relative_interior(const Polytope& c, VertexSet face, std::mt19937_64& rng);
Point barycenter(const std::vector<Point>& pts);

}  // namespace barycentra
