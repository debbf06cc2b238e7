#pragma once

#include <optional>
#include <vector>

#include "barycentra/scalar.hpp"

namespace barycentra {

// Dense row-major rational matrix.
using Matrix = std::vector<Vec>;

// Reduced row echelon form in place; returns the pivot column of each
// nonzero row (zero rows are removed).
std::vector<std::size_t> rref(Matrix& m);
std::size_t rank(Matrix m);
// Rank of the differences p_i - p_0.
std::size_t affine_rank(const std::vector<Vec>& points);
// Basis of { x : m x = 0 } for a matrix with `cols` columns.
Matrix nullspace(Matrix m, std::size_t cols);
// Unique solution of a x = b, or nullopt when inconsistent or underdetermined.
std::optional<Vec> solve_unique(const Matrix& a, const Vec& b);

Matrix identity_matrix(std::size_t n);
Matrix multiply(const Matrix& a, const Matrix& b, std::size_t inner);
Vec multiply(const Matrix& a, const Vec& x);
Vec add(const Vec& a, const Vec& b);
Vec subtract(const Vec& a, const Vec& b);
Vec scale(const Rational& k, const Vec& a);
Rational dot(const Vec& a, const Vec& b);

}  // namespace barycentra
