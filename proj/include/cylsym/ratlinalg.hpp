#pragma once

#include <optional>
#include <vector>

#include "cylsym/rational.hpp"

namespace cylsym {

using RatVec = std::vector<Rational>;
using RatMat = std::vector<RatVec>;  // rows

RatVec rat_vec(std::size_t n);
RatMat rat_mat(std::size_t rows, std::size_t cols);
RatMat identity(std::size_t n);
RatMat mat_mul(const RatMat& a, const RatMat& b);
RatMat transpose(const RatMat& a);
Rational trace(const RatMat& a);
Rational determinant(RatMat a);

// Reduced row echelon form in place; returns pivot column indices.
std::vector<std::size_t> rref(RatMat& m);

// Row space membership: v in span(rows)?
bool in_span(const RatMat& rows, const RatVec& v);

// Basis (RREF rows) of the row space.
RatMat row_basis(const RatMat& rows);

std::size_t rank(RatMat m);

// Solves A x = b exactly; nullopt when inconsistent. When underdetermined,
// free variables are set to zero.
std::optional<RatVec> solve(RatMat a, RatVec b);

}  // namespace cylsym
