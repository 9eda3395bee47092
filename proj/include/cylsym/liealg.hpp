#pragma once

#include <string>
#include <vector>

#include "cylsym/prolong.hpp"
#include "cylsym/ratlinalg.hpp"

namespace cylsym {

// Coefficient-wise commutator [v,w] = v(w) - w(v) through the first-order
// action of each field on the other's coefficients.
VectorField commutator_vf(const VectorField& v, const VectorField& w);

struct NotClosedError : ExprError {
  NotClosedError(std::size_t i, std::size_t j, VectorField residual)
      : ExprError("bracket of basis elements " + std::to_string(i + 1) + "," +
                  std::to_string(j + 1) + " lies outside the span"),
        i(i),
        j(j),
        residual(std::move(residual)) {}
  std::size_t i, j;
  VectorField residual;
};

struct LieAlgebra {
  std::vector<VectorField> basis;
  // c[i][j] = coordinates of [X_i, X_j] in the basis.
  std::vector<std::vector<RatVec>> c;

  std::size_t dim() const { return basis.size(); }
  RatVec bracket(const RatVec& u, const RatVec& v) const;
  // column j of ad(X_i) is c[i][j]
  RatMat ad(std::size_t i) const;
  RatMat ad_of(const RatVec& v) const;

  bool antisymmetric() const;
  bool jacobi() const;
  bool consistent() const;  // tensor reproduces the symbolic brackets
};

// Exact structure constants; throws NotClosedError if some bracket is not a
// rational combination of the basis.
LieAlgebra structure_constants(const std::vector<VectorField>& basis);

// Killing form through the adjoint matrices.
Rational killing(const LieAlgebra& g, const RatVec& v, const RatVec& w);
RatMat killing_gram(const LieAlgebra& g);

// Descending derived series g >= g1 >= g2 >= ..., as RREF row bases, computed
// until stabilization. first element is the full algebra.
std::vector<RatMat> derived_series(const LieAlgebra& g);
bool is_solvable(const LieAlgebra& g);
bool is_semisimple(const LieAlgebra& g);  // Cartan criterion

struct LeviAssertion {
  std::string name;
  bool passed = false;
  std::string witness;  // failure detail, empty when passed
};

struct LeviReport {
  std::vector<LeviAssertion> assertions;
  bool all_passed() const;
};

// Verifies a stated radical/Levi split: the subspaces are given (as
// coefficient row bases over g.basis), not searched for.
LeviReport verify_levi(const LieAlgebra& g, const RatMat& radical, const RatMat& levi);

}  // namespace cylsym
