#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "cylsym/liealg.hpp"

namespace cylsym {

using Coeffs7 = std::array<double, 7>;

// Entry of a one-parameter adjoint matrix: c0 + lin*s + sinc*sin(s) + cosc*cos(s).
struct ClosedEntry {
  Rational c0, lin, sinc, cosc;
  double eval(double s) const;
  bool is_zero() const { return c0 == 0 && lin == 0 && sinc == 0 && cosc == 0; }
  std::string str() const;
  friend bool operator==(const ClosedEntry&, const ClosedEntry&) = default;
};

// Matrix of Ad(exp(s X_i)) with respect to the basis: row j holds the
// coordinates of Ad(exp(s X_i)) X_j. Equal to exp(s B)^T for B = -ad_i, i.e.
// the Lie series X_j - s [X_i, X_j] + (s^2/2)[X_i,[X_i,X_j]] - ... row by row.
// At s = 0 it is the identity, M(s) M(t) = M(s+t), det M(s) = 1.
struct AdjointMatrix {
  int generator = 0;  // 1-based
  std::array<std::array<ClosedEntry, 7>, 7> entry;

  std::array<Coeffs7, 7> eval(double s) const;  // row-major numeric matrix
};

struct AdStep {
  int generator = 0;  // 1-based
  double s = 0;
};
using Transcript = std::vector<AdStep>;

class AdjointSystem {
 public:
  explicit AdjointSystem(const LieAlgebra& g);

  const LieAlgebra& algebra() const { return *g_; }

  // ad(X_i) as a rational matrix; column j holds the coordinates of [X_i, X_j].
  const RatMat& ad(int i) const { return ad_[i - 1]; }

  // Closed form of the adjoint matrix, from the nilpotent/rotation block
  // structure of ad(X_i).
  const AdjointMatrix& adjoint_matrix(int i) const { return closed_[i - 1]; }

  // Truncated Lie series exp(s B)^T (B = -ad_i), for cross-checking the
  // closed form; 40 terms bound the tail below 1e-12 on |s| <= 5.
  std::array<Coeffs7, 7> adjoint_matrix_series(int i, double s, int terms = 40) const;

  // Composition convention of the optimal-system construction: the matrices
  // multiply the coefficient column, left to right along the transcript.
  // (This is the transpose of the action on algebra elements below; the
  // normalizer and its case tree use this convention.)
  Coeffs7 apply_transcript(const Transcript& t, const Coeffs7& x) const;

  // The adjoint action on elements: v = sum a_j X_j maps to
  // sum a_j Ad(exp(s X_i)) X_j, i.e. the row action a -> a M(s). This is a
  // Lie-algebra automorphism and preserves the Killing form.
  Coeffs7 apply_transcript_ad(const Transcript& t, const Coeffs7& x) const;

 private:
  const LieAlgebra* g_;
  std::vector<RatMat> ad_;
  std::vector<AdjointMatrix> closed_;
};

// Cached system for the built-in seven-dimensional algebra.
const AdjointSystem& che_adjoint();
const LieAlgebra& che_algebra();

struct DegenerateInput : ExprError {
  using ExprError::ExprError;
};
struct ToleranceFailure : ExprError {
  using ExprError::ExprError;
};

struct NormalFormResult {
  int class_id = 0;              // 1..17
  double a = 0, b = 0, c = 0;    // free parameters of the matched pattern
  double scale = 1;              // applied to the input before the transcript
  Coeffs7 transformed{};         // = apply_transcript(transcript, scale * input)
  Transcript transcript;
  std::map<std::string, double> audit;  // primed branch quantities
};

// Theorem-style normal form classes over the built-in algebra:
//  1) X1            2) X2             3) X6              4) X7
//  5) X3+aX1        6) X3+aX4         7) X3+aX6          8) X3+aX7
//  9) aX1+bX2      10) aX4+bX6       11) aX5+bX7        12) X3+aX1+bX2
// 13) X3+aX4+bX6   14) aX1+bX2+cX5   15) aX2+bX5+cX7    16) aX4+bX5+cX6
// 17) X3+aX1+bX2+cX5
// Allowed nonzero slots per class (1-based generator indices).
const std::vector<std::vector<int>>& normal_form_patterns();

// Reduces x to one of the classes by a finite transcript of adjoint matrices,
// branching first on a3 != 0 (scaling it to one) and then on the same
// coefficient conditions as the construction in the source material. Exact
// zero structure is decided at 1e-12 relative; the reduced vector must fit
// its class pattern to 1e-9 or ToleranceFailure is thrown.
NormalFormResult normalize(const Coeffs7& x);

}  // namespace cylsym
