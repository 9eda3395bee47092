#include "cylsym/adjoint.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "cylsym/builtin.hpp"

namespace cylsym {

double ClosedEntry::eval(double s) const {
  return to_double(c0) + to_double(lin) * s + to_double(sinc) * std::sin(s) +
         to_double(cosc) * std::cos(s);
}

std::string ClosedEntry::str() const {
  std::ostringstream os;
  bool any = false;
  auto emit = [&](const Rational& q, const std::string& fn) {
    if (q == 0) return;
    std::string mag = rat_to_string(q < 0 ? Rational(-q) : q);
    std::string lead = any ? (q < 0 ? " - " : " + ") : (q < 0 ? "-" : "");
    os << lead;
    if (fn.empty())
      os << mag;
    else if (mag == "1")
      os << fn;
    else
      os << mag << "*" << fn;
    any = true;
  };
  emit(c0, "");
  emit(lin, "s");
  emit(sinc, "sin(s)");
  emit(cosc, "cos(s)");
  if (!any) return "0";
  return os.str();
}

std::array<Coeffs7, 7> AdjointMatrix::eval(double s) const {
  std::array<Coeffs7, 7> m{};
  for (int j = 0; j < 7; ++j)
    for (int k = 0; k < 7; ++k) m[j][k] = entry[j][k].eval(s);
  return m;
}

namespace {

bool mat_is_zero(const RatMat& m) {
  for (const auto& row : m)
    for (const auto& x : row)
      if (x != 0) return false;
  return true;
}

}  // namespace

AdjointSystem::AdjointSystem(const LieAlgebra& g) : g_(&g) {
  std::size_t n = g.dim();
  if (n != 7) throw ExprError("adjoint system expects the seven-dimensional algebra");
  for (std::size_t i = 0; i < n; ++i) ad_.push_back(g.ad(i));
  for (std::size_t i = 0; i < n; ++i) {
    // B = (-ad_i)^T so that exp(s B) is directly the row-table matrix.
    RatMat b = rat_mat(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) b[r][c] = -ad_[i][c][r];
    RatMat b2 = mat_mul(b, b);
    RatMat b3 = mat_mul(b2, b);
    AdjointMatrix m;
    m.generator = static_cast<int>(i) + 1;
    bool nilpotent2 = mat_is_zero(b2);
    bool rotation = [&] {
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
          if (b3[r][c] != -b[r][c]) return false;
      return true;
    }();
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) {
        ClosedEntry e{Rational(r == c ? 1 : 0), 0, 0, 0};
        if (mat_is_zero(b)) {
          // identity
        } else if (nilpotent2) {
          e.lin = b[r][c];
        } else if (rotation) {
          // exp(sB) = I + sin(s) B + (1 - cos(s)) B^2
          e.c0 += b2[r][c];
          e.sinc = b[r][c];
          e.cosc = -b2[r][c];
        } else {
          throw ExprError("ad matrix is neither nilpotent of order two nor a rotation block");
        }
        m.entry[r][c] = e;
      }
    }
    closed_.push_back(std::move(m));
  }
}

std::array<Coeffs7, 7> AdjointSystem::adjoint_matrix_series(int i, double s,
                                                            int terms) const {
  const RatMat& adm = ad_[i - 1];
  double b[7][7];
  for (int r = 0; r < 7; ++r)
    for (int c = 0; c < 7; ++c) b[r][c] = -to_double(adm[c][r]) * s;
  std::array<Coeffs7, 7> acc{}, term{};
  for (int r = 0; r < 7; ++r) {
    acc[r][r] = 1;
    term[r][r] = 1;
  }
  for (int n = 1; n <= terms; ++n) {
    std::array<Coeffs7, 7> next{};
    for (int r = 0; r < 7; ++r)
      for (int k = 0; k < 7; ++k) {
        if (term[r][k] == 0) continue;
        for (int c = 0; c < 7; ++c) next[r][c] += term[r][k] * b[k][c];
      }
    for (int r = 0; r < 7; ++r)
      for (int c = 0; c < 7; ++c) {
        next[r][c] /= n;
        acc[r][c] += next[r][c];
      }
    term = next;
  }
  return acc;
}

Coeffs7 AdjointSystem::apply_transcript(const Transcript& t, const Coeffs7& x) const {
  Coeffs7 cur = x;
  for (const AdStep& st : t) {
    auto m = closed_[st.generator - 1].eval(st.s);
    Coeffs7 next{};
    for (int r = 0; r < 7; ++r) {
      double acc = 0;
      for (int c = 0; c < 7; ++c) acc += m[r][c] * cur[c];
      next[r] = acc;
    }
    cur = next;
  }
  return cur;
}

Coeffs7 AdjointSystem::apply_transcript_ad(const Transcript& t, const Coeffs7& x) const {
  Coeffs7 cur = x;
  for (const AdStep& st : t) {
    auto m = closed_[st.generator - 1].eval(st.s);
    Coeffs7 next{};
    for (int c = 0; c < 7; ++c) {
      double acc = 0;
      for (int r = 0; r < 7; ++r) acc += cur[r] * m[r][c];
      next[c] = acc;
    }
    cur = next;
  }
  return cur;
}

const LieAlgebra& che_algebra() {
  static const LieAlgebra g = structure_constants(che_symmetry_basis());
  return g;
}

const AdjointSystem& che_adjoint() {
  static const AdjointSystem sys(che_algebra());
  return sys;
}

// ---------------------------------------------------------------------------
// normal forms

const std::vector<std::vector<int>>& normal_form_patterns() {
  static const std::vector<std::vector<int>> p = {
      {1},          // 1
      {2},          // 2
      {6},          // 3
      {7},          // 4
      {3, 1},       // 5
      {3, 4},       // 6
      {3, 6},       // 7
      {3, 7},       // 8
      {1, 2},       // 9
      {4, 6},       // 10
      {5, 7},       // 11
      {3, 1, 2},    // 12
      {3, 4, 6},    // 13
      {1, 2, 5},    // 14
      {2, 5, 7},    // 15
      {4, 5, 6},    // 16
      {3, 1, 2, 5}  // 17
  };
  return p;
}

namespace {

double linf(const Coeffs7& x) {
  double m = 0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

// Column action of the adjoint matrices on the working vector b (0-based,
// b[i] is the coefficient of X_{i+1}):
//   M1: (b3,b4) and (b5,b6) rotate          M2: b5 -= s b4, b6 -= s b3
//   M4: b0 -= s b4, b6 += s b1              M5: b0 += s b3, b5 += s b1
//   M6: (b0,b6) and (b1,b4) rotate          M7: (b0,b5) and (b1,b3) rotate
// a3 = b[2] never changes.
struct Normalizer {
  const AdjointSystem& sys;
  Coeffs7 b{};
  double ztol = 0;
  Transcript transcript;
  std::map<std::string, double> audit;

  bool z(double v) const { return std::abs(v) <= ztol; }

  void step(int gen, double s) {
    if (s == 0) return;
    transcript.push_back({gen, s});
    b = sys.apply_transcript({{gen, s}}, b);
  }

  void reduce_a();  // b[2] scaled to 1
  void reduce_b();  // b[2] == 0
};

void Normalizer::reduce_a() {
  if (!z(b[4]) && !z(b[1])) {
    // a5, a2 nonzero: rotate a4 away, shear a7 and a6 out -> class 17
    if (!z(b[3])) step(1, std::atan2(-b[3], b[4]));
    if (!z(b[6])) step(4, -b[6] / b[1]);
    if (!z(b[5])) step(5, -b[5] / b[1]);
    return;
  }
  if (!z(b[4])) {
    // a5 != 0, a2 == 0: clear a4, a6, a1, then a quarter turn moves the
    // remaining (a5, a7) pair into the (a4, a6) slots -> class 13 / 6
    if (!z(b[3])) step(1, std::atan2(-b[3], b[4]));
    if (!z(b[5])) step(2, b[5] / b[4]);
    if (!z(b[0])) step(4, b[0] / b[4]);
    step(1, std::numbers::pi / 2);
    return;
  }
  if (!z(b[1]) && !z(b[3])) {
    // a5 == 0, a2, a4 != 0 -> class 13 / 6
    step(7, std::atan2(-b[1], b[3]));
    if (!z(b[6])) step(2, b[6] / b[3]);
    if (!z(b[0])) step(5, -b[0] / b[3]);
    return;
  }
  if (!z(b[1])) {
    // a4 == a5 == 0, a2 != 0 -> class 12
    if (!z(b[6])) step(4, -b[6] / b[1]);
    if (!z(b[5])) step(5, -b[5] / b[1]);
    return;
  }
  if (!z(b[3])) {
    // only a4 among the translation slots -> class 13 / 6
    if (!z(b[0])) step(5, -b[0] / b[3]);
    if (!z(b[6])) step(2, b[6] / b[3]);
    return;
  }
  // translation part vanished: reduce the rotation part
  if (!z(b[6]) && z(b[5])) {
    // a7 alone: clear a1 against it -> class 8
    if (!z(b[0])) step(6, std::atan2(-b[0], b[6]));
    return;
  }
  if (!z(b[6])) step(1, std::atan2(-b[6], b[5]));  // fold a7 into a6
  if (!z(b[5])) {
    if (!z(b[0])) step(7, std::atan2(b[0], b[5]));  // class 7
    return;
  }
  // only a1 (and X3) left -> class 5, possibly with a = 0
}

void Normalizer::reduce_b() {
  if (!z(b[3]) && !z(b[4])) {
    // a4, a5 != 0 -> class 16
    if (!z(b[6])) step(2, b[6] / b[3]);
    if (!z(b[1])) step(7, std::atan2(-b[1], b[3]));
    if (!z(b[0])) step(4, b[0] / b[4]);
    return;
  }
  if (!z(b[3])) {
    // a4 != 0, a5 == 0 -> class 10
    if (!z(b[6])) step(2, b[6] / b[3]);
    if (!z(b[1])) step(7, std::atan2(-b[1], b[3]));
    if (!z(b[0])) step(5, -b[0] / b[3]);
    return;
  }
  if (!z(b[4]) && !z(b[6])) {
    // a4 == 0, a5 != 0, a7 != 0: the branch quantities of the construction
    audit["a5_prime"] = b[0] * b[1] + b[4] * b[6];
    audit["a2_prime"] = -b[1] * b[6] + b[0] * b[4];
    if (!z(b[0])) step(6, std::atan2(-b[0], b[6]));
    if (!z(b[4])) {
      // pairing nonzero: a5 slot survived -> class 15 (11 when a2 dies)
      if (!z(b[5])) step(2, b[5] / b[4]);
      return;
    }
    if (!z(b[1])) {
      // pairing zero: a5 died with a1; clear a7 and a6 -> class 2
      if (!z(b[6])) step(4, -b[6] / b[1]);
      if (!z(b[5])) step(5, -b[5] / b[1]);
      return;
    }
    // both shear handles vanished: rotation-only element, fall through
  }
  if (!z(b[4])) {
    // a5 != 0, a7 == 0 -> class 14
    if (!z(b[5])) step(2, b[5] / b[4]);
    return;
  }
  if (!z(b[1])) {
    // a2 alone among translations -> class 9
    if (!z(b[5])) step(5, -b[5] / b[1]);
    if (!z(b[6])) step(4, -b[6] / b[1]);
    return;
  }
  // translation part zero: rotations only
  if (!z(b[6])) {
    if (!z(b[5])) step(1, std::atan2(b[5], b[6]));  // fold a6 into a7
    if (!z(b[0])) step(6, std::atan2(-b[0], b[6]));
    return;  // class 4
  }
  if (!z(b[5])) {
    if (!z(b[0])) step(7, std::atan2(b[0], b[5]));
    return;  // class 3
  }
  // only a1 -> class 1
}

int match_class(const Coeffs7& v, double tol) {
  const auto& patterns = normal_form_patterns();
  std::vector<int> nonzero;
  for (int i = 0; i < 7; ++i)
    if (std::abs(v[i]) > tol) nonzero.push_back(i + 1);
  for (std::size_t cid = 0; cid < patterns.size(); ++cid) {
    const auto& pat = patterns[cid];
    bool subset = true;
    for (int s : nonzero)
      if (std::find(pat.begin(), pat.end(), s) == pat.end()) subset = false;
    if (!subset) continue;
    bool wants_x3 = std::find(pat.begin(), pat.end(), 3) != pat.end();
    bool has_x3 = std::abs(v[2]) > tol;
    if (wants_x3 != has_x3) continue;
    return static_cast<int>(cid) + 1;
  }
  return 0;
}

}  // namespace

NormalFormResult normalize(const Coeffs7& x) {
  double mag = linf(x);
  if (mag == 0) throw DegenerateInput("normalize: zero element");

  Normalizer nz{che_adjoint()};
  NormalFormResult res;
  nz.b = x;
  if (std::abs(x[2]) > 1e-12 * mag) {
    res.scale = 1.0 / x[2];
    for (double& v : nz.b) v *= res.scale;
    nz.b[2] = 1.0;
  } else {
    nz.b[2] = 0.0;
  }
  nz.ztol = 1e-12 * linf(nz.b);

  if (nz.b[2] != 0.0)
    nz.reduce_a();
  else
    nz.reduce_b();

  double tol = 1e-9 * std::max(1.0, linf(nz.b));
  int cid = match_class(nz.b, tol);
  if (cid == 0) throw ToleranceFailure("normalize: reduced vector fits no class pattern");

  res.class_id = cid;
  res.transformed = nz.b;
  res.transcript = std::move(nz.transcript);
  res.audit = std::move(nz.audit);
  const auto& pat = normal_form_patterns()[cid - 1];
  double* out[3] = {&res.a, &res.b, &res.c};
  int n = 0;
  for (int slot : pat) {
    if (slot == 3) continue;
    if (n < 3) *out[n++] = nz.b[slot - 1];
  }
  return res;
}

}  // namespace cylsym
