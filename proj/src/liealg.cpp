#include "cylsym/liealg.hpp"

#include <map>
#include <sstream>

#include "cylsym/simplify.hpp"

namespace cylsym {

namespace {

const Expr kVars[4] = {Expr::symbol("r"), Expr::symbol("q"), Expr::symbol("z"),
                       Expr::u()};

Expr apply_field(const VectorField& v, const Expr& f) {
  return v.xi1 * differentiate(f, kVars[0]) + v.xi2 * differentiate(f, kVars[1]) +
         v.xi3 * differentiate(f, kVars[2]) + v.eta * differentiate(f, kVars[3]);
}

std::vector<Expr> terms_of(const Expr& e) {
  if (e.kind() == Kind::Sum) return e.kids();
  if (e.is_zero()) return {};
  return {e};
}

// Decomposes a list of expressions into exact rational vectors over the
// monomials appearing across all of them.
struct Atomizer {
  std::map<Expr, std::size_t, ExprLess> index;
  std::size_t atom(const Expr& mono) {
    auto it = index.find(mono);
    if (it == index.end()) it = index.emplace(mono, index.size()).first;
    return it->second;
  }
  void accumulate(const Expr& e, std::vector<std::pair<std::size_t, Rational>>& out) {
    for (const Expr& t : terms_of(simplify(e))) {
      auto [c, mono] = coeff_split(t);
      out.emplace_back(atom(mono), c);
    }
  }
};

std::string vec_to_string(const RatVec& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ", ";
    os << rat_to_string(v[i]);
  }
  os << ')';
  return os.str();
}

}  // namespace

VectorField commutator_vf(const VectorField& v, const VectorField& w) {
  Expr c[4];
  const Expr* vc[4] = {&v.xi1, &v.xi2, &v.xi3, &v.eta};
  const Expr* wc[4] = {&w.xi1, &w.xi2, &w.xi3, &w.eta};
  for (int a = 0; a < 4; ++a)
    c[a] = simplify(apply_field(v, *wc[a]) - apply_field(w, *vc[a]));
  return VectorField(c[0], c[1], c[2], c[3]);
}

RatVec LieAlgebra::bracket(const RatVec& u, const RatVec& v) const {
  RatVec out = rat_vec(dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    if (u[i] == 0) continue;
    for (std::size_t j = 0; j < dim(); ++j) {
      if (v[j] == 0) continue;
      Rational f = u[i] * v[j];
      for (std::size_t k = 0; k < dim(); ++k) out[k] += f * c[i][j][k];
    }
  }
  return out;
}

RatMat LieAlgebra::ad(std::size_t i) const {
  RatMat m = rat_mat(dim(), dim());
  for (std::size_t j = 0; j < dim(); ++j)
    for (std::size_t k = 0; k < dim(); ++k) m[k][j] = c[i][j][k];
  return m;
}

RatMat LieAlgebra::ad_of(const RatVec& v) const {
  RatMat m = rat_mat(dim(), dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    if (v[i] == 0) continue;
    RatMat ai = ad(i);
    for (std::size_t r = 0; r < dim(); ++r)
      for (std::size_t s = 0; s < dim(); ++s) m[r][s] += v[i] * ai[r][s];
  }
  return m;
}

bool LieAlgebra::antisymmetric() const {
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = 0; j < dim(); ++j)
      for (std::size_t k = 0; k < dim(); ++k)
        if (c[i][j][k] != -c[j][i][k]) return false;
  return true;
}

bool LieAlgebra::jacobi() const {
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = 0; j < dim(); ++j)
      for (std::size_t k = 0; k < dim(); ++k) {
        RatVec ei = rat_vec(dim()), ej = rat_vec(dim()), ek = rat_vec(dim());
        ei[i] = 1;
        ej[j] = 1;
        ek[k] = 1;
        RatVec s = bracket(ei, bracket(ej, ek));
        RatVec t = bracket(ej, bracket(ek, ei));
        RatVec u = bracket(ek, bracket(ei, ej));
        for (std::size_t l = 0; l < dim(); ++l)
          if (s[l] + t[l] + u[l] != 0) return false;
      }
  return true;
}

bool LieAlgebra::consistent() const {
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = 0; j < dim(); ++j) {
      VectorField lhs = commutator_vf(basis[i], basis[j]);
      VectorField rhs;
      for (std::size_t k = 0; k < dim(); ++k) rhs = rhs + c[i][j][k] * basis[k];
      if (!(lhs == rhs)) return false;
    }
  return true;
}

LieAlgebra structure_constants(const std::vector<VectorField>& basis) {
  LieAlgebra g;
  g.basis = basis;
  std::size_t n = basis.size();
  g.c.assign(n, std::vector<RatVec>(n, rat_vec(n)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      VectorField br = commutator_vf(basis[i], basis[j]);
      // solve sum_k x_k basis[k] == br component-wise, exactly
      Atomizer at;
      std::vector<std::vector<std::pair<std::size_t, Rational>>> cols(n);
      std::vector<std::pair<std::size_t, Rational>> rhs[4];
      const Expr* bc[4] = {&br.xi1, &br.xi2, &br.xi3, &br.eta};
      for (int a = 0; a < 4; ++a) {
        // offset atoms per component so the four identities stay separate
        Atomizer comp;
        (void)comp;
        rhs[a].clear();
      }
      // one shared atom space with (component, monomial) keys via tagging
      std::vector<std::pair<std::size_t, Rational>> colsparse;
      std::map<std::pair<int, std::size_t>, std::size_t> rowindex;
      auto row_of = [&](int comp, std::size_t atom) {
        auto key = std::make_pair(comp, atom);
        auto it = rowindex.find(key);
        if (it == rowindex.end()) it = rowindex.emplace(key, rowindex.size()).first;
        return it->second;
      };
      std::vector<std::map<std::size_t, Rational>> colmaps(n);
      std::map<std::size_t, Rational> rhsmap;
      for (int a = 0; a < 4; ++a) {
        const Expr* comps[4];
        for (std::size_t k = 0; k < n; ++k) {
          const VectorField& bk = g.basis[k];
          comps[0] = &bk.xi1;
          comps[1] = &bk.xi2;
          comps[2] = &bk.xi3;
          comps[3] = &bk.eta;
          std::vector<std::pair<std::size_t, Rational>> sp;
          at.accumulate(*comps[a], sp);
          for (auto& [atom, cv] : sp) colmaps[k][row_of(a, atom)] += cv;
        }
        std::vector<std::pair<std::size_t, Rational>> sp;
        at.accumulate(*bc[a], sp);
        for (auto& [atom, cv] : sp) rhsmap[row_of(a, atom)] += cv;
      }
      std::size_t rows = rowindex.size();
      RatMat A = rat_mat(rows, n);
      RatVec b = rat_vec(rows);
      for (std::size_t k = 0; k < n; ++k)
        for (auto& [rix, cv] : colmaps[k]) A[rix][k] += cv;
      for (auto& [rix, cv] : rhsmap) b[rix] += cv;
      auto x = solve(A, b);
      if (!x) {
        VectorField residual = br;  // nothing subtracted: report the bracket
        throw NotClosedError(i, j, residual);
      }
      g.c[i][j] = *x;
      for (std::size_t k = 0; k < n; ++k) g.c[j][i][k] = -(*x)[k];
    }
  }
  return g;
}

Rational killing(const LieAlgebra& g, const RatVec& v, const RatVec& w) {
  return trace(mat_mul(g.ad_of(v), g.ad_of(w)));
}

RatMat killing_gram(const LieAlgebra& g) {
  std::size_t n = g.dim();
  std::vector<RatMat> ads;
  ads.reserve(n);
  for (std::size_t i = 0; i < n; ++i) ads.push_back(g.ad(i));
  RatMat gram = rat_mat(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      gram[i][j] = trace(mat_mul(ads[i], ads[j]));
      gram[j][i] = gram[i][j];
    }
  return gram;
}

namespace {

RatMat derived_of(const LieAlgebra& g, const RatMat& space) {
  RatMat brackets;
  for (std::size_t i = 0; i < space.size(); ++i)
    for (std::size_t j = i + 1; j < space.size(); ++j)
      brackets.push_back(g.bracket(space[i], space[j]));
  return row_basis(brackets);
}

}  // namespace

std::vector<RatMat> derived_series(const LieAlgebra& g) {
  std::vector<RatMat> series;
  series.push_back(identity(g.dim()));
  for (;;) {
    RatMat next = derived_of(g, series.back());
    if (next.size() == series.back().size()) {
      series.push_back(next);
      break;
    }
    series.push_back(next);
    if (next.empty()) break;
  }
  return series;
}

bool is_solvable(const LieAlgebra& g) { return derived_series(g).back().empty(); }

bool is_semisimple(const LieAlgebra& g) { return determinant(killing_gram(g)) != 0; }

bool LeviReport::all_passed() const {
  for (const auto& a : assertions)
    if (!a.passed) return false;
  return true;
}

LeviReport verify_levi(const LieAlgebra& g, const RatMat& radical, const RatMat& levi) {
  LeviReport rep;
  std::size_t n = g.dim();
  auto add = [&](const std::string& name, bool ok, const std::string& witness) {
    rep.assertions.push_back({name, ok, ok ? "" : witness});
  };

  // radical is an ideal: [g, r] in r
  {
    bool ok = true;
    std::string w;
    for (std::size_t i = 0; i < n && ok; ++i) {
      RatVec ei = rat_vec(n);
      ei[i] = 1;
      for (const RatVec& v : radical) {
        RatVec br = g.bracket(ei, v);
        if (!in_span(radical, br)) {
          ok = false;
          w = "[X" + std::to_string(i + 1) + ", " + vec_to_string(v) + "] = " +
              vec_to_string(br) + " leaves the radical";
          break;
        }
      }
    }
    add("radical is an ideal", ok, w);
  }

  // radical solvable (derived series inside the subspace terminates)
  {
    RatMat cur = row_basis(radical);
    int guard = 0;
    while (!cur.empty() && guard++ < 16) {
      RatMat next = derived_of(g, cur);
      if (next.size() == cur.size()) break;
      cur = next;
    }
    add("radical is solvable", cur.empty(), "derived series stabilizes at dimension " +
                                                std::to_string(cur.size()));
  }

  // radical abelian
  {
    bool ok = true;
    std::string w;
    for (std::size_t i = 0; i < radical.size() && ok; ++i)
      for (std::size_t j = i + 1; j < radical.size(); ++j) {
        RatVec br = g.bracket(radical[i], radical[j]);
        for (const auto& x : br)
          if (x != 0) {
            ok = false;
            w = "nonzero bracket " + vec_to_string(br) + " inside the radical";
            break;
          }
        if (!ok) break;
      }
    add("radical is abelian", ok, w);
  }

  // levi part is a subalgebra
  {
    bool ok = true;
    std::string w;
    for (std::size_t i = 0; i < levi.size() && ok; ++i)
      for (std::size_t j = i + 1; j < levi.size(); ++j) {
        RatVec br = g.bracket(levi[i], levi[j]);
        if (!in_span(levi, br)) {
          ok = false;
          w = "bracket " + vec_to_string(br) + " leaves the subspace";
          break;
        }
      }
    add("levi factor is a subalgebra", ok, w);
  }

  // levi factor semisimple: Killing form restricted to the subspace
  {
    std::size_t m = levi.size();
    RatMat gram = rat_mat(m, m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) gram[i][j] = killing(g, levi[i], levi[j]);
    // Cartan criterion for the subalgebra uses its own Killing form; for a
    // semisimple complement the restriction of the ambient form agrees.
    add("levi factor is semisimple", determinant(gram) != 0,
        "restricted Killing form is degenerate");
  }

  // direct sum of vector spaces
  {
    RatMat all = radical;
    all.insert(all.end(), levi.begin(), levi.end());
    bool ok = rank(all) == n && radical.size() + levi.size() == n;
    add("radical + levi span the algebra", ok, "combined rank deficient");
  }

  // levi factor is not an ideal
  {
    bool found = false;
    std::string w = "all brackets stay inside the subspace";
    for (std::size_t i = 0; i < n && !found; ++i) {
      RatVec ei = rat_vec(n);
      ei[i] = 1;
      for (const RatVec& v : levi) {
        RatVec br = g.bracket(ei, v);
        if (!in_span(levi, br)) {
          found = true;
          w = "witness [X" + std::to_string(i + 1) + ", " + vec_to_string(v) + "] = " +
              vec_to_string(br);
          break;
        }
      }
    }
    add("levi factor is not an ideal", found, w);
    if (found) rep.assertions.back().witness = w;  // keep the witness on success too
  }

  // so(3) structure pattern: [e1,e2] = a e3, [e2,e3] = b e1, [e3,e1] = c e2
  // with a rational rescaling making a = b = c = 1.
  {
    bool ok = levi.size() == 3;
    std::string w = "levi factor is not three-dimensional";
    if (ok) {
      auto proportional = [&](const RatVec& v, const RatVec& dir,
                              Rational& factor) -> bool {
        // v == factor * dir?
        factor = 0;
        for (std::size_t t = 0; t < v.size(); ++t) {
          if (dir[t] == 0) {
            if (v[t] != 0) return false;
          } else {
            Rational f = v[t] / dir[t];
            if (factor == 0)
              factor = f;
            else if (f != factor)
              return false;
          }
        }
        return factor != 0;
      };
      Rational a, b, cq;
      ok = proportional(g.bracket(levi[0], levi[1]), levi[2], a) &&
           proportional(g.bracket(levi[1], levi[2]), levi[0], b) &&
           proportional(g.bracket(levi[2], levi[0]), levi[1], cq);
      if (!ok) {
        w = "brackets do not follow the cyclic pattern";
      } else {
        // need mu = 1/sqrt(abc) with mu*a, mu*b, mu*c positive rational squares
        Rational abc = a * b * cq;
        auto rat_sqrt = [](const Rational& q) -> std::optional<Rational> {
          if (q <= 0) return std::nullopt;
          auto rn = exact_nth_root(numerator(q), 2);
          auto rd = exact_nth_root(denominator(q), 2);
          if (rn && rd) return Rational(*rn, *rd);
          return std::nullopt;
        };
        auto s = rat_sqrt(abc);
        ok = false;
        if (s) {
          Rational mu = Rational(1) / *s;
          ok = rat_sqrt(mu * a).has_value() && rat_sqrt(mu * b).has_value() &&
               rat_sqrt(mu * cq).has_value();
        }
        w = "cyclic factors (" + rat_to_string(a) + ", " + rat_to_string(b) + ", " +
            rat_to_string(cq) + ") admit no rational rescaling to so(3)";
      }
    }
    add("levi factor matches so(3)", ok, w);
  }

  return rep;
}

}  // namespace cylsym
