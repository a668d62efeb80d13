#pragma once

// Restriction presheaves on a restriction category: the three element-level
// axioms, uniqueness of the structure, the restriction of a natural
// transformation, the restriction Yoneda embedding, totality, and splitting
// of restriction idempotents.
//
// Axioms, for x in P(A):
//   A1  x . bar(x) = x
//   A2  bar(x . e) = bar(x) . e            (e a restriction idempotent on A)
//   A3  bar(x) . g = g . bar(x . g)        (g: B -> A)

#include <map>
#include <string>
#include <vector>

#include "rcat/presheaf.hpp"
#include "rcat/restriction.hpp"

namespace rcat {

struct RestrictionPresheaf {
  Presheaf psh;
  // obj -> element -> restriction idempotent on that object
  std::map<std::string, std::map<std::string, std::string>> elbar;

  friend bool operator==(const RestrictionPresheaf&,
                         const RestrictionPresheaf&) = default;

  const std::string& bar_of(const std::string& obj,
                            const std::string& x) const {
    return elbar.at(obj).at(x);
  }
};

inline CheckReport check_restriction_presheaf(const RestrCat& X,
                                              const RestrictionPresheaf& P) {
  const FinCat& C = X.cat();
  CheckReport rep{.check = "restriction-presheaf"};
  auto base = check_presheaf(C, P.psh);
  if (!base.passed()) {
    rep.status = Status::input_error;
    rep.sub.push_back(base);
    return rep;
  }
  for (int a = 0; a < C.n_objs(); ++a)
    for (const auto& x : P.psh.sets.at(C.obj(a))) {
      if (!P.elbar.count(C.obj(a)) || !P.elbar.at(C.obj(a)).count(x)) {
        rep.add("bar-missing", {{"object", C.obj(a)}, {"element", x}});
        continue;
      }
      int e = C.mor_index(P.bar_of(C.obj(a), x));
      if (C.dom(e) != a || C.cod(e) != a || !X.is_restriction_idempotent(e))
        rep.add("bar-not-restriction-idempotent",
                {{"object", C.obj(a)}, {"element", x}});
    }
  if (!rep.violations.empty()) {
    rep.status = Status::input_error;
    return rep;
  }
  for (int a = 0; a < C.n_objs(); ++a) {
    const auto& A = C.obj(a);
    for (const auto& x : P.psh.sets.at(A)) {
      const auto& xb = P.bar_of(A, x);
      if (P.psh.apply(xb, x) != x)
        rep.add("A1", {{"object", A}, {"element", x}});
      for (int e : restriction_idempotents(X, a)) {
        const auto& xe = P.psh.apply(C.mor(e), x);
        if (C.mor_index(P.bar_of(A, xe)) !=
            C.compose(C.mor_index(xb), e))
          rep.add("A2", {{"object", A}, {"element", x}, {"e", C.mor(e)}});
      }
      for (int b = 0; b < C.n_objs(); ++b)
        for (int g : C.hom(b, a)) {
          const auto& xg = P.psh.apply(C.mor(g), x);
          if (C.compose(C.mor_index(xb), g) !=
              C.compose(g, C.mor_index(P.bar_of(C.obj(b), xg))))
            rep.add("A3", {{"object", A}, {"element", x}, {"g", C.mor(g)}});
        }
    }
  }
  rep.finalize();
  if (rep.status != Status::pass) return rep;
  // derived laws; failures here are implementation bugs
  for (int a = 0; a < C.n_objs(); ++a)
    for (const auto& x : P.psh.sets.at(C.obj(a)))
      for (int b = 0; b < C.n_objs(); ++b)
        for (int g : C.hom(b, a)) {
          const auto& xg = P.psh.apply(C.mor(g), x);
          int xgb = C.mor_index(P.bar_of(C.obj(b), xg));
          if (C.compose(X.bar(g), xgb) != xgb)
            throw internal_error("derived law failed: bar(g).bar(x.g)");
          if (X.bar(C.compose(C.mor_index(P.bar_of(C.obj(a), x)), g)) != xgb)
            throw internal_error("derived law failed: bar(bar(x).g)");
        }
  return rep;
}

/// All valid element-restriction assignments for a presheaf, by
/// backtracking over A1-filtered candidates with incremental A2/A3 checks.
/// The returned list has length 0 or 1; two or more would contradict
/// uniqueness of the structure and is reported as an implementation error.
inline std::vector<std::map<std::string, std::map<std::string, std::string>>>
infer_restriction_structure(const RestrCat& X, const Presheaf& P) {
  const FinCat& C = X.cat();
  auto base = check_presheaf(C, P);
  if (!base.passed()) throw input_error("infer: invalid presheaf");

  std::vector<std::pair<std::string, std::string>> elems;
  for (const auto& [o, v] : P.sets)
    for (const auto& x : v) elems.emplace_back(o, x);
  std::map<std::pair<std::string, std::string>, int> assign;

  auto consistent = [&](const std::pair<std::string, std::string>& key) {
    const auto& [A, x] = key;
    int a = C.obj_index(A);
    int xb = assign.at(key);
    // A2 against every restriction idempotent (x.e may be assigned)
    for (int e : restriction_idempotents(X, a)) {
      const auto& xe = P.apply(C.mor(e), x);
      auto it = assign.find({A, xe});
      if (it != assign.end() && it->second != C.compose(xb, e)) return false;
    }
    // A2 in the other role: x = y.e for assigned y
    for (int e : restriction_idempotents(X, a))
      for (const auto& y : P.sets.at(A))
        if (P.apply(C.mor(e), y) == x) {
          auto it = assign.find({A, y});
          if (it != assign.end() && C.compose(it->second, e) != xb)
            return false;
        }
    // A3 both ways
    for (int b = 0; b < C.n_objs(); ++b)
      for (int g : C.hom(b, a)) {
        const auto& xg = P.apply(C.mor(g), x);
        auto it = assign.find({C.obj(b), xg});
        if (it != assign.end() &&
            C.compose(xb, g) != C.compose(g, it->second))
          return false;
      }
    int aa = a;
    for (int c = 0; c < C.n_objs(); ++c)
      for (int g : C.hom(aa, c)) {
        // x could be y.g for an assigned y in P(c)
        for (const auto& y : P.sets.at(C.obj(c)))
          if (P.apply(C.mor(g), y) == x) {
            auto it = assign.find({C.obj(c), y});
            if (it != assign.end() &&
                C.compose(it->second, g) != C.compose(g, xb))
              return false;
          }
      }
    return true;
  };

  std::vector<std::map<std::string, std::map<std::string, std::string>>> out;
  auto dfs = [&](auto&& self, size_t i) -> void {
    if (i == elems.size()) {
      RestrictionPresheaf R{P, {}};
      for (const auto& [o, v] : P.sets) R.elbar[o];
      for (const auto& [k, e] : assign) R.elbar[k.first][k.second] = C.mor(e);
      if (check_restriction_presheaf(X, R).passed()) out.push_back(R.elbar);
      return;
    }
    const auto& [A, x] = elems[i];
    int a = C.obj_index(A);
    for (int e : restriction_idempotents(X, a)) {
      if (P.apply(C.mor(e), x) != x) continue;  // A1
      assign[elems[i]] = e;
      if (consistent(elems[i])) self(self, i + 1);
      assign.erase(elems[i]);
    }
  };
  dfs(dfs, 0);
  if (out.size() >= 2)
    throw internal_error("presheaf admits two restriction structures");
  return out;
}

inline PresheafMap compose_psh_maps(const PresheafMap& later,
                                    const PresheafMap& earlier) {
  PresheafMap out;
  for (const auto& [o, c] : earlier.comp) {
    auto& oc = out.comp[o];
    for (const auto& [x, y] : c) oc[x] = later.at(o, y);
  }
  return out;
}

inline PresheafMap identity_psh_map(const Presheaf& P) {
  PresheafMap out;
  for (const auto& [o, v] : P.sets) {
    auto& c = out.comp[o];
    for (const auto& x : v) c[x] = x;
  }
  return out;
}

/// The restriction of a natural transformation:
/// bar(alpha)_A(x) = x . bar(alpha_A(x)). Naturality of the result is a
/// theorem and is re-asserted.
inline PresheafMap restriction_of_nat(const RestrCat& X,
                                      const RestrictionPresheaf& P,
                                      const RestrictionPresheaf& Q,
                                      const PresheafMap& alpha) {
  const FinCat& C = X.cat();
  auto nat = check_presheaf_map(C, P.psh, Q.psh, alpha);
  if (!nat.passed()) throw input_error("restriction_of_nat: not natural");
  PresheafMap out;
  for (const auto& [o, v] : P.psh.sets) {
    auto& c = out.comp[o];
    for (const auto& x : v)
      c[x] = P.psh.apply(Q.bar_of(o, alpha.at(o, x)), x);
  }
  if (!check_presheaf_map(C, P.psh, P.psh, out).passed())
    throw internal_error("restriction of a natural map is not natural");
  return out;
}

/// The representable restriction presheaf: elements are maps into A,
/// restricted by their own bar.
inline RestrictionPresheaf yoneda_r(const RestrCat& X, int A) {
  const FinCat& C = X.cat();
  RestrictionPresheaf P{yoneda(C, A), {}};
  for (const auto& [o, v] : P.psh.sets) {
    auto& eb = P.elbar[o];
    for (const auto& f : v) eb[f] = C.mor(X.bar(C.mor_index(f)));
  }
  auto rep = check_restriction_presheaf(X, P);
  if (!rep.passed())
    throw internal_error("representable fails the restriction presheaf "
                         "axioms");
  return P;
}

/// Postcomposition y_r(f): y_r(dom f) => y_r(cod f).
inline PresheafMap yoneda_r_on_mor(const RestrCat& X, int f) {
  const FinCat& C = X.cat();
  PresheafMap out;
  for (int b = 0; b < C.n_objs(); ++b) {
    auto& c = out.comp[C.obj(b)];
    for (int x : C.hom(b, C.dom(f))) c[C.mor(x)] = C.mor(C.compose(f, x));
  }
  return out;
}

/// Total iff the restriction of alpha is the identity; asserted equivalent
/// to alpha preserving element restrictions.
inline bool is_total_nat(const RestrCat& X, const RestrictionPresheaf& P,
                         const RestrictionPresheaf& Q,
                         const PresheafMap& alpha) {
  bool total = restriction_of_nat(X, P, Q, alpha) == identity_psh_map(P.psh);
  bool preserves = true;
  for (const auto& [o, v] : P.psh.sets)
    for (const auto& x : v)
      if (Q.bar_of(o, alpha.at(o, x)) != P.bar_of(o, x)) preserves = false;
  if (total != preserves)
    throw internal_error(
        "totality and restriction-preservation disagree for a natural map");
  return total;
}

/// A splitting of a restriction idempotent beta on P through its
/// fixed-point subpresheaf.
struct PshrSplitting {
  RestrictionPresheaf fixed;  // Q
  PresheafMap mu;             // Q => P, inclusion
  PresheafMap rho;            // P => Q, x -> beta(x)
};

inline PshrSplitting split_in_pshr(const RestrCat& X,
                                   const RestrictionPresheaf& P,
                                   const PresheafMap& beta) {
  const FinCat& C = X.cat();
  if (restriction_of_nat(X, P, P, beta) != beta)
    throw input_error("split_in_pshr: not a restriction idempotent");
  PshrSplitting out;
  for (const auto& [o, v] : P.psh.sets) {
    auto& q = out.fixed.psh.sets[o];
    auto& eb = out.fixed.elbar[o];
    for (const auto& x : v)
      if (beta.at(o, x) == x) {
        q.push_back(x);
        eb[x] = P.bar_of(o, x);
      }
  }
  for (int f = 0; f < C.n_mors(); ++f) {
    auto& a = out.fixed.psh.act[C.mor(f)];
    for (const auto& x : out.fixed.psh.sets.at(C.obj(C.cod(f))))
      a[x] = P.psh.apply(C.mor(f), x);
  }
  out.mu = inclusion_map(C, out.fixed.psh);
  for (const auto& [o, v] : P.psh.sets) {
    auto& c = out.rho.comp[o];
    for (const auto& x : v) c[x] = beta.at(o, x);
  }
  if (!check_restriction_presheaf(X, out.fixed).passed())
    throw internal_error("fixed-point subpresheaf fails the axioms");
  // mu . rho = beta and rho . mu = id, literally
  if (compose_psh_maps(out.mu, out.rho) != beta ||
      compose_psh_maps(out.rho, out.mu) != identity_psh_map(out.fixed.psh))
    throw internal_error("splitting equations fail");
  return out;
}

/// The canonical splitting of y_r(e) for a restriction idempotent e on A:
/// Q(A,e)(B) = { f: B -> A | e.f = f } with inherited structure.
inline RestrictionPresheaf q_split(const RestrCat& X, int A, int e) {
  const FinCat& C = X.cat();
  if (C.dom(e) != A || !X.is_restriction_idempotent(e))
    throw input_error("q_split: not a restriction idempotent on the object");
  auto yr = yoneda_r(X, A);
  auto split = split_in_pshr(X, yr, yoneda_r_on_mor(X, e));
  for (const auto& [o, v] : split.fixed.psh.sets)
    for (const auto& f : v)
      if (C.compose(e, C.mor_index(f)) != C.mor_index(f))
        throw internal_error("q_split fixed points are not e-invariant");
  return split.fixed;
}

/// The generated family: representables and their q_split quotients over
/// every restriction idempotent, with stable names.
inline std::vector<std::pair<std::string, RestrictionPresheaf>>
rpsh_generated_family(const RestrCat& X) {
  const FinCat& C = X.cat();
  std::vector<std::pair<std::string, RestrictionPresheaf>> out;
  for (int a = 0; a < C.n_objs(); ++a)
    out.emplace_back("y_r(" + C.obj(a) + ")", yoneda_r(X, a));
  for (int a = 0; a < C.n_objs(); ++a)
    for (int e : restriction_idempotents(X, a))
      out.emplace_back("Q(" + C.obj(a) + "|" + C.mor(e) + ")",
                       q_split(X, a, e));
  return out;
}

/// Hom-level restriction laws over a family of restriction presheaves:
/// with bar(alpha) from restriction_of_nat, the four restriction axioms
/// hold for every composable configuration of maps between family members.
inline CheckReport check_pshr_restriction_laws(
    const RestrCat& X,
    const std::vector<std::pair<std::string, RestrictionPresheaf>>& family) {
  CheckReport rep{.check = "pshr-restriction-laws"};
  const FinCat& C = X.cat();
  (void)C;
  // enumerate maps P => Q once per ordered pair
  std::map<std::pair<int, int>, std::vector<PresheafMap>> maps;
  for (size_t i = 0; i < family.size(); ++i)
    for (size_t j = 0; j < family.size(); ++j)
      maps[{(int)i, (int)j}] =
          enumerate_nat_trans(X.cat(), family[i].second.psh,
                              family[j].second.psh);
  auto bar = [&](int i, int j, const PresheafMap& a) {
    return restriction_of_nat(X, family[i].second, family[j].second, a);
  };
  for (size_t p = 0; p < family.size(); ++p) {
    const auto& P = family[p].second;
    for (size_t q = 0; q < family.size(); ++q)
      for (const auto& a : maps[{(int)p, (int)q}]) {
        auto ab = bar((int)p, (int)q, a);
        // R1
        if (compose_psh_maps(a, ab) != a)
          rep.add("R1", {{"P", family[p].first}, {"Q", family[q].first}});
        for (size_t r = 0; r < family.size(); ++r)
          for (const auto& b : maps[{(int)p, (int)r}]) {
            auto bb = bar((int)p, (int)r, b);
            if (compose_psh_maps(ab, bb) != compose_psh_maps(bb, ab))
              rep.add("R2", {{"P", family[p].first}});
            // R3: bar(b . bar(a)) = bar(b) . bar(a)
            auto b_ab = compose_psh_maps(b, ab);
            if (bar((int)p, (int)r, b_ab) != compose_psh_maps(bb, ab))
              rep.add("R3", {{"P", family[p].first}});
          }
        // R4: bar(h) . a = a . bar(h . a) for h out of Q
        for (size_t r = 0; r < family.size(); ++r)
          for (const auto& h : maps[{(int)q, (int)r}]) {
            auto hb = bar((int)q, (int)r, h);
            auto ha = compose_psh_maps(h, a);
            if (compose_psh_maps(hb, a) !=
                compose_psh_maps(a, bar((int)p, (int)r, ha)))
              rep.add("R4", {{"P", family[p].first}, {"Q", family[q].first}});
          }
        (void)P;
      }
  }
  return rep.finalize();
}

}  // namespace rcat
