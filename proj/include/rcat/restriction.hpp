#pragma once

// Restriction structures on a finite category: validation of the four
// restriction axioms, the derived laws they imply, total maps, the partial
// order on hom-sets, restriction functors, and brute-force enumeration of
// all valid structures on a small carrier.

#include <optional>
#include <string>
#include <vector>

#include "rcat/fincat.hpp"

namespace rcat {

struct RestrictionStructure {
  std::map<std::string, std::string> bar;  // f -> f-bar
};

/// Validates R1-R4 on every (pair of) morphisms:
///   R1  f . bar(f) = f
///   R2  bar(g) . bar(f) = bar(f) . bar(g)         (f, g with common dom)
///   R3  bar(g . bar(f)) = bar(g) . bar(f)         (f, g with common dom)
///   R4  bar(h) . f = f . bar(h . f)               (h composable after f)
/// When the axioms hold, the derived laws (bar idempotent, bar-absorption,
/// bar(bar(g).f) = bar(g.f), bar(bar(f)) = bar(f), monic => bar = id) are
/// re-verified as redundancy checks; a discrepancy there is an
/// implementation bug, not a property of the input.
inline CheckReport check_restriction_structure(const FinCat& C,
                                               const RestrictionStructure& r) {
  CheckReport rep{.check = "restriction"};
  std::vector<int> bar(C.n_mors(), -1);
  for (int f = 0; f < C.n_mors(); ++f) {
    auto it = r.bar.find(C.mor(f));
    if (it == r.bar.end()) {
      rep.add("bar-missing", {{"f", C.mor(f)}});
      continue;
    }
    int b = C.mor_index(it->second);
    if (C.dom(b) != C.dom(f) || C.cod(b) != C.dom(f))
      rep.add("bar-typing", {{"f", C.mor(f)}, {"bar", C.mor(b)}});
    else
      bar[f] = b;
  }
  if (!rep.violations.empty()) {
    rep.status = Status::input_error;
    return rep;
  }
  for (int f = 0; f < C.n_mors(); ++f)
    if (C.compose(f, bar[f]) != f) rep.add("R1", {{"f", C.mor(f)}});
  for (int a = 0; a < C.n_objs(); ++a) {
    std::vector<int> out;
    for (int b = 0; b < C.n_objs(); ++b)
      for (int f : C.hom(a, b)) out.push_back(f);
    for (int f : out)
      for (int g : out) {
        if (C.compose(bar[g], bar[f]) != C.compose(bar[f], bar[g]))
          rep.add("R2", {{"f", C.mor(f)}, {"g", C.mor(g)}});
        int gbf = C.compose(g, bar[f]);
        if (bar[gbf] != C.compose(bar[g], bar[f]))
          rep.add("R3", {{"f", C.mor(f)}, {"g", C.mor(g)}});
      }
  }
  for (int f = 0; f < C.n_mors(); ++f)
    for (int c = 0; c < C.n_objs(); ++c)
      for (int h : C.hom(C.cod(f), c))
        if (C.compose(bar[h], f) != C.compose(f, bar[C.compose(h, f)]))
          rep.add("R4", {{"f", C.mor(f)}, {"h", C.mor(h)}});
  rep.finalize();
  if (rep.status != Status::pass) return rep;

  // derived laws; these follow from R1-R4, so a failure here is ours
  for (int f = 0; f < C.n_mors(); ++f) {
    if (C.compose(bar[f], bar[f]) != bar[f])
      throw internal_error("derived law failed: bar idempotent at " + C.mor(f));
    if (bar[bar[f]] != bar[f])
      throw internal_error("derived law failed: bar(bar(f)) at " + C.mor(f));
    if (C.is_mono(f) && bar[f] != C.identity(C.dom(f)))
      throw internal_error("derived law failed: monic bar at " + C.mor(f));
    for (int c = 0; c < C.n_objs(); ++c)
      for (int g : C.hom(C.cod(f), c)) {
        int gf = C.compose(g, f);
        if (C.compose(bar[f], bar[gf]) != bar[gf])
          throw internal_error("derived law failed: absorption at " +
                               C.mor(g) + "," + C.mor(f));
        if (bar[C.compose(bar[g], f)] != bar[gf])
          throw internal_error("derived law failed: bar(bar(g)f) at " +
                               C.mor(g) + "," + C.mor(f));
      }
  }
  return rep;
}

/// A finite category with a validated restriction structure.
class RestrCat {
 public:
  RestrCat() = default;
  RestrCat(FinCat cat, RestrictionStructure restr)
      : cat_(std::move(cat)), restr_(std::move(restr)) {
    auto rep = check_restriction_structure(cat_, restr_);
    if (!rep.passed())
      throw input_error("invalid restriction structure: " +
                        (rep.violations.empty() ? std::string("ill-typed")
                                                : rep.violations[0].law));
    bar_.resize(cat_.n_mors());
    for (int f = 0; f < cat_.n_mors(); ++f)
      bar_[f] = cat_.mor_index(restr_.bar.at(cat_.mor(f)));
  }

  const FinCat& cat() const { return cat_; }
  const RestrictionStructure& restr() const { return restr_; }
  int bar(int f) const { return bar_[f]; }
  bool is_restriction_idempotent(int e) const { return bar_[e] == e; }
  bool is_total(int f) const { return bar_[f] == cat_.identity(cat_.dom(f)); }

 private:
  FinCat cat_;
  RestrictionStructure restr_;
  std::vector<int> bar_;
};

/// All e: A -> A with bar(e) = e, in id order.
inline std::vector<int> restriction_idempotents(const RestrCat& X, int obj) {
  std::vector<int> out;
  for (int e : X.cat().hom(obj, obj))
    if (X.is_restriction_idempotent(e)) out.push_back(e);
  return out;
}

inline std::vector<std::string> restriction_idempotents(
    const RestrCat& X, const std::string& obj) {
  std::vector<std::string> out;
  for (int e : restriction_idempotents(X, X.cat().obj_index(obj)))
    out.push_back(X.cat().mor(e));
  return out;
}

/// The subcategory of total maps (same objects). Closure under composition
/// and totality of identities hold by the axioms and are re-asserted here.
inline FinCat total_subcategory(const RestrCat& X) {
  const FinCat& C = X.cat();
  CatData d;
  d.objects = C.data().objects;
  std::vector<bool> keep(C.n_mors(), false);
  for (int f = 0; f < C.n_mors(); ++f) keep[f] = X.is_total(f);
  for (int o = 0; o < C.n_objs(); ++o)
    if (!keep[C.identity(o)])
      throw internal_error("identity not total at " + C.obj(o));
  for (int f = 0; f < C.n_mors(); ++f)
    if (keep[f]) d.morphisms.push_back(C.data().morphisms[f]);
  d.identities = C.data().identities;
  for (int g = 0; g < C.n_mors(); ++g)
    for (int f = 0; f < C.n_mors(); ++f)
      if (keep[g] && keep[f] && C.cod(f) == C.dom(g)) {
        int gf = C.compose(g, f);
        if (!keep[gf])
          throw internal_error("total maps not closed under composition: " +
                               C.mor(g) + " . " + C.mor(f));
        d.composition.push_back({C.mor(g), C.mor(f), C.mor(gf)});
      }
  return FinCat(d);
}

/// The canonical partial order on parallel maps: f <= f' iff f = f'. bar(f).
inline bool leq(const RestrCat& X, int f, int fp) {
  if (!X.cat().parallel(f, fp)) throw input_error("leq: maps not parallel");
  return X.cat().compose(fp, X.bar(f)) == f;
}

/// Restriction-functor check: F preserves bar on every morphism. When a
/// transformation between restriction functors is supplied, its components
/// must be total in the target.
inline CheckReport check_restriction_functor(
    const Functor& F, const RestrCat& X, const RestrCat& Y,
    const std::optional<NatTrans>& alpha = std::nullopt,
    const std::optional<Functor>& G = std::nullopt) {
  CheckReport rep{.check = "restriction-functor"};
  auto laws = check_functor(X.cat(), Y.cat(), F);
  if (!laws.passed()) {
    rep.status = Status::input_error;
    rep.notes.push_back("not a functor; see category/functor check");
    rep.sub.push_back(laws);
    return rep;
  }
  for (int f = 0; f < X.cat().n_mors(); ++f) {
    int Ff = Y.cat().mor_index(F.on_mor(X.cat().mor(f)));
    int Fbar = Y.cat().mor_index(F.on_mor(X.cat().mor(X.bar(f))));
    if (Fbar != Y.bar(Ff))
      rep.add("preserves-restriction", {{"f", X.cat().mor(f)}});
  }
  if (alpha) {
    const Functor& G2 = G ? *G : F;
    auto nat = check_nat_trans(X.cat(), Y.cat(), F, G2, *alpha);
    if (!nat.passed()) {
      rep.sub.push_back(nat);
    } else {
      for (const auto& [o, c] : alpha->components)
        if (!Y.is_total(Y.cat().mor_index(c)))
          rep.add("transformation-component-total", {{"object", o}, {"component", c}});
    }
  }
  return rep.finalize();
}

/// Enumerates every valid restriction structure on C by backtracking over
/// per-morphism candidates (idempotent endomorphisms absorbed by f), with
/// incremental law checks between assigned morphisms. Exponential in the
/// worst case; meant for carriers of at most a few dozen morphisms.
inline std::vector<RestrictionStructure> enumerate_restriction_structures(
    const FinCat& C) {
  int n = C.n_mors();
  std::vector<std::vector<int>> cand(n);
  for (int f = 0; f < n; ++f) {
    for (int e : C.hom(C.dom(f), C.dom(f)))
      if (C.compose(e, e) == e && C.compose(f, e) == f) cand[f].push_back(e);
  }
  std::vector<int> bar(n, -1);
  std::vector<RestrictionStructure> found;

  // laws touching only assigned morphisms
  auto consistent = [&](int f) {
    int bf = bar[f];
    if (bar[bf] != -1 && bar[bf] != bf) return false;  // bar(bar f) = bar f
    for (int g = 0; g < n; ++g) {
      if (bar[g] == -1) continue;
      if (C.dom(g) == C.dom(f)) {
        int bg = bar[g];
        if (C.compose(bg, bf) != C.compose(bf, bg)) return false;  // R2
        int gbf = C.compose(g, bf);
        if (bar[gbf] != -1 && bar[gbf] != C.compose(bg, bf)) return false;
        int fbg = C.compose(f, bg);
        if (bar[fbg] != -1 && bar[fbg] != C.compose(bf, bg)) return false;
      }
      // R4 in both roles
      if (C.dom(g) == C.cod(f)) {
        int gf = C.compose(g, f);
        if (bar[gf] != -1 && C.compose(bar[g], f) != C.compose(f, bar[gf]))
          return false;
      }
      if (C.dom(f) == C.cod(g)) {
        int fg = C.compose(f, g);
        if (bar[fg] != -1 && C.compose(bf, g) != C.compose(g, bar[fg]))
          return false;
      }
    }
    return true;
  };

  auto dfs = [&](auto&& self, int f) -> void {
    if (f == n) {
      RestrictionStructure r;
      for (int i = 0; i < n; ++i) r.bar[C.mor(i)] = C.mor(bar[i]);
      if (check_restriction_structure(C, r).passed()) found.push_back(r);
      return;
    }
    if (bar[f] != -1) {  // forced earlier
      self(self, f + 1);
      return;
    }
    for (int e : cand[f]) {
      bar[f] = e;
      bool forced = false;
      if (bar[e] == -1) {
        bar[e] = e;
        forced = true;
      }
      if (bar[e] == e && consistent(f)) self(self, f + 1);
      if (forced) bar[e] = -1;
      bar[f] = -1;
    }
  };
  dfs(dfs, 0);
  return found;
}

}  // namespace rcat
