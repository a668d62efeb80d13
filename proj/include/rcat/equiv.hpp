#pragma once

// The equivalence between presheaves on an M-category and total maps of
// restriction presheaves on its partial-map category, made executable:
// the functor F (spans of members with presheaf elements), the functor G
// (elements with identity restriction), the unit and counit with explicit
// componentwise bijections, the transport of restriction presheaves across
// idempotent splitting, and the embedding-triangle check.

#include <map>
#include <string>
#include <vector>

#include "rcat/rpsh.hpp"

namespace rcat {

// ---------------------------------------------------------------------------
// F: presheaves on the base -> restriction presheaves on partial maps
// ---------------------------------------------------------------------------

/// An element of (FP)(X): a member m: Y -> X together with x in P(Y),
/// up to (m, x) ~ (m.phi, x.phi).
struct FElem {
  int m;
  std::string x;
  friend bool operator==(const FElem&, const FElem&) = default;
};

inline FElem canonical_felem(const FinCat& C, const Presheaf& P, FElem s) {
  FElem best = s;
  auto key = [&](const FElem& t) {
    return std::make_tuple(C.obj(C.dom(t.m)), C.mor(t.m), t.x);
  };
  int apex = C.dom(s.m);
  for (int w = 0; w < C.n_objs(); ++w)
    for (int phi : C.isos(w, apex)) {
      FElem t{C.compose(s.m, phi), P.apply(C.mor(phi), s.x)};
      if (key(t) < key(best)) best = t;
    }
  return best;
}

inline std::string felem_id(const FinCat& C, const FElem& s) {
  return C.mor(s.m) + "|" + s.x;
}

/// functor_F output: the restriction presheaf plus the decoded element
/// table (element ids are never parsed back).
struct FResult {
  RestrictionPresheaf rp;
  std::map<std::pair<std::string, std::string>, FElem> elems;

  const FElem& elem(const std::string& obj, const std::string& id) const {
    return elems.at({obj, id});
  }
};

/// (FP)(X) = classes of (m, x); action (m,x).(n,g) = (n.m', x.g') by
/// pullback; restriction (m,x) |-> (m,m). Validated as a restriction
/// presheaf over the partial-map category.
inline FResult functor_F(const ParCat& par, const Presheaf& P) {
  const FinCat& C = par.base;
  const FinCat& PC = par.rc.cat();
  PullbackCache pc(C);
  FResult out;
  RestrictionPresheaf& FP = out.rp;
  for (int X = 0; X < C.n_objs(); ++X) {
    auto& v = FP.psh.sets[C.obj(X)];
    auto& eb = FP.elbar[C.obj(X)];
    for (const auto& mid : par.msystem.members) {
      int m = C.mor_index(mid);
      if (C.cod(m) != X) continue;
      for (const auto& x : P.sets.at(C.obj(C.dom(m)))) {
        FElem s = canonical_felem(C, P, {m, x});
        std::string id = felem_id(C, s);
        if (out.elems.emplace(std::make_pair(C.obj(X), id), s).second) {
          v.push_back(id);
          eb[id] = PC.mor(par.par_index(Span{C.dom(s.m), s.m, s.m}));
        }
      }
    }
    std::sort(v.begin(), v.end());
  }
  for (int t = 0; t < PC.n_mors(); ++t) {
    const Span& ng = par.span(t);  // (n, g): Z -> X, acting FP(X) -> FP(Z)
    auto& a = FP.psh.act[PC.mor(t)];
    const auto& X = C.obj(C.cod(ng.f));
    for (const auto& id : FP.psh.sets.at(X)) {
      const FElem& s = out.elem(X, id);
      const auto& pb = pc.get(ng.f, s.m);
      if (!pb) throw internal_error("F action: pullback missing");
      FElem r{C.compose(ng.m, pb->p), P.apply(C.mor(pb->q), s.x)};
      a[id] = felem_id(C, canonical_felem(C, P, r));
    }
  }
  auto rep = check_restriction_presheaf(par.rc, FP);
  if (!rep.passed())
    throw internal_error("F image fails the restriction presheaf axioms: " +
                         (rep.violations.empty() ? "typing"
                                                 : rep.violations[0].law));
  return out;
}

/// (F alpha)(m, x) = (m, alpha(x)); natural and total, both asserted.
inline PresheafMap functor_F_on_map(const ParCat& par, const FResult& FP,
                                    const FResult& FQ, const Presheaf& Q,
                                    const PresheafMap& alpha) {
  const FinCat& C = par.base;
  PresheafMap out;
  for (const auto& [X, v] : FP.rp.psh.sets) {
    auto& c = out.comp[X];
    for (const auto& id : v) {
      const FElem& s = FP.elem(X, id);
      FElem r{s.m, alpha.at(C.obj(C.dom(s.m)), s.x)};
      c[id] = felem_id(C, canonical_felem(C, Q, r));
    }
  }
  if (!check_presheaf_map(par.rc.cat(), FP.rp.psh, FQ.rp.psh, out).passed())
    throw internal_error("F of a natural map is not natural");
  if (!is_total_nat(par.rc, FP.rp, FQ.rp, out))
    throw internal_error("F of a natural map is not total");
  return out;
}

// ---------------------------------------------------------------------------
// G: restriction presheaves on partial maps -> presheaves on the base
// ---------------------------------------------------------------------------

/// (GP)(X) = elements of P(X) whose restriction is the identity;
/// (GP)(f) = the action of (1, f). Well-definedness and functor laws are
/// asserted.
inline Presheaf functor_G(const ParCat& par, const RestrictionPresheaf& P) {
  const FinCat& C = par.base;
  const FinCat& PC = par.rc.cat();
  Presheaf GP;
  for (int X = 0; X < C.n_objs(); ++X) {
    auto& v = GP.sets[C.obj(X)];
    const auto& idspan = PC.mor(PC.identity(PC.obj_index(C.obj(X))));
    for (const auto& x : P.psh.sets.at(C.obj(X)))
      if (P.bar_of(C.obj(X), x) == idspan) v.push_back(x);
    std::sort(v.begin(), v.end());
  }
  for (int f = 0; f < C.n_mors(); ++f) {
    auto& a = GP.act[C.mor(f)];
    int pf = par.par_index(Span{C.dom(f), C.identity(C.dom(f)), f});
    const auto& X = C.obj(C.cod(f));
    const auto& Z = C.obj(C.dom(f));
    for (const auto& x : GP.sets.at(X)) {
      const auto& y = P.psh.apply(PC.mor(pf), x);
      if (!std::binary_search(GP.sets.at(Z).begin(), GP.sets.at(Z).end(), y))
        throw internal_error("G action leaves the total part");
      a[x] = y;
    }
  }
  auto rep = check_presheaf(C, GP);
  if (!rep.passed()) throw internal_error("G image fails the functor laws");
  return GP;
}

// ---------------------------------------------------------------------------
// Unit, counit, and the equivalence witness
// ---------------------------------------------------------------------------

struct EquivWitness {
  CheckReport report;
  json log;  // per-component bijection tables
};

/// eta_P(x) = (1, x); eps_Q(m, x) = x.(m, 1) with inverse
/// x |-> (n, x.(1, n)) where bar(x) = (n, n). Each component is checked
/// bijective and natural; eps is checked total; the triangle
/// (eps at FP) . (F eta_P) = id is checked componentwise.
inline EquivWitness verify_equivalence(
    const ParCat& par,
    const std::vector<std::pair<std::string, Presheaf>>& base_family,
    const std::vector<std::pair<std::string, RestrictionPresheaf>>&
        par_family) {
  const FinCat& C = par.base;
  const FinCat& PC = par.rc.cat();
  EquivWitness w;
  w.report.check = "equivalence";
  w.log = json::object();
  json etalog = json::object(), epslog = json::object();

  for (const auto& [name, P] : base_family) {
    auto FP = functor_F(par, P);
    auto GFP = functor_G(par, FP.rp);
    PresheafMap eta;
    json table = json::object();
    for (int X = 0; X < C.n_objs(); ++X) {
      auto& c = eta.comp[C.obj(X)];
      json t = json::object();
      for (const auto& x : P.sets.at(C.obj(X))) {
        FElem s = canonical_felem(C, P, {C.identity(X), x});
        c[x] = felem_id(C, s);
        t[x] = c[x];
      }
      table[C.obj(X)] = t;
      std::set<std::string> image;
      for (const auto& [xx, yy] : c) image.insert(yy);
      std::set<std::string> target(GFP.sets.at(C.obj(X)).begin(),
                                   GFP.sets.at(C.obj(X)).end());
      if (image != target || image.size() != c.size())
        w.report.add("eta-not-bijective",
                     {{"presheaf", name}, {"object", C.obj(X)}});
    }
    if (!check_presheaf_map(C, P, GFP, eta).passed())
      w.report.add("eta-not-natural", {{"presheaf", name}});
    etalog[name] = table;

    // triangle: (eps at FP) . (F eta) = id on FP
    auto FGFP = functor_F(par, GFP);
    auto Feta = functor_F_on_map(par, FP, FGFP, GFP, eta);
    bool triangle = true;
    for (const auto& [X, v] : FP.rp.psh.sets)
      for (const auto& y : v) {
        const FElem& z = FGFP.elem(X, Feta.at(X, y));  // (m, x in GFP(Y))
        int sp =
            par.par_index(Span{C.dom(z.m), z.m, C.identity(C.dom(z.m))});
        if (FP.rp.psh.apply(PC.mor(sp), z.x) != y) triangle = false;
      }
    if (!triangle) w.report.add("triangle", {{"presheaf", name}});
  }

  for (const auto& [name, Q] : par_family) {
    auto GQ = functor_G(par, Q);
    auto FGQ = functor_F(par, GQ);
    PresheafMap eps, eps_inv;
    json table = json::object();
    for (int X = 0; X < C.n_objs(); ++X) {
      auto& c = eps.comp[C.obj(X)];
      json t = json::object();
      for (const auto& id : FGQ.rp.psh.sets.at(C.obj(X))) {
        const FElem& s = FGQ.elem(C.obj(X), id);
        int sp =
            par.par_index(Span{C.dom(s.m), s.m, C.identity(C.dom(s.m))});
        c[id] = Q.psh.apply(PC.mor(sp), s.x);
        t[id] = c[id];
      }
      table[C.obj(X)] = t;
      // inverse via the restriction of each element
      auto& ci = eps_inv.comp[C.obj(X)];
      for (const auto& x : Q.psh.sets.at(C.obj(X))) {
        const Span& bar = par.span(PC.mor_index(Q.bar_of(C.obj(X), x)));
        if (bar.m != bar.f)
          throw internal_error("restriction with unequal span legs");
        int n = bar.m;
        int one_n = par.par_index(Span{C.dom(n), C.identity(C.dom(n)), n});
        FElem r{n, Q.psh.apply(PC.mor(one_n), x)};
        ci[x] = felem_id(C, canonical_felem(C, GQ, r));
      }
      for (const auto& [x, y] : c)
        if (ci.at(y) != x || c.at(ci.at(y)) != y) {
          w.report.add("eps-not-bijective",
                       {{"presheaf", name}, {"object", C.obj(X)}});
          break;
        }
    }
    if (!check_presheaf_map(PC, FGQ.rp.psh, Q.psh, eps).passed())
      w.report.add("eps-not-natural", {{"presheaf", name}});
    else if (!is_total_nat(par.rc, FGQ.rp, Q, eps))
      w.report.add("eps-not-total", {{"presheaf", name}});
    epslog[name] = table;
  }
  w.log["eta"] = etalog;
  w.log["eps"] = epslog;
  w.report.finalize();
  return w;
}

/// F(y(A)) and the representable restriction presheaf at A over partial
/// maps are the same thing up to the evident total isomorphism
/// (m, f) <-> the span (m, f); checked elementwise with actions.
inline bool f_of_representable_matches(const ParCat& par, int A) {
  const FinCat& C = par.base;
  const FinCat& PC = par.rc.cat();
  auto FyA = functor_F(par, yoneda(C, A));
  auto yrA = yoneda_r(par.rc, PC.obj_index(C.obj(A)));
  auto to_span = [&](const std::string& X, const std::string& id) {
    const FElem& s = FyA.elem(X, id);
    return PC.mor(par.par_index(Span{C.dom(s.m), s.m, C.mor_index(s.x)}));
  };
  for (int X = 0; X < C.n_objs(); ++X) {
    const auto& fx = FyA.rp.psh.sets.at(C.obj(X));
    const auto& yx = yrA.psh.sets.at(C.obj(X));
    if (fx.size() != yx.size()) return false;
    for (const auto& id : fx) {
      std::string sp = to_span(C.obj(X), id);
      if (!std::binary_search(yx.begin(), yx.end(), sp)) return false;
      if (FyA.rp.bar_of(C.obj(X), id) != yrA.bar_of(C.obj(X), sp))
        return false;
      for (int t = 0; t < PC.n_mors(); ++t) {
        if (PC.cod(t) != PC.obj_index(C.obj(X))) continue;
        const auto& Z = PC.obj(PC.dom(t));
        if (to_span(Z, FyA.rp.psh.apply(PC.mor(t), id)) !=
            yrA.psh.apply(PC.mor(t), sp))
          return false;
      }
    }
  }
  return true;
}

/// G(y_r(A)) recovers the representable at A: total spans into A are
/// exactly the graphs (1, f).
inline bool g_of_representable_matches(const ParCat& par, int A) {
  const FinCat& C = par.base;
  const FinCat& PC = par.rc.cat();
  auto Gyr = functor_G(par, yoneda_r(par.rc, PC.obj_index(C.obj(A))));
  auto yA = yoneda(C, A);
  for (int X = 0; X < C.n_objs(); ++X) {
    const auto& gx = Gyr.sets.at(C.obj(X));
    const auto& yx = yA.sets.at(C.obj(X));
    if (gx.size() != yx.size()) return false;
    std::set<std::string> recovered;
    for (const auto& id : gx) {
      const Span& s = par.span(PC.mor_index(id));
      if (!C.is_iso(s.m)) return false;
      recovered.insert(C.mor(C.compose(s.f, C.inverse(s.m))));
    }
    if (recovered != std::set<std::string>(yx.begin(), yx.end()))
      return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Transport across idempotent splitting
// ---------------------------------------------------------------------------

/// Q'(A, e) = { x in Q(A) | x.e = x } with inherited actions and element
/// restrictions; restricting back along the embedding returns Q on the
/// nose, which is asserted.
inline RestrictionPresheaf kr_psh_transport(const RestrCat& X, const KrCat& K,
                                            const RestrictionPresheaf& Q) {
  const FinCat& C = X.cat();
  const FinCat& KC = K.result.cat();
  RestrictionPresheaf Qp;
  for (int o = 0; o < KC.n_objs(); ++o) {
    const auto& [A, e] = K.obj_info.at(KC.obj(o));
    auto& v = Qp.psh.sets[KC.obj(o)];
    auto& eb = Qp.elbar[KC.obj(o)];
    for (const auto& x : Q.psh.sets.at(A))
      if (Q.psh.apply(e, x) == x) {
        v.push_back(x);
        eb[x] = kr_mor_id(Q.bar_of(A, x), e, e);
      }
    std::sort(v.begin(), v.end());
  }
  for (int m = 0; m < KC.n_mors(); ++m) {
    const auto& info = K.mor_info.at(KC.mor(m));  // (f, e, e')
    auto& a = Qp.psh.act[KC.mor(m)];
    for (const auto& x : Qp.psh.sets.at(KC.obj(KC.cod(m))))
      a[x] = Q.psh.apply(info[0], x);
  }
  auto rep = check_restriction_presheaf(K.result, Qp);
  if (!rep.passed())
    throw internal_error("transported presheaf fails the axioms: " +
                         (rep.violations.empty() ? "typing"
                                                 : rep.violations[0].law));
  // round trip along the embedding: equality on the nose
  for (int o = 0; o < C.n_objs(); ++o) {
    const auto& A = C.obj(o);
    const auto& JA = K.embedding.on_obj(A);
    if (Qp.psh.sets.at(JA) != Q.psh.sets.at(A))
      throw internal_error("transport round trip: sets differ at " + A);
    for (const auto& x : Q.psh.sets.at(A))
      if (Qp.bar_of(JA, x) !=
          kr_mor_id(Q.bar_of(A, x), C.mor(C.identity(o)),
                    C.mor(C.identity(o))))
        throw internal_error("transport round trip: restriction differs");
    for (int f = 0; f < C.n_mors(); ++f) {
      if (C.cod(f) != o) continue;
      const auto& Jf = K.embedding.on_mor(C.mor(f));
      for (const auto& x : Q.psh.sets.at(A))
        if (Qp.psh.apply(Jf, x) != Q.psh.apply(C.mor(f), x))
          throw internal_error("transport round trip: action differs");
    }
  }
  return Qp;
}

// ---------------------------------------------------------------------------
// The embedding triangle
// ---------------------------------------------------------------------------

inline Functor compose_functors(const Functor& later, const Functor& earlier) {
  Functor out;
  for (const auto& [o, v] : earlier.omap) out.omap[o] = later.on_obj(v);
  for (const auto& [m, v] : earlier.mmap) out.mmap[m] = later.on_mor(v);
  return out;
}

/// Verifies, stage by stage, that the composite
///   X -> split closure -> partial maps of its total part -> presheaf level
/// agrees with the direct restriction Yoneda embedding of X up to a total
/// isomorphism natural in the object: the composite W of the first two
/// stages is a fully faithful restriction functor, F carries representables
/// to representable restriction presheaves, and f |-> W(f) is a bijection
/// X(B, A) -> Par(W B, W A) preserving restriction and composition.
inline CheckReport cockett_lack_check(const RestrCat& X) {
  CheckReport rep{.check = "embedding-triangle"};
  const FinCat& C = X.cat();
  auto K = kr(X);
  auto j = check_restriction_functor(K.embedding, X, K.result);
  j.check = "stage-split-embedding";
  rep.sub.push_back(j);

  auto Ph = phi(K.result);
  auto p = check_restriction_functor(Ph.phi, K.result, Ph.par.rc);
  p.check = "stage-partial-map-comparison";
  rep.sub.push_back(p);

  CheckReport f3{.check = "stage-presheaf-representables"};
  for (int A = 0; A < Ph.par.base.n_objs(); ++A)
    if (!f_of_representable_matches(Ph.par, A))
      f3.add("representable-mismatch", {{"object", Ph.par.base.obj(A)}});
  rep.sub.push_back(f3.finalize());

  // overall comparison through W = phi . embedding
  Functor W = compose_functors(Ph.phi, K.embedding);
  const FinCat& PC = Ph.par.rc.cat();
  CheckReport cmp{.check = "stage-composite-vs-yoneda"};
  for (int A = 0; A < C.n_objs(); ++A) {
    int WA = PC.obj_index(W.on_obj(C.obj(A)));
    for (int B = 0; B < C.n_objs(); ++B) {
      int WB = PC.obj_index(W.on_obj(C.obj(B)));
      std::set<std::string> image;
      for (int f : C.hom(B, A)) image.insert(W.on_mor(C.mor(f)));
      if ((int)image.size() != (int)C.hom(B, A).size() ||
          (int)image.size() != (int)PC.hom(WB, WA).size())
        cmp.add("hom-bijection", {{"A", C.obj(A)}, {"B", C.obj(B)}});
    }
    for (int B = 0; B < C.n_objs(); ++B)
      for (int f : C.hom(B, A)) {
        int Wf = PC.mor_index(W.on_mor(C.mor(f)));
        if (W.on_mor(C.mor(X.bar(f))) != PC.mor(Ph.par.rc.bar(Wf)))
          cmp.add("restriction-preserved", {{"f", C.mor(f)}});
      }
  }
  for (int f = 0; f < C.n_mors(); ++f)
    for (int c2 = 0; c2 < C.n_objs(); ++c2)
      for (int g : C.hom(C.cod(f), c2)) {
        int Wf = PC.mor_index(W.on_mor(C.mor(f)));
        int Wg = PC.mor_index(W.on_mor(C.mor(g)));
        if (W.on_mor(C.mor(C.compose(g, f))) != PC.mor(PC.compose(Wg, Wf)))
          cmp.add("naturality", {{"g", C.mor(g)}, {"f", C.mor(f)}});
      }
  rep.sub.push_back(cmp.finalize());
  return rep.finalize();
}

}  // namespace rcat
