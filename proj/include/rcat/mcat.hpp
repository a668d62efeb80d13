#pragma once

// M-categories: stable systems of monics, the partial-map category built
// from spans composed by pullback, its total part, and the comparison
// functors between a split restriction category and the partial maps of its
// total part.
//
// Partial maps are kept in canonical form: the representative of a span
// class is the lexicographically least (apex, m, f) triple of its
// isomorphism orbit, so equality of partial maps is literal equality.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rcat/splitting.hpp"

namespace rcat {

struct MSystem {
  std::set<std::string> members;

  bool contains(const FinCat& C, int m) const {
    return members.count(C.mor(m)) > 0;
  }
};

/// Validates the four stable-system axioms: members monic, all isomorphisms
/// present, closure under composition, and existence + membership of the
/// pullback of a member along any map into its codomain.
inline CheckReport check_msystem(const FinCat& C, const MSystem& M) {
  CheckReport rep{.check = "msystem"};
  for (const auto& id : M.members)
    if (!C.has_mor(id)) {
      rep.add("unknown-member", {{"m", id}});
      rep.status = Status::input_error;
    }
  if (rep.status == Status::input_error) return rep;
  for (const auto& id : M.members)
    if (!C.is_mono(C.mor_index(id))) rep.add("member-monic", {{"m", id}});
  for (int m = 0; m < C.n_mors(); ++m)
    if (C.is_iso(m) && !M.contains(C, m))
      rep.add("isos-included", {{"m", C.mor(m)}});
  for (const auto& mid : M.members)
    for (const auto& nid : M.members) {
      int m = C.mor_index(mid), n = C.mor_index(nid);
      if (C.cod(m) == C.dom(n) && !M.contains(C, C.compose(n, m)))
        rep.add("composition-closed", {{"n", nid}, {"m", mid}});
    }
  for (const auto& mid : M.members) {
    int m = C.mor_index(mid);
    for (int a = 0; a < C.n_objs(); ++a)
      for (int f : C.hom(a, C.cod(m))) {
        auto pb = pullback(C, f, m);
        if (!pb)
          rep.add("pullback-exists", {{"m", mid}, {"f", C.mor(f)}});
        else if (!M.contains(C, pb->p))
          rep.add("pullback-stable",
                  {{"m", mid}, {"f", C.mor(f)}, {"leg", C.mor(pb->p)}});
      }
  }
  return rep.finalize();
}

// ---------------------------------------------------------------------------
// Spans and their canonical forms
// ---------------------------------------------------------------------------

/// A partial-map representative: src <-m- apex -f-> dst with m in the monic
/// system.
struct Span {
  int apex, m, f;
  friend bool operator==(const Span&, const Span&) = default;
};

/// Canonical minimum of the iso-orbit {(m.phi, f.phi) | phi iso}:
/// least (apex id, m id, f id).
inline Span canonical_span(const FinCat& C, const Span& s) {
  Span best = s;
  auto key = [&](const Span& t) {
    return std::make_tuple(C.obj(t.apex), C.mor(t.m), C.mor(t.f));
  };
  for (int w = 0; w < C.n_objs(); ++w)
    for (int phi : C.isos(w, s.apex)) {
      Span t{w, C.compose(s.m, phi), C.compose(s.f, phi)};
      if (key(t) < key(best)) best = t;
    }
  return best;
}

inline std::string span_id(const FinCat& C, const Span& s) {
  return C.mor(s.m) + "|" + C.mor(s.f);
}

/// later \circ earlier by pullback, returned in canonical form.
inline Span compose_spans(const FinCat& C, PullbackCache& pc,
                          const Span& later, const Span& earlier) {
  const auto& pb = pc.get(earlier.f, later.m);
  if (!pb)
    throw internal_error("span composition: pullback missing for cospan " +
                         C.mor(earlier.f) + ", " + C.mor(later.m));
  return canonical_span(
      C, Span{pb->apex, C.compose(earlier.m, pb->p), C.compose(later.f, pb->q)});
}

inline Span identity_span(const FinCat& C, int obj) {
  return canonical_span(C, Span{obj, C.identity(obj), C.identity(obj)});
}

// ---------------------------------------------------------------------------
// The partial-map category
// ---------------------------------------------------------------------------

struct ParCat {
  FinCat base;      // the underlying M-category carrier
  MSystem msystem;  // its monic system
  RestrCat rc;      // partial maps with restriction (m,f) |-> (m,m)
  std::map<std::string, Span> span_of;  // par morphism id -> canonical span

  /// Canonical par morphism index of a span (canonicalizes first).
  int par_index(const Span& s) const {
    return rc.cat().mor_index(span_id(base, canonical_span(base, s)));
  }
  const Span& span(int par_mor) const {
    return span_of.at(rc.cat().mor(par_mor));
  }
  /// src/dst objects share ids with base objects.
  int obj_index(const std::string& id) const { return rc.cat().obj_index(id); }
};

/// Builds the partial-map category of (C, M). Objects are those of C;
/// morphisms are canonical span classes; composition is by pullback;
/// the restriction of (m, f) is (m, m). The result is validated as a
/// split restriction category.
inline ParCat par(const FinCat& C, const MSystem& M) {
  auto mrep = check_msystem(C, M);
  if (!mrep.passed()) throw input_error("par: monic system invalid");
  ParCat out;
  out.base = C;
  out.msystem = M;
  PullbackCache pc(out.base);

  // enumerate canonical spans per (src, dst)
  std::map<std::string, Span> spans;
  for (const auto& mid : M.members) {
    int m = C.mor_index(mid);
    for (int y = 0; y < C.n_objs(); ++y)
      for (int f : C.hom(C.dom(m), y)) {
        Span s = canonical_span(C, Span{C.dom(m), m, f});
        spans.emplace(span_id(C, s), s);
      }
  }

  CatData d;
  RestrictionStructure rs;
  d.objects = C.data().objects;
  for (const auto& [id, s] : spans) {
    d.morphisms.push_back({id, C.obj(C.cod(s.m)), C.obj(C.cod(s.f))});
    Span bar = canonical_span(C, Span{s.apex, s.m, s.m});
    rs.bar[id] = span_id(C, bar);
  }
  for (int o = 0; o < C.n_objs(); ++o)
    d.identities[C.obj(o)] = span_id(C, identity_span(C, o));
  for (const auto& [gid, g] : spans)
    for (const auto& [fid, f] : spans)
      if (C.cod(f.f) == C.cod(g.m))
        d.composition.push_back(
            {gid, fid, span_id(C, compose_spans(C, pc, g, f))});

  FinCat P(d);
  auto crep = check_category(P);
  if (!crep.passed())
    throw internal_error("par result is not a category: " +
                         crep.violations[0].law);
  out.rc = RestrCat(std::move(P), std::move(rs));
  out.span_of = std::move(spans);
  if (!is_split(out.rc))
    throw internal_error("par result has a non-split restriction idempotent");
  return out;
}

// ---------------------------------------------------------------------------
// MTotal and the comparison functors
// ---------------------------------------------------------------------------

struct MCat {
  FinCat cat;
  MSystem msystem;
};

/// True iff m splits a restriction idempotent: some r has r.m = 1 and
/// m.r equal to its own bar.
inline bool is_restriction_monic(const RestrCat& X, int m) {
  const FinCat& C = X.cat();
  for (int r : C.hom(C.cod(m), C.dom(m)))
    if (C.compose(r, m) == C.identity(C.dom(m)) &&
        X.is_restriction_idempotent(C.compose(m, r)))
      return true;
  return false;
}

/// The total subcategory paired with the restriction monics as its monic
/// system. Requires a split restriction category.
inline MCat mtotal(const RestrCat& X) {
  if (auto e = find_non_split_idempotent(X))
    throw input_error("mtotal: restriction idempotent " + X.cat().mor(*e) +
                      " does not split");
  MCat out;
  out.cat = total_subcategory(X);
  for (int m = 0; m < X.cat().n_mors(); ++m)
    if (is_restriction_monic(X, m)) {
      if (!X.is_total(m))
        throw internal_error("restriction monic is not total: " +
                             X.cat().mor(m));
      out.msystem.members.insert(X.cat().mor(m));
    }
  auto rep = check_msystem(out.cat, out.msystem);
  if (!rep.passed())
    throw internal_error("restriction monics fail the stable-system laws: " +
                         rep.violations[0].law);
  return out;
}

/// The comparison X -> Par(MTotal(X)) for split X: identity on objects,
/// f |-> (m, f.m) where (m, r) is the canonical splitting of bar(f).
/// Bijective on objects and hom-sets; preserves restriction. All asserted.
struct PhiResult {
  MCat mt;
  ParCat par;
  Functor phi;
};

inline PhiResult phi(const RestrCat& X) {
  PhiResult out{mtotal(X), {}, {}};
  out.par = par(out.mt.cat, out.mt.msystem);
  const FinCat& C = X.cat();
  const FinCat& T = out.mt.cat;
  for (int o = 0; o < C.n_objs(); ++o) out.phi.omap[C.obj(o)] = C.obj(o);
  for (int f = 0; f < C.n_mors(); ++f) {
    auto split = split_restriction_idempotent(X, X.bar(f));
    if (!split) throw internal_error("phi: idempotent lost its splitting");
    auto [m, r] = *split;
    int fm = C.compose(f, m);
    Span s{T.obj_index(C.obj(C.dom(m))), T.mor_index(C.mor(m)),
           T.mor_index(C.mor(fm))};
    out.phi.mmap[C.mor(f)] = out.par.rc.cat().mor(out.par.par_index(s));
  }
  if (!check_functor(C, out.par.rc.cat(), out.phi).passed())
    throw internal_error("phi is not a functor");
  if (!check_restriction_functor(out.phi, X, out.par.rc).passed())
    throw internal_error("phi does not preserve restriction");
  for (int a = 0; a < C.n_objs(); ++a)
    for (int b = 0; b < C.n_objs(); ++b) {
      std::set<std::string> image;
      for (int f : C.hom(a, b)) image.insert(out.phi.on_mor(C.mor(f)));
      int pa = out.par.obj_index(C.obj(a)), pb = out.par.obj_index(C.obj(b));
      if ((int)image.size() != (int)C.hom(a, b).size() ||
          (int)image.size() != (int)out.par.rc.cat().hom(pa, pb).size())
        throw internal_error("phi is not bijective on hom-sets");
    }
  return out;
}

/// The comparison MTotal(Par(C, M)) -> C: identity on objects, (1, f) |-> f.
/// Total partial maps are exactly the classes with iso monic leg; that is
/// asserted, as is inverseness (on the nose, via canonical forms) against
/// the inclusion C -> MTotal(Par(C, M)).
struct PsiResult {
  ParCat par;
  MCat total_side;
  Functor psi;   // total_side.cat -> C
  Functor incl;  // C -> total_side.cat
};

inline PsiResult psi(const FinCat& C, const MSystem& M) {
  PsiResult out{par(C, M), {}, {}, {}};
  out.total_side = mtotal(out.par.rc);
  const FinCat& T = out.total_side.cat;
  for (int o = 0; o < T.n_objs(); ++o) {
    out.psi.omap[T.obj(o)] = T.obj(o);
    out.incl.omap[T.obj(o)] = T.obj(o);
  }
  for (int t = 0; t < T.n_mors(); ++t) {
    const Span& s = out.par.span_of.at(T.mor(t));
    if (!C.is_iso(s.m))
      throw internal_error("total partial map with non-iso monic leg: " +
                           T.mor(t));
    out.psi.mmap[T.mor(t)] = C.mor(C.compose(s.f, C.inverse(s.m)));
  }
  for (int f = 0; f < C.n_mors(); ++f) {
    Span s{C.dom(f), C.identity(C.dom(f)), f};
    out.incl.mmap[C.mor(f)] = out.par.rc.cat().mor(out.par.par_index(s));
  }
  if (!check_functor(T, C, out.psi).passed())
    throw internal_error("psi is not a functor");
  if (!check_functor(C, T, out.incl).passed())
    throw internal_error("the inclusion into total partial maps is not a "
                         "functor");
  for (int f = 0; f < C.n_mors(); ++f)
    if (out.psi.on_mor(out.incl.on_mor(C.mor(f))) != C.mor(f))
      throw internal_error("psi . incl is not the identity at " + C.mor(f));
  for (int t = 0; t < T.n_mors(); ++t)
    if (out.incl.on_mor(out.psi.on_mor(T.mor(t))) != T.mor(t))
      throw internal_error("incl . psi is not the identity at " + T.mor(t));
  return out;
}

/// A transformation between M-functors is cartesian when every naturality
/// square at a member is a pullback.
inline CheckReport check_mcartesian(const FinCat& src, const FinCat& dst,
                                    const Functor& F, const Functor& G,
                                    const NatTrans& alpha,
                                    const MSystem& M_source) {
  CheckReport rep{.check = "m-cartesian"};
  auto nat = check_nat_trans(src, dst, F, G, alpha);
  if (!nat.passed()) {
    rep.status = Status::input_error;
    rep.sub.push_back(nat);
    return rep;
  }
  for (const auto& mid : M_source.members) {
    int m = src.mor_index(mid);
    int A = src.dom(m), B = src.cod(m);
    int Fm = dst.mor_index(F.on_mor(mid));
    int Gm = dst.mor_index(G.on_mor(mid));
    int aA = dst.mor_index(alpha.components.at(src.obj(A)));
    int aB = dst.mor_index(alpha.components.at(src.obj(B)));
    int FA = dst.obj_index(F.on_obj(src.obj(A)));
    if (!is_pullback(dst, Gm, aB, FA, aA, Fm))
      rep.add("square-not-pullback", {{"m", mid}});
  }
  return rep.finalize();
}

/// A commuting square with member verticals, for the square-vs-partial-map
/// equivalence check.
struct MSquare {
  int n;  // A -> C, member
  int g;  // A -> B
  int m;  // B -> D, member
  int f;  // C -> D
};

/// Decides "the square is a pullback in C" and verifies that it coincides
/// with commutativity of (m,1).(1,f) = (1,g).(n,1) among partial maps.
/// Disagreement between the two routes is an implementation failure.
inline bool lemma0_check(const FinCat& C, const MSystem& M, const MSquare& s) {
  if (!M.contains(C, s.n) || !M.contains(C, s.m))
    throw input_error("lemma0_check: vertical legs must be members");
  if (C.compose(s.m, s.g) != C.compose(s.f, s.n))
    throw input_error("lemma0_check: square does not commute");
  bool as_pullback = is_pullback(C, s.f, s.m, C.dom(s.g), s.n, s.g);

  PullbackCache pc(C);
  int A = C.dom(s.g), B = C.cod(s.g), Cc = C.cod(s.n), D = C.cod(s.m);
  Span one_f{Cc, C.identity(Cc), s.f};          // C -> D
  Span m_one{C.dom(s.m), s.m, C.identity(B)};   // D -> B
  Span n_one{C.dom(s.n), s.n, C.identity(A)};   // C -> A
  Span one_g{A, C.identity(A), s.g};            // A -> B
  Span lhs = compose_spans(C, pc, m_one, one_f);
  Span rhs = compose_spans(C, pc, one_g, n_one);
  bool as_partial_maps = lhs == rhs;
  if (as_pullback != as_partial_maps)
    throw internal_error(
        "square/partial-map equivalence failed at square with f=" +
        C.mor(s.f) + ", m=" + C.mor(s.m));
  return as_pullback;
}

// ---------------------------------------------------------------------------
// M-subobjects
// ---------------------------------------------------------------------------

/// Canonical representative of the mono class of a member: least
/// (dom object id, morphism id) over the orbit {m.phi | phi iso}.
inline int canonical_msub(const FinCat& C, int m) {
  int best = m;
  auto key = [&](int t) { return std::make_pair(C.obj(C.dom(t)), C.mor(t)); };
  for (int w = 0; w < C.n_objs(); ++w)
    for (int phi : C.isos(w, C.dom(m))) {
      int t = C.compose(m, phi);
      if (key(t) < key(best)) best = t;
    }
  return best;
}

struct MSubobjects {
  std::vector<int> reps;               // canonical members, sorted by id
  std::vector<std::vector<bool>> leq;  // factorization order
};

/// Isomorphism classes of members with codomain D, partially ordered by
/// factorization.
inline MSubobjects m_subobjects(const FinCat& C, const MSystem& M, int D) {
  std::set<int> reps;
  for (const auto& mid : M.members) {
    int m = C.mor_index(mid);
    if (C.cod(m) == D) reps.insert(canonical_msub(C, m));
  }
  MSubobjects out;
  out.reps.assign(reps.begin(), reps.end());
  std::sort(out.reps.begin(), out.reps.end(),
            [&](int a, int b) { return C.mor(a) < C.mor(b); });
  int n = (int)out.reps.size();
  out.leq.assign(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int h : C.hom(C.dom(out.reps[i]), C.dom(out.reps[j])))
        if (C.compose(out.reps[j], h) == out.reps[i]) {
          out.leq[i][j] = true;
          break;
        }
  return out;
}

/// Change of base: the canonical class of the pullback of member m along f.
inline int msub_pullback_rep(const FinCat& C, PullbackCache& pc, int f,
                             int m) {
  const auto& pb = pc.get(f, m);
  if (!pb)
    throw internal_error("m-subobject change of base: pullback missing");
  return canonical_msub(C, pb->p);
}

}  // namespace rcat
