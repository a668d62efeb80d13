#pragma once

// Splitting of restriction idempotents: the category of pairs (A, e), the
// embedding that freely splits a restriction category, and split-ness
// detection.

#include <optional>
#include <string>
#include <vector>

#include "rcat/restriction.hpp"

namespace rcat {

inline std::string kr_obj_id(const std::string& obj, const std::string& e) {
  return obj + "|" + e;
}
inline std::string kr_mor_id(const std::string& f, const std::string& e,
                             const std::string& ep) {
  return f + "|" + e + "|" + ep;
}

/// The split restriction category of pairs (A, e) over a base, with the
/// embedding that sends A to (A, 1_A).
struct KrCat {
  RestrCat result;
  Functor embedding;  // base.cat -> result.cat
  // kr morphism id -> (base morphism, source idempotent, target idempotent)
  std::map<std::string, std::array<std::string, 3>> mor_info;
  // kr object id -> (base object, idempotent)
  std::map<std::string, std::array<std::string, 2>> obj_info;
};

/// Freely splits restriction idempotents. Objects of the result are pairs
/// "A|e" with e a restriction idempotent on A; morphisms f: (A,e) -> (A',e')
/// are base morphisms with e'.f.e = f; restriction is inherited. The
/// embedding J is injective on objects and fully faithful onto its image,
/// and preserves restriction; these are re-asserted on the result.
inline KrCat kr(const RestrCat& X) {
  const FinCat& C = X.cat();
  CatData d;
  RestrictionStructure rs;
  KrCat out;

  struct KrObj {
    int obj, e;
  };
  std::vector<KrObj> objs;
  for (int o = 0; o < C.n_objs(); ++o)
    for (int e : restriction_idempotents(X, o)) {
      objs.push_back({o, e});
      d.objects.push_back(kr_obj_id(C.obj(o), C.mor(e)));
      out.obj_info[kr_obj_id(C.obj(o), C.mor(e))] = {C.obj(o), C.mor(e)};
    }

  struct KrMor {
    int f, e, ep;
    std::string id;
  };
  std::vector<KrMor> mors;
  for (const auto& s : objs)
    for (const auto& t : objs)
      for (int f : C.hom(s.obj, t.obj))
        if (C.compose3(t.e, f, s.e) == f) {
          std::string id = kr_mor_id(C.mor(f), C.mor(s.e), C.mor(t.e));
          mors.push_back({f, s.e, t.e, id});
          d.morphisms.push_back({id, kr_obj_id(C.obj(s.obj), C.mor(s.e)),
                                 kr_obj_id(C.obj(t.obj), C.mor(t.e))});
          rs.bar[id] = kr_mor_id(C.mor(X.bar(f)), C.mor(s.e), C.mor(s.e));
          out.mor_info[id] = {C.mor(f), C.mor(s.e), C.mor(t.e)};
        }
  // identity on (A, e) is e itself
  for (const auto& s : objs)
    d.identities[kr_obj_id(C.obj(s.obj), C.mor(s.e))] =
        kr_mor_id(C.mor(s.e), C.mor(s.e), C.mor(s.e));
  for (const auto& g : mors)
    for (const auto& f : mors)
      if (f.ep == g.e)
        d.composition.push_back(
            {g.id, f.id,
             kr_mor_id(C.mor(C.compose(g.f, f.f)), C.mor(f.e), C.mor(g.ep))});

  FinCat K(d);
  auto crep = check_category(K);
  if (!crep.passed()) throw internal_error("kr result is not a category");
  out.result = RestrCat(std::move(K), std::move(rs));

  for (int o = 0; o < C.n_objs(); ++o) {
    int e = C.identity(o);
    out.embedding.omap[C.obj(o)] = kr_obj_id(C.obj(o), C.mor(e));
  }
  for (int f = 0; f < C.n_mors(); ++f)
    out.embedding.mmap[C.mor(f)] =
        kr_mor_id(C.mor(f), C.mor(C.identity(C.dom(f))),
                  C.mor(C.identity(C.cod(f))));

  if (!check_restriction_functor(out.embedding, X, out.result).passed())
    throw internal_error("kr embedding is not a restriction functor");
  // fully faithful onto its image: hom(JA, JA') is exactly J(hom(A, A'))
  for (int a = 0; a < C.n_objs(); ++a)
    for (int b = 0; b < C.n_objs(); ++b) {
      const auto& K2 = out.result.cat();
      int ja = K2.obj_index(out.embedding.on_obj(C.obj(a)));
      int jb = K2.obj_index(out.embedding.on_obj(C.obj(b)));
      if ((int)K2.hom(ja, jb).size() != (int)C.hom(a, b).size())
        throw internal_error("kr embedding not fully faithful");
    }
  return out;
}

/// Canonical splitting of a restriction idempotent: the pair (m, r) with
/// m.r = e and r.m = id, least in lexicographic (m, r) id order; absent when
/// e does not split in X. Throws input_error when e is not a restriction
/// idempotent.
inline std::optional<std::pair<int, int>> split_restriction_idempotent(
    const RestrCat& X, int e) {
  if (!X.is_restriction_idempotent(e))
    throw input_error("not a restriction idempotent: " + X.cat().mor(e));
  const FinCat& C = X.cat();
  int a = C.dom(e);
  std::optional<std::pair<std::string, std::string>> best;
  std::optional<std::pair<int, int>> best_idx;
  for (int s = 0; s < C.n_objs(); ++s)
    for (int m : C.hom(s, a))
      for (int r : C.hom(a, s))
        if (C.compose(m, r) == e && C.compose(r, m) == C.identity(s)) {
          std::pair<std::string, std::string> key{C.mor(m), C.mor(r)};
          if (!best || key < *best) {
            best = key;
            best_idx = {m, r};
          }
        }
  return best_idx;
}

/// True iff every restriction idempotent splits.
inline bool is_split(const RestrCat& X) {
  for (int o = 0; o < X.cat().n_objs(); ++o)
    for (int e : restriction_idempotents(X, o))
      if (!split_restriction_idempotent(X, e)) return false;
  return true;
}

/// First non-split restriction idempotent in id order, if any.
inline std::optional<int> find_non_split_idempotent(const RestrCat& X) {
  for (int e = 0; e < X.cat().n_mors(); ++e)
    if (X.is_restriction_idempotent(e) &&
        !split_restriction_idempotent(X, e))
      return e;
  return std::nullopt;
}

}  // namespace rcat
