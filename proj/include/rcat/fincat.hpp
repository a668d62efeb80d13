#pragma once

// Finite-category kernel: explicit object/morphism lists plus a total
// composition table, law checking, and brute-force (co)limit search.
//
// Everything downstream builds on this module. Values are immutable after
// construction and all operations are pure; canonical choices (least object
// id, then lexicographically least morphism-id tuple) make outputs
// deterministic.

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rcat/core.hpp"

namespace rcat {

struct MorData {
  std::string id, dom, cod;
  friend bool operator==(const MorData&, const MorData&) = default;
};

/// Raw category data as it appears in files. Identities must be listed
/// explicitly; the composition table is the single source of truth.
struct CatData {
  std::vector<std::string> objects;
  std::vector<MorData> morphisms;
  std::map<std::string, std::string> identities;            // obj -> mor
  std::vector<std::array<std::string, 3>> composition;      // {g, f, g.f}
  std::map<std::string, std::string> restriction;           // optional
  std::vector<std::string> msystem;                         // optional

  friend bool operator==(const CatData&, const CatData&) = default;
};

class FinCat {
 public:
  FinCat() = default;

  /// Normalizes (sorts by id) and indexes the data. Throws input_error on
  /// duplicate ids, dangling references or ill-typed identity entries.
  /// Law violations (bad table) are left for check_category to report.
  explicit FinCat(CatData data) : data_(std::move(data)) {
    std::sort(data_.objects.begin(), data_.objects.end());
    std::sort(data_.morphisms.begin(), data_.morphisms.end(),
              [](const MorData& a, const MorData& b) { return a.id < b.id; });
    std::sort(data_.composition.begin(), data_.composition.end());
    std::sort(data_.msystem.begin(), data_.msystem.end());
    for (int i = 0; i < (int)data_.objects.size(); ++i)
      if (!oidx_.emplace(data_.objects[i], i).second)
        throw input_error("duplicate object id: " + data_.objects[i]);
    for (int i = 0; i < (int)data_.morphisms.size(); ++i) {
      const auto& m = data_.morphisms[i];
      if (!midx_.emplace(m.id, i).second)
        throw input_error("duplicate morphism id: " + m.id);
      if (!oidx_.count(m.dom) || !oidx_.count(m.cod))
        throw input_error("morphism " + m.id + " has unknown dom/cod");
    }
    dom_.resize(n_mors());
    cod_.resize(n_mors());
    for (int i = 0; i < n_mors(); ++i) {
      dom_[i] = oidx_.at(data_.morphisms[i].dom);
      cod_[i] = oidx_.at(data_.morphisms[i].cod);
    }
    idm_.assign(n_objs(), -1);
    for (const auto& [o, m] : data_.identities) {
      if (!oidx_.count(o)) throw input_error("identity for unknown object " + o);
      if (!midx_.count(m)) throw input_error("unknown identity morphism " + m);
      idm_[oidx_.at(o)] = midx_.at(m);
    }
    for (int o = 0; o < n_objs(); ++o)
      if (idm_[o] == -1)
        throw input_error("missing identity for object " + data_.objects[o]);
    table_.assign(n_mors(), std::vector<int>(n_mors(), -1));
    for (const auto& [g, f, gf] : data_.composition) {
      if (!midx_.count(g) || !midx_.count(f) || !midx_.count(gf))
        throw input_error("composition entry with unknown morphism");
      table_[midx_.at(g)][midx_.at(f)] = midx_.at(gf);
    }
    hom_.assign(n_objs(), std::vector<std::vector<int>>(n_objs()));
    for (int i = 0; i < n_mors(); ++i) hom_[dom_[i]][cod_[i]].push_back(i);
    build_isos();
    build_monos();
  }

  int n_objs() const { return (int)data_.objects.size(); }
  int n_mors() const { return (int)data_.morphisms.size(); }
  const std::string& obj(int i) const { return data_.objects[i]; }
  const std::string& mor(int i) const { return data_.morphisms[i].id; }
  int obj_index(const std::string& id) const {
    auto it = oidx_.find(id);
    if (it == oidx_.end()) throw input_error("unknown object id: " + id);
    return it->second;
  }
  int mor_index(const std::string& id) const {
    auto it = midx_.find(id);
    if (it == midx_.end()) throw input_error("unknown morphism id: " + id);
    return it->second;
  }
  bool has_obj(const std::string& id) const { return oidx_.count(id) > 0; }
  bool has_mor(const std::string& id) const { return midx_.count(id) > 0; }

  int dom(int m) const { return dom_[m]; }
  int cod(int m) const { return cod_[m]; }
  int identity(int obj) const { return idm_[obj]; }
  bool is_identity(int m) const { return idm_[dom_[m]] == m && dom_[m] == cod_[m]; }

  /// g after f; -1 when the pair is not composable or the table has no entry.
  int compose(int g, int f) const { return table_[g][f]; }
  int compose3(int h, int g, int f) const {
    int gf = compose(g, f);
    return gf < 0 ? -1 : compose(h, gf);
  }

  /// Morphisms a -> b in id order (index order == id order).
  const std::vector<int>& hom(int a, int b) const { return hom_[a][b]; }

  bool parallel(int f, int g) const {
    return dom_[f] == dom_[g] && cod_[f] == cod_[g];
  }

  bool is_iso(int m) const { return inv_[m] >= 0; }
  int inverse(int m) const { return inv_[m]; }
  /// Isomorphisms a -> b in id order.
  std::vector<int> isos(int a, int b) const {
    std::vector<int> out;
    for (int m : hom_[a][b])
      if (is_iso(m)) out.push_back(m);
    return out;
  }

  /// Exhaustive left-cancellation test, precomputed at construction.
  bool is_mono(int m) const { return mono_[m]; }
  bool is_epi(int m) const { return epi_[m]; }

  const CatData& data() const { return data_; }

 private:
  void build_isos() {
    inv_.assign(n_mors(), -1);
    for (int m = 0; m < n_mors(); ++m) {
      for (int n : hom_[cod_[m]][dom_[m]]) {
        if (compose(n, m) == idm_[dom_[m]] && compose(m, n) == idm_[cod_[m]]) {
          inv_[m] = n;
          break;
        }
      }
    }
  }
  void build_monos() {
    mono_.assign(n_mors(), true);
    epi_.assign(n_mors(), true);
    for (int m = 0; m < n_mors(); ++m) {
      for (int w = 0; w < n_objs() && mono_[m]; ++w) {
        const auto& in = hom_[w][dom_[m]];
        for (size_t i = 0; i < in.size() && mono_[m]; ++i)
          for (size_t j = i + 1; j < in.size(); ++j)
            if (compose(m, in[i]) == compose(m, in[j]) &&
                compose(m, in[i]) != -1) {
              mono_[m] = false;
              break;
            }
      }
      for (int w = 0; w < n_objs() && epi_[m]; ++w) {
        const auto& out = hom_[cod_[m]][w];
        for (size_t i = 0; i < out.size() && epi_[m]; ++i)
          for (size_t j = i + 1; j < out.size(); ++j)
            if (compose(out[i], m) == compose(out[j], m) &&
                compose(out[i], m) != -1) {
              epi_[m] = false;
              break;
            }
      }
    }
  }

  CatData data_;
  std::map<std::string, int> oidx_, midx_;
  std::vector<int> dom_, cod_, idm_, inv_;
  std::vector<bool> mono_, epi_;
  std::vector<std::vector<int>> table_;
  std::vector<std::vector<std::vector<int>>> hom_;
};

/// Validates the category laws: table defined exactly on composable pairs,
/// identity neutrality, associativity, identity typing. Every violation
/// carries a witness.
inline CheckReport check_category(const FinCat& C) {
  CheckReport r{.check = "category"};
  for (int o = 0; o < C.n_objs(); ++o) {
    int e = C.identity(o);
    if (C.dom(e) != o || C.cod(e) != o)
      r.add("identity-typing", {{"object", C.obj(o)}, {"morphism", C.mor(e)}});
  }
  // table domain: defined exactly on composable pairs
  for (int g = 0; g < C.n_mors(); ++g)
    for (int f = 0; f < C.n_mors(); ++f) {
      int gf = C.compose(g, f);
      bool composable = C.cod(f) == C.dom(g);
      if (composable && gf < 0)
        r.add("table-missing", {{"g", C.mor(g)}, {"f", C.mor(f)}});
      if (!composable && gf >= 0)
        r.add("table-extra", {{"g", C.mor(g)}, {"f", C.mor(f)}});
      if (composable && gf >= 0 &&
          (C.dom(gf) != C.dom(f) || C.cod(gf) != C.cod(g)))
        r.add("table-typing",
              {{"g", C.mor(g)}, {"f", C.mor(f)}, {"gf", C.mor(gf)}});
    }
  if (!r.violations.empty()) return r.finalize();
  for (int f = 0; f < C.n_mors(); ++f) {
    if (C.compose(f, C.identity(C.dom(f))) != f)
      r.add("identity-right", {{"f", C.mor(f)}});
    if (C.compose(C.identity(C.cod(f)), f) != f)
      r.add("identity-left", {{"f", C.mor(f)}});
  }
  for (int f = 0; f < C.n_mors(); ++f) {
    for (int b = 0; b < C.n_objs(); ++b) {
      for (int g : C.hom(C.cod(f), b)) {
        int gf = C.compose(g, f);
        for (int c = 0; c < C.n_objs(); ++c)
          for (int h : C.hom(b, c))
            if (C.compose(h, gf) != C.compose(C.compose(h, g), f))
              r.add("associativity",
                    {{"h", C.mor(h)}, {"g", C.mor(g)}, {"f", C.mor(f)}});
      }
    }
  }
  return r.finalize();
}

/// is_mono by id, matching the spec surface (throws on unknown id).
inline bool is_mono(const FinCat& C, const std::string& f) {
  return C.is_mono(C.mor_index(f));
}

// ---------------------------------------------------------------------------
// Brute-force (co)limits
// ---------------------------------------------------------------------------

struct PullbackSquare {
  int f, m;      // cospan f: A -> C, m: B -> C
  int apex;      // object
  int p, q;      // legs p: apex -> A, q: apex -> B
};

namespace detail {
struct Cone {
  int apex, p, q;
};

inline std::vector<Cone> cones_over(const FinCat& C, int f, int m) {
  std::vector<Cone> out;
  int A = C.dom(f), B = C.dom(m);
  for (int w = 0; w < C.n_objs(); ++w)
    for (int p : C.hom(w, A))
      for (int q : C.hom(w, B))
        if (C.compose(f, p) == C.compose(m, q)) out.push_back({w, p, q});
  return out;
}
}  // namespace detail

/// True iff (apex, p, q) is a terminal cone over the cospan (f, m):
/// every cone factors through it by exactly one mediating morphism.
inline bool is_pullback(const FinCat& C, int f, int m, int apex, int p, int q) {
  if (C.dom(p) != apex || C.dom(q) != apex) return false;
  if (C.cod(p) != C.dom(f) || C.cod(q) != C.dom(m)) return false;
  if (C.compose(f, p) != C.compose(m, q) || C.compose(f, p) == -1) return false;
  for (const auto& c : detail::cones_over(C, f, m)) {
    int count = 0;
    for (int h : C.hom(c.apex, apex))
      if (C.compose(p, h) == c.p && C.compose(q, h) == c.q) ++count;
    if (count != 1) return false;
  }
  return true;
}

inline bool is_pullback(const FinCat& C, const PullbackSquare& s) {
  return is_pullback(C, s.f, s.m, s.apex, s.p, s.q);
}

/// Canonical pullback of the cospan (f: A -> C, m: B -> C): the first
/// terminal cone in (apex id, p id, q id) order, or absent when none exists.
/// Throws input_error when the input is not a cospan.
inline std::optional<PullbackSquare> pullback(const FinCat& C, int f, int m) {
  if (C.cod(f) != C.cod(m)) throw input_error("pullback: not a cospan");
  auto cones = detail::cones_over(C, f, m);
  for (const auto& cand : cones) {
    bool terminal = true;
    for (const auto& c : cones) {
      int count = 0;
      for (int h : C.hom(c.apex, cand.apex))
        if (C.compose(cand.p, h) == c.p && C.compose(cand.q, h) == c.q) ++count;
      if (count != 1) {
        terminal = false;
        break;
      }
    }
    if (terminal) return PullbackSquare{f, m, cand.apex, cand.p, cand.q};
  }
  return std::nullopt;
}

/// Memoizes canonical pullbacks per cospan; used by span composition where
/// the same cospans recur constantly. Local to one computation, so the
/// library surface stays pure.
class PullbackCache {
 public:
  explicit PullbackCache(const FinCat& C) : C_(&C) {}
  const std::optional<PullbackSquare>& get(int f, int m) {
    auto key = std::make_pair(f, m);
    auto it = memo_.find(key);
    if (it == memo_.end())
      it = memo_.emplace(key, pullback(*C_, f, m)).first;
    return it->second;
  }

 private:
  const FinCat* C_;
  std::map<std::pair<int, int>, std::optional<PullbackSquare>> memo_;
};

/// A finite diagram in C presented by nodes and arrows (shape drawn
/// directly rather than as a separate functor).
struct Diagram {
  struct Arrow {
    int src, dst;  // node indices
    int mor;       // nodes[src] -> nodes[dst] in C
  };
  std::vector<int> nodes;  // objects of C
  std::vector<Arrow> arrows;
};

struct Cocone {
  int apex;
  std::vector<int> legs;  // legs[i]: nodes[i] -> apex
};

inline bool cocone_commutes(const FinCat& C, const Diagram& d, const Cocone& c) {
  for (const auto& a : d.arrows)
    if (C.compose(c.legs[a.dst], a.mor) != c.legs[a.src]) return false;
  return true;
}

inline std::vector<Cocone> cocones(const FinCat& C, const Diagram& d) {
  std::vector<Cocone> out;
  for (int q = 0; q < C.n_objs(); ++q) {
    std::vector<Cocone> partial{{q, {}}};
    for (int node : d.nodes) {
      std::vector<Cocone> next;
      for (const auto& pc : partial)
        for (int leg : C.hom(node, q)) {
          Cocone c = pc;
          c.legs.push_back(leg);
          next.push_back(std::move(c));
        }
      partial = std::move(next);
    }
    for (auto& c : partial)
      if (cocone_commutes(C, d, c)) out.push_back(std::move(c));
  }
  return out;
}

/// Exactly one mediating morphism from c to every cocone.
inline bool is_colimit(const FinCat& C, const Diagram& d, const Cocone& c) {
  if ((int)c.legs.size() != (int)d.nodes.size()) return false;
  if (!cocone_commutes(C, d, c)) return false;
  for (const auto& other : cocones(C, d)) {
    int count = 0;
    for (int h : C.hom(c.apex, other.apex)) {
      bool ok = true;
      for (size_t i = 0; i < c.legs.size(); ++i)
        if (C.compose(h, c.legs[i]) != other.legs[i]) {
          ok = false;
          break;
        }
      if (ok) ++count;
    }
    if (count != 1) return false;
  }
  return true;
}

/// Canonical colimit: first initial cocone in (apex id, leg ids) order.
inline std::optional<Cocone> colimit(const FinCat& C, const Diagram& d) {
  auto all = cocones(C, d);
  for (const auto& cand : all) {
    bool initial = true;
    for (const auto& other : all) {
      int count = 0;
      for (int h : C.hom(cand.apex, other.apex)) {
        bool ok = true;
        for (size_t i = 0; i < cand.legs.size(); ++i)
          if (C.compose(h, cand.legs[i]) != other.legs[i]) {
            ok = false;
            break;
          }
        if (ok) ++count;
      }
      if (count != 1) {
        initial = false;
        break;
      }
    }
    if (initial) return cand;
  }
  return std::nullopt;
}

/// Canonical coproduct of a list of objects, or absent. Empty list asks for
/// an initial object.
inline std::optional<Cocone> coproduct(const FinCat& C,
                                       const std::vector<int>& objs) {
  Diagram d;
  d.nodes = objs;
  return colimit(C, d);
}

/// Canonical coequalizer of a parallel pair, as (object, map out of cod f).
inline std::optional<std::pair<int, int>> coequalizer(const FinCat& C, int f,
                                                      int g) {
  if (!C.parallel(f, g)) throw input_error("coequalizer: maps not parallel");
  Diagram d;
  d.nodes = {C.dom(f), C.cod(f)};
  d.arrows = {{0, 1, f}, {0, 1, g}};
  auto c = colimit(C, d);
  if (!c) return std::nullopt;
  return std::make_pair(c->apex, c->legs[1]);
}

// ---------------------------------------------------------------------------
// Functors and natural transformations (as pure data; categories are passed
// alongside wherever laws are checked)
// ---------------------------------------------------------------------------

struct Functor {
  std::map<std::string, std::string> omap, mmap;

  const std::string& on_obj(const std::string& o) const {
    auto it = omap.find(o);
    if (it == omap.end()) throw input_error("functor undefined on object " + o);
    return it->second;
  }
  const std::string& on_mor(const std::string& m) const {
    auto it = mmap.find(m);
    if (it == mmap.end())
      throw input_error("functor undefined on morphism " + m);
    return it->second;
  }
};

inline CheckReport check_functor(const FinCat& src, const FinCat& dst,
                                 const Functor& F) {
  CheckReport r{.check = "functor"};
  for (int o = 0; o < src.n_objs(); ++o)
    if (!F.omap.count(src.obj(o)))
      r.add("object-map-missing", {{"object", src.obj(o)}});
  for (int m = 0; m < src.n_mors(); ++m)
    if (!F.mmap.count(src.mor(m)))
      r.add("morphism-map-missing", {{"morphism", src.mor(m)}});
  if (!r.violations.empty()) {
    r.status = Status::input_error;
    return r;
  }
  auto fo = [&](int o) { return dst.obj_index(F.on_obj(src.obj(o))); };
  auto fm = [&](int m) { return dst.mor_index(F.on_mor(src.mor(m))); };
  for (int m = 0; m < src.n_mors(); ++m) {
    if (dst.dom(fm(m)) != fo(src.dom(m)) || dst.cod(fm(m)) != fo(src.cod(m)))
      r.add("dom-cod", {{"morphism", src.mor(m)}});
  }
  if (!r.violations.empty()) return r.finalize();
  for (int o = 0; o < src.n_objs(); ++o)
    if (fm(src.identity(o)) != dst.identity(fo(o)))
      r.add("identity", {{"object", src.obj(o)}});
  for (int f = 0; f < src.n_mors(); ++f)
    for (int b = 0; b < src.n_objs(); ++b) {
      if (src.cod(f) != b) continue;
      for (int c = 0; c < src.n_objs(); ++c)
        for (int g : src.hom(b, c)) {
          int gf = src.compose(g, f);
          if (gf >= 0 && fm(gf) != dst.compose(fm(g), fm(f)))
            r.add("composition", {{"g", src.mor(g)}, {"f", src.mor(f)}});
        }
    }
  return r.finalize();
}

struct NatTrans {
  std::map<std::string, std::string> components;  // src object -> dst morphism
};

inline CheckReport check_nat_trans(const FinCat& src, const FinCat& dst,
                                   const Functor& F, const Functor& G,
                                   const NatTrans& a) {
  CheckReport r{.check = "nat-trans"};
  for (int o = 0; o < src.n_objs(); ++o) {
    auto it = a.components.find(src.obj(o));
    if (it == a.components.end()) {
      r.add("component-missing", {{"object", src.obj(o)}});
      continue;
    }
    int c = dst.mor_index(it->second);
    if (dst.dom(c) != dst.obj_index(F.on_obj(src.obj(o))) ||
        dst.cod(c) != dst.obj_index(G.on_obj(src.obj(o))))
      r.add("component-typing", {{"object", src.obj(o)}});
  }
  if (!r.violations.empty()) {
    r.status = Status::input_error;
    return r;
  }
  for (int m = 0; m < src.n_mors(); ++m) {
    int ca = dst.mor_index(a.components.at(src.obj(src.dom(m))));
    int cb = dst.mor_index(a.components.at(src.obj(src.cod(m))));
    int fm = dst.mor_index(F.on_mor(src.mor(m)));
    int gm = dst.mor_index(G.on_mor(src.mor(m)));
    if (dst.compose(gm, ca) != dst.compose(cb, fm))
      r.add("naturality", {{"morphism", src.mor(m)}});
  }
  return r.finalize();
}

}  // namespace rcat
