#pragma once

// Finite-scale cocompleteness diagnostics for an M-category: the three
// conditions characterising cocontinuity of the inclusion into partial
// maps, M-extensivity, and the colimit lemmas run as property suites over
// generated diagrams.
//
// "Finite scale" means colimits are quantified only over shapes with at
// most `shape_bound` objects (discrete shapes, the parallel pair, and the
// span); every report carries that truncation in its metadata. Missing
// colimits yield not-applicable entries, never failures.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rcat/mcat.hpp"

namespace rcat {

struct FiniteDiagram {
  std::string name;
  std::vector<int> h_nodes, k_nodes;  // objects of the target category
  struct ShapeArrow {
    int src, dst;    // node indices
    int h_mor, k_mor;
  };
  std::vector<ShapeArrow> arrows;
  std::vector<int> alpha;  // per node, h_nodes[i] -> k_nodes[i]
  std::optional<Cocone> h_cocone, k_cocone;  // supplied; computed when absent
};

namespace detail {

inline Diagram h_diagram(const FiniteDiagram& d) {
  Diagram out;
  out.nodes = d.h_nodes;
  for (const auto& a : d.arrows) out.arrows.push_back({a.src, a.dst, a.h_mor});
  return out;
}
inline Diagram k_diagram(const FiniteDiagram& d) {
  Diagram out;
  out.nodes = d.k_nodes;
  for (const auto& a : d.arrows) out.arrows.push_back({a.src, a.dst, a.k_mor});
  return out;
}

inline std::string truncation_note(int shape_bound) {
  return "shapes: discrete<=" + std::to_string(shape_bound) +
         ", parallel-pair, span";
}

/// Sorted member indices of M in C.
inline std::vector<int> member_indices(const FinCat& C, const MSystem& M) {
  std::vector<int> out;
  for (const auto& id : M.members) out.push_back(C.mor_index(id));
  std::sort(out.begin(), out.end());
  return out;
}

/// Multisets (non-decreasing index tuples) of objects, sizes lo..hi.
inline std::vector<std::vector<int>> object_multisets(const FinCat& C, int lo,
                                                      int hi) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int start) -> void {
    if ((int)cur.size() >= lo) out.push_back(cur);
    if ((int)cur.size() == hi) return;
    for (int o = start; o < C.n_objs(); ++o) {
      cur.push_back(o);
      self(self, o);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Diagram generation
// ---------------------------------------------------------------------------

/// All candidate diagrams over the generated shapes whose components are
/// members and whose naturality squares commute. Pullback-square and
/// colimit-existence hypotheses are left to the suite to judge.
inline std::vector<FiniteDiagram> generate_diagrams(const FinCat& C,
                                                    const MSystem& M,
                                                    int shape_bound = 3) {
  std::vector<FiniteDiagram> out;
  auto members = detail::member_indices(C, M);

  // discrete shapes
  for (int size = 1; size <= shape_bound; ++size) {
    std::vector<int> pick(size, 0);
    while (true) {
      FiniteDiagram d;
      d.name = "discrete" + std::to_string(size);
      bool ok = true;
      for (int i = 0; i < size; ++i) {
        int m = members[pick[i]];
        d.alpha.push_back(m);
        d.h_nodes.push_back(C.dom(m));
        d.k_nodes.push_back(C.cod(m));
        d.name += "/" + C.mor(m);
        if (i > 0 && pick[i] < pick[i - 1]) ok = false;  // multiset order
      }
      if (ok) out.push_back(std::move(d));
      int i = 0;
      for (; i < size; ++i) {
        if (pick[i] + 1 < (int)members.size()) {
          ++pick[i];
          break;
        }
        pick[i] = 0;
      }
      if (i == size) break;
    }
  }

  // parallel pair: nodes a, b with two arrows u, v
  for (int ma : members)
    for (int mb : members) {
      int Ha = C.dom(ma), Ka = C.cod(ma), Hb = C.dom(mb), Kb = C.cod(mb);
      for (int hu : C.hom(Ha, Hb))
        for (int ku : C.hom(Ka, Kb)) {
          if (C.compose(ku, ma) != C.compose(mb, hu)) continue;
          for (int hv : C.hom(Ha, Hb))
            for (int kv : C.hom(Ka, Kb)) {
              if (C.compose(kv, ma) != C.compose(mb, hv)) continue;
              FiniteDiagram d;
              d.name = "parallel-pair/" + C.mor(ma) + "/" + C.mor(mb) + "/" +
                       C.mor(hu) + "/" + C.mor(hv) + "/" + C.mor(ku) + "/" +
                       C.mor(kv);
              d.h_nodes = {Ha, Hb};
              d.k_nodes = {Ka, Kb};
              d.arrows = {{0, 1, hu, ku}, {0, 1, hv, kv}};
              d.alpha = {ma, mb};
              out.push_back(std::move(d));
            }
        }
    }

  // span: nodes a <- c -> b
  for (int mc : members)
    for (int ma : members)
      for (int mb : members) {
        int Hc = C.dom(mc), Kc = C.cod(mc);
        int Ha = C.dom(ma), Ka = C.cod(ma);
        int Hb = C.dom(mb), Kb = C.cod(mb);
        for (int hl : C.hom(Hc, Ha))
          for (int kl : C.hom(Kc, Ka)) {
            if (C.compose(kl, mc) != C.compose(ma, hl)) continue;
            for (int hr : C.hom(Hc, Hb))
              for (int kr2 : C.hom(Kc, Kb)) {
                if (C.compose(kr2, mc) != C.compose(mb, hr)) continue;
                FiniteDiagram d;
                d.name = "span/" + C.mor(mc) + "/" + C.mor(ma) + "/" +
                         C.mor(mb) + "/" + C.mor(hl) + "/" + C.mor(hr);
                d.h_nodes = {Ha, Hb, Hc};
                d.k_nodes = {Ka, Kb, Kc};
                d.arrows = {{2, 0, hl, kl}, {2, 1, hr, kr2}};
                d.alpha = {ma, mb, mc};
                out.push_back(std::move(d));
              }
          }
      }
  return out;
}

// ---------------------------------------------------------------------------
// The three cocontinuity conditions
// ---------------------------------------------------------------------------

namespace detail {

/// The pulled-back cocone of a colimiting cocone along a member, and
/// whether it is again colimiting. Returns nullopt when some pullback or
/// mediating morphism is missing (reported as a hard failure by callers,
/// since members always pull back).
inline bool pullback_cocone_colimiting(const FinCat& C, PullbackCache& pc,
                                       const Diagram& k, const Cocone& kc,
                                       int mu) {
  int n = (int)k.nodes.size();
  std::vector<int> apexes(n), alpha_legs(n), p_legs(n);
  for (int i = 0; i < n; ++i) {
    const auto& pb = pc.get(kc.legs[i], mu);
    if (!pb) throw internal_error("member pullback missing along a cocone");
    apexes[i] = pb->apex;
    alpha_legs[i] = pb->p;  // into k.nodes[i]
    p_legs[i] = pb->q;      // into dom(mu)
  }
  Diagram h;
  h.nodes = apexes;
  for (const auto& a : k.arrows) {
    // unique mediating H(u): apex_src -> apex_dst over K(u)
    int found = -1, count = 0;
    for (int cand : C.hom(apexes[a.src], apexes[a.dst]))
      if (C.compose(alpha_legs[a.dst], cand) ==
              C.compose(a.mor, alpha_legs[a.src]) &&
          C.compose(p_legs[a.dst], cand) == p_legs[a.src]) {
        found = cand;
        ++count;
      }
    if (count != 1)
      throw internal_error("pulled-back diagram arrow not unique");
    h.arrows.push_back({a.src, a.dst, found});
  }
  Cocone pulled{C.dom(mu), p_legs};
  return is_colimit(C, h, pulled);
}

}  // namespace detail

/// Conditions: (2a) sums of members are members and coprojection squares
/// are pullbacks; (2b) coequalizers transfer along members via a member
/// making a pullback square; (2c) colimits over the generated shapes are
/// stable under pullback along members. Missing colimits are recorded as
/// not-applicable.
inline CheckReport check_cocompleteness_conditions(const FinCat& C,
                                                   const MSystem& M,
                                                   int shape_bound = 3) {
  auto mrep = check_msystem(C, M);
  if (!mrep.passed()) throw input_error("cocheck: monic system invalid");
  CheckReport rep{.check = "cocompleteness"};
  rep.truncation["shape-bound"] = std::to_string(shape_bound);
  rep.truncation["shapes"] = detail::truncation_note(shape_bound);
  auto members = detail::member_indices(C, M);
  PullbackCache pc(C);

  CheckReport c2a{.check = "2a-sums-of-members"};
  {
    // multisets of members, sizes 1..shape_bound
    std::vector<std::vector<int>> families;
    std::vector<int> cur;
    auto rec = [&](auto&& self, size_t start) -> void {
      if (!cur.empty()) families.push_back(cur);
      if ((int)cur.size() == shape_bound) return;
      for (size_t i = start; i < members.size(); ++i) {
        cur.push_back(members[i]);
        self(self, i);
        cur.pop_back();
      }
    };
    rec(rec, 0);
    for (const auto& fam : families) {
      std::vector<int> doms, cods;
      std::string famname;
      for (int m : fam) {
        doms.push_back(C.dom(m));
        cods.push_back(C.cod(m));
        famname += (famname.empty() ? "" : ",") + C.mor(m);
      }
      auto cpA = coproduct(C, doms);
      auto cpB = coproduct(C, cods);
      if (!cpA || !cpB) {
        c2a.notes.push_back("not-applicable: coproduct missing for " +
                            famname);
        continue;
      }
      int found = -1, count = 0;
      for (int t : C.hom(cpA->apex, cpB->apex)) {
        bool ok = true;
        for (size_t i = 0; i < fam.size(); ++i)
          if (C.compose(t, cpA->legs[i]) !=
              C.compose(cpB->legs[i], fam[i])) {
            ok = false;
            break;
          }
        if (ok) {
          found = t;
          ++count;
        }
      }
      if (count != 1) {
        c2a.add("sum-mediating-not-unique", {{"family", famname}});
        continue;
      }
      if (!M.contains(C, found))
        c2a.add("sum-not-member", {{"family", famname}, {"sum", C.mor(found)}});
      for (size_t i = 0; i < fam.size(); ++i)
        if (!is_pullback(C, cpB->legs[i], found, doms[i], fam[i],
                         cpA->legs[i]))
          c2a.add("coprojection-square-not-pullback",
                  {{"family", famname}, {"index", std::to_string(i)}});
    }
  }
  rep.sub.push_back(c2a.finalize());

  CheckReport c2b{.check = "2b-coequalizer-transfer"};
  for (int m : members) {
    int Q = C.cod(m), P = C.dom(m);
    for (int qp = 0; qp < C.n_objs(); ++qp)
      for (int f : C.hom(qp, Q))
        for (int g : C.hom(qp, Q)) {
          const auto& pbf = pc.get(f, m);
          if (!pbf) continue;
          // same pullback leg h along both maps
          int gpp = -1;
          for (int cand : C.hom(pbf->apex, P))
            if (is_pullback(C, g, m, pbf->apex, pbf->p, cand)) {
              gpp = cand;
              break;
            }
          if (gpp < 0) continue;  // hypotheses not satisfied
          auto c = coequalizer(C, f, g);
          auto cp = coequalizer(C, pbf->q, gpp);
          if (!c || !cp) {
            c2b.notes.push_back("not-applicable: coequalizer missing at m=" +
                                C.mor(m) + ",f=" + C.mor(f) +
                                ",g=" + C.mor(g));
            continue;
          }
          int found = -1, count = 0;
          for (int n : C.hom(cp->first, c->first))
            if (C.compose(n, cp->second) == C.compose(c->second, m)) {
              found = n;
              ++count;
            }
          if (count != 1) {
            c2b.add("transfer-mediating-not-unique",
                    {{"m", C.mor(m)}, {"f", C.mor(f)}, {"g", C.mor(g)}});
            continue;
          }
          if (!M.contains(C, found))
            c2b.add("transfer-not-member",
                    {{"m", C.mor(m)}, {"f", C.mor(f)}, {"g", C.mor(g)},
                     {"n", C.mor(found)}});
          if (!is_pullback(C, c->second, found, P, m, cp->second))
            c2b.add("transfer-square-not-pullback",
                    {{"m", C.mor(m)}, {"f", C.mor(f)}, {"g", C.mor(g)}});
        }
  }
  rep.sub.push_back(c2b.finalize());

  CheckReport c2c{.check = "2c-colimit-stability"};
  {
    // discrete shapes
    for (const auto& objs : detail::object_multisets(C, 1, shape_bound)) {
      Diagram k;
      k.nodes = objs;
      auto col = colimit(C, k);
      std::string kname;
      for (int o : objs) kname += (kname.empty() ? "" : ",") + C.obj(o);
      if (!col) {
        c2c.notes.push_back("not-applicable: coproduct missing for " + kname);
        continue;
      }
      for (int mu : members) {
        if (C.cod(mu) != col->apex) continue;
        if (!detail::pullback_cocone_colimiting(C, pc, k, *col, mu))
          c2c.add("coproduct-not-stable",
                  {{"objects", kname}, {"member", C.mor(mu)}});
      }
    }
    // parallel pairs
    for (int a = 0; a < C.n_objs(); ++a)
      for (int b = 0; b < C.n_objs(); ++b)
        for (int f : C.hom(a, b))
          for (int g : C.hom(a, b)) {
            Diagram k;
            k.nodes = {a, b};
            k.arrows = {{0, 1, f}, {0, 1, g}};
            auto col = colimit(C, k);
            if (!col) {
              c2c.notes.push_back("not-applicable: coequalizer missing for " +
                                  C.mor(f) + "," + C.mor(g));
              continue;
            }
            for (int mu : members) {
              if (C.cod(mu) != col->apex) continue;
              if (!detail::pullback_cocone_colimiting(C, pc, k, *col, mu))
                c2c.add("coequalizer-not-stable",
                        {{"f", C.mor(f)}, {"g", C.mor(g)},
                         {"member", C.mor(mu)}});
            }
          }
    // spans
    for (int c0 = 0; c0 < C.n_objs(); ++c0)
      for (int a = 0; a < C.n_objs(); ++a)
        for (int b = 0; b < C.n_objs(); ++b)
          for (int l : C.hom(c0, a))
            for (int r : C.hom(c0, b)) {
              Diagram k;
              k.nodes = {a, b, c0};
              k.arrows = {{2, 0, l}, {2, 1, r}};
              auto col = colimit(C, k);
              if (!col) {
                c2c.notes.push_back("not-applicable: pushout missing for " +
                                    C.mor(l) + "," + C.mor(r));
                continue;
              }
              for (int mu : members) {
                if (C.cod(mu) != col->apex) continue;
                if (!detail::pullback_cocone_colimiting(C, pc, k, *col, mu))
                  c2c.add("pushout-not-stable",
                          {{"l", C.mor(l)}, {"r", C.mor(r)},
                           {"member", C.mor(mu)}});
              }
            }
  }
  rep.sub.push_back(c2c.finalize());

  rep.finalize();
  rep.notes.push_back(rep.status == Status::pass
                          ? "verdict: cocomplete-at-finite-scale"
                          : "verdict: not cocomplete at finite scale");
  return rep;
}

/// M-extensivity: over every existing coproduct with member comparison and
/// member legs, the top row is a coproduct diagram iff every square is a
/// pullback.
inline CheckReport check_m_extensive(const FinCat& C, const MSystem& M,
                                     int shape_bound = 3) {
  auto mrep = check_msystem(C, M);
  if (!mrep.passed()) throw input_error("extensive: monic system invalid");
  CheckReport rep{.check = "m-extensive"};
  rep.truncation["shape-bound"] = std::to_string(shape_bound);
  PullbackCache pc(C);
  auto members = detail::member_indices(C, M);

  for (const auto& objs : detail::object_multisets(C, 2, shape_bound)) {
    auto cp = coproduct(C, objs);
    std::string kname;
    for (int o : objs) kname += (kname.empty() ? "" : ",") + C.obj(o);
    if (!cp) {
      rep.notes.push_back("not-applicable: coproduct missing for " + kname);
      continue;
    }
    for (int m : members) {
      if (C.cod(m) != cp->apex) continue;
      int Z = C.dom(m);
      // per leg: compatible (m_i, t_i) pairs
      std::vector<std::vector<std::pair<int, int>>> choices(objs.size());
      for (size_t i = 0; i < objs.size(); ++i)
        for (int mi : members) {
          if (C.cod(mi) != objs[i]) continue;
          for (int ti : C.hom(C.dom(mi), Z))
            if (C.compose(m, ti) == C.compose(cp->legs[i], mi))
              choices[i].emplace_back(mi, ti);
        }
      // iterate the product of choices
      std::vector<size_t> pick(objs.size(), 0);
      bool any = true;
      for (const auto& ch : choices)
        if (ch.empty()) any = false;
      while (any) {
        std::vector<int> mi(objs.size()), ti(objs.size());
        for (size_t i = 0; i < objs.size(); ++i) {
          mi[i] = choices[i][pick[i]].first;
          ti[i] = choices[i][pick[i]].second;
        }
        bool all_pullbacks = true;
        for (size_t i = 0; i < objs.size(); ++i)
          if (!is_pullback(C, cp->legs[i], m, C.dom(mi[i]), mi[i], ti[i]))
            all_pullbacks = false;
        Diagram top;
        for (size_t i = 0; i < objs.size(); ++i)
          top.nodes.push_back(C.dom(mi[i]));
        bool top_coproduct = is_colimit(C, top, Cocone{Z, ti});
        if (all_pullbacks != top_coproduct) {
          std::vector<std::pair<std::string, std::string>> wit{
              {"coproduct", kname}, {"m", C.mor(m)}};
          for (size_t i = 0; i < objs.size(); ++i) {
            wit.emplace_back("m" + std::to_string(i), C.mor(mi[i]));
            wit.emplace_back("t" + std::to_string(i), C.mor(ti[i]));
          }
          rep.add(all_pullbacks ? "pullbacks-but-top-not-coproduct"
                                : "top-coproduct-but-square-not-pullback",
                  wit);
        }
        size_t i = 0;
        for (; i < objs.size(); ++i) {
          if (pick[i] + 1 < choices[i].size()) {
            ++pick[i];
            break;
          }
          pick[i] = 0;
        }
        if (i == objs.size()) break;
      }
    }
  }
  return rep.finalize();
}

// ---------------------------------------------------------------------------
// The colimit lemma suites
// ---------------------------------------------------------------------------

/// Runs the colimit lemmas over the supplied diagrams:
///   - the colimit comparison of a member-legged cartesian transformation
///     is a member and its coprojection squares are pullbacks;
///   - the induced endomap of restriction idempotents on the partial-map
///     side is again a restriction idempotent;
///   - a commuting extension of the coprojection squares by a member with
///     pullback outer squares has a pullback right square;
///   - pulled-back colimiting cocones along members are colimiting.
/// Diagrams failing their hypotheses are skipped with a note; a conclusion
/// failure on a hypothesis-satisfying diagram is a hard failure.
inline CheckReport lemma_suite(const FinCat& C, const MSystem& M,
                               const ParCat& par,
                               const std::vector<FiniteDiagram>& diagrams) {
  CheckReport rep{.check = "colimit-lemmas"};
  PullbackCache pc(C);
  const FinCat& PC = par.rc.cat();
  int unmet = 0, checked = 0;
  std::set<std::string> par_colimit_checked;  // per K-diagram signature
  std::set<std::string> corollary_checked;

  for (const auto& d : diagrams) {
    // hypotheses
    bool ok = true;
    for (size_t i = 0; i < d.alpha.size() && ok; ++i)
      if (!M.contains(C, d.alpha[i]) || C.dom(d.alpha[i]) != d.h_nodes[i] ||
          C.cod(d.alpha[i]) != d.k_nodes[i])
        ok = false;
    for (const auto& a : d.arrows) {
      if (!ok) break;
      if (C.dom(a.h_mor) != d.h_nodes[a.src] ||
          C.cod(a.h_mor) != d.h_nodes[a.dst] ||
          C.dom(a.k_mor) != d.k_nodes[a.src] ||
          C.cod(a.k_mor) != d.k_nodes[a.dst])
        ok = false;
      else if (C.compose(a.k_mor, d.alpha[a.src]) !=
               C.compose(d.alpha[a.dst], a.h_mor))
        ok = false;
      else if (!is_pullback(C, a.k_mor, d.alpha[a.dst], d.h_nodes[a.src],
                            d.alpha[a.src], a.h_mor))
        ok = false;
    }
    if (!ok) {
      ++unmet;
      continue;
    }
    Diagram hd = detail::h_diagram(d);
    Diagram kd = detail::k_diagram(d);
    auto hc = d.h_cocone ? (is_colimit(C, hd, *d.h_cocone)
                                ? d.h_cocone
                                : std::optional<Cocone>{})
                         : colimit(C, hd);
    auto kc = d.k_cocone ? (is_colimit(C, kd, *d.k_cocone)
                                ? d.k_cocone
                                : std::optional<Cocone>{})
                         : colimit(C, kd);
    if (!hc || !kc) {
      ++unmet;
      continue;
    }
    ++checked;

    // comparison map colim H -> colim K
    int colim_alpha = -1, count = 0;
    for (int t : C.hom(hc->apex, kc->apex)) {
      bool match = true;
      for (size_t i = 0; i < d.alpha.size(); ++i)
        if (C.compose(t, hc->legs[i]) !=
            C.compose(kc->legs[i], d.alpha[i])) {
          match = false;
          break;
        }
      if (match) {
        colim_alpha = t;
        ++count;
      }
    }
    if (count != 1) {
      rep.add("comparison-not-unique", {{"diagram", d.name}});
      continue;
    }
    if (!M.contains(C, colim_alpha))
      rep.add("colim-comparison-not-member",
              {{"diagram", d.name}, {"map", C.mor(colim_alpha)}});
    for (size_t i = 0; i < d.alpha.size(); ++i)
      if (!is_pullback(C, kc->legs[i], colim_alpha, d.h_nodes[i], d.alpha[i],
                       hc->legs[i]))
        rep.add("coprojection-square-not-pullback",
                {{"diagram", d.name}, {"index", std::to_string(i)}});

    // restriction-idempotent colimit on the partial-map side
    {
      std::string ksig;
      for (size_t i = 0; i < d.k_nodes.size(); ++i)
        ksig += C.obj(d.k_nodes[i]) + ";";
      for (const auto& a : d.arrows) ksig += C.mor(a.k_mor) + ";";
      if (par_colimit_checked.insert(ksig).second) {
        Diagram pk;
        std::vector<int> legs;
        for (size_t i = 0; i < d.k_nodes.size(); ++i)
          pk.nodes.push_back(PC.obj_index(C.obj(d.k_nodes[i])));
        for (const auto& a : d.arrows)
          pk.arrows.push_back(
              {a.src, a.dst,
               par.par_index(Span{C.dom(a.k_mor), C.identity(C.dom(a.k_mor)),
                                  a.k_mor})});
        for (size_t i = 0; i < d.k_nodes.size(); ++i)
          legs.push_back(par.par_index(Span{
              d.k_nodes[i], C.identity(d.k_nodes[i]), kc->legs[i]}));
        if (!is_colimit(PC, pk, Cocone{PC.obj_index(C.obj(kc->apex)), legs}))
          rep.add("colimit-not-preserved-by-inclusion",
                  {{"diagram", d.name}});
      }
      // the induced endomap on colim K
      std::vector<int> eps(d.alpha.size());
      for (size_t i = 0; i < d.alpha.size(); ++i)
        eps[i] = par.par_index(Span{C.dom(d.alpha[i]), d.alpha[i],
                                    d.alpha[i]});
      int pk_colim = PC.obj_index(C.obj(kc->apex));
      int found = -1;
      int fcount = 0;
      for (int t : PC.hom(pk_colim, pk_colim)) {
        bool match = true;
        for (size_t i = 0; i < d.alpha.size(); ++i) {
          int leg = par.par_index(Span{d.k_nodes[i],
                                       C.identity(d.k_nodes[i]),
                                       kc->legs[i]});
          if (PC.compose(t, leg) != PC.compose(leg, eps[i])) {
            match = false;
            break;
          }
        }
        if (match) {
          found = t;
          ++fcount;
        }
      }
      if (fcount != 1)
        rep.add("idempotent-colimit-not-unique", {{"diagram", d.name}});
      else if (par.rc.bar(found) != found)
        rep.add("idempotent-colimit-not-restriction-idempotent",
                {{"diagram", d.name}, {"map", PC.mor(found)}});
    }

    // pullback extension: outer squares pullbacks force the right square
    if (M.contains(C, colim_alpha)) {
      auto mems = detail::member_indices(C, M);
      for (int n : mems)
        for (int x : C.hom(hc->apex, C.dom(n)))
          for (int y : C.hom(kc->apex, C.cod(n))) {
            if (C.compose(n, x) != C.compose(y, colim_alpha)) continue;
            bool outer = true;
            for (size_t i = 0; i < d.alpha.size() && outer; ++i)
              if (!is_pullback(C, C.compose(y, kc->legs[i]), n,
                               d.h_nodes[i], d.alpha[i],
                               C.compose(x, hc->legs[i])))
                outer = false;
            if (!outer) continue;
            if (!is_pullback(C, y, n, hc->apex, colim_alpha, x))
              rep.add("extension-square-not-pullback",
                      {{"diagram", d.name}, {"n", C.mor(n)},
                       {"x", C.mor(x)}, {"y", C.mor(y)}});
          }
    }

    // stability of this colimit under pullback along members
    {
      std::string ksig;
      for (size_t i = 0; i < d.k_nodes.size(); ++i)
        ksig += C.obj(d.k_nodes[i]) + ";";
      for (const auto& a : d.arrows) ksig += C.mor(a.k_mor) + ";";
      if (corollary_checked.insert(ksig).second)
        for (int mu : detail::member_indices(C, M)) {
          if (C.cod(mu) != kc->apex) continue;
          if (!detail::pullback_cocone_colimiting(C, pc, kd, *kc, mu))
            rep.add("pullback-cocone-not-colimiting",
                    {{"diagram", d.name}, {"member", C.mor(mu)}});
        }
    }
  }
  rep.notes.push_back("diagrams-checked=" + std::to_string(checked));
  rep.notes.push_back("hypothesis-unmet=" + std::to_string(unmet));
  return rep.finalize();
}

}  // namespace rcat
