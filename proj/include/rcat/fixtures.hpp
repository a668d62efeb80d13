#pragma once

// Bundled finite fixtures used across the library and its test suites:
//
//   triv3  - three objects, identities only, trivial restriction
//   max5a  - max monoid on {0..5}, restriction n |-> n
//   max5b  - max monoid on {0..5}, restriction n |-> n (n = 0 or odd), n-1 else
//   pfin2  - partial functions between subsets of {1,2}
//   inj2   - total functions between subsets of {1,2}, monics = injections
//   ab2    - abelian groups 0, Z2, Z2+Z2, monics = injective homomorphisms
//
// Morphism ids are positional encodings ("dom>cod#data"), chosen so that
// canonical (lexicographic) choices are stable across runs.

#include <string>
#include <vector>

#include "rcat/fincat.hpp"

namespace rcat::fixtures {

// --- subsets of {1,2}, partial and total functions -------------------------

namespace detail {

inline std::string subset_name(int mask) {
  switch (mask) {
    case 0: return "{}";
    case 1: return "{1}";
    case 2: return "{2}";
    default: return "{12}";
  }
}

inline std::vector<int> subset_elems(int mask) {
  std::vector<int> out;
  for (int e = 1; e <= 2; ++e)
    if (mask & (1 << (e - 1))) out.push_back(e);
  return out;
}

// a partial function: images[i] is the image of the i-th element of dom,
// 0 meaning undefined
struct PartialFn {
  int dom, cod;
  std::vector<int> images;
};

inline std::string pf_id(const PartialFn& f) {
  std::string s = subset_name(f.dom) + ">" + subset_name(f.cod) + "#";
  for (int v : f.images) s += v == 0 ? '-' : char('0' + v);
  return s;
}

inline int pf_apply(const PartialFn& f, int x) {  // 0 when undefined
  auto elems = subset_elems(f.dom);
  for (size_t i = 0; i < elems.size(); ++i)
    if (elems[i] == x) return f.images[i];
  return 0;
}

inline PartialFn pf_compose(const PartialFn& g, const PartialFn& f) {
  PartialFn h{f.dom, g.cod, {}};
  for (int x : subset_elems(f.dom)) {
    int y = pf_apply(f, x);
    h.images.push_back(y == 0 ? 0 : pf_apply(g, y));
  }
  return h;
}

inline std::vector<PartialFn> all_partial_fns(int dom, int cod, bool total) {
  auto delems = subset_elems(dom);
  auto celems = subset_elems(cod);
  std::vector<PartialFn> out;
  std::vector<int> choice(delems.size(), 0);
  while (true) {
    PartialFn f{dom, cod, {}};
    bool ok = true;
    for (size_t i = 0; i < delems.size(); ++i) {
      int c = choice[i];
      int img = c == 0 ? 0 : celems[c - 1];
      if (total && img == 0) ok = false;
      f.images.push_back(img);
    }
    if (ok) out.push_back(f);
    size_t i = 0;
    for (; i < choice.size(); ++i) {
      if (choice[i] < (int)celems.size()) {
        ++choice[i];
        break;
      }
      choice[i] = 0;
    }
    if (i == choice.size()) break;
  }
  return out;
}

inline bool pf_injective(const PartialFn& f) {
  auto elems = subset_elems(f.dom);
  for (size_t i = 0; i < elems.size(); ++i)
    for (size_t j = i + 1; j < elems.size(); ++j)
      if (f.images[i] != 0 && f.images[i] == f.images[j]) return false;
  return true;
}

inline CatData subsets_cat(bool total) {
  CatData d;
  std::vector<PartialFn> fns;
  for (int s = 0; s < 4; ++s) {
    d.objects.push_back(subset_name(s));
    for (int t = 0; t < 4; ++t)
      for (const auto& f : all_partial_fns(s, t, total)) fns.push_back(f);
  }
  for (const auto& f : fns)
    d.morphisms.push_back(
        {pf_id(f), subset_name(f.dom), subset_name(f.cod)});
  for (int s = 0; s < 4; ++s) {
    PartialFn id{s, s, {}};
    for (int x : subset_elems(s)) id.images.push_back(x);
    d.identities[subset_name(s)] = pf_id(id);
  }
  for (const auto& g : fns)
    for (const auto& f : fns)
      if (f.cod == g.dom)
        d.composition.push_back({pf_id(g), pf_id(f), pf_id(pf_compose(g, f))});
  return d;
}

// --- F2-linear maps for ab2 -------------------------------------------------

inline std::string grp_name(int dim) {
  return dim == 0 ? "0" : dim == 1 ? "Z2" : "V4";
}

struct LinMap {
  int ddim, cdim;
  std::vector<int> cols;  // ddim columns, each a bitmask of cdim rows
};

inline std::string lin_id(const LinMap& f) {
  std::string s = grp_name(f.ddim) + ">" + grp_name(f.cdim) + "#";
  for (size_t j = 0; j < f.cols.size(); ++j) {
    if (j) s += '.';
    for (int i = 0; i < f.cdim; ++i) s += char('0' + ((f.cols[j] >> i) & 1));
  }
  return s;
}

inline LinMap lin_compose(const LinMap& g, const LinMap& f) {
  LinMap h{f.ddim, g.cdim, {}};
  for (int j = 0; j < f.ddim; ++j) {
    int v = 0;
    for (int i = 0; i < f.cdim; ++i)
      if ((f.cols[j] >> i) & 1) v ^= g.cols[i];
    h.cols.push_back(v);
  }
  return h;
}

inline bool lin_injective(const LinMap& f) {
  if (f.ddim == 0) return true;
  if (f.ddim == 1) return f.cols[0] != 0;
  return f.cols[0] != 0 && f.cols[1] != 0 && f.cols[0] != f.cols[1];
}

inline std::vector<LinMap> all_lin_maps(int ddim, int cdim) {
  std::vector<LinMap> out;
  int ncols = 1 << cdim;
  std::vector<int> choice(ddim, 0);
  while (true) {
    out.push_back({ddim, cdim, choice});
    int i = 0;
    for (; i < ddim; ++i) {
      if (choice[i] < ncols - 1) {
        ++choice[i];
        break;
      }
      choice[i] = 0;
    }
    if (i == ddim) break;
  }
  return out;
}

}  // namespace detail

// --- fixture builders -------------------------------------------------------

inline CatData triv3() {
  CatData d;
  for (std::string o : {"A", "B", "C"}) {
    d.objects.push_back(o);
    std::string id = "id_" + o;
    d.morphisms.push_back({id, o, o});
    d.identities[o] = id;
    d.composition.push_back({id, id, id});
    d.restriction[id] = id;
    d.msystem.push_back(id);
  }
  return d;
}

/// The max monoid truncated to {0..5}. structure: 'A', 'B' or 0 (carrier
/// only).
inline CatData max5(char structure = 0) {
  CatData d;
  d.objects = {"*"};
  for (int n = 0; n <= 5; ++n)
    d.morphisms.push_back({std::to_string(n), "*", "*"});
  d.identities["*"] = "0";
  for (int g = 0; g <= 5; ++g)
    for (int f = 0; f <= 5; ++f)
      d.composition.push_back({std::to_string(g), std::to_string(f),
                               std::to_string(std::max(g, f))});
  if (structure == 'A')
    for (int n = 0; n <= 5; ++n)
      d.restriction[std::to_string(n)] = std::to_string(n);
  if (structure == 'B')
    for (int n = 0; n <= 5; ++n)
      d.restriction[std::to_string(n)] =
          std::to_string(n == 0 || n % 2 == 1 ? n : n - 1);
  return d;
}

inline CatData pfin2() {
  CatData d = detail::subsets_cat(false);
  // restriction = partial identity on the domain of definition
  for (int s = 0; s < 4; ++s)
    for (int t = 0; t < 4; ++t)
      for (const auto& f : detail::all_partial_fns(s, t, false)) {
        detail::PartialFn bar{s, s, {}};
        auto elems = detail::subset_elems(s);
        for (size_t i = 0; i < elems.size(); ++i)
          bar.images.push_back(f.images[i] == 0 ? 0 : elems[i]);
        d.restriction[detail::pf_id(f)] = detail::pf_id(bar);
      }
  return d;
}

inline CatData inj2() {
  CatData d = detail::subsets_cat(true);
  for (int s = 0; s < 4; ++s)
    for (int t = 0; t < 4; ++t)
      for (const auto& f : detail::all_partial_fns(s, t, true))
        if (detail::pf_injective(f)) d.msystem.push_back(detail::pf_id(f));
  return d;
}

inline CatData ab2() {
  CatData d;
  std::vector<detail::LinMap> maps;
  for (int dd = 0; dd <= 2; ++dd) {
    d.objects.push_back(detail::grp_name(dd));
    for (int cd = 0; cd <= 2; ++cd)
      for (const auto& f : detail::all_lin_maps(dd, cd)) maps.push_back(f);
  }
  for (const auto& f : maps)
    d.morphisms.push_back({detail::lin_id(f), detail::grp_name(f.ddim),
                           detail::grp_name(f.cdim)});
  for (int dd = 0; dd <= 2; ++dd) {
    detail::LinMap id{dd, dd, {}};
    for (int j = 0; j < dd; ++j) id.cols.push_back(1 << j);
    d.identities[detail::grp_name(dd)] = detail::lin_id(id);
  }
  for (const auto& g : maps)
    for (const auto& f : maps)
      if (f.cdim == g.ddim)
        d.composition.push_back({detail::lin_id(g), detail::lin_id(f),
                                 detail::lin_id(detail::lin_compose(g, f))});
  for (const auto& f : maps)
    if (detail::lin_injective(f)) d.msystem.push_back(detail::lin_id(f));
  return d;
}

struct FixtureInfo {
  std::string name;
  std::string provenance;
  CatData data;
};

/// Manifest of all bundled fixtures, in name order.
inline std::vector<FixtureInfo> all() {
  return {
      {"ab2",
       "abelian groups 0, Z2, Z2+Z2 with all homomorphisms; monic system = "
       "injective homomorphisms",
       ab2()},
      {"inj2",
       "total functions between subsets of {1,2}; monic system = injections",
       inj2()},
      {"max5a", "max monoid on {0..5}; restriction n|->n", max5('A')},
      {"max5b",
       "max monoid on {0..5}; restriction n|->n for n=0 or n odd, else n-1",
       max5('B')},
      {"pfin2",
       "partial functions between subsets of {1,2}; restriction = partial "
       "identity on the domain of definition",
       pfin2()},
      {"triv3", "three objects, identities only; trivial restriction; monic "
                "system = isomorphisms",
       triv3()},
  };
}

}  // namespace rcat::fixtures
