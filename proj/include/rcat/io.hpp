#pragma once

// File formats. Everything is UTF-8 JSON with deterministic serialization:
// object keys sorted, arrays emitted in canonical (sorted) order.
//
// Category file: {objects, morphisms: [{id,dom,cod}], identities,
//   composition: [[g, f, gf]], restriction?, msystem?}. Unknown keys are
//   rejected.
// Presheaf file: {base: path-or-inline-category, sets: {obj: [elem]},
//   actions: [[f, x, y]] meaning x.f = y, restriction?: {"obj:elem": mor}}.
// Presheaf map file: {components: {obj: [[x, y]]}}.

#include <fstream>
#include <sstream>
#include <string>

#include "rcat/presheaf.hpp"
#include "rcat/rpsh.hpp"

namespace rcat::io {

inline void reject_unknown_keys(const json& j,
                                const std::set<std::string>& allowed,
                                const std::string& what) {
  if (!j.is_object()) throw input_error(what + ": expected a JSON object");
  for (const auto& [k, v] : j.items())
    if (!allowed.count(k))
      throw input_error(what + ": unknown key '" + k + "'");
}

inline json cat_to_json(const CatData& d) {
  json j;
  json objs = json::array();
  {
    auto sorted = d.objects;
    std::sort(sorted.begin(), sorted.end());
    for (const auto& o : sorted) objs.push_back(o);
  }
  j["objects"] = objs;
  json mors = json::array();
  {
    auto sorted = d.morphisms;
    std::sort(sorted.begin(), sorted.end(),
              [](const MorData& a, const MorData& b) { return a.id < b.id; });
    for (const auto& m : sorted)
      mors.push_back(json{{"id", m.id}, {"dom", m.dom}, {"cod", m.cod}});
  }
  j["morphisms"] = mors;
  j["identities"] = json(d.identities);
  json comp = json::array();
  {
    auto sorted = d.composition;
    std::sort(sorted.begin(), sorted.end());
    for (const auto& t : sorted) comp.push_back(json{t[0], t[1], t[2]});
  }
  j["composition"] = comp;
  if (!d.restriction.empty()) j["restriction"] = json(d.restriction);
  if (!d.msystem.empty()) {
    auto sorted = d.msystem;
    std::sort(sorted.begin(), sorted.end());
    j["msystem"] = json(sorted);
  }
  return j;
}

inline CatData cat_from_json(const json& j) {
  reject_unknown_keys(j, {"objects", "morphisms", "identities", "composition",
                          "restriction", "msystem"},
                      "category file");
  for (const auto& key : {"objects", "morphisms", "identities", "composition"})
    if (!j.contains(key))
      throw input_error(std::string("category file: missing key '") + key +
                        "'");
  CatData d;
  for (const auto& o : j.at("objects")) d.objects.push_back(o.get<std::string>());
  for (const auto& m : j.at("morphisms")) {
    reject_unknown_keys(m, {"id", "dom", "cod"}, "morphism entry");
    d.morphisms.push_back({m.at("id").get<std::string>(),
                           m.at("dom").get<std::string>(),
                           m.at("cod").get<std::string>()});
  }
  for (const auto& [o, mid] : j.at("identities").items())
    d.identities[o] = mid.get<std::string>();
  for (const auto& t : j.at("composition")) {
    if (!t.is_array() || t.size() != 3)
      throw input_error("category file: composition entries are triples");
    d.composition.push_back({t[0].get<std::string>(), t[1].get<std::string>(),
                             t[2].get<std::string>()});
  }
  if (j.contains("restriction"))
    for (const auto& [f, b] : j.at("restriction").items())
      d.restriction[f] = b.get<std::string>();
  if (j.contains("msystem"))
    for (const auto& m : j.at("msystem"))
      d.msystem.push_back(m.get<std::string>());
  return d;
}

struct PresheafFile {
  CatData base;
  Presheaf psh;
  std::map<std::string, std::map<std::string, std::string>> elbar;  // optional
  bool has_restriction = false;
};

inline json presheaf_to_json(const json& base, const Presheaf& P,
                             const std::map<std::string,
                                            std::map<std::string,
                                                     std::string>>* elbar) {
  json j;
  j["base"] = base;
  json sets;
  for (const auto& [o, v] : P.sets) {
    auto sorted = v;
    std::sort(sorted.begin(), sorted.end());
    sets[o] = json(sorted);
  }
  j["sets"] = sets;
  json acts = json::array();
  {
    std::vector<std::array<std::string, 3>> triples;
    for (const auto& [f, a] : P.act)
      for (const auto& [x, y] : a) triples.push_back({f, x, y});
    std::sort(triples.begin(), triples.end());
    for (const auto& t : triples) acts.push_back(json{t[0], t[1], t[2]});
  }
  j["actions"] = acts;
  if (elbar) {
    json r;
    for (const auto& [o, m] : *elbar)
      for (const auto& [x, e] : m) r[o + ":" + x] = e;
    j["restriction"] = r;
  }
  return j;
}

/// load_base resolves the "base" key: inline object or path (resolved by
/// the supplied loader, typically relative to the presheaf file).
template <typename LoadBase>
inline PresheafFile presheaf_from_json(const json& j, LoadBase&& load_base) {
  reject_unknown_keys(j, {"base", "sets", "actions", "restriction"},
                      "presheaf file");
  for (const auto& key : {"base", "sets", "actions"})
    if (!j.contains(key))
      throw input_error(std::string("presheaf file: missing key '") + key +
                        "'");
  PresheafFile out;
  if (j.at("base").is_string())
    out.base = cat_from_json(load_base(j.at("base").get<std::string>()));
  else
    out.base = cat_from_json(j.at("base"));
  for (const auto& [o, v] : j.at("sets").items()) {
    auto& s = out.psh.sets[o];
    for (const auto& x : v) s.push_back(x.template get<std::string>());
    std::sort(s.begin(), s.end());
  }
  for (const auto& t : j.at("actions")) {
    if (!t.is_array() || t.size() != 3)
      throw input_error("presheaf file: action entries are triples");
    out.psh.act[t[0].template get<std::string>()][t[1].template get<std::string>()] =
        t[2].template get<std::string>();
  }
  if (j.contains("restriction")) {
    out.has_restriction = true;
    for (const auto& [key, e] : j.at("restriction").items()) {
      auto colon = key.find(':');
      if (colon == std::string::npos)
        throw input_error("presheaf file: restriction keys are 'obj:elem'");
      out.elbar[key.substr(0, colon)][key.substr(colon + 1)] =
          e.template get<std::string>();
    }
  }
  return out;
}

inline json psh_map_to_json(const PresheafMap& mu) {
  json comps;
  for (const auto& [o, c] : mu.comp) {
    json pairs = json::array();
    for (const auto& [x, y] : c) pairs.push_back(json{x, y});
    comps[o] = pairs;
  }
  return json{{"components", comps}};
}

inline PresheafMap psh_map_from_json(const json& j) {
  reject_unknown_keys(j, {"components"}, "presheaf map file");
  PresheafMap mu;
  for (const auto& [o, pairs] : j.at("components").items())
    for (const auto& p : pairs) {
      if (!p.is_array() || p.size() != 2)
        throw input_error("presheaf map file: component entries are pairs");
      mu.comp[o][p[0].get<std::string>()] = p[1].get<std::string>();
    }
  return mu;
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw input_error("invalid JSON in " + path + ": " + e.what());
  }
  return j;
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw input_error("cannot write file: " + path);
  out << text;
}

/// Extracts the data of a partial-map category in file form: objects of the
/// base, canonical span ids, the inherited restriction.
inline CatData par_to_catdata(const ParCat& P) {
  CatData d = P.rc.cat().data();
  d.restriction = P.rc.restr().bar;
  return d;
}

inline CatData kr_to_catdata(const KrCat& K) {
  CatData d = K.result.cat().data();
  d.restriction = K.result.restr().bar;
  return d;
}

inline CatData mtotal_to_catdata(const MCat& T) {
  CatData d = T.cat.data();
  d.msystem.assign(T.msystem.members.begin(), T.msystem.members.end());
  return d;
}

}  // namespace rcat::io
