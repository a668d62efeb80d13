#pragma once

#include "rcat/fixtures.hpp"
#include "rcat/restriction.hpp"
#include "rcat/mcat.hpp"

namespace rcat::test {

inline RestrCat restr(const CatData& d) {
  return RestrCat(FinCat(d), RestrictionStructure{d.restriction});
}

inline MSystem msys(const CatData& d) {
  return MSystem{{d.msystem.begin(), d.msystem.end()}};
}

inline MSystem iso_system(const FinCat& C) {
  MSystem M;
  for (int m = 0; m < C.n_mors(); ++m)
    if (C.is_iso(m)) M.members.insert(C.mor(m));
  return M;
}

}  // namespace rcat::test
