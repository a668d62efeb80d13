// A small tour: build the bundled fixtures, split restriction idempotents,
// form partial maps from injections, and print the hom-set sizes that make
// the partial-function model visible.

#include <iostream>

#include "rcat/equiv.hpp"
#include "rcat/fixtures.hpp"

using namespace rcat;

int main() {
  auto inj = fixtures::inj2();
  FinCat C(inj);
  MSystem M{{inj.msystem.begin(), inj.msystem.end()}};
  auto P = par(C, M);

  std::cout << "partial maps from injections over subsets of {1,2}\n";
  for (int a = 0; a < C.n_objs(); ++a) {
    for (int b = 0; b < C.n_objs(); ++b)
      std::cout << "  |Par(" << C.obj(a) << ", " << C.obj(b)
                << ")| = " << P.rc.cat().hom(P.obj_index(C.obj(a)),
                                             P.obj_index(C.obj(b))).size()
                << "\n";
  }

  auto pfd = fixtures::pfin2();
  RestrCat pf(FinCat(pfd), RestrictionStructure{pfd.restriction});
  std::cout << "\npartial-function category is split: " << std::boolalpha
            << is_split(pf) << "\n";

  auto mbd = fixtures::max5('B');
  RestrCat mb(FinCat(mbd), RestrictionStructure{mbd.restriction});
  std::cout << "max monoid (structure B) is split: " << is_split(mb) << "\n";
  auto K = kr(mb);
  std::cout << "after splitting: " << K.result.cat().n_objs()
            << " objects, is_split = " << is_split(K.result) << "\n";

  std::cout << "\nrepresentable restriction presheaf over the partial maps "
               "of the max monoid:\n";
  auto q3 = q_split(mb, 0, mb.cat().mor_index("3"));
  std::cout << "  splitting the idempotent 3 gives sections";
  for (const auto& x : q3.psh.sets.at("*")) std::cout << " " << x;
  std::cout << "\n";
  return 0;
}
