#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "rcat/restriction.hpp"
#include "rcat/splitting.hpp"

using namespace rcat;
using test::restr;

namespace {

std::set<std::string> idempotent_set(const RestrCat& X, const std::string& o) {
  auto v = restriction_idempotents(X, o);
  return {v.begin(), v.end()};
}

}  // namespace

TEST_CASE("the four axioms hold on the restriction fixtures") {
  for (auto d : {fixtures::triv3(), fixtures::max5('A'), fixtures::max5('B'),
                 fixtures::pfin2()}) {
    FinCat C(d);
    auto rep = check_restriction_structure(C, RestrictionStructure{d.restriction});
    CHECK(rep.status == Status::pass);
  }
}

TEST_CASE("ill-typed assignments are input errors") {
  FinCat C(fixtures::max5('B'));
  RestrictionStructure rs{fixtures::max5('B').restriction};
  SECTION("missing entry") {
    rs.bar.erase("3");
    CHECK(check_restriction_structure(C, rs).status == Status::input_error);
  }
  SECTION("wrong endpoint") {
    FinCat T(fixtures::triv3());
    RestrictionStructure t{fixtures::triv3().restriction};
    t.bar["id_A"] = "id_B";
    CHECK(check_restriction_structure(T, t).status == Status::input_error);
  }
}

TEST_CASE("single-entry mutants of the odd-step structure") {
  FinCat C(fixtures::max5('B'));
  auto base = fixtures::max5('B').restriction;

  SECTION("bar(2) = 0 fails the third axiom") {
    RestrictionStructure rs{base};
    rs.bar["2"] = "0";
    auto rep = check_restriction_structure(C, rs);
    REQUIRE(rep.status == Status::fail);
    CHECK(rep.violations[0].law == "R3");
  }
  SECTION("exactly three mutants are themselves valid structures, and all "
          "thirty change the idempotent set") {
    // Valid structures on the truncated max monoid are exactly the
    // down-closure assignments bar(n) = max{e in E : e <= n} for subsets E
    // containing 0, so a one-point change can land on another valid
    // structure; the idempotent-set oracle still separates every mutant
    // from the original.
    RestrCat X(C, RestrictionStructure{base});
    auto original = idempotent_set(X, "*");
    REQUIRE(original == std::set<std::string>{"0", "1", "3", "5"});
    std::vector<std::string> law_valid;
    int killed = 0, total = 0;
    for (int n = 0; n <= 5; ++n)
      for (int v = 0; v <= 5; ++v) {
        if (base.at(std::to_string(n)) == std::to_string(v)) continue;
        ++total;
        RestrictionStructure rs{base};
        rs.bar[std::to_string(n)] = std::to_string(v);
        bool laws = check_restriction_structure(C, rs).status == Status::pass;
        bool idem_changed = true;
        if (laws) {
          law_valid.push_back("bar(" + std::to_string(n) + ")=" +
                              std::to_string(v));
          RestrCat M(C, rs);
          idem_changed = idempotent_set(M, "*") != original;
        }
        if (!laws || idem_changed) ++killed;
      }
    CHECK(total == 30);
    CHECK(killed == 30);
    CHECK(law_valid == std::vector<std::string>{"bar(2)=2", "bar(4)=4",
                                                "bar(5)=3"});
  }
}

TEST_CASE("restriction idempotents") {
  auto tv = restr(fixtures::triv3());
  auto mb = restr(fixtures::max5('B'));
  auto ma = restr(fixtures::max5('A'));
  auto pf = restr(fixtures::pfin2());
  CHECK(idempotent_set(tv, "A") == std::set<std::string>{"id_A"});
  CHECK(idempotent_set(mb, "*") == std::set<std::string>{"0", "1", "3", "5"});
  CHECK(idempotent_set(ma, "*") ==
        std::set<std::string>{"0", "1", "2", "3", "4", "5"});
  CHECK(restriction_idempotents(pf, "{12}").size() == 4);
  CHECK_THROWS_AS(restriction_idempotents(pf, "{3}"), input_error);
}

TEST_CASE("total subcategories") {
  auto tv = restr(fixtures::triv3());
  auto mb = restr(fixtures::max5('B'));
  auto pf = restr(fixtures::pfin2());
  CHECK(total_subcategory(tv).n_mors() == 3);
  auto t = total_subcategory(mb);
  REQUIRE(t.n_mors() == 1);
  CHECK(t.mor(0) == "0");
  // the total maps of partial functions are exactly the total functions
  auto tp = total_subcategory(pf);
  CatData inj = fixtures::inj2();
  CHECK(tp.data().objects == FinCat(inj).data().objects);
  CHECK(tp.data().morphisms == FinCat(inj).data().morphisms);
  CHECK(tp.data().composition == FinCat(inj).data().composition);
}

TEST_CASE("the hom-set order") {
  auto mb = restr(fixtures::max5('B'));
  auto pf = restr(fixtures::pfin2());
  const FinCat& C = pf.cat();

  CHECK(leq(mb, mb.cat().mor_index("4"), mb.cat().mor_index("4")));
  CHECK_FALSE(leq(mb, mb.cat().mor_index("4"), mb.cat().mor_index("3")));
  // the nowhere-defined map is least among its parallels
  int bottom = C.mor_index("{12}>{1}#--");
  for (int f : C.hom(C.obj_index("{12}"), C.obj_index("{1}")))
    CHECK(leq(pf, bottom, f));
  CHECK_THROWS_AS(leq(pf, bottom, C.mor_index("{1}>{1}#1")), input_error);

  SECTION("it is a partial order on every hom-set") {
    for (const auto& X : {mb, pf}) {
      const FinCat& D = X.cat();
      for (int a = 0; a < D.n_objs(); ++a)
        for (int b = 0; b < D.n_objs(); ++b) {
          const auto& hom = D.hom(a, b);
          for (int f : hom) {
            CHECK(leq(X, f, f));
            for (int g : hom) {
              if (leq(X, f, g) && leq(X, g, f)) CHECK(f == g);
              for (int h : hom)
                if (leq(X, f, g) && leq(X, g, h)) CHECK(leq(X, f, h));
            }
          }
        }
    }
  }
}

TEST_CASE("totality is closed under composition") {
  auto pf = restr(fixtures::pfin2());
  const FinCat& C = pf.cat();
  for (int f = 0; f < C.n_mors(); ++f)
    for (int g = 0; g < C.n_mors(); ++g) {
      if (C.cod(f) != C.dom(g)) continue;
      if (pf.is_total(f) && pf.is_total(g))
        CHECK(pf.is_total(C.compose(g, f)));
    }
  for (int o = 0; o < C.n_objs(); ++o) CHECK(pf.is_total(C.identity(o)));
}

TEST_CASE("restriction functors") {
  auto pf = restr(fixtures::pfin2());
  auto ma = restr(fixtures::max5('A'));
  auto mb = restr(fixtures::max5('B'));

  SECTION("the identity is a restriction functor") {
    Functor id;
    for (int o = 0; o < pf.cat().n_objs(); ++o)
      id.omap[pf.cat().obj(o)] = pf.cat().obj(o);
    for (int m = 0; m < pf.cat().n_mors(); ++m)
      id.mmap[pf.cat().mor(m)] = pf.cat().mor(m);
    CHECK(check_restriction_functor(id, pf, pf).status == Status::pass);
  }
  SECTION("the splitting embedding preserves restriction") {
    auto K = kr(mb);
    CHECK(check_restriction_functor(K.embedding, mb, K.result).status ==
          Status::pass);
  }
  SECTION("the identity carrier map between the two max structures is not "
          "a restriction functor") {
    Functor id;
    id.omap["*"] = "*";
    for (int n = 0; n <= 5; ++n)
      id.mmap[std::to_string(n)] = std::to_string(n);
    auto rep = check_restriction_functor(id, mb, ma);
    REQUIRE(rep.status == Status::fail);
    bool at2 = false;
    for (const auto& v : rep.violations)
      for (const auto& [k, idv] : v.witness)
        if (idv == "2") at2 = true;
    CHECK(at2);
  }
  SECTION("a supplied transformation must have total components") {
    Functor id;
    id.omap["*"] = "*";
    for (int n = 0; n <= 5; ++n)
      id.mmap[std::to_string(n)] = std::to_string(n);
    NatTrans a;
    a.components["*"] = "3";  // central, natural, not total
    auto rep = check_restriction_functor(id, mb, mb, a);
    REQUIRE(rep.status == Status::fail);
    CHECK(rep.violations[0].law == "transformation-component-total");
  }
  SECTION("a non-functor is an input error referencing the functor check") {
    Functor broken;
    auto rep = check_restriction_functor(broken, pf, pf);
    CHECK(rep.status == Status::input_error);
    REQUIRE_FALSE(rep.sub.empty());
  }
}

TEST_CASE("enumerating all restriction structures") {
  SECTION("the discrete carrier admits exactly the trivial structure") {
    auto found = enumerate_restriction_structures(FinCat(fixtures::triv3()));
    REQUIRE(found.size() == 1);
    CHECK(found[0].bar == fixtures::triv3().restriction);
  }
  SECTION("the truncated max monoid admits exactly the 32 down-closure "
          "structures") {
    FinCat C(fixtures::max5());
    auto found = enumerate_restriction_structures(C);
    CHECK(found.size() == 32);
    auto has = [&](const std::map<std::string, std::string>& want) {
      for (const auto& s : found)
        if (s.bar == want) return true;
      return false;
    };
    CHECK(has(fixtures::max5('A').restriction));
    CHECK(has(fixtures::max5('B').restriction));
    for (const auto& s : found)
      CHECK(check_restriction_structure(C, s).status == Status::pass);
  }
  SECTION("partial functions admit the trivial and the standard structure") {
    auto found = enumerate_restriction_structures(FinCat(fixtures::pfin2()));
    REQUIRE(found.size() == 2);
    bool has_standard = false;
    for (const auto& s : found)
      if (s.bar == fixtures::pfin2().restriction) has_standard = true;
    CHECK(has_standard);
  }
}
