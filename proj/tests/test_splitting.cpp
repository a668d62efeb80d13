#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "rcat/splitting.hpp"

using namespace rcat;
using test::restr;

namespace {

std::vector<RestrCat> restriction_fixtures() {
  return {restr(fixtures::triv3()), restr(fixtures::max5('A')),
          restr(fixtures::max5('B')), restr(fixtures::pfin2())};
}

}  // namespace

TEST_CASE("splitting the discrete carrier changes nothing") {
  auto tv = restr(fixtures::triv3());
  auto K = kr(tv);
  CHECK(K.result.cat().n_objs() == 3);
  CHECK(K.result.cat().n_mors() == 3);
  CHECK(is_split(K.result));
}

TEST_CASE("pair category of the odd-step max structure") {
  auto mb = restr(fixtures::max5('B'));
  auto K = kr(mb);
  const FinCat& KC = K.result.cat();
  REQUIRE(KC.n_objs() == 4);
  CHECK(KC.data().objects ==
        std::vector<std::string>{"*|0", "*|1", "*|3", "*|5"});
  // hom((*,e), (*,e')) = maps n with max(e', n, e) = n, i.e. n >= max(e,e')
  for (const auto& e : {0, 1, 3, 5})
    for (const auto& ep : {0, 1, 3, 5}) {
      int a = KC.obj_index("*|" + std::to_string(e));
      int b = KC.obj_index("*|" + std::to_string(ep));
      CHECK((int)KC.hom(a, b).size() == 6 - std::max(e, ep));
    }
  CHECK(KC.n_mors() == 43);
}

TEST_CASE("pair category of partial functions") {
  auto pf = restr(fixtures::pfin2());
  auto K = kr(pf);
  // objects are pairs (S, partial identity on T <= S): 1 + 2 + 2 + 4
  CHECK(K.result.cat().n_objs() == 9);
  // hom((S,T), (S',T')) = partial maps defined inside T landing in T';
  // independent count: sum over pairs of (|T'|+1)^|T|
  auto size_of = [](int mask) { return (mask & 1 ? 1 : 0) + (mask & 2 ? 1 : 0); };
  int expected = 0;
  for (int S = 0; S < 4; ++S)
    for (int T = 0; T < 4; ++T) {
      if ((T & S) != T) continue;
      for (int Sp = 0; Sp < 4; ++Sp)
        for (int Tp = 0; Tp < 4; ++Tp) {
          if ((Tp & Sp) != Tp) continue;
          int v = 1;
          for (int i = 0; i < size_of(T); ++i) v *= size_of(Tp) + 1;
          expected += v;
        }
    }
  CHECK(K.result.cat().n_mors() == expected);
  CHECK(expected == 125);
}

TEST_CASE("the embedding is a fully faithful restriction functor") {
  for (const auto& X : restriction_fixtures()) {
    auto K = kr(X);
    CHECK(check_restriction_functor(K.embedding, X, K.result).status ==
          Status::pass);
    // injective on objects
    std::set<std::string> objs;
    for (const auto& [o, jo] : K.embedding.omap) objs.insert(jo);
    CHECK(objs.size() == K.embedding.omap.size());
    // reflects and preserves restriction elementwise
    const FinCat& C = X.cat();
    for (int f = 0; f < C.n_mors(); ++f) {
      int Jf = K.result.cat().mor_index(K.embedding.on_mor(C.mor(f)));
      CHECK(K.embedding.on_mor(C.mor(X.bar(f))) ==
            K.result.cat().mor(K.result.bar(Jf)));
    }
  }
}

TEST_CASE("canonical splittings") {
  auto pf = restr(fixtures::pfin2());
  auto mb = restr(fixtures::max5('B'));
  auto tv = restr(fixtures::triv3());

  SECTION("identities split through themselves") {
    int e = tv.cat().mor_index("id_A");
    auto s = split_restriction_idempotent(tv, e);
    REQUIRE(s);
    CHECK(s->first == e);
    CHECK(s->second == e);
  }
  SECTION("a partial identity splits through the subset inclusion") {
    int e = pf.cat().mor_index("{12}>{12}#1-");
    auto s = split_restriction_idempotent(pf, e);
    REQUIRE(s);
    CHECK(pf.cat().mor(s->first) == "{1}>{12}#1");
    CHECK(pf.cat().mor(s->second) == "{12}>{1}#1-");
  }
  SECTION("the idempotent 1 has no splitting in the one-object carrier") {
    CHECK_FALSE(split_restriction_idempotent(mb, mb.cat().mor_index("1")));
  }
  SECTION("only restriction idempotents may be split") {
    CHECK_THROWS_AS(
        split_restriction_idempotent(mb, mb.cat().mor_index("2")),
        input_error);
  }
}

TEST_CASE("split-ness detection") {
  auto pf = restr(fixtures::pfin2());
  auto mb = restr(fixtures::max5('B'));
  CHECK(is_split(pf));
  CHECK_FALSE(is_split(mb));
  CHECK(find_non_split_idempotent(mb).has_value());
}

TEST_CASE("the split closure is split, and pairs split canonically") {
  for (const auto& X : restriction_fixtures()) {
    auto K = kr(X);
    CHECK(is_split(K.result));
    const auto& R = K.result;
    const FinCat& KC = R.cat();
    for (int e = 0; e < KC.n_mors(); ++e) {
      if (!R.is_restriction_idempotent(e)) continue;
      auto s = split_restriction_idempotent(R, e);
      REQUIRE(s);
      CHECK(KC.compose(s->first, s->second) == e);
      CHECK(KC.compose(s->second, s->first) ==
            KC.identity(KC.dom(s->first)));
    }
  }
}
