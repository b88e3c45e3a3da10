#include <doctest.h>

#include <random>

#include "mtmorph/features.hpp"
#include "mtmorph/rule.hpp"
#include "mtmorph/segment.hpp"

using namespace mtmorph;

TEST_CASE("classify over the Arabic transliteration") {
  Alphabet a = Alphabet::arabic();
  CHECK(a.classify('j') == SegmentKind::Consonant);
  CHECK(a.classify('T') == SegmentKind::Consonant);
  CHECK(a.classify('\'') == SegmentKind::Consonant);
  CHECK(a.classify('a') == SegmentKind::Vowel);
  CHECK(a.classify('c') == SegmentKind::PatternConsonantSlot);
  CHECK(a.classify('v') == SegmentKind::PatternVowelSlot);
  CHECK_THROWS_AS(a.classify('q'), UnknownSymbolError);
  CHECK_FALSE(a.try_classify('q').has_value());
  try {
    a.segments("jq");
    FAIL("expected UnknownSymbolError");
  } catch (const UnknownSymbolError& e) {
    CHECK(e.symbol() == 'q');
  }
}

TEST_CASE("custom alphabets reject reserved and repeated symbols") {
  CHECK_NOTHROW(Alphabet::from_sets("bd", "ai"));
  CHECK_THROWS_AS(Alphabet::from_sets("bC", "a"), std::invalid_argument);
  CHECK_THROWS_AS(Alphabet::from_sets("b", "c"), std::invalid_argument);
  CHECK_THROWS_AS(Alphabet::from_sets("b*", "a"), std::invalid_argument);
  CHECK_THROWS_AS(Alphabet::from_sets("bb", "a"), std::invalid_argument);
  CHECK_THROWS_AS(Alphabet::from_sets("ab", "a"), std::invalid_argument);
}

TEST_CASE("unify") {
  FeatureStructure pl{{"number", Value::atom("pl")}};
  FeatureStructure sing{{"number", Value::atom("sing")}};
  FeatureStructure var{{"number", Value::variable("N")}};

  SUBCASE("atom against variable") {
    auto r = unify(pl, var);
    REQUIRE(r);
    CHECK(*r == pl);
  }
  SUBCASE("empty is the identity") {
    auto r = unify({}, sing);
    REQUIRE(r);
    CHECK(*r == sing);
  }
  SUBCASE("atom clash fails") { CHECK_FALSE(unify(pl, sing)); }
  SUBCASE("shared variables propagate across attributes") {
    FeatureStructure a{{"x", Value::variable("X")}, {"y", Value::variable("X")}};
    FeatureStructure b{{"x", Value::atom("p")}};
    auto r = unify(a, b);
    REQUIRE(r);
    CHECK(r->find("y")->text == "p");
    FeatureStructure c{{"x", Value::atom("p")}, {"y", Value::atom("q")}};
    CHECK_FALSE(unify(a, c));
  }
  SUBCASE("variable chains") {
    FeatureStructure a{{"x", Value::variable("A")}, {"y", Value::variable("B")}};
    FeatureStructure b{{"x", Value::variable("B")}, {"z", Value::variable("A")}};
    auto r = unify(a, b);
    REQUIRE(r);
    CHECK(r->find("x")->is_variable());
    CHECK(*r->find("x") == *r->find("y"));
    CHECK(*r->find("x") == *r->find("z"));
    auto bound = unify(*r, FeatureStructure{{"z", Value::atom("k")}});
    REQUIRE(bound);
    CHECK(bound->find("y")->text == "k");
  }
}

TEST_CASE("feature structure parsing and printing") {
  auto fs = FeatureStructure::parse("number=sing, form=dim");
  CHECK(fs.to_string() == "number=sing form=dim");
  CHECK(fs.key() == "form=dim;number=sing");
  auto v = FeatureStructure::parse("number=$N");
  CHECK(v.find("number")->is_variable());
  CHECK(v.to_string() == "number=$N");
  CHECK(v.canonical().to_string() == "number=$_1");
  CHECK_THROWS_AS(FeatureStructure::parse("number"), std::invalid_argument);
  CHECK_THROWS_AS(FeatureStructure::parse("number=pl number=sing"), std::invalid_argument);
  CHECK_THROWS_AS(FeatureStructure::parse("=pl"), std::invalid_argument);
  CHECK(FeatureStructure::parse("").empty());
}

TEST_CASE("subsumption") {
  auto mode = FeatureStructure::parse("number=sing form=base");
  CHECK(mode.subsumes(FeatureStructure::parse("number=sing form=base gloss=x")));
  CHECK_FALSE(mode.subsumes(FeatureStructure::parse("number=sing form=dim")));
  CHECK_FALSE(mode.subsumes(FeatureStructure::parse("number=sing")));
}

namespace {

FeatureStructure random_fs(std::mt19937& rng) {
  static const char* attrs[] = {"a", "b", "c"};
  static const char* atoms[] = {"p", "q"};
  static const char* vars[] = {"X", "Y"};
  FeatureStructure fs;
  for (const char* attr : attrs) {
    int r = std::uniform_int_distribution<int>(0, 4)(rng);
    if (r == 0 || r == 1) fs.set(attr, Value::atom(atoms[r]));
    else if (r == 2 || r == 3) fs.set(attr, Value::variable(vars[r - 2]));
  }
  return fs;
}

}  // namespace

TEST_CASE("unification laws over random structures") {
  std::mt19937 rng(7);
  for (int i = 0; i < 2000; ++i) {
    FeatureStructure a = random_fs(rng), b = random_fs(rng), c = random_fs(rng);
    auto ab = unify(a, b), ba = unify(b, a);
    REQUIRE(ab.has_value() == ba.has_value());
    if (ab) CHECK(equivalent(*ab, *ba));

    auto aa = unify(a, a);
    REQUIRE(aa);
    CHECK(equivalent(*aa, a));

    // Associativity needs the three inputs' variables kept apart.
    FeatureStructure ra = a.renamed("1"), rb = b.renamed("2"), rc = c.renamed("3");
    std::optional<FeatureStructure> left, right;
    if (auto l = unify(ra, rb)) left = unify(*l, rc);
    if (auto r = unify(rb, rc)) right = unify(ra, *r);
    REQUIRE(left.has_value() == right.has_value());
    if (left) CHECK(equivalent(*left, *right));

    // The unifier is at least as specific as both inputs.
    if (ab) {
      CHECK(a.subsumes(*ab));
      CHECK(b.subsumes(*ab));
    }
  }
}

TEST_CASE("canonical keys ignore variable names and attribute order") {
  FeatureStructure a{{"x", Value::variable("P")}, {"y", Value::atom("k")}};
  FeatureStructure b{{"y", Value::atom("k")}, {"x", Value::variable("Q")}};
  CHECK(a.key() == b.key());
  CHECK(a == FeatureStructure{{"y", Value::atom("k")}, {"x", Value::variable("P")}});
  CHECK_FALSE(a == b);
}

TEST_CASE("partition coverage") {
  Alphabet al = Alphabet::arabic();
  Partition p;
  p.steps.push_back({{al.segments("cvc"), al.segments("jn"), al.segments("u")}, al.segments("janaa"), "R6", {}});
  p.steps.push_back({{al.segments("cvc"), al.segments("db"), al.segments("u")}, al.segments("dib"), "R7", {}});
  TapeTuple lex{al.segments("cvccvc"), al.segments("jndb"), al.segments("uu")};
  CHECK(covers(p, lex, al.segments("janaadib")));
  CHECK_FALSE(covers(p, lex, al.segments("janaadub")));
  TapeTuple other{al.segments("cvccvc"), al.segments("jndb"), al.segments("ua")};
  CHECK_FALSE(covers(p, other, al.segments("janaadib")));
}
