#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "adtchoice/enumeration.hpp"
#include "adtchoice/schema.hpp"
#include "adtchoice/term.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace adtchoice;

TEST_CASE("schema parsing") {
  const AdtSchema& list = fx::list_schema();
  CHECK(list.name == "List");
  REQUIRE(list.constructor_count() == 2);
  CHECK(list.constructors[0].name == "Sing");
  CHECK(list.constructors[0].slots == std::vector<SlotKind>{SlotKind::Value});
  CHECK(list.constructors[1].name == "Cons");
  CHECK(list.constructors[1].slots ==
        std::vector<SlotKind>{SlotKind::Value, SlotKind::Recursive});

  AdtSchema tree = parse_schema("schema Tree; Leaf: X; Node: T, T, T");
  REQUIRE(tree.constructor_count() == 2);
  CHECK(tree.constructors[1].arity() == 3);

  CHECK_THROWS_AS(parse_schema("schema Bad; C:"), ParseError);
  CHECK_THROWS_AS(parse_schema("schema Dup; C: X; C: X, T"), ParseError);
  CHECK_THROWS_AS(parse_schema("schema S; C: X, W"), ParseError);
  CHECK_THROWS_AS(parse_schema("C: X"), ParseError);
  CHECK_THROWS_AS(parse_schema("schema S; C: X; inner Nowhere"), ParseError);
}

TEST_CASE("schema print round-trips and preserves declaration order") {
  for (const AdtSchema* s : {&fx::list_schema(), &fx::list2_schema(), &fx::tree_schema(),
                             &fx::wines_schema(), &fx::result_schema()}) {
    AdtSchema reparsed = parse_schema(print_schema(*s));
    CHECK(schemas_equal(*s, reparsed));
  }
}

TEST_CASE("schema flags") {
  SchemaFlags list = analyze_schema(fx::list_schema());
  CHECK_FALSE(list.flat);
  CHECK(list.productive);
  CHECK_FALSE(list.substitutable);
  CHECK(list.expandable);
  CHECK(list.representable);

  SchemaFlags list2 = analyze_schema(fx::list2_schema());
  CHECK(list2.substitutable);
  CHECK(list2.representable);
  SchemaFlags tree = analyze_schema(fx::tree_schema());
  CHECK(tree.substitutable);
  CHECK(tree.representable);

  SchemaFlags flat = analyze_schema(parse_schema("schema F; C1: X; C2: X, X"));
  CHECK(flat.flat);
  CHECK(flat.productive);
  CHECK_FALSE(flat.expandable);
  CHECK_FALSE(flat.representable);

  SchemaFlags nonprod = analyze_schema(parse_schema("schema N; C1: T, T; C2: T"));
  CHECK_FALSE(nonprod.productive);
  CHECK_FALSE(nonprod.flat);
  CHECK(nonprod.expandable);
  CHECK_FALSE(nonprod.representable);

  // Productive and non-flat, yet every finite term's extension is a singleton.
  AdtSchema gap = parse_schema("schema G; C1: X; C2: T");
  SchemaFlags gapf = analyze_schema(gap);
  CHECK(gapf.productive);
  CHECK_FALSE(gapf.flat);
  CHECK_FALSE(gapf.expandable);
  CHECK_FALSE(gapf.representable);
  CHECK_FALSE(schema_flags_note(gapf).empty());
  for (const Term& t : oracle::all_terms(gap, fx::uxyz(), 6, 6))
    CHECK(t.extension().size() == 1);
}

TEST_CASE("flat schemas are never expandable") {
  for (const char* text : {"schema A; C: X", "schema B; C: X, X", "schema C; C1: X; C2: X, X, X"}) {
    SchemaFlags f = analyze_schema(parse_schema(text));
    CHECK(f.flat);
    CHECK_FALSE(f.expandable);
  }
}

TEST_CASE("term parsing accepts the grammar and rejects malformed input") {
  const Universe& u = fx::uxyz();
  Term t = fx::t(fx::list_schema(), u, "(Cons x (Sing y))");
  CHECK(t.leaf_count() == 2);
  CHECK(print_term(t, fx::list_schema(), u) == "(Cons x (Sing y))");

  CHECK_THROWS_AS(fx::t(fx::list_schema(), u, "(Sing x y)"), ParseError);       // arity
  CHECK_THROWS_AS(fx::t(fx::list2_schema(), u, "(Cat (Leaf x) (Sing2 y))"), ParseError);  // mixed
  CHECK_THROWS_AS(fx::t(fx::list_schema(), u, "(Cons (Sing x) (Sing y))"), ParseError);   // slot kind
  CHECK_THROWS_AS(fx::t(fx::list_schema(), u, "(Cons w (Sing y))"), ParseError);  // unknown id
  CHECK_THROWS_AS(fx::t(fx::list_schema(), u, "(Cons x (Sing y)) junk"), ParseError);
  CHECK_THROWS_AS(fx::t(fx::list_schema(), u, "(Frob x)"), ParseError);
}

TEST_CASE("parse/print canonicalizes whitespace") {
  const Universe& u = fx::uxyz();
  Term t = fx::t(fx::list_schema(), u, "  ( Cons   x\n\t( Sing  z ) )  ");
  CHECK(print_term(t, fx::list_schema(), u) == "(Cons x (Sing z))");
}

TEST_CASE("extension and equivalence worked examples") {
  const Universe& u = fx::uxyz();
  Term xxy = fx::list_term(u, {"x", "x", "y"});
  Term yx = fx::list_term(u, {"y", "x"});
  AltSet expect;
  expect.insert(u.resolve("x"));
  expect.insert(u.resolve("y"));
  CHECK(xxy.extension() == expect);
  CHECK(yx.extension() == expect);
  CHECK(equivalent(xxy, yx));

  CHECK(fx::t(fx::list_schema(), u, "(Sing x)").extension() == AltSet::single(u.resolve("x")));

  Term tree = fx::t(fx::tree_schema(), u,
                    "(Node (Leaf x) (Leaf y) (Node (Leaf x) (Leaf y) (Leaf z)))");
  CHECK(tree.extension() == u.all());

  CHECK(equivalent(fx::list_term(u, {"x", "y"}), fx::list_term(u, {"y", "x", "x"})));
  CHECK_FALSE(equivalent(fx::list_term(u, {"x", "y"}), fx::list_term(u, {"x"})));
  Term sx = fx::t(fx::list_schema(), u, "(Sing x)");
  CHECK(equivalent(sx, sx));
}

TEST_CASE("equivalence is an equivalence relation on enumerated list terms") {
  std::vector<Term> pool =
      generate_all_terms(fx::list_schema(), fx::uxyz(), EnumerationBudget::leaves(4));
  REQUIRE(pool.size() == 3 + 9 + 27 + 81);
  for (const Term& a : pool) CHECK(equivalent(a, a));
  for (std::size_t i = 0; i < pool.size(); i += 7)
    for (std::size_t j = 0; j < pool.size(); j += 5)
      CHECK(equivalent(pool[i], pool[j]) == equivalent(pool[j], pool[i]));
  // Transitivity via the class decomposition.
  std::map<std::uint64_t, std::vector<const Term*>> classes;
  for (const Term& t : pool) classes[t.extension().bits()].push_back(&t);
  for (const auto& [bits, members] : classes)
    for (const Term* m : members) {
      CHECK(equivalent(*members.front(), *m));
      (void)bits;
    }
}

TEST_CASE("substitution replaces values under unary constructors") {
  const Universe& u = fx::u6();
  Term a = fx::t(fx::tree_schema(), u, "(Node (Leaf x1) (Leaf x2) (Leaf x3))");
  Term b = fx::t(fx::tree_schema(), u, "(Node (Leaf x4) (Leaf x5) (Leaf x6))");
  Term got = substitute_subproblem(fx::tree_schema(), a, u.resolve("x2"), b);
  CHECK(print_term(got, fx::tree_schema(), u) ==
        "(Node (Leaf x1) (Node (Leaf x4) (Leaf x5) (Leaf x6)) (Leaf x3))");

  // Absent value: unchanged.
  CHECK(substitute_subproblem(fx::tree_schema(), a, u.resolve("x5"), b) == a);

  // Every occurrence is replaced.
  Term cat = fx::t(fx::list2_schema(), u, "(Cat (Sing2 x1) (Sing2 x1))");
  Term rep = fx::t(fx::list2_schema(), u, "(Cat (Sing2 x2) (Sing2 x3))");
  Term all = substitute_subproblem(fx::list2_schema(), cat, u.resolve("x1"), rep);
  CHECK(print_term(all, fx::list2_schema(), u) ==
        "(Cat (Cat (Sing2 x2) (Sing2 x3)) (Cat (Sing2 x2) (Sing2 x3)))");

  CHECK_THROWS_AS(
      substitute_subproblem(fx::list_schema(), fx::list_term(u, {"x1"}), u.resolve("x1"),
                            fx::list_term(u, {"x2"})),
      Error);
}

TEST_CASE("substitution extension law over enumerated inputs") {
  const Universe& u = fx::uxyz();
  for (const AdtSchema* s : {&fx::list2_schema(), &fx::tree_schema()}) {
    std::vector<Term> pool = generate_all_terms(*s, u, EnumerationBudget::leaves(3));
    for (const Term& a : pool)
      for (int xi = 0; xi < u.size(); ++xi) {
        AltId x{static_cast<std::uint32_t>(xi)};
        for (std::size_t bi = 0; bi < pool.size(); bi += 3) {
          const Term& b = pool[bi];
          Term got = substitute_subproblem(*s, a, x, b);
          if (!a.extension().contains(x)) {
            CHECK(got == a);
          } else {
            AltSet expect = (a.extension() - AltSet::single(x)) | b.extension();
            CHECK(got.extension() == expect);
            validate_term(*s, u, got);
          }
        }
      }
  }
}

TEST_CASE("rename rewrites leaves and keeps the skeleton") {
  const Universe& u = fx::uxyz();
  Term a = fx::list_term(u, {"x", "z", "x"});
  Term renamed = rename_value(fx::list_schema(), a, u.resolve("x"), u.resolve("y"));
  CHECK(print_term(renamed, fx::list_schema(), u) == fx::list_text({"y", "z", "y"}));
  CHECK(same_shape(a, renamed));

  CHECK(rename_value(fx::list_schema(), a, u.resolve("y"), u.resolve("z")) == a);

  Term xy = fx::list_term(u, {"x", "y"});
  Term merged = rename_value(fx::list_schema(), xy, u.resolve("x"), u.resolve("y"));
  CHECK(merged.extension() == AltSet::single(u.resolve("y")));

  for (const Term& t : generate_all_terms(fx::tree_schema(), u, EnumerationBudget::leaves(5)))
    CHECK(same_shape(t, rename_value(fx::tree_schema(), t, u.resolve("x"), u.resolve("z"))));
}

TEST_CASE("canonical representation worked examples") {
  const Universe& u = fx::u6();
  AltSet a123 = u.parse_set("x1,x2,x3");
  CHECK(print_term(canonical_representation(fx::list_schema(), u, a123), fx::list_schema(), u) ==
        "(Cons x1 (Cons x2 (Sing x3)))");
  CHECK(print_term(canonical_representation(fx::tree_schema(), u, a123), fx::tree_schema(), u) ==
        "(Node (Leaf x1) (Node (Leaf x2) (Leaf x3) (Leaf x2)) (Leaf x1))");
  CHECK(print_term(canonical_representation(fx::list_schema(), u, u.parse_set("x1")),
                   fx::list_schema(), u) == "(Sing x1)");
  CHECK(print_term(canonical_representation(fx::tree_schema(), u, u.parse_set("x4")),
                   fx::tree_schema(), u) == "(Leaf x4)");

  AdtSchema flat = parse_schema("schema F; C1: X; C2: X, X");
  CHECK(print_term(canonical_representation(flat, u, u.parse_set("x2")), flat, u) == "(C1 x2)");
  CHECK_THROWS_AS(canonical_representation(flat, u, a123), Error);
  AdtSchema nonprod = parse_schema("schema N; C1: T, T; C2: T");
  CHECK_THROWS_AS(canonical_representation(nonprod, u, u.parse_set("x1")), Error);
}

TEST_CASE("canonical representation is extension-exact for every small menu") {
  const Universe& u = fx::u6();
  std::uint64_t all = u.all().bits();
  for (const AdtSchema* s : {&fx::list_schema(), &fx::list2_schema(), &fx::tree_schema(),
                             &fx::wines_schema()}) {
    for (std::uint64_t m = 1; m <= all; ++m) {
      AltSet A(m);
      Term r = canonical_representation(*s, u, A);
      CHECK(r.extension() == A);
      validate_term(*s, u, r);
    }
  }
}

TEST_CASE("parse/print round-trips over enumerated terms") {
  const Universe& u = fx::uxyz();
  auto roundtrip = [&](const AdtSchema& s, int leaves) {
    for (const Term& t : generate_all_terms(s, u, EnumerationBudget::leaves(leaves))) {
      Term back = parse_term(s, u, print_term(t, s, u));
      CHECK(back == t);
    }
  };
  roundtrip(fx::list_schema(), 4);
  roundtrip(fx::list2_schema(), 4);
  roundtrip(fx::tree_schema(), 5);
}

TEST_CASE("nested terms parse, print and validate") {
  const Universe& u = fx::wines6();
  const AdtSchema& s = fx::wines_nested_schema();
  std::string text =
      "(Red (Wine (Sing w3)) (Dry (Wine (Cons w5 (Sing w2))) (Wine (Sing w1))))";
  Term t = fx::t(s, u, text);
  CHECK(print_term(t, s, u) == text);
  CHECK(t.leaf_count() == 4);
  CHECK(t.extension() == u.parse_set("w3,w5,w2,w1"));
  validate_term(s, u, t);

  // A bare alternative is not allowed in a nested value slot.
  CHECK_THROWS_AS(fx::t(s, u, "(Wine w1)"), ParseError);
}

TEST_CASE("universe rejects malformed input") {
  CHECK_THROWS_AS(Universe::from_json("{}"), ParseError);
  CHECK_THROWS_AS(Universe::from_json(R"({"elements":[]})"), Error);
  CHECK_THROWS_AS(
      Universe::from_json(R"({"elements":[{"id":"a"},{"id":"a"}]})"), Error);
  CHECK_THROWS_AS(
      Universe::from_json(R"({"elements":[{"id":"a","attrs":{"u":"high"}}]})"), ParseError);
  const Universe& u = fx::uxyz();
  CHECK_THROWS_AS(u.resolve("nope"), Error);
  CHECK_THROWS_AS(u.parse_set(""), Error);
  CHECK(u.set_to_string(u.parse_set("z , x")) == "{x,z}");
}
