#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_util.hpp"

using namespace lpa;
using testutil::make_A2;
using testutil::make_A3;
using testutil::make_R1;
using testutil::make_R2;
using testutil::make_T;

namespace {
const FieldSpec Q = FieldSpec::rationals();

FinitePath arr(const Quiver& q, const std::string& name) {
    return FinitePath(q, std::vector<int>{q.arrow(name)});
}

bool same_quiver(const Quiver& a, const Quiver& b) {
    if (a.vertex_count() != b.vertex_count() || a.arrow_count() != b.arrow_count())
        return false;
    for (int v = 0; v < a.vertex_count(); ++v)
        if (a.vertex_name(v) != b.vertex_name(v)) return false;
    for (int x = 0; x < a.arrow_count(); ++x)
        if (a.arrow_name(x) != b.arrow_name(x) ||
            a.vertex_name(a.source(x)) != b.vertex_name(b.source(x)) ||
            a.vertex_name(a.target(x)) != b.vertex_name(b.target(x)))
            return false;
    return true;
}
}  // namespace

TEST_CASE("quiver text round trips") {
    const char* text =
        "quiver T {\n"
        "  vertex 1 2;\n"
        "  arrow x: 1 -> 1;\n"
        "  arrow f: 1 -> 2;  # exit to the sink\n"
        "}\n";
    Quiver t = parse_quiver(text);
    CHECK(t.name() == "T");
    CHECK(same_quiver(t, make_T()));
    CHECK(same_quiver(parse_quiver(serialize_quiver(t)), t));
    for (const Quiver& q : {make_R1(), make_R2(), make_A2(), make_A3()})
        CHECK(same_quiver(parse_quiver(serialize_quiver(q)), q));
}

TEST_CASE("quiver grammar rejections carry positions") {
    CHECK_THROWS_AS(parse_quiver("graph X { }"), ParseError);
    CHECK_THROWS_AS(parse_quiver("quiver X { vertex v; vertex v; }"), ParseError);
    CHECK_THROWS_AS(parse_quiver("quiver X { arrow a: v -> w; }"), ParseError);
    try {
        parse_quiver("quiver X {\n  vertex v;\n  arrow a: v -> ;\n}");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line == 3);
        CHECK(e.column > 1);
    }
    // duplicate arrow name
    CHECK_THROWS_AS(
        parse_quiver("quiver X { vertex v; arrow a: v -> v; arrow a: v -> v; }"),
        ParseError);
}

TEST_CASE("element parsing: display order, stars and scalars") {
    Quiver r2 = make_R2();
    FinitePath a = arr(r2, "a"), b = arr(r2, "b");

    // a^* . b means the monomial with star part a and path part b
    AlgebraElement u = parse_element("a^* . b", r2, Q);
    REQUIRE(u.terms().size() == 1);
    CHECK(u.terms().begin()->first == Monomial(a, b));

    // display b.a is "traverse a, then b"
    AlgebraElement v = parse_element("b.a", r2, Q);
    CHECK(v.terms().begin()->first == Monomial::path(compose(b, a)));

    AlgebraElement w = parse_element("e_v - 2 * a^*.a.b + 1/3 * (a.b)^*", r2, Q);
    CHECK(w.terms().coefficient(Monomial::vertex(r2, 0)) == Scalar::one(Q));
    CHECK(w.terms().coefficient(Monomial(a, compose(a, b))) == Scalar::from_integer(Q, -2));
    CHECK(w.terms().coefficient(Monomial::star_path(compose(a, b))) ==
          Scalar::from_fraction(Q, 1, 3));

    CHECK(parse_element("0", r2, Q).empty_support());

    Quiver r1 = make_R1();
    AlgebraElement z = parse_element("e_v - x", r1, Q);
    CHECK(z.terms().coefficient(Monomial::path(arr(r1, "x"))) == -Scalar::one(Q));
}

TEST_CASE("digit-led names parse both as identifiers and next to scalars") {
    // vertices named by digits: a number token is a scalar only before '*'
    Quiver a2 = make_A2();
    AlgebraElement u = parse_element("e_1 + 3 * e_2", a2, Q);
    CHECK(u.terms().coefficient(Monomial::vertex(a2, a2.vertex("1"))) == Scalar::one(Q));
    CHECK(u.terms().coefficient(Monomial::vertex(a2, a2.vertex("2"))) ==
          Scalar::from_integer(Q, 3));

    Quiver d("D");
    d.add_vertex("1");
    d.add_arrow("2", "1", "1");  // an arrow literally named 2
    AlgebraElement v = parse_element("2 + 2 * 2", d, Q);
    CHECK(v.terms().coefficient(Monomial::path(arr(d, "2"))) == Scalar::from_integer(Q, 3));
}

TEST_CASE("element grammar rejections") {
    Quiver r2 = make_R2();
    CHECK_THROWS_AS(parse_element("", r2, Q), ParseError);
    CHECK_THROWS_AS(parse_element("a +", r2, Q), ParseError);
    CHECK_THROWS_AS(parse_element("c", r2, Q), ParseError);      // unknown name
    CHECK_THROWS_AS(parse_element("e_w", r2, Q), ParseError);    // unknown vertex
    CHECK_THROWS_AS(parse_element("a b", r2, Q), ParseError);    // missing operator
    Quiver a3 = make_A3();
    // star and path parts that do not meet at a common vertex
    CHECK_THROWS_AS(parse_element("a^* . b", a3, Q), ParseError);
}

TEST_CASE("random element round trips through text") {
    std::mt19937 rng(5061);
    std::vector<Quiver> quivers{make_R1(), make_R2(), make_A2(), make_A3(), make_T()};
    for (const Quiver& q : quivers)
        for (int it = 0; it < 60; ++it) {
            AlgebraElement u = testutil::random_element(rng, q, Q, 5, 3);
            CHECK(parse_element(serialize_element(u), q, Q) == u);
        }
}

TEST_CASE("vector parsing: basis keys from both modules") {
    Quiver r2 = make_R2();
    FNVector v = parse_vector("(a.b)^inf.b - 2 * (a)^inf", r2, Q);
    CHECK(v.n.empty());
    CHECK(v.f.size() == 2);
    EvInfPath key = EvInfPath::make(arr(r2, "b"),
                                    compose(arr(r2, "a"), arr(r2, "b")));
    CHECK(v.f.coefficient(key) == Scalar::one(Q));
    CHECK(v.f.coefficient(EvInfPath::pure(arr(r2, "a"))) == Scalar::from_integer(Q, -2));

    Quiver t = make_T();
    FNVector w = parse_vector("f.x + e_2", t, Q);
    CHECK(w.f.empty());
    CHECK(w.n.size() == 2);

    // finite keys must end at a sink
    CHECK_THROWS_AS(parse_vector("x", t, Q), ParseError);
    // a cycle display that is not composable
    Quiver a3 = make_A3();
    CHECK_THROWS_AS(parse_vector("(a)^inf", a3, Q), ParseError);
}

TEST_CASE("random vector round trips through text") {
    std::mt19937 rng(6062);
    Quiver r2 = make_R2();
    Quiver t = make_T();
    auto cls_keys = enumerate_class(TailClass(arr(r2, "a")), 3);
    auto sink_keys = enumerate_sink_paths(t, t.vertex("2"), 4);
    for (int it = 0; it < 60; ++it) {
        FNVector v(Q);
        for (const auto& k : cls_keys)
            v.f.add_term(k, Scalar::from_integer(Q, static_cast<long>(rng() % 5) - 2));
        CHECK(parse_vector(serialize_vector(v), r2, Q) == v);

        FNVector w(Q);
        for (const auto& k : sink_keys)
            w.n.add_term(k, Scalar::from_integer(Q, static_cast<long>(rng() % 5) - 2));
        CHECK(parse_vector(serialize_vector(w), t, Q) == w);
    }
}

TEST_CASE("branching system text round trips") {
    Quiver a2 = make_A2();
    const char* text =
        "bs {\n"
        "  points: p q;\n"
        "  1: q;\n"
        "  2: p;\n"
        "  a: [q];\n"
        "  sigma a: p -> q;\n"
        "}\n";
    FiniteBranchingSystem X = parse_bs(text, a2);
    CHECK(X.point_count() == 2);
    CHECK(X.in_vertex_set(a2.vertex("1"), X.point("q")));
    CHECK(X.in_arrow_set(a2.arrow("a"), X.point("q")));
    CHECK(X.sigma(a2.arrow("a"), X.point("p")) == X.point("q"));
    CHECK(validate_bs(X).perfect);

    FiniteBranchingSystem Y = parse_bs(serialize_bs(X), a2);
    CHECK(Y.point_count() == X.point_count());
    for (int v = 0; v < a2.vertex_count(); ++v)
        CHECK(Y.vertex_set(v) == X.vertex_set(v));
    for (int a = 0; a < a2.arrow_count(); ++a) {
        CHECK(Y.arrow_set(a) == X.arrow_set(a));
        for (int p = 0; p < X.point_count(); ++p)
            CHECK(Y.sigma(a, p) == X.sigma(a, p));
    }
}

TEST_CASE("branching system grammar rejections") {
    Quiver a2 = make_A2();
    CHECK_THROWS_AS(parse_bs("bs { 1: p; }", a2), ParseError);  // no points block
    CHECK_THROWS_AS(parse_bs("bs { points: p p; }", a2), ParseError);
    CHECK_THROWS_AS(parse_bs("bs { points: p; z: p; }", a2), ParseError);
    CHECK_THROWS_AS(parse_bs("bs { points: p; 1: r; }", a2), ParseError);
    CHECK_THROWS_AS(parse_bs("bs { points: p; sigma a: p -> r; }", a2), ParseError);
}

TEST_CASE("the shipped sample files parse and classify as documented") {
    // keep in sync with tests/data
    Quiver a2 = make_A2();
    Quiver r1 = make_R1();
    FiniteBranchingSystem canonical = parse_bs(
        "bs { points: p q; 1: q; 2: p; a: [q]; sigma a: p -> q; }", a2);
    CHECK(classify_bs(canonical, Q).irreducible);

    FiniteBranchingSystem swap = parse_bs(
        "bs { points: s t; v: s t; x: [s t]; sigma x: s -> t t -> s; }", r1);
    ClassifyResult r = classify_bs(swap, Q);
    CHECK_FALSE(r.irreducible);
    CHECK(r.witness_proper);
}
