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
}  // namespace

TEST_CASE("probe construction: sink first, then non-cyclic tail") {
    Quiver t = make_T();
    auto p = shortest_sink_path(t, t.vertex("1"));
    REQUIRE(p.has_value());
    CHECK(p->str() == "f");
    CHECK(shortest_sink_path(t, t.vertex("2"))->trivial());

    Quiver r1 = make_R1();
    CHECK_FALSE(shortest_sink_path(r1, 0).has_value());
    CHECK_FALSE(extension_probe(Q, FinitePath(r1, 0)).has_value());

    // T: every vertex reaches the sink, so probes land in N
    auto pr = extension_probe(Q, arr(t, "x"));
    REQUIRE(pr.has_value());
    CHECK(pr->f.empty());
    CHECK(pr->n.begin()->first.str() == "f.x");

    // R2 reaches no sink but branches, so probes land in F
    Quiver r2 = make_R2();
    auto pf = extension_probe(Q, arr(r2, "a"));
    REQUIRE(pf.has_value());
    CHECK(pf->n.empty());
    REQUIRE(pf->f.size() == 1);
    EvInfPath key = pf->f.begin()->first;
    CHECK_FALSE(key.cyclic());
    CHECK(key.arrow_at(0) == r2.arrow("a"));  // extends q1, first traversed arrow
}

TEST_CASE("independence: single monomial and the two-loop pair") {
    Quiver r2 = make_R2();
    // one monomial always has rank 1
    auto rep1 = independence_witness({Monomial::path(arr(r2, "a"))},
                                     FixedLengths{0, 1}, Q);
    CHECK(rep1.rank == 1);
    CHECK(rep1.full_rank);

    // a and b evaluated against the F probes separate
    auto rep2 = independence_witness(
        {Monomial::path(arr(r2, "a")), Monomial::path(arr(r2, "b"))},
        FixedLengths{0, 1}, Q);
    CHECK(rep2.probes.size() == 2);
    CHECK(rep2.rank == 2);
    CHECK(rep2.full_rank);
}

TEST_CASE("independence: sink-ending monomials over the Toeplitz quiver") {
    Quiver t = make_T();
    FinitePath f = arr(t, "f");
    FinitePath fx(t, std::vector<int>{t.arrow("x"), t.arrow("f")});
    auto rep = independence_witness({Monomial(f, f), Monomial(fx, fx)}, SinkEnding{}, Q);
    CHECK(rep.rank == 2);
    CHECK(rep.full_rank);
}

TEST_CASE("independence mode violations") {
    Quiver r2 = make_R2();
    Quiver r1 = make_R1();
    Monomial a = Monomial::path(arr(r2, "a"));
    CHECK_THROWS_AS(independence_witness({}, SinkEnding{}, Q), ModeViolation);
    CHECK_THROWS_AS(independence_witness({a, a}, FixedLengths{0, 1}, Q), ModeViolation);
    CHECK_THROWS_AS(independence_witness({a}, FixedLengths{1, 1}, Q), ModeViolation);
    CHECK_THROWS_AS(independence_witness({a}, SinkEnding{}, Q), ModeViolation);
    // R1 admits neither probe
    CHECK_THROWS_AS(independence_witness({Monomial::path(arr(r1, "x"))},
                                         FixedLengths{0, 1}, Q),
                    NoProbeAvailable);
}

TEST_CASE("independence matches exact rank on random reduced families") {
    std::mt19937 rng(90210);
    Quiver t = make_T();
    auto sink_paths = enumerate_sink_paths(t, t.vertex("2"), 3);
    for (int it = 0; it < 50; ++it) {
        // pick a random set of distinct sink monomials
        std::set<Monomial> chosen;
        int want = 1 + static_cast<int>(rng() % 5);
        for (int i = 0; i < want; ++i) {
            const FinitePath& p = sink_paths[rng() % sink_paths.size()];
            const FinitePath& q = sink_paths[rng() % sink_paths.size()];
            chosen.insert(Monomial(p, q));
        }
        std::vector<Monomial> monos(chosen.begin(), chosen.end());
        auto rep = independence_witness(monos, SinkEnding{}, Q);
        // distinct sink monomials are an independent family
        CHECK(rep.full_rank);
    }
}

TEST_CASE("faithfulness witness on the Toeplitz quiver") {
    Quiver t = make_T();
    SpecialEdgeChoice sp(t);
    AlgebraElement f = iota(t, Q, arr(t, "f"));
    WitnessReport w = faithfulness_witness(f, sp);
    CHECK(w.nonzero);
    CHECK_FALSE(w.result.empty());
    CHECK_FALSE(w.lambda.has_value());

    CHECK_THROWS_AS(faithfulness_witness(AlgebraElement::zero(t, Q), sp), ZeroElement);
    AlgebraElement e1 = AlgebraElement::unit(t, Q, t.vertex("1"));
    AlgebraElement xx =
        AlgebraElement::monomial(t, Monomial(arr(t, "x"), arr(t, "x")), Scalar::one(Q));
    AlgebraElement ff =
        AlgebraElement::monomial(t, Monomial(arr(t, "f"), arr(t, "f")), Scalar::one(Q));
    // a relation instance is zero in the algebra, not a faithfulness input
    CHECK_THROWS_AS(faithfulness_witness(xx + ff - e1, sp), ZeroElement);
}

TEST_CASE("random faithfulness witnesses always evaluate nonzero") {
    std::mt19937 rng(314159);
    std::vector<Quiver> quivers{make_T(), make_A2(), make_A3(), make_R2()};
    for (const Quiver& q : quivers) {
        SpecialEdgeChoice sp(q);
        int done = 0;
        while (done < 100) {
            AlgebraElement u = testutil::random_element(rng, q, Q, 8, 4);
            if (reduce(u, sp).empty_support()) continue;
            ++done;
            WitnessReport w = faithfulness_witness(u, sp);
            CHECK(w.nonzero);
            CHECK_FALSE(w.result.empty());
            // the probe really is a single basis vector
            CHECK(w.probe.f.size() + w.probe.n.size() == 1);
        }
    }
}

TEST_CASE("single-loop quiver fails the untwisted hypothesis") {
    Quiver r1 = make_R1();
    SpecialEdgeChoice sp(r1);
    AlgebraElement u = AlgebraElement::unit(r1, Q, 0) - iota(r1, Q, arr(r1, "x"));
    CHECK_THROWS_AS(faithfulness_witness(u, sp), HypothesisFailed);
    try {
        faithfulness_witness(u, sp);
    } catch (const HypothesisFailed& e) {
        CHECK(e.vertex == "v");
    }
}

TEST_CASE("twisted-sum witness on the single loop") {
    Quiver r1 = make_R1();
    SpecialEdgeChoice sp(r1);
    // e - x annihilates every untwisted vector but not the lambda = 2 twist
    AlgebraElement u = AlgebraElement::unit(r1, Q, 0) - iota(r1, Q, arr(r1, "x"));
    WitnessReport w = s_faithfulness_witness(u, sp);
    CHECK(w.nonzero);
    REQUIRE(w.lambda.has_value());
    CHECK(*w.lambda == Scalar::from_integer(Q, 2));
    CHECK_FALSE(w.result.f.empty());

    // over GF(2) the only unit is 1 and the search is exhausted
    FieldSpec g2 = FieldSpec::prime_field(2);
    AlgebraElement u2 =
        AlgebraElement::unit(r1, g2, 0) - iota(r1, g2, arr(r1, "x"));
    CHECK_FALSE(is_zero(u2, sp));
    CHECK_THROWS_AS(s_faithfulness_witness(u2, sp), NoWitnessInFiniteField);
}

TEST_CASE("twisted-sum witness delegates when untwisted probes suffice") {
    Quiver t = make_T();
    SpecialEdgeChoice sp(t);
    WitnessReport w = s_faithfulness_witness(iota(t, Q, arr(t, "f")), sp);
    CHECK(w.nonzero);
    REQUIRE(w.lambda.has_value());
    CHECK(w.lambda->is_one());
}

TEST_CASE("random twisted-sum witnesses over the rationals") {
    std::mt19937 rng(2718281);
    std::vector<Quiver> quivers{make_R1(), make_R2()};
    for (const Quiver& q : quivers) {
        SpecialEdgeChoice sp(q);
        int done = 0;
        while (done < 100) {
            AlgebraElement u = testutil::random_element(rng, q, Q, 6, 3);
            if (reduce(u, sp).empty_support()) continue;
            ++done;
            WitnessReport w = s_faithfulness_witness(u, sp);
            CHECK(w.nonzero);
            CHECK_FALSE(w.result.empty());
        }
    }
}

TEST_CASE("matrix decomposition of acyclic quiver algebras") {
    Quiver a2 = make_A2();
    SpecialEdgeChoice sp2(a2);
    WedderburnData w2 = wedderburn(a2, Q, sp2);
    REQUIRE(w2.blocks.size() == 1);
    CHECK(w2.blocks[0].paths.size() == 2);  // e_2 and a
    CHECK(w2.dim == 4);
    CHECK(w2.reduced_basis_count == 4);
    CHECK(w2.multiplication_ok);
    CHECK(w2.dimension_ok);

    Quiver a3 = make_A3();
    SpecialEdgeChoice sp3(a3);
    WedderburnData w3 = wedderburn(a3, Q, sp3);
    REQUIRE(w3.blocks.size() == 1);
    CHECK(w3.blocks[0].paths.size() == 3);  // e_3, b, b.a
    CHECK(w3.dim == 9);
    CHECK(w3.reduced_basis_count == 9);
    CHECK(w3.multiplication_ok);
    CHECK(w3.dimension_ok);

    // the one-vertex quiver is the ground field
    Quiver pt("pt");
    pt.add_vertex("1");
    SpecialEdgeChoice spp(pt);
    WedderburnData wp = wedderburn(pt, Q, spp);
    CHECK(wp.dim == 1);
    CHECK(wp.dimension_ok);

    Quiver t = make_T();
    SpecialEdgeChoice spt(t);
    CHECK_THROWS_AS(wedderburn(t, Q, spt), NotAcyclic);
}

TEST_CASE("two sinks give two matrix blocks") {
    Quiver y("Y");
    y.add_vertex("1");
    y.add_vertex("2");
    y.add_vertex("3");
    y.add_arrow("a", "1", "2");
    y.add_arrow("b", "1", "3");
    SpecialEdgeChoice sp(y);
    WedderburnData w = wedderburn(y, Q, sp);
    REQUIRE(w.blocks.size() == 2);
    CHECK(w.dim == 8);  // 2^2 + 2^2
    CHECK(w.multiplication_ok);
    CHECK(w.dimension_ok);
}
