// Acceptance gate: ten end-to-end checks, one pass/fail line each.

#include <functional>
#include <iostream>
#include <random>

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

std::vector<Quiver> standard_quivers() {
    std::vector<Quiver> out;
    out.push_back(make_R1());
    out.push_back(make_R2());
    out.push_back(make_A2());
    out.push_back(make_A3());
    out.push_back(make_T());
    return out;
}

bool g_all_ok = true;

void criterion(int n, const std::string& what, const std::function<bool()>& body) {
    bool ok = false;
    std::string note;
    try {
        ok = body();
    } catch (const std::exception& e) {
        note = std::string(" (") + e.what() + ")";
    }
    if (!ok) g_all_ok = false;
    std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << n << ": " << what
              << note << "\n";
}
}  // namespace

int main() {
    criterion(1, "defining relations hold in the algebra and on both module windows", [] {
        for (const Quiver& q : standard_quivers()) {
            SpecialEdgeChoice sp(q);
            auto fw = f_window(q, 6);
            auto nw = n_window(q, 6);
            for (const auto& r : defining_relations(q, Q)) {
                if (!equals(r.lhs, r.rhs, sp)) return false;
                if (!relation_holds_on_windows(r, fw, nw, Q)) return false;
            }
        }
        return true;
    });

    criterion(2, "single loop: one infinite path, and the loop acts as the identity", [] {
        Quiver r1 = make_R1();
        TailClass cx(arr(r1, "x"));
        for (int bound = 0; bound <= 6; ++bound)
            if (enumerate_class(cx, bound).size() != 1) return false;
        FVector v(Q, EvInfPath::pure(arr(r1, "x")), Scalar::one(Q));
        return act_F(iota(r1, Q, arr(r1, "x")), v) == v;
    });

    criterion(3, "acyclic algebras decompose into full matrix blocks (dims 4 and 9)", [] {
        Quiver a2 = make_A2();
        Quiver a3 = make_A3();
        SpecialEdgeChoice sp2(a2), sp3(a3);
        WedderburnData w2 = wedderburn(a2, Q, sp2);
        WedderburnData w3 = wedderburn(a3, Q, sp3);
        return w2.blocks.size() == 1 && w2.blocks[0].paths.size() == 2 &&
               w2.dim == 4 && w2.multiplication_ok && w2.dimension_ok &&
               w3.blocks.size() == 1 && w3.blocks[0].paths.size() == 3 &&
               w3.dim == 9 && w3.multiplication_ok && w3.dimension_ok;
    });

    criterion(4, "100+100 random generation certificates hit their targets exactly", [] {
        std::mt19937 rng(40404);
        Quiver r2 = make_R2();
        TailClass cls(compose(arr(r2, "b"), arr(r2, "a")));
        auto fkeys = enumerate_class(cls, 3);
        auto targets = enumerate_class(cls, 2);
        int done = 0;
        while (done < 100) {
            FVector u(Q);
            for (const auto& k : fkeys)
                u.add_term(k, Scalar::from_integer(Q, static_cast<long>(rng() % 7) - 3));
            if (u.empty()) continue;
            ++done;
            const EvInfPath& target = targets[rng() % targets.size()];
            Certificate c = generation_certificate_F(u, target);
            if (c.lambda.is_zero()) return false;
            if (!(act_F(c.element, u) == FVector(Q, target, c.lambda))) return false;
        }

        Quiver t = make_T();
        auto nkeys = enumerate_sink_paths(t, t.vertex("2"), 4);
        done = 0;
        while (done < 100) {
            NVector u(Q);
            for (const auto& k : nkeys)
                u.add_term(k, Scalar::from_integer(Q, static_cast<long>(rng() % 7) - 3));
            if (u.empty()) continue;
            ++done;
            const FinitePath& target = nkeys[rng() % nkeys.size()];
            Certificate c = generation_certificate_N(u, target);
            if (c.lambda.is_zero()) return false;
            if (!(act_N(c.element, u) == NVector(Q, target, c.lambda))) return false;
        }
        return true;
    });

    criterion(5, "50 random twist pairs classify by the quotient eigenvalue", [] {
        std::mt19937 rng(50505);
        Quiver r2 = make_R2();
        TailClass cls(arr(r2, "a"));
        for (int it = 0; it < 50; ++it) {
            ScalingVector a(r2, Q), b(r2, Q);
            for (int x = 0; x < r2.arrow_count(); ++x) {
                a.set(x, testutil::random_unit(rng, Q));
                b.set(x, testutil::random_unit(rng, Q));
            }
            bool stable = (a.at(r2.arrow("a")) / b.at(r2.arrow("a"))).is_one();
            TwistResult r = twist_iso(a, b, cls, 5);
            if (std::holds_alternative<TwistIso>(r) != stable) return false;
            if (stable) {
                if (!std::get<TwistIso>(r).hom_ok) return false;
            } else {
                const auto& d = std::get<TwistDistinguisher>(r);
                if (d.a_eigenvalue == d.b_eigenvalue) return false;
            }
        }
        return true;
    });

    criterion(6, "branching systems classify: canonical, swapped, duplicated", [] {
        Quiver a2 = make_A2();
        Quiver r1 = make_R1();
        FiniteBranchingSystem canonical = parse_bs(
            "bs { points: p q; 1: q; 2: p; a: [q]; sigma a: p -> q; }", a2);
        ClassifyResult rc = classify_bs(canonical, Q);
        if (!rc.irreducible || !rc.structure_maps_match) return false;
        if (!rc.target || !std::holds_alternative<SinkBS>(*rc.target)) return false;
        if (std::get<SinkBS>(*rc.target).sink != a2.vertex("2")) return false;

        FiniteBranchingSystem swap = parse_bs(
            "bs { points: s t; v: s t; x: [s t]; sigma x: s -> t t -> s; }", r1);
        ClassifyResult rs = classify_bs(swap, Q);
        if (rs.irreducible || !rs.witness || !rs.witness_proper) return false;

        FiniteBranchingSystem doubled = parse_bs(
            "bs { points: p1 q1 p2 q2; 1: q1 q2; 2: p1 p2; a: [q1 q2];"
            "  sigma a: p1 -> q1 p2 -> q2; }",
            a2);
        ClassifyResult rd = classify_bs(doubled, Q);
        return !rd.irreducible && rd.witness && rd.witness_proper;
    });

    criterion(7, "100 random faithfulness witnesses; hypothesis failure is reported", [] {
        std::mt19937 rng(70707);
        Quiver t = make_T();
        SpecialEdgeChoice sp(t);
        int done = 0;
        while (done < 100) {
            AlgebraElement u = testutil::random_element(rng, t, Q, 8, 4);
            if (reduce(u, sp).empty_support()) continue;
            ++done;
            WitnessReport w = faithfulness_witness(u, sp);
            if (!w.nonzero || w.result.empty()) return false;
        }
        Quiver r1 = make_R1();
        SpecialEdgeChoice spr(r1);
        try {
            faithfulness_witness(AlgebraElement::unit(r1, Q, 0), spr);
            return false;
        } catch (const HypothesisFailed&) {
            return true;
        }
    });

    criterion(8, "twisted witness lambda = 2 over the rationals; none exists over GF(2)", [] {
        Quiver r1 = make_R1();
        SpecialEdgeChoice sp(r1);
        AlgebraElement u = AlgebraElement::unit(r1, Q, 0) - iota(r1, Q, arr(r1, "x"));
        WitnessReport w = s_faithfulness_witness(u, sp);
        if (!w.nonzero || !w.lambda || !(*w.lambda == Scalar::from_integer(Q, 2)))
            return false;
        if (w.result.empty()) return false;

        FieldSpec g2 = FieldSpec::prime_field(2);
        AlgebraElement u2 =
            AlgebraElement::unit(r1, g2, 0) - iota(r1, g2, arr(r1, "x"));
        if (is_zero(u2, sp)) return false;
        try {
            s_faithfulness_witness(u2, sp);
            return false;
        } catch (const NoWitnessInFiniteField&) {
            return true;
        }
    });

    criterion(9, "500 random monomial pairs per quiver: products compose the actions", [] {
        std::mt19937 rng(90909);
        for (const Quiver& q : standard_quivers()) {
            FNVector w(Q);
            for (int s : q.sinks())
                for (const auto& p : enumerate_sink_paths(q, s, 3))
                    w.n.add_term(p, Scalar::one(Q));
            for (const auto& cls : all_classes(q))
                for (const auto& p : enumerate_class(cls, 2))
                    w.f.add_term(p, Scalar::one(Q));

            for (int it = 0; it < 500; ++it) {
                Monomial m1 = testutil::random_monomial(rng, q, 3);
                Monomial m2 = testutil::random_monomial(rng, q, 3);
                AlgebraElement e1 = AlgebraElement::monomial(q, m1, Scalar::one(Q));
                AlgebraElement e2 = AlgebraElement::monomial(q, m2, Scalar::one(Q));
                if (!(act_FN(e1, act_FN(e2, w)) == act_FN(e1 * e2, w))) return false;
            }
        }
        return true;
    });

    criterion(10, "line point at the head of A3 matches the left ideal exactly", [] {
        Quiver a3 = make_A3();
        SpecialEdgeChoice sp(a3);
        LinePointIso iso = line_point_iso(a3, a3.vertex("1"), Q, sp, 5);
        if (!iso.hom_ok || !iso.idempotent_identities) return false;
        AlgebraElement qel = iota(a3, Q, iso.connecting_path);
        return equals(qel * qel.star(), AlgebraElement::unit(a3, Q, a3.vertex("3")), sp) &&
               equals(qel.star() * qel, AlgebraElement::unit(a3, Q, a3.vertex("1")), sp);
    });

    return g_all_ok ? 0 : 1;
}
