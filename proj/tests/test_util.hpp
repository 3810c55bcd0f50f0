#pragma once

// Shared fixtures for the test suites: the five standard quivers and seeded
// random generators for paths, monomials and elements.

#include <random>

#include "lpa/parse.hpp"
#include "lpa/structure.hpp"
#include "lpa/window.hpp"

namespace testutil {

using namespace lpa;

inline Quiver make_R1() {
    Quiver q("R1");
    q.add_vertex("v");
    q.add_arrow("x", "v", "v");
    return q;
}

inline Quiver make_R2() {
    Quiver q("R2");
    q.add_vertex("v");
    q.add_arrow("a", "v", "v");
    q.add_arrow("b", "v", "v");
    return q;
}

inline Quiver make_A2() {
    Quiver q("A2");
    q.add_vertex("1");
    q.add_vertex("2");
    q.add_arrow("a", "1", "2");
    return q;
}

inline Quiver make_A3() {
    Quiver q("A3");
    q.add_vertex("1");
    q.add_vertex("2");
    q.add_vertex("3");
    q.add_arrow("a", "1", "2");
    q.add_arrow("b", "2", "3");
    return q;
}

// Toeplitz: loop at 1 with an exit to the sink 2
inline Quiver make_T() {
    Quiver q("T");
    q.add_vertex("1");
    q.add_vertex("2");
    q.add_arrow("x", "1", "1");
    q.add_arrow("f", "1", "2");
    return q;
}

inline FinitePath random_path(std::mt19937& rng, const Quiver& q, int start, int len) {
    std::vector<int> arrows;
    int cur = start;
    for (int i = 0; i < len; ++i) {
        const auto& out = q.out_arrows(cur);
        if (out.empty()) break;
        int a = out[rng() % out.size()];
        arrows.push_back(a);
        cur = q.target(a);
    }
    return arrows.empty() ? FinitePath(q, start) : FinitePath(q, arrows);
}

inline Monomial random_monomial(std::mt19937& rng, const Quiver& q, int maxlen) {
    while (true) {
        int v = static_cast<int>(rng() % q.vertex_count());
        FinitePath qq = random_path(rng, q, v, static_cast<int>(rng() % (maxlen + 1)));
        for (int tries = 0; tries < 64; ++tries) {
            int w = static_cast<int>(rng() % q.vertex_count());
            FinitePath pp =
                random_path(rng, q, w, static_cast<int>(rng() % (maxlen + 1)));
            if (pp.t() == qq.t()) return Monomial(pp, qq);
        }
    }
}

inline AlgebraElement random_element(std::mt19937& rng, const Quiver& q,
                                     const FieldSpec& f, int max_terms, int maxlen) {
    AlgebraElement u(q, f);
    int terms = 1 + static_cast<int>(rng() % max_terms);
    for (int i = 0; i < terms; ++i) {
        long c = static_cast<long>(rng() % 9) - 4;
        u.add_term(random_monomial(rng, q, maxlen), Scalar::from_integer(f, c));
    }
    return u;
}

inline Scalar random_unit(std::mt19937& rng, const FieldSpec& f) {
    if (f.finite()) return Scalar::from_integer(f, 1 + static_cast<long>(rng() % (f.p - 1)));
    long num = 1 + static_cast<long>(rng() % 9);
    long den = 1 + static_cast<long>(rng() % 9);
    Scalar s = Scalar::from_fraction(f, num, den);
    return (rng() % 2) ? s : -s;
}

}  // namespace testutil
