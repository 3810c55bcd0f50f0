#pragma once

// Finite verification windows into the infinite bases, plus the defining
// relation set as pairs of algebra elements for executable checking.

#include <set>
#include <string>
#include <vector>

#include "lpa/representation.hpp"

namespace lpa {

// all tail-equivalence classes of the quiver (one per primitive cycle orbit)
inline std::vector<TailClass> all_classes(const Quiver& q) {
    std::set<TailClass> out;
    for (int v = 0; v < q.vertex_count(); ++v)
        for (const auto& c : enumerate_paths_from(q, v, q.vertex_count()))
            if (c.t() == v) out.insert(TailClass(c));
    return std::vector<TailClass>(out.begin(), out.end());
}

// basis window of F: every class, prefixes up to the bound
inline std::vector<EvInfPath> f_window(const Quiver& q, int prefix_bound) {
    std::vector<EvInfPath> out;
    for (const auto& cls : all_classes(q)) {
        auto w = enumerate_class(cls, prefix_bound);
        out.insert(out.end(), w.begin(), w.end());
    }
    return out;
}

// basis window of N: every sink, paths up to the bound
inline std::vector<FinitePath> n_window(const Quiver& q, int length_bound) {
    std::vector<FinitePath> out;
    for (int s : q.sinks()) {
        auto w = enumerate_sink_paths(q, s, length_bound);
        out.insert(out.end(), w.begin(), w.end());
    }
    return out;
}

struct Relation {
    std::string name;
    AlgebraElement lhs;
    AlgebraElement rhs;
};

// the defining relations (0)-(4) as element identities
inline std::vector<Relation> defining_relations(const Quiver& q, const FieldSpec& f) {
    std::vector<Relation> out;
    auto unit = [&](int v) { return AlgebraElement::unit(q, f, v); };
    auto arr = [&](int a) { return arrow_element(q, f, a); };
    auto arrs = [&](int a) { return arrow_star_element(q, f, a); };

    for (int i = 0; i < q.vertex_count(); ++i)
        for (int j = 0; j < q.vertex_count(); ++j) {
            AlgebraElement rhs =
                i == j ? unit(i) : AlgebraElement::zero(q, f);
            out.push_back({"(0) e_" + q.vertex_name(i) + " e_" + q.vertex_name(j),
                           unit(i) * unit(j), rhs});
        }
    for (int a = 0; a < q.arrow_count(); ++a) {
        const std::string& n = q.arrow_name(a);
        out.push_back({"(1) e_t " + n, unit(q.target(a)) * arr(a), arr(a)});
        out.push_back({"(1) " + n + " e_s", arr(a) * unit(q.source(a)), arr(a)});
        out.push_back({"(2) e_s " + n + "^*", unit(q.source(a)) * arrs(a), arrs(a)});
        out.push_back({"(2) " + n + "^* e_t", arrs(a) * unit(q.target(a)), arrs(a)});
    }
    for (int a = 0; a < q.arrow_count(); ++a)
        for (int b = 0; b < q.arrow_count(); ++b) {
            AlgebraElement rhs =
                a == b ? unit(q.target(a)) : AlgebraElement::zero(q, f);
            out.push_back({"(3) " + q.arrow_name(a) + " " + q.arrow_name(b) + "^*",
                           arr(a) * arrs(b), rhs});
        }
    for (int i : q.regular_vertices()) {
        AlgebraElement sum = AlgebraElement::zero(q, f);
        for (int a : q.out_arrows(i)) sum = sum + arrs(a) * arr(a);
        out.push_back({"(4) at " + q.vertex_name(i), sum, unit(i)});
    }
    return out;
}

// do lhs and rhs act identically on the given F and N windows?
inline bool relation_holds_on_windows(const Relation& r,
                                      const std::vector<EvInfPath>& fw,
                                      const std::vector<FinitePath>& nw,
                                      const FieldSpec& f) {
    for (const auto& w : fw) {
        FVector v(f, w, Scalar::one(f));
        if (!(act_F(r.lhs, v) == act_F(r.rhs, v))) return false;
    }
    for (const auto& w : nw) {
        NVector v(f, w, Scalar::one(f));
        if (!(act_N(r.lhs, v) == act_N(r.rhs, v))) return false;
    }
    return true;
}

}  // namespace lpa
