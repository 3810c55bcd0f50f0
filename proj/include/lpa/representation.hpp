#pragma once

// The module actions: F on eventually periodic left-infinite paths, N on
// sink-ending finite paths, left ideals L_k(Q)e_i, twisted variants under the
// scaling action, constructive irreducibility certificates, and a generic
// window-level homomorphism checker.

#include <functional>
#include <map>
#include <optional>
#include <variant>
#include <vector>

#include "lpa/algebra.hpp"

namespace lpa {

using FVector = LinComb<EvInfPath>;
using NVector = LinComb<FinitePath>;

// F and N side by side; the faithfulness probes live here
struct FNVector {
    FVector f;
    NVector n;

    explicit FNVector(const FieldSpec& fld) : f(fld), n(fld) {}
    FNVector(FVector fv, NVector nv) : f(std::move(fv)), n(std::move(nv)) {}

    bool empty() const { return f.empty() && n.empty(); }
    FNVector operator+(const FNVector& o) const { return {f + o.f, n + o.n}; }
    FNVector scaled(const Scalar& s) const { return {f.scaled(s), n.scaled(s)}; }
    bool operator==(const FNVector& o) const { return f == o.f && n == o.n; }
};

// element of the left ideal L_k(Q)e_i, kept in reduced form
struct LeftIdealVector {
    AlgebraElement value;
    int base;
};

namespace detail {

// monomial action on a left-infinite basis path: strip q, then append p
inline std::optional<EvInfPath> act_mono_inf(const Monomial& m, const EvInfPath& w) {
    int lq = m.q().length();
    if (!(w.truncate_le(lq) == m.q())) return std::nullopt;
    EvInfPath w1 = w.truncate_gt(lq);
    const FinitePath& p = m.pstar();
    if (p.trivial()) return w1;
    return EvInfPath::make(compose(w1.prefix(), p), w1.cycle());
}

// monomial action on a sink-ending basis path
inline std::optional<FinitePath> act_mono_sink(const Monomial& m, const FinitePath& w) {
    int lq = m.q().length();
    if (w.length() < lq) return std::nullopt;
    if (!(w.take(lq) == m.q())) return std::nullopt;
    FinitePath w1 = w.drop(lq);
    return compose(w1, m.pstar());
}

}  // namespace detail

inline FVector act_F(const AlgebraElement& u, const FVector& v,
                     const ScalingVector* twist = nullptr) {
    if (u.field() != v.field())
        throw FieldMismatch("element and vector over different fields");
    const AlgebraElement uu = twist ? gamma(*twist, u) : u;
    FVector out(v.field());
    for (const auto& [m, c] : uu.terms())
        for (const auto& [w, d] : v)
            if (auto key = detail::act_mono_inf(m, w)) out.add_term(*key, c * d);
    return out;
}

inline NVector act_N(const AlgebraElement& u, const NVector& v) {
    if (u.field() != v.field())
        throw FieldMismatch("element and vector over different fields");
    NVector out(v.field());
    for (const auto& [m, c] : u.terms())
        for (const auto& [w, d] : v)
            if (auto key = detail::act_mono_sink(m, w)) out.add_term(*key, c * d);
    return out;
}

inline FNVector act_FN(const AlgebraElement& u, const FNVector& v,
                       const ScalingVector* twist = nullptr) {
    return {act_F(u, v.f, twist), act_N(u, v.n)};
}

inline LeftIdealVector act_left_ideal(const AlgebraElement& u, const LeftIdealVector& x,
                                      const SpecialEdgeChoice& sp) {
    return {reduce(u * x.value, sp), x.base};
}

inline std::map<TailClass, FVector> split_components(const FVector& v) {
    std::map<TailClass, FVector> out;
    for (const auto& [k, c] : v) {
        auto cls = TailClass(k);
        auto it = out.find(cls);
        if (it == out.end()) it = out.emplace(cls, FVector(v.field())).first;
        it->second.add_term(k, c);
    }
    return out;
}

inline std::map<int, NVector> split_components(const NVector& v) {
    std::map<int, NVector> out;
    for (const auto& [k, c] : v) {
        auto it = out.find(k.t());
        if (it == out.end()) it = out.emplace(k.t(), NVector(v.field())).first;
        it->second.add_term(k, c);
    }
    return out;
}

// the generators e_i, alpha, alpha^* as algebra elements
inline std::vector<AlgebraElement> all_generators(const Quiver& q, const FieldSpec& f) {
    std::vector<AlgebraElement> out;
    for (int v = 0; v < q.vertex_count(); ++v) out.push_back(AlgebraElement::unit(q, f, v));
    for (int a = 0; a < q.arrow_count(); ++a) {
        out.push_back(arrow_element(q, f, a));
        out.push_back(arrow_star_element(q, f, a));
    }
    return out;
}

// Checks phi(g.w) = g.phi(w) for every generator g and window basis element w.
// phi must be total on every basis key reached from the window in one
// generator step; a partial phi signals WindowNotClosed itself.
template <class SrcKey, class TgtVec, class ActSrc, class Phi, class ActTgt>
bool hom_check(const std::vector<AlgebraElement>& generators,
               const std::vector<SrcKey>& window, ActSrc&& act_src, Phi&& phi,
               ActTgt&& act_tgt, const TgtVec& zero) {
    for (const auto& g : generators)
        for (const auto& w : window) {
            LinComb<SrcKey> moved = act_src(g, w);
            TgtVec lhs = zero;
            for (const auto& [k, c] : moved) lhs = lhs + phi(k).scaled(c);
            TgtVec rhs = act_tgt(g, phi(w));
            if (!(lhs == rhs)) return false;
        }
    return true;
}

struct Certificate {
    AlgebraElement element;
    Scalar lambda;
};

// Drives a nonzero in-class vector u onto lambda * target: truncate deep
// enough to isolate one support path, shift onto a common tail, then climb
// back up with starred truncations.
inline Certificate generation_certificate_F(const FVector& u, const EvInfPath& target) {
    if (u.empty()) throw EmptySupport();
    const Quiver& quiv = target.quiver();
    const FieldSpec& f = u.field();
    TailClass cls(target);
    for (const auto& [k, c] : u)
        if (TailClass(k) != cls)
            throw ClassMismatch(k.str() + " is not tail-equivalent to " + target.str());

    // least n with pairwise distinct truncations of the support
    std::vector<EvInfPath> keys;
    for (const auto& [k, c] : u) keys.push_back(k);
    int n = 0;
    for (bool distinct = false; !distinct; ++n) {
        distinct = true;
        for (size_t i = 0; i < keys.size() && distinct; ++i)
            for (size_t j = i + 1; j < keys.size() && distinct; ++j)
                if (keys[i].truncate_le(n) == keys[j].truncate_le(n)) distinct = false;
        if (distinct) break;
        if (n > 4096) throw std::logic_error("support truncations never separate");
    }

    const EvInfPath& p1 = keys.front();
    Scalar lambda = u.coefficient(p1);
    EvInfPath p0 = p1.truncate_gt(n);

    // align a tail of target with a tail of p0
    int rmax = target.prefix().length() + target.cycle().length();
    int smax = p0.prefix().length() + p0.cycle().length();
    int r = -1, s = -1;
    for (int ri = 0; ri <= rmax && r < 0; ++ri)
        for (int si = 0; si <= smax; ++si)
            if (target.truncate_gt(ri) == p0.truncate_gt(si)) {
                r = ri;
                s = si;
                break;
            }
    if (r < 0) throw std::logic_error("tail alignment failed inside one class");

    AlgebraElement a = iota_star(quiv, f, target.truncate_le(r)) *
                       iota(quiv, f, p0.truncate_le(s)) *
                       iota(quiv, f, p1.truncate_le(n));
    return {a, lambda};
}

inline Certificate generation_certificate_N(const NVector& u, const FinitePath& target) {
    if (u.empty()) throw EmptySupport();
    const Quiver& quiv = target.quiver();
    const FieldSpec& f = u.field();
    if (!quiv.is_sink(target.t()))
        throw SinkMismatch("target " + target.str() + " does not end at a sink");
    for (const auto& [k, c] : u)
        if (k.t() != target.t())
            throw SinkMismatch(k.str() + " does not end at sink " +
                               quiv.vertex_name(target.t()));

    // longest support path, lexicographically least among maximal ones;
    // map order is (length, arrow names), so scan the final length group
    int maxlen = 0;
    for (const auto& [k, c] : u) maxlen = std::max(maxlen, k.length());
    const FinitePath* p1 = nullptr;
    for (const auto& [k, c] : u)
        if (k.length() == maxlen) {
            p1 = &k;
            break;
        }

    AlgebraElement a = iota_star(quiv, f, target) * iota(quiv, f, *p1);
    return {a, u.coefficient(*p1)};
}

// the twist that scales the designated first arrow of the class cycle
inline ScalingVector lambda_twist(const TailClass& cls, const Scalar& lambda) {
    const Quiver& q = cls.quiver();
    ScalingVector a(q, lambda.field());
    a.set(cls.representative_cycle().arrow_at(0), lambda);
    return a;
}

// the eigenvalue of the class cycle acting on its pure cyclic path in F^a
inline Scalar twist_eigenvalue(const ScalingVector& a, const TailClass& cls) {
    return a.of_path(cls.representative_cycle());
}

struct TwistIso {
    std::map<EvInfPath, Scalar> theta;
    bool hom_ok;
};

struct TwistDistinguisher {
    Scalar a_eigenvalue;
    Scalar b_eigenvalue;
};

using TwistResult = std::variant<TwistIso, TwistDistinguisher>;

// theta(p) for the isomorphism F^{c^-1} -> F^1 (equivalently F^b -> F^a with
// c = a b^-1 q-stable): invert the scaling along the shortest truncation
// reaching the pure class cycle
inline Scalar twist_theta(const ScalingVector& c, const TailClass& cls,
                          const EvInfPath& p) {
    EvInfPath pure = EvInfPath::pure(cls.representative_cycle());
    int n0 = 0;
    int cap = p.prefix().length() + p.cycle().length() + 1;
    while (!(p.truncate_gt(n0) == pure)) {
        ++n0;
        if (n0 > cap) throw ClassMismatch(p.str() + " is not in " + cls.str());
    }
    return c.of_path(p.truncate_le(n0)).inverse();
}

inline TwistResult twist_iso(const ScalingVector& a, const ScalingVector& b,
                             const TailClass& cls, int window_bound) {
    Scalar aq = twist_eigenvalue(a, cls);
    Scalar bq = twist_eigenvalue(b, cls);
    ScalingVector c = a * b.inverse();
    if (!twist_eigenvalue(c, cls).is_one()) return TwistDistinguisher{aq, bq};

    auto window = enumerate_class(cls, window_bound);
    TwistIso iso;
    for (const auto& p : window) iso.theta.emplace(p, twist_theta(c, cls, p));

    const Quiver& quiv = cls.quiver();
    const FieldSpec& f = a.field();
    auto gens = all_generators(quiv, f);
    // the map p -> theta(p) p is an isomorphism F^b -> F^a
    auto act_src = [&](const AlgebraElement& g, const EvInfPath& w) {
        return act_F(g, FVector(f, w, Scalar::one(f)), &b);
    };
    auto phi = [&](const EvInfPath& w) {
        return FVector(f, w, twist_theta(c, cls, w));
    };
    auto act_tgt = [&](const AlgebraElement& g, const FVector& v) {
        return act_F(g, v, &a);
    };
    iso.hom_ok = hom_check(gens, window, act_src, phi, act_tgt, FVector(f));
    return iso;
}

struct LinePointIso {
    int vertex;
    int end;
    FinitePath connecting_path;  // vertex -> end
    bool idempotent_identities;  // qq^* = e_end and q^*q = e_vertex after reduce
    bool hom_ok;
};

// N_{end} -> L_k(Q) e_vertex, p -> reduce(p^* q)
inline LinePointIso line_point_iso(const Quiver& quiv, int vertex, const FieldSpec& f,
                                   const SpecialEdgeChoice& sp, int window_bound) {
    FinitePath q = line_point_path(quiv, vertex);
    int end = q.t();
    AlgebraElement qel = iota(quiv, f, q);
    bool idem =
        equals(qel * qel.star(), AlgebraElement::unit(quiv, f, end), sp) &&
        equals(qel.star() * qel, AlgebraElement::unit(quiv, f, vertex), sp);

    auto window = enumerate_sink_paths(quiv, end, window_bound);
    auto gens = all_generators(quiv, f);
    auto act_src = [&](const AlgebraElement& g, const FinitePath& w) {
        return act_N(g, NVector(f, w, Scalar::one(f)));
    };
    auto phi = [&](const FinitePath& w) {
        return reduce(AlgebraElement::monomial(quiv, Monomial(w, q), Scalar::one(f)), sp);
    };
    auto act_tgt = [&](const AlgebraElement& g, const AlgebraElement& v) {
        return reduce(g * v, sp);
    };
    bool hom = hom_check(gens, window, act_src, phi, act_tgt,
                         AlgebraElement::zero(quiv, f));
    return {vertex, end, q, idem, hom};
}

}  // namespace lpa
