#pragma once

// Structural consequences of the module actions: linear-independence probe
// matrices, the constructive faithfulness search on F (+) N, the twisted-sum
// faithfulness search with its finite-field failure mode, and the Wedderburn
// decomposition of acyclic quiver algebras.

#include <algorithm>
#include <optional>
#include <variant>
#include <vector>

#include "lpa/representation.hpp"

namespace lpa {

// shortest path from v to some sink (BFS); nullopt if no sink is reachable
inline std::optional<FinitePath> shortest_sink_path(const Quiver& q, int v) {
    if (q.is_sink(v)) return FinitePath(q, v);
    std::map<int, std::pair<int, int>> parent;  // vertex -> (prev vertex, arrow)
    std::vector<int> queue{v};
    parent[v] = {-1, -1};
    for (size_t head = 0; head < queue.size(); ++head) {
        int u = queue[head];
        for (int a : q.out_arrows(u)) {
            int w = q.target(a);
            if (parent.count(w)) continue;
            parent[w] = {u, a};
            if (q.is_sink(w)) {
                std::vector<int> arrows;
                for (int x = w; x != v; x = parent[x].first)
                    arrows.push_back(parent[x].second);
                std::reverse(arrows.begin(), arrows.end());
                return FinitePath(q, arrows);
            }
            queue.push_back(w);
        }
    }
    return std::nullopt;
}

// extends q1 beyond its end into a sink path of N or a non-cyclic eventually
// periodic path of F; nullopt when t(q1) admits neither probe
inline std::optional<FNVector> extension_probe(const FieldSpec& f, const FinitePath& q1) {
    const Quiver& quiv = q1.quiver();
    int i = q1.t();
    if (auto p = shortest_sink_path(quiv, i)) {
        FNVector out(f);
        out.n.add_term(compose(*p, q1), Scalar::one(f));
        return out;
    }
    if (auto p = noncyclic_tail_witness(quiv, i)) {
        FNVector out(f);
        out.f.add_term(EvInfPath::make(compose(p->prefix(), q1), p->cycle()),
                       Scalar::one(f));
        return out;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// linear independence

struct FixedLengths {
    int m;
    int n;
};
struct SinkEnding {};
using IndependenceMode = std::variant<FixedLengths, SinkEnding>;

struct IndependenceReport {
    std::vector<FNVector> probes;
    std::vector<std::vector<Scalar>> matrix;  // rows: (probe, output key) pairs
    int rank = 0;
    bool full_rank = false;
};

inline int matrix_rank(std::vector<std::vector<Scalar>> m, const FieldSpec& f) {
    int rank = 0;
    size_t cols = m.empty() ? 0 : m[0].size();
    size_t row = 0;
    for (size_t col = 0; col < cols && row < m.size(); ++col) {
        size_t pivot = row;
        while (pivot < m.size() && m[pivot][col].is_zero()) ++pivot;
        if (pivot == m.size()) continue;
        std::swap(m[row], m[pivot]);
        Scalar inv = m[row][col].inverse();
        for (auto& x : m[row]) x = x * inv;
        for (size_t r = 0; r < m.size(); ++r) {
            if (r == row || m[r][col].is_zero()) continue;
            Scalar c = m[r][col];
            for (size_t k = 0; k < cols; ++k) m[r][k] = m[r][k] - m[row][k] * c;
        }
        ++row;
        ++rank;
    }
    (void)f;
    return rank;
}

inline IndependenceReport independence_witness(const std::vector<Monomial>& monos,
                                               const IndependenceMode& mode,
                                               const FieldSpec& f) {
    if (monos.empty()) throw ModeViolation("no monomials given");
    const Quiver& quiv = monos.front().quiver();
    for (size_t i = 0; i < monos.size(); ++i)
        for (size_t j = i + 1; j < monos.size(); ++j)
            if (monos[i] == monos[j])
                throw ModeViolation("monomials are not pairwise distinct: " +
                                    monos[i].str());

    std::vector<FNVector> probes;
    if (std::holds_alternative<FixedLengths>(mode)) {
        auto [m, n] = std::get<FixedLengths>(mode);
        std::set<FinitePath> qs;
        for (const auto& mo : monos) {
            if (mo.pstar().length() != m || mo.q().length() != n)
                throw ModeViolation("monomial " + mo.str() + " has lengths (" +
                                    std::to_string(mo.pstar().length()) + "," +
                                    std::to_string(mo.q().length()) +
                                    "), expected (" + std::to_string(m) + "," +
                                    std::to_string(n) + ")");
            qs.insert(mo.q());
        }
        for (const auto& q1 : qs) {
            auto p = extension_probe(f, q1);
            if (!p)
                throw NoProbeAvailable("vertex " + quiv.vertex_name(q1.t()) +
                                       " reaches no sink and has no non-cyclic tail");
            probes.push_back(*p);
        }
    } else {
        std::set<FinitePath> qs;
        for (const auto& mo : monos) {
            if (!quiv.is_sink(mo.q().t()))
                throw ModeViolation("monomial " + mo.str() + " does not end at a sink");
            qs.insert(mo.q());
        }
        for (const auto& q1 : qs) {
            FNVector p(f);
            p.n.add_term(q1, Scalar::one(f));
            probes.push_back(p);
        }
    }

    IndependenceReport rep;
    rep.probes = probes;
    for (const auto& probe : probes) {
        std::vector<FNVector> images;
        std::set<EvInfPath> fkeys;
        std::set<FinitePath> nkeys;
        for (const auto& mo : monos) {
            AlgebraElement el =
                AlgebraElement::monomial(quiv, mo, Scalar::one(f));
            FNVector img = act_FN(el, probe);
            for (const auto& [k, c] : img.f) fkeys.insert(k);
            for (const auto& [k, c] : img.n) nkeys.insert(k);
            images.push_back(std::move(img));
        }
        for (const auto& k : fkeys) {
            std::vector<Scalar> row;
            for (const auto& img : images) row.push_back(img.f.coefficient(k));
            rep.matrix.push_back(std::move(row));
        }
        for (const auto& k : nkeys) {
            std::vector<Scalar> row;
            for (const auto& img : images) row.push_back(img.n.coefficient(k));
            rep.matrix.push_back(std::move(row));
        }
    }
    rep.rank = matrix_rank(rep.matrix, f);
    rep.full_rank = rep.rank == static_cast<int>(monos.size());
    return rep;
}

// ---------------------------------------------------------------------------
// faithfulness witnesses

struct WitnessReport {
    AlgebraElement input;
    FNVector probe;
    FNVector result;
    std::optional<Scalar> lambda;  // twist parameter, when one was needed
    bool nonzero = false;
};

namespace detail {

// drives a nonzero reduced element down to the image of the path algebra by
// repeated left multiplication; returns the chained-down element
inline AlgebraElement kappa_descent(AlgebraElement v, const SpecialEdgeChoice& sp) {
    const Quiver& quiv = v.quiver();
    const FieldSpec& f = v.field();
    std::vector<int> arrows_by_name(quiv.arrow_count());
    for (int a = 0; a < quiv.arrow_count(); ++a) arrows_by_name[a] = a;
    std::sort(arrows_by_name.begin(), arrows_by_name.end(), [&](int x, int y) {
        return quiv.arrow_name(x) < quiv.arrow_name(y);
    });

    while (true) {
        int k = kappa_hat(v, sp);
        if (k == 0) return v;
        // restrict to the left vertex of a deepest term, then peel one arrow
        int j = -1;
        for (const auto& [m, c] : v.terms())
            if (m.pstar().length() == k) {
                j = m.pstar().s();
                break;
            }
        v = reduce(AlgebraElement::unit(quiv, f, j) * v, sp);
        bool found = false;
        for (int a : arrows_by_name) {
            AlgebraElement w = reduce(arrow_element(quiv, f, a) * v, sp);
            if (!w.empty_support()) {
                v = w;
                found = true;
                break;
            }
        }
        if (!found)
            throw std::logic_error("no arrow keeps the element nonzero at depth " +
                                   std::to_string(k));
        if (kappa_hat(v, sp) >= k)
            throw std::logic_error("depth did not decrease");
    }
}

// the shortest (then lexicographically least) path in the support of an
// element lying in the image of the path algebra
inline FinitePath shortest_support_path(const AlgebraElement& v) {
    const FinitePath* best = nullptr;
    for (const auto& [m, c] : v.terms()) {
        if (!m.pstar().trivial())
            throw std::logic_error("element is not in the path-algebra image");
        if (!best || m.q() < *best) best = &m.q();
    }
    if (!best) throw ZeroElement();
    return *best;
}

}  // namespace detail

inline WitnessReport faithfulness_witness(const AlgebraElement& u,
                                          const SpecialEdgeChoice& sp) {
    const Quiver& quiv = u.quiver();
    const FieldSpec& f = u.field();
    for (int v = 0; v < quiv.vertex_count(); ++v)
        if (!quiv.reaches_sink(v) && !has_noncyclic_tail(quiv, v))
            throw HypothesisFailed(quiv.vertex_name(v));

    AlgebraElement r = reduce(u, sp);
    if (r.empty_support()) throw ZeroElement();
    r = reduce(AlgebraElement::unit(quiv, f, local_units(r).left_vertex) * r, sp);
    AlgebraElement v = detail::kappa_descent(r, sp);
    FinitePath q1 = detail::shortest_support_path(v);
    auto probe = extension_probe(f, q1);
    if (!probe)
        throw NoProbeAvailable("vertex " + quiv.vertex_name(q1.t()) +
                               " admits neither probe");
    FNVector result = act_FN(u, *probe);
    if (result.empty()) throw std::logic_error("faithfulness probe evaluated to zero");
    return {u, *probe, result, std::nullopt, true};
}

inline WitnessReport s_faithfulness_witness(const AlgebraElement& u,
                                            const SpecialEdgeChoice& sp) {
    const Quiver& quiv = u.quiver();
    const FieldSpec& f = u.field();
    for (int v = 0; v < quiv.vertex_count(); ++v)
        if (!quiv.reaches_sink(v) && !has_noncyclic_tail(quiv, v) &&
            !any_infinite_path_from(quiv, v))
            throw HypothesisFailed(quiv.vertex_name(v));

    AlgebraElement r = reduce(u, sp);
    if (r.empty_support()) throw ZeroElement();
    r = reduce(AlgebraElement::unit(quiv, f, local_units(r).left_vertex) * r, sp);
    AlgebraElement v = detail::kappa_descent(r, sp);
    FinitePath q1 = detail::shortest_support_path(v);
    int i = q1.t();

    if (quiv.reaches_sink(i) || has_noncyclic_tail(quiv, i)) {
        // the untwisted probes already apply
        auto probe = extension_probe(f, q1);
        FNVector result = act_FN(u, *probe);
        if (result.empty()) throw std::logic_error("probe evaluated to zero");
        return {u, *probe, result, Scalar::one(f), true};
    }

    // purely cyclic end: twist a cycle through t(q1) and search the scaling
    auto p = any_infinite_path_from(quiv, i);
    if (!p || !p->cyclic())
        throw NoProbeAvailable("no cyclic path at " + quiv.vertex_name(i));
    TailClass cls(*p);
    EvInfPath target = *p;
    EvInfPath probe_path =
        EvInfPath::make(compose(target.prefix(), q1), target.cycle());
    FVector probe_f(f, probe_path, Scalar::one(f));

    int maxlen = 0;
    for (const auto& [m, c] : v.terms()) maxlen = std::max(maxlen, m.q().length());
    std::optional<Scalar> found;
    unsigned long limit = f.finite() ? f.p : static_cast<unsigned long>(maxlen) + 2;
    for (const Scalar& lam : Scalar::units(f, limit)) {
        ScalingVector a = lambda_twist(cls, lam);
        FVector res = act_F(v, probe_f, &a);
        if (!res.coefficient(target).is_zero()) {
            found = lam;
            break;
        }
    }
    if (!found) {
        if (f.finite()) throw NoWitnessInFiniteField();
        throw std::logic_error("scaling search exhausted over the rationals");
    }

    ScalingVector a = lambda_twist(cls, *found);
    FNVector probe(f);
    probe.f = probe_f;
    FNVector result(f);
    result.f = act_F(u, probe_f, &a);
    result.n = act_N(u, probe.n);
    if (result.empty()) throw std::logic_error("twisted probe evaluated to zero");
    return {u, probe, result, found, true};
}

// ---------------------------------------------------------------------------
// Wedderburn decomposition for acyclic quivers

struct WedderburnBlock {
    int sink;
    std::vector<FinitePath> paths;  // the n_i paths into the sink
};

struct WedderburnData {
    std::vector<WedderburnBlock> blocks;
    long dim = 0;                     // sum of n_i^2
    long reduced_basis_count = 0;     // reduced monomials over the whole quiver
    bool multiplication_ok = false;   // sink monomials multiply like matrix units
    bool dimension_ok = false;        // reduced_basis_count == dim
};

inline WedderburnData wedderburn(const Quiver& q, const FieldSpec& f,
                                 const SpecialEdgeChoice& sp) {
    if (q.has_cycle()) throw NotAcyclic(q.name() + " has a cycle");
    WedderburnData out;
    for (int s : q.sinks()) {
        WedderburnBlock b{s, enumerate_sink_paths(q, s, q.vertex_count())};
        out.dim += static_cast<long>(b.paths.size()) * static_cast<long>(b.paths.size());
        out.blocks.push_back(std::move(b));
    }

    // matrix-unit multiplication, exhaustively over all pairs of sink
    // monomials (across blocks too, where the product must vanish)
    out.multiplication_ok = true;
    std::vector<Monomial> units;
    for (const auto& b : out.blocks)
        for (const auto& p : b.paths)
            for (const auto& qq : b.paths) units.emplace_back(p, qq);
    for (const auto& m1 : units)
        for (const auto& m2 : units) {
            auto prod = mono_mul(m1, m2);
            bool match = m1.q() == m2.pstar();
            if (match) {
                if (!prod || !(*prod == Monomial(m1.pstar(), m2.q())))
                    out.multiplication_ok = false;
            } else if (prod) {
                out.multiplication_ok = false;
            }
        }

    // total dimension: monomials (p, q) with t(p) = t(q) surviving the rewrite
    long count = 0;
    std::vector<FinitePath> all_paths;
    for (int v = 0; v < q.vertex_count(); ++v) {
        all_paths.emplace_back(q, v);
        for (const auto& p : enumerate_paths_from(q, v, q.vertex_count()))
            all_paths.push_back(p);
    }
    for (const auto& p : all_paths)
        for (const auto& qq : all_paths)
            if (p.t() == qq.t() && !detail::reducible(Monomial(p, qq), sp)) ++count;
    out.reduced_basis_count = count;
    out.dimension_ok = count == out.dim;
    (void)f;
    return out;
}

}  // namespace lpa
