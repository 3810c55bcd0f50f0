#pragma once

// Eventually periodic left-infinite paths in canonical (minimal prefix,
// primitive cycle) form, truncations, tail-equivalence classes, and the
// vertex-level structure queries built on them.

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lpa/quiver.hpp"

namespace lpa {

class EvInfPath {
public:
    // Canonicalizes a raw (prefix, cycle) pair: the cycle is replaced by its
    // primitive root, then while the prefix's final traversed arrow equals
    // the cycle's final traversed arrow, that arrow is absorbed and the cycle
    // rotated (final arrow moved to the front). The arrow sequence is
    // unchanged by either step.
    static EvInfPath make(FinitePath prefix, FinitePath cycle) {
        const Quiver& q = cycle.quiver();
        if (cycle.trivial())
            throw NotComposable("cycle must be nontrivial");
        if (cycle.s() != cycle.t())
            throw NotComposable("cycle " + cycle.str() + " is not closed");
        if (prefix.t() != cycle.s())
            throw NotComposable("prefix " + prefix.str() + " does not end at the cycle base");

        cycle = primitive_root(cycle);
        std::vector<int> w = prefix.arrows();
        std::vector<int> c = cycle.arrows();
        while (!w.empty() && w.back() == c.back()) {
            w.pop_back();
            std::rotate(c.rbegin(), c.rbegin() + 1, c.rend());
        }
        FinitePath cyc(q, c);
        FinitePath pre = w.empty() ? FinitePath(q, cyc.s()) : FinitePath(q, w);
        return EvInfPath(pre, cyc);
    }

    static EvInfPath pure(FinitePath cycle) {
        return make(FinitePath(cycle.quiver(), cycle.s()), std::move(cycle));
    }

    const Quiver& quiver() const { return cycle_.quiver(); }
    const FinitePath& prefix() const { return prefix_; }
    const FinitePath& cycle() const { return cycle_; }

    int s() const { return prefix_.trivial() ? cycle_.s() : prefix_.s(); }
    bool cyclic() const { return prefix_.trivial(); }

    // 0-based traversal position
    int arrow_at(int n) const {
        if (n < prefix_.length()) return prefix_.arrow_at(n);
        return cycle_.arrow_at((n - prefix_.length()) % cycle_.length());
    }

    FinitePath truncate_le(int n) const {
        if (n <= 0) return FinitePath(quiver(), s());
        std::vector<int> a;
        a.reserve(n);
        for (int i = 0; i < n; ++i) a.push_back(arrow_at(i));
        return FinitePath(quiver(), std::move(a));
    }

    EvInfPath truncate_gt(int n) const {
        if (n <= 0) return *this;
        if (n <= prefix_.length()) return make(prefix_.drop(n), cycle_);
        int r = (n - prefix_.length()) % cycle_.length();
        std::vector<int> c = cycle_.arrows();
        std::rotate(c.begin(), c.begin() + r, c.end());
        return pure(FinitePath(quiver(), std::move(c)));
    }

    // p alpha: the path that traverses alpha first; requires t(alpha) = s(p)
    EvInfPath append(int arrow) const {
        const Quiver& q = quiver();
        if (q.target(arrow) != s())
            throw NotComposable("arrow " + q.arrow_name(arrow) + " does not reach " +
                                q.vertex_name(s()));
        std::vector<int> w{arrow};
        w.insert(w.end(), prefix_.arrows().begin(), prefix_.arrows().end());
        return make(FinitePath(q, std::move(w)), cycle_);
    }

    bool operator==(const EvInfPath& o) const {
        return prefix_ == o.prefix_ && cycle_ == o.cycle_;
    }
    bool operator!=(const EvInfPath& o) const { return !(*this == o); }

    bool operator<(const EvInfPath& o) const {
        if (!(cycle_ == o.cycle_)) return cycle_ < o.cycle_;
        return prefix_ < o.prefix_;
    }

    std::string str() const {
        std::string out = "(" + cycle_.str() + ")^inf";
        if (!prefix_.trivial()) out += "." + prefix_.str();
        return out;
    }

    static FinitePath primitive_root(const FinitePath& cycle) {
        const auto& a = cycle.arrows();
        int n = cycle.length();
        for (int d = 1; d <= n; ++d) {
            if (n % d != 0) continue;
            bool periodic = true;
            for (int i = d; i < n && periodic; ++i)
                if (a[i] != a[i - d]) periodic = false;
            if (periodic)
                return FinitePath(cycle.quiver(),
                                  std::vector<int>(a.begin(), a.begin() + d));
        }
        return cycle;  // unreachable
    }

private:
    EvInfPath(FinitePath prefix, FinitePath cycle)
        : prefix_(std::move(prefix)), cycle_(std::move(cycle)) {}

    FinitePath prefix_;
    FinitePath cycle_;
};

// A tail-equivalence class of rational left-infinite paths, represented by
// the lexicographically least rotation (by arrow identifier) of the
// primitive cycle.
class TailClass {
public:
    explicit TailClass(const EvInfPath& p) : rep_(least_rotation(p.cycle())) {}
    explicit TailClass(const FinitePath& cycle)
        : rep_(least_rotation(EvInfPath::primitive_root(cycle))) {}

    const FinitePath& representative_cycle() const { return rep_; }
    const Quiver& quiver() const { return rep_.quiver(); }

    bool operator==(const TailClass& o) const { return rep_ == o.rep_; }
    bool operator!=(const TailClass& o) const { return !(*this == o); }
    bool operator<(const TailClass& o) const { return rep_ < o.rep_; }

    std::string str() const { return "[(" + rep_.str() + ")^inf]"; }

private:
    static FinitePath least_rotation(const FinitePath& cycle) {
        const Quiver& q = cycle.quiver();
        std::vector<int> best = cycle.arrows();
        std::vector<int> cur = cycle.arrows();
        auto names = [&](const std::vector<int>& v) {
            std::vector<std::string> n;
            for (int a : v) n.push_back(q.arrow_name(a));
            return n;
        };
        for (int i = 1; i < cycle.length(); ++i) {
            std::rotate(cur.begin(), cur.begin() + 1, cur.end());
            if (names(cur) < names(best)) best = cur;
        }
        return FinitePath(q, best);
    }

    FinitePath rep_;
};

inline TailClass class_of(const EvInfPath& p) { return TailClass(p); }

inline bool tail_equivalent(const EvInfPath& p, const EvInfPath& q) {
    return TailClass(p) == TailClass(q);
}

// all paths w with t(w) = v and 1 <= l(w) <= bound
inline std::vector<FinitePath> enumerate_paths_into(const Quiver& q, int v, int bound) {
    std::vector<FinitePath> out;
    std::vector<FinitePath> frontier{FinitePath(q, v)};
    for (int len = 1; len <= bound; ++len) {
        std::vector<FinitePath> next;
        for (const auto& p : frontier)
            for (int a = 0; a < q.arrow_count(); ++a)
                if (q.target(a) == p.s()) {
                    std::vector<int> arrows{a};
                    arrows.insert(arrows.end(), p.arrows().begin(), p.arrows().end());
                    next.emplace_back(q, std::move(arrows));
                }
        out.insert(out.end(), next.begin(), next.end());
        frontier = std::move(next);
        if (frontier.empty()) break;
    }
    return out;
}

// all canonical paths in the class whose prefix has length <= prefix_bound,
// in deterministic order
inline std::vector<EvInfPath> enumerate_class(const TailClass& cls, int prefix_bound) {
    const Quiver& q = cls.quiver();
    const FinitePath& rep = cls.representative_cycle();
    std::set<EvInfPath> seen;
    std::vector<int> cur = rep.arrows();
    for (int r = 0; r < rep.length(); ++r) {
        FinitePath rot(q, cur);
        seen.insert(EvInfPath::pure(rot));
        for (const auto& w : enumerate_paths_into(q, rot.s(), prefix_bound)) {
            EvInfPath p = EvInfPath::make(w, rot);
            if (p.prefix().length() <= prefix_bound) seen.insert(p);
        }
        std::rotate(cur.begin(), cur.begin() + 1, cur.end());
    }
    return std::vector<EvInfPath>(seen.begin(), seen.end());
}

struct LinePoint {
    int vertex;
    int end;  // the sink the unique path from `vertex` terminates at
};

// linear vertices all of whose successors are linear; on a finite quiver
// every line point is finite and ends at a sink
inline std::vector<LinePoint> line_points(const Quiver& q) {
    auto linear = [&](int v) { return q.out_arrows(v).size() <= 1 && !q.on_cycle(v); };
    std::vector<LinePoint> out;
    for (int v = 0; v < q.vertex_count(); ++v) {
        bool ok = true;
        for (int u : q.reachable_from(v))
            if (!linear(u)) { ok = false; break; }
        if (!ok) continue;
        int u = v;
        int steps = 0;
        while (!q.is_sink(u)) {
            u = q.target(q.out_arrows(u)[0]);
            if (++steps > q.vertex_count())
                throw std::logic_error("line point without a finite end");
        }
        out.push_back({v, u});
    }
    return out;
}

// the unique path from a finite line point to its end
inline FinitePath line_point_path(const Quiver& q, int v) {
    for (const auto& lp : line_points(q))
        if (lp.vertex == v) {
            std::vector<int> arrows;
            int u = v;
            while (!q.is_sink(u)) {
                arrows.push_back(q.out_arrows(u)[0]);
                u = q.target(arrows.back());
            }
            return arrows.empty() ? FinitePath(q, v) : FinitePath(q, arrows);
        }
    throw NotALinePoint(q.vertex_name(v) + " is not a line point");
}

// Is there a non-cyclic eventually periodic left-infinite path starting at i?
// Decided by explicit search over (path into cycle, cycle) pairs up to length
// |Q_1| * |Q_0|, canonicalizing each candidate.
inline bool has_noncyclic_tail(const Quiver& q, int i) {
    int bound = q.vertex_count() * q.arrow_count();
    std::vector<FinitePath> starts{FinitePath(q, i)};
    auto from_i = enumerate_paths_from(q, i, bound);
    starts.insert(starts.end(), from_i.begin(), from_i.end());
    for (const auto& w : starts) {
        int v = w.t();
        for (const auto& c : enumerate_paths_from(q, v, bound)) {
            if (c.t() != v) continue;
            EvInfPath p = EvInfPath::make(w, c);
            if (!p.cyclic()) return true;
        }
    }
    return false;
}

// first witness found by the same search, if any
inline std::optional<EvInfPath> noncyclic_tail_witness(const Quiver& q, int i) {
    int bound = q.vertex_count() * q.arrow_count();
    std::vector<FinitePath> starts{FinitePath(q, i)};
    auto from_i = enumerate_paths_from(q, i, bound);
    starts.insert(starts.end(), from_i.begin(), from_i.end());
    for (const auto& w : starts) {
        int v = w.t();
        for (const auto& c : enumerate_paths_from(q, v, bound)) {
            if (c.t() != v) continue;
            EvInfPath p = EvInfPath::make(w, c);
            if (!p.cyclic()) return p;
        }
    }
    return std::nullopt;
}

// some eventually periodic left-infinite path starting at i, if any
inline std::optional<EvInfPath> any_infinite_path_from(const Quiver& q, int i) {
    int bound = q.vertex_count() + 1;
    std::vector<FinitePath> starts{FinitePath(q, i)};
    auto from_i = enumerate_paths_from(q, i, bound);
    starts.insert(starts.end(), from_i.begin(), from_i.end());
    for (const auto& w : starts) {
        int v = w.t();
        for (const auto& c : enumerate_paths_from(q, v, q.vertex_count())) {
            if (c.t() != v) continue;
            return EvInfPath::make(w, c);
        }
    }
    return std::nullopt;
}

}  // namespace lpa
