#pragma once

// Finite quivers and finite paths. Paths are stored in traversal order
// (first traversed arrow first) and displayed right to left, so the path
// that traverses a then b prints as "b.a".

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "lpa/errors.hpp"

namespace lpa {

class Quiver {
public:
    struct Arrow {
        std::string name;
        int src;
        int tgt;
    };

    explicit Quiver(std::string name = "Q") : name_(std::move(name)) {}

    int add_vertex(const std::string& v) {
        if (vertex_ids_.count(v))
            throw std::invalid_argument("duplicate vertex: " + v);
        int id = static_cast<int>(vertices_.size());
        vertices_.push_back(v);
        vertex_ids_[v] = id;
        out_.emplace_back();
        return id;
    }

    int add_arrow(const std::string& a, const std::string& src, const std::string& tgt) {
        if (arrow_ids_.count(a))
            throw std::invalid_argument("duplicate arrow: " + a);
        if (vertex_ids_.count(a))
            throw std::invalid_argument("arrow name collides with vertex: " + a);
        int id = static_cast<int>(arrows_.size());
        arrows_.push_back({a, vertex(src), vertex(tgt)});
        arrow_ids_[a] = id;
        out_[arrows_[id].src].push_back(id);
        // keep out-lists lexicographic by arrow name; this is the default
        // tie-break order everywhere
        auto& lst = out_[arrows_[id].src];
        std::sort(lst.begin(), lst.end(), [&](int x, int y) {
            return arrows_[x].name < arrows_[y].name;
        });
        return id;
    }

    const std::string& name() const { return name_; }
    int vertex_count() const { return static_cast<int>(vertices_.size()); }
    int arrow_count() const { return static_cast<int>(arrows_.size()); }

    int vertex(const std::string& v) const {
        auto it = vertex_ids_.find(v);
        if (it == vertex_ids_.end())
            throw std::invalid_argument("unknown vertex: " + v);
        return it->second;
    }

    int arrow(const std::string& a) const {
        auto it = arrow_ids_.find(a);
        if (it == arrow_ids_.end())
            throw std::invalid_argument("unknown arrow: " + a);
        return it->second;
    }

    bool has_vertex(const std::string& v) const { return vertex_ids_.count(v) > 0; }
    bool has_arrow(const std::string& a) const { return arrow_ids_.count(a) > 0; }

    const std::string& vertex_name(int v) const { return vertices_[v]; }
    const std::string& arrow_name(int a) const { return arrows_[a].name; }
    int source(int a) const { return arrows_[a].src; }
    int target(int a) const { return arrows_[a].tgt; }

    const std::vector<int>& out_arrows(int v) const { return out_[v]; }

    bool is_sink(int v) const { return out_[v].empty(); }
    bool is_regular(int v) const { return !out_[v].empty(); }

    std::vector<int> sinks() const {
        std::vector<int> out;
        for (int v = 0; v < vertex_count(); ++v)
            if (is_sink(v)) out.push_back(v);
        return out;
    }

    std::vector<int> regular_vertices() const {
        std::vector<int> out;
        for (int v = 0; v < vertex_count(); ++v)
            if (is_regular(v)) out.push_back(v);
        return out;
    }

    bool has_cycle() const {
        // DFS with colors
        std::vector<int> color(vertex_count(), 0);
        for (int v = 0; v < vertex_count(); ++v)
            if (color[v] == 0 && cycle_dfs(v, color)) return true;
        return false;
    }

    // is there a nontrivial path v -> v?
    bool on_cycle(int v) const {
        for (int a : out_[v])
            if (reachable_from(arrows_[a].tgt).count(v)) return true;
        return false;
    }

    std::set<int> reachable_from(int v) const {
        std::set<int> seen;
        std::vector<int> stack{v};
        seen.insert(v);
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int a : out_[u]) {
                int w = arrows_[a].tgt;
                if (seen.insert(w).second) stack.push_back(w);
            }
        }
        return seen;
    }

    bool reaches_sink(int v) const {
        for (int u : reachable_from(v))
            if (is_sink(u)) return true;
        return false;
    }

private:
    bool cycle_dfs(int v, std::vector<int>& color) const {
        color[v] = 1;
        for (int a : out_[v]) {
            int w = arrows_[a].tgt;
            if (color[w] == 1) return true;
            if (color[w] == 0 && cycle_dfs(w, color)) return true;
        }
        color[v] = 2;
        return false;
    }

    std::string name_;
    std::vector<std::string> vertices_;
    std::vector<Arrow> arrows_;
    std::map<std::string, int> vertex_ids_;
    std::map<std::string, int> arrow_ids_;
    std::vector<std::vector<int>> out_;
};

class FinitePath {
public:
    FinitePath() = default;

    // trivial path e_v
    FinitePath(const Quiver& q, int base) : quiver_(&q), base_(base) {}

    FinitePath(const Quiver& q, std::vector<int> arrows_traversal_order)
        : quiver_(&q), arrows_(std::move(arrows_traversal_order)) {
        if (arrows_.empty())
            throw std::invalid_argument("nontrivial path constructor needs arrows");
        for (size_t i = 0; i + 1 < arrows_.size(); ++i)
            if (q.target(arrows_[i]) != q.source(arrows_[i + 1]))
                throw NotComposable("arrows " + q.arrow_name(arrows_[i]) + " and " +
                                    q.arrow_name(arrows_[i + 1]) + " do not chain");
        base_ = q.source(arrows_.front());
    }

    const Quiver& quiver() const { return *quiver_; }
    bool trivial() const { return arrows_.empty(); }
    int length() const { return static_cast<int>(arrows_.size()); }
    int s() const { return base_; }
    int t() const { return arrows_.empty() ? base_ : quiver_->target(arrows_.back()); }

    const std::vector<int>& arrows() const { return arrows_; }
    int arrow_at(int i) const { return arrows_[i]; }  // 0-based, traversal order

    // first i traversed arrows
    FinitePath take(int n) const {
        if (n <= 0) return FinitePath(*quiver_, base_);
        std::vector<int> a(arrows_.begin(), arrows_.begin() + std::min<size_t>(n, arrows_.size()));
        return FinitePath(*quiver_, std::move(a));
    }

    // remainder after the first n traversed arrows
    FinitePath drop(int n) const {
        if (n >= length()) return FinitePath(*quiver_, t());
        if (n <= 0) return *this;
        std::vector<int> a(arrows_.begin() + n, arrows_.end());
        return FinitePath(*quiver_, std::move(a));
    }

    bool operator==(const FinitePath& o) const {
        return base_ == o.base_ && arrows_ == o.arrows_;
    }
    bool operator!=(const FinitePath& o) const { return !(*this == o); }

    bool operator<(const FinitePath& o) const {
        if (length() != o.length()) return length() < o.length();
        for (int i = 0; i < length(); ++i)
            if (arrows_[i] != o.arrows_[i])
                return quiver_->arrow_name(arrows_[i]) < quiver_->arrow_name(o.arrows_[i]);
        return quiver_->vertex_name(base_) < quiver_->vertex_name(o.base_);
    }

    // right-to-left display: traversal [a, b] prints "b.a"
    std::string str() const {
        if (trivial()) return "e_" + quiver_->vertex_name(base_);
        std::string out;
        for (auto it = arrows_.rbegin(); it != arrows_.rend(); ++it) {
            if (!out.empty()) out += '.';
            out += quiver_->arrow_name(*it);
        }
        return out;
    }

private:
    const Quiver* quiver_ = nullptr;
    int base_ = 0;
    std::vector<int> arrows_;
};

// product pq: traverse q, then p; requires s(p) = t(q)
inline FinitePath compose(const FinitePath& p, const FinitePath& q) {
    if (p.s() != q.t())
        throw NotComposable("cannot compose " + p.str() + " after " + q.str() +
                            ": s(p) != t(q)");
    if (p.trivial()) return q;
    if (q.trivial()) return p;
    std::vector<int> a = q.arrows();
    a.insert(a.end(), p.arrows().begin(), p.arrows().end());
    return FinitePath(p.quiver(), std::move(a));
}

// all paths p with t(p) = i and l(p) <= bound, including e_i; i must be a sink
inline std::vector<FinitePath> enumerate_sink_paths(const Quiver& q, int sink,
                                                    int length_bound) {
    if (!q.is_sink(sink))
        throw NotASink(q.vertex_name(sink) + " is not a sink");
    std::vector<FinitePath> out{FinitePath(q, sink)};
    // grow backwards: prepend arrows in traversal order
    std::vector<FinitePath> frontier = out;
    for (int len = 1; len <= length_bound; ++len) {
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
    std::sort(out.begin(), out.end());
    return out;
}

// all paths starting at v with length in [1, bound], traversal order growth
inline std::vector<FinitePath> enumerate_paths_from(const Quiver& q, int v, int bound) {
    std::vector<FinitePath> out;
    std::vector<FinitePath> frontier{FinitePath(q, v)};
    for (int len = 1; len <= bound; ++len) {
        std::vector<FinitePath> next;
        for (const auto& p : frontier)
            for (int a : q.out_arrows(p.t())) {
                std::vector<int> arrows = p.arrows();
                arrows.push_back(a);
                next.emplace_back(q, std::move(arrows));
            }
        out.insert(out.end(), next.begin(), next.end());
        frontier = std::move(next);
        if (frontier.empty()) break;
    }
    return out;
}

}  // namespace lpa
