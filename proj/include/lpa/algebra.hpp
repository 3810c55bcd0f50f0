#pragma once

// Elements of the Leavitt path algebra L_k(Q) as exact linear combinations of
// monomials p^*q with t(p) = t(q). The four-case monomial product gives the
// multiplication; a terminating rewriting system (one rule family per regular
// vertex, driven by a designated "special" outgoing arrow) computes a unique
// reduced form and thereby decides equality.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lpa/infinite_path.hpp"
#include "lpa/support.hpp"

namespace lpa {

class Monomial {
public:
    Monomial(FinitePath pstar, FinitePath q)
        : pstar_(std::move(pstar)), q_(std::move(q)) {
        if (pstar_.t() != q_.t())
            throw NotComposable("monomial requires t(p) = t(q): " + pstar_.str() +
                                " vs " + q_.str());
    }

    static Monomial vertex(const Quiver& q, int v) {
        FinitePath e(q, v);
        return Monomial(e, e);
    }

    static Monomial path(const FinitePath& q) {
        return Monomial(FinitePath(q.quiver(), q.t()), q);
    }

    static Monomial star_path(const FinitePath& p) {
        return Monomial(p, FinitePath(p.quiver(), p.t()));
    }

    const FinitePath& pstar() const { return pstar_; }
    const FinitePath& q() const { return q_; }
    const Quiver& quiver() const { return q_.quiver(); }

    bool is_vertex() const { return pstar_.trivial() && q_.trivial(); }
    int degree() const { return q_.length() - pstar_.length(); }

    Monomial star() const { return Monomial(q_, pstar_); }

    bool operator==(const Monomial& o) const {
        return pstar_ == o.pstar_ && q_ == o.q_;
    }
    bool operator<(const Monomial& o) const {
        if (!(pstar_ == o.pstar_)) return pstar_ < o.pstar_;
        return q_ < o.q_;
    }

    std::string str() const {
        if (is_vertex()) {
            if (pstar_.s() == q_.s()) return "e_" + quiver().vertex_name(q_.s());
        }
        std::string out;
        if (!pstar_.trivial()) {
            if (pstar_.length() == 1)
                out = quiver().arrow_name(pstar_.arrow_at(0)) + "^*";
            else
                out = "(" + pstar_.str() + ")^*";
        }
        if (!q_.trivial()) {
            if (!out.empty()) out += ".";
            out += q_.str();
        }
        if (out.empty()) out = "e_" + quiver().vertex_name(q_.s());
        return out;
    }

private:
    FinitePath pstar_;
    FinitePath q_;
};

// (p^*q)(g^*h), the four cases of the monomial product lemma; nullopt is zero
inline std::optional<Monomial> mono_mul(const Monomial& m1, const Monomial& m2) {
    const FinitePath& q = m1.q();
    const FinitePath& g = m2.pstar();
    const Quiver& quiv = m1.quiver();

    auto traversal_prefix = [](const FinitePath& shorter, const FinitePath& longer) {
        if (shorter.s() != longer.s()) return false;
        for (int i = 0; i < shorter.length(); ++i)
            if (shorter.arrow_at(i) != longer.arrow_at(i)) return false;
        return true;
    };

    if (q.length() <= g.length()) {
        if (!traversal_prefix(q, g)) return std::nullopt;
        // g = g' q; result ((g'p)^*, h)
        FinitePath gp = g.drop(q.length());
        FinitePath new_p = compose(gp, m1.pstar());
        return Monomial(new_p, m2.q());
    }
    if (!traversal_prefix(g, q)) return std::nullopt;
    // q = q' g; result (p^*, q'h)
    FinitePath qp = q.drop(g.length());
    FinitePath new_q = compose(qp, m2.q());
    (void)quiv;
    return Monomial(m1.pstar(), new_q);
}

// one nonzero scalar per arrow; drives the scaling automorphism gamma_a
class ScalingVector {
public:
    explicit ScalingVector(const Quiver& q, const FieldSpec& f)
        : quiver_(&q), values_(q.arrow_count(), Scalar::one(f)) {}

    static ScalingVector ones(const Quiver& q, const FieldSpec& f) {
        return ScalingVector(q, f);
    }

    void set(int arrow, const Scalar& v) {
        if (v.is_zero()) throw DivisionByZero();
        values_[arrow] = v;
    }

    const Scalar& at(int arrow) const { return values_[arrow]; }
    const Quiver& quiver() const { return *quiver_; }
    const FieldSpec& field() const { return values_.empty() ? fallback_ : values_[0].field(); }

    Scalar of_path(const FinitePath& p) const {
        Scalar r = Scalar::one(field());
        for (int a : p.arrows()) r = r * values_[a];
        return r;
    }

    ScalingVector operator*(const ScalingVector& o) const {
        ScalingVector r = *this;
        for (size_t i = 0; i < values_.size(); ++i) r.values_[i] = values_[i] * o.values_[i];
        return r;
    }

    ScalingVector inverse() const {
        ScalingVector r = *this;
        for (auto& v : r.values_) v = v.inverse();
        return r;
    }

private:
    const Quiver* quiver_;
    std::vector<Scalar> values_;
    FieldSpec fallback_ = FieldSpec::rationals();
};

// one designated outgoing arrow per regular vertex; pins down the reduced form
class SpecialEdgeChoice {
public:
    // default: lexicographically least outgoing arrow
    explicit SpecialEdgeChoice(const Quiver& q) : quiver_(&q) {
        for (int v : q.regular_vertices()) choice_[v] = q.out_arrows(v)[0];
    }

    void set(int vertex, int arrow) {
        if (quiver_->source(arrow) != vertex)
            throw std::invalid_argument("special edge must start at its vertex");
        choice_[vertex] = arrow;
    }

    int at(int vertex) const { return choice_.at(vertex); }

private:
    const Quiver* quiver_;
    std::map<int, int> choice_;
};

class AlgebraElement {
public:
    AlgebraElement(const Quiver& q, const FieldSpec& f) : quiver_(&q), terms_(f) {}

    static AlgebraElement zero(const Quiver& q, const FieldSpec& f) {
        return AlgebraElement(q, f);
    }

    static AlgebraElement monomial(const Quiver& q, const Monomial& m, const Scalar& c) {
        AlgebraElement e(q, c.field());
        e.terms_.add_term(m, c);
        return e;
    }

    static AlgebraElement unit(const Quiver& q, const FieldSpec& f, int v) {
        return monomial(q, Monomial::vertex(q, v), Scalar::one(f));
    }

    const Quiver& quiver() const { return *quiver_; }
    const FieldSpec& field() const { return terms_.field(); }
    const LinComb<Monomial>& terms() const { return terms_; }
    bool empty_support() const { return terms_.empty(); }

    void add_term(const Monomial& m, const Scalar& c) { terms_.add_term(m, c); }

    AlgebraElement operator+(const AlgebraElement& o) const {
        return wrap(terms_ + o.terms_);
    }
    AlgebraElement operator-(const AlgebraElement& o) const {
        return wrap(terms_ - o.terms_);
    }
    AlgebraElement operator-() const { return wrap(-terms_); }
    AlgebraElement scaled(const Scalar& s) const { return wrap(terms_.scaled(s)); }

    AlgebraElement operator*(const AlgebraElement& o) const {
        AlgebraElement r(*quiver_, field());
        for (const auto& [m1, c1] : terms_)
            for (const auto& [m2, c2] : o.terms_)
                if (auto m = mono_mul(m1, m2)) r.add_term(*m, c1 * c2);
        return r;
    }

    AlgebraElement star() const {
        AlgebraElement r(*quiver_, field());
        for (const auto& [m, c] : terms_) r.add_term(m.star(), c);
        return r;
    }

    std::map<int, AlgebraElement> degree_split() const {
        std::map<int, AlgebraElement> out;
        for (const auto& [m, c] : terms_) {
            auto it = out.find(m.degree());
            if (it == out.end())
                it = out.emplace(m.degree(), AlgebraElement(*quiver_, field())).first;
            it->second.add_term(m, c);
        }
        return out;
    }

    bool operator==(const AlgebraElement& o) const { return terms_ == o.terms_; }
    bool operator!=(const AlgebraElement& o) const { return !(*this == o); }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (const auto& [m, c] : terms_) {
            std::string cs = c.str();
            if (!out.empty()) {
                if (!cs.empty() && cs[0] == '-') {
                    out += " - ";
                    cs = cs.substr(1);
                } else {
                    out += " + ";
                }
            } else if (!cs.empty() && cs[0] == '-') {
                out += "-";
                cs = cs.substr(1);
            }
            if (cs == "1")
                out += m.str();
            else
                out += cs + " * " + m.str();
        }
        return out;
    }

private:
    AlgebraElement wrap(LinComb<Monomial> t) const {
        AlgebraElement r(*quiver_, field());
        r.terms_ = std::move(t);
        return r;
    }

    const Quiver* quiver_;
    LinComb<Monomial> terms_;
};

// iota: the path-algebra embedding, p -> (e_{t(p)})^* p
inline AlgebraElement iota(const Quiver& q, const FieldSpec& f, const FinitePath& p) {
    return AlgebraElement::monomial(q, Monomial::path(p), Scalar::one(f));
}

inline AlgebraElement iota_star(const Quiver& q, const FieldSpec& f, const FinitePath& p) {
    return AlgebraElement::monomial(q, Monomial::star_path(p), Scalar::one(f));
}

inline AlgebraElement arrow_element(const Quiver& q, const FieldSpec& f, int a) {
    return iota(q, f, FinitePath(q, std::vector<int>{a}));
}

inline AlgebraElement arrow_star_element(const Quiver& q, const FieldSpec& f, int a) {
    return iota_star(q, f, FinitePath(q, std::vector<int>{a}));
}

// gamma_a: p^*q -> a_p^{-1} a_q p^*q
inline AlgebraElement gamma(const ScalingVector& a, const AlgebraElement& u) {
    AlgebraElement r(u.quiver(), u.field());
    for (const auto& [m, c] : u.terms())
        r.add_term(m, c * a.of_path(m.pstar()).inverse() * a.of_path(m.q()));
    return r;
}

namespace detail {

// rewritable iff both paths are nontrivial, share their final traversed
// arrow, and that arrow is the special edge at its source
inline bool reducible(const Monomial& m, const SpecialEdgeChoice& sp) {
    const FinitePath& p = m.pstar();
    const FinitePath& q = m.q();
    if (p.trivial() || q.trivial()) return false;
    int g = p.arrows().back();
    if (g != q.arrows().back()) return false;
    return sp.at(p.quiver().source(g)) == g;
}

}  // namespace detail

// Unique reduced form under the relation-(4) rewriting:
//   (gp)^*(gq) -> p^*q - sum_{a != g, s(a)=s(g)} (ap)^*(aq)
// applied wherever the shared final arrow g is the special edge at s(g).
inline AlgebraElement reduce(const AlgebraElement& u, const SpecialEdgeChoice& sp,
                             long* rewrite_count = nullptr) {
    const Quiver& quiv = u.quiver();
    AlgebraElement result(quiv, u.field());
    std::map<Monomial, Scalar> pending(u.terms().begin(), u.terms().end());
    long steps = 0;
    while (!pending.empty()) {
        auto it = pending.begin();
        Monomial m = it->first;
        Scalar c = it->second;
        pending.erase(it);
        if (c.is_zero()) continue;
        if (!detail::reducible(m, sp)) {
            result.add_term(m, c);
            continue;
        }
        ++steps;
        int g = m.pstar().arrows().back();
        int src = quiv.source(g);
        FinitePath p = m.pstar().take(m.pstar().length() - 1);
        FinitePath q = m.q().take(m.q().length() - 1);
        auto accumulate = [&](const Monomial& mm, const Scalar& cc) {
            auto jt = pending.find(mm);
            if (jt == pending.end())
                pending.emplace(mm, cc);
            else {
                jt->second = jt->second + cc;
                if (jt->second.is_zero()) pending.erase(jt);
            }
        };
        accumulate(Monomial(p, q), c);
        for (int a : quiv.out_arrows(src)) {
            if (a == g) continue;
            std::vector<int> pa = p.arrows();
            pa.push_back(a);
            std::vector<int> qa = q.arrows();
            qa.push_back(a);
            accumulate(Monomial(FinitePath(quiv, pa), FinitePath(quiv, qa)), -c);
        }
    }
    if (rewrite_count) *rewrite_count = steps;
    return result;
}

inline bool is_zero(const AlgebraElement& u, const SpecialEdgeChoice& sp) {
    return reduce(u, sp).empty_support();
}

inline bool equals(const AlgebraElement& u, const AlgebraElement& v,
                   const SpecialEdgeChoice& sp) {
    return is_zero(u - v, sp);
}

// max star-length across the reduced form; kappa(u) <= kappa_hat(u)
inline int kappa_hat(const AlgebraElement& u, const SpecialEdgeChoice& sp) {
    AlgebraElement r = reduce(u, sp);
    if (r.empty_support()) throw ZeroElement();
    int k = 0;
    for (const auto& [m, c] : r.terms()) k = std::max(k, m.pstar().length());
    return k;
}

// sums of vertex idempotents x, y with x u y = u, read off the stored normal
// form; also reports a vertex j with e_j u != 0 (the first of x's support)
struct LocalUnits {
    AlgebraElement x;
    AlgebraElement y;
    int left_vertex;
};

inline LocalUnits local_units(const AlgebraElement& u) {
    if (u.empty_support()) throw ZeroElement();
    const Quiver& q = u.quiver();
    std::set<int> left, right;
    for (const auto& [m, c] : u.terms()) {
        left.insert(m.pstar().s());
        right.insert(m.q().s());
    }
    AlgebraElement x(q, u.field()), y(q, u.field());
    for (int v : left) x.add_term(Monomial::vertex(q, v), Scalar::one(u.field()));
    for (int v : right) y.add_term(Monomial::vertex(q, v), Scalar::one(u.field()));
    return {x, y, *left.begin()};
}

}  // namespace lpa
