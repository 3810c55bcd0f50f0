#pragma once

// Text formats: the quiver DSL, element/vector expressions (right-to-left
// path display, '.'-separated), and the branching-system block format.
// Serialization mirrors the grammars so every value round-trips.

#include <cctype>
#include <sstream>
#include <string>
#include <vector>

#include "lpa/branching.hpp"
#include "lpa/structure.hpp"

namespace lpa {

namespace detail {

struct Token {
    enum class Kind { Ident, Number, Punct, End };
    Kind kind;
    std::string text;
    int line;
    int column;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) { advance(); }

    const Token& peek() const { return current_; }

    Token next() {
        Token t = current_;
        advance();
        return t;
    }

    bool at_end() const { return current_.kind == Token::Kind::End; }

    [[noreturn]] void error(const std::string& what) const {
        throw ParseError(what, current_.line, current_.column);
    }

    Token expect_punct(const std::string& p) {
        if (current_.kind != Token::Kind::Punct || current_.text != p)
            error("expected '" + p + "', got '" + current_.text + "'");
        return next();
    }

    Token expect_ident() {
        if (current_.kind != Token::Kind::Ident)
            error("expected identifier, got '" + current_.text + "'");
        return next();
    }

    bool accept_punct(const std::string& p) {
        if (current_.kind == Token::Kind::Punct && current_.text == p) {
            advance();
            return true;
        }
        return false;
    }

private:
    static bool ident_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    }

    void advance() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
                continue;
            }
            if (c == '\n') {
                ++line_;
                col_ = 1;
                ++pos_;
                continue;
            }
            if (std::isspace(static_cast<unsigned char>(c))) {
                ++col_;
                ++pos_;
                continue;
            }
            break;
        }
        int l = line_, col = col_;
        if (pos_ >= text_.size()) {
            current_ = {Token::Kind::End, "<end>", l, col};
            return;
        }
        char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
            std::string tok = text_.substr(start, pos_ - start);
            col_ += static_cast<int>(tok.size());
            // digits-only is a number; digit-led identifiers (vertex "1") are
            // also numbers to the lexer, resolved by the parsers
            current_ = {Token::Kind::Number, tok, l, col};
            return;
        }
        if (ident_char(c)) {
            size_t start = pos_;
            while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
            std::string tok = text_.substr(start, pos_ - start);
            col_ += static_cast<int>(tok.size());
            current_ = {Token::Kind::Ident, tok, l, col};
            return;
        }
        // multi-char punctuation first
        for (const char* p : {"^*", "->"}) {
            size_t n = std::string(p).size();
            if (text_.compare(pos_, n, p) == 0) {
                pos_ += n;
                col_ += static_cast<int>(n);
                current_ = {Token::Kind::Punct, p, l, col};
                return;
            }
        }
        if (text_.compare(pos_, 4, "^inf") == 0) {
            pos_ += 4;
            col_ += 4;
            current_ = {Token::Kind::Punct, "^inf", l, col};
            return;
        }
        pos_ += 1;
        col_ += 1;
        current_ = {Token::Kind::Punct, std::string(1, c), l, col};
        return;
    }

    const std::string& text_;
    size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    Token current_{Token::Kind::End, "", 1, 1};
};

inline bool is_name_token(const Token& t) {
    return t.kind == Token::Kind::Ident || t.kind == Token::Kind::Number;
}

inline std::string expect_name(Lexer& lx) {
    if (!is_name_token(lx.peek()))
        lx.error("expected name, got '" + lx.peek().text + "'");
    return lx.next().text;
}

// display-order names "b.a" -> traversal-order path [a, b]
inline FinitePath path_from_display(Lexer& lx, const Quiver& q,
                                    std::vector<std::string> display) {
    std::vector<int> arrows;
    for (auto it = display.rbegin(); it != display.rend(); ++it) {
        if (!q.has_arrow(*it)) lx.error("unknown arrow: " + *it);
        arrows.push_back(q.arrow(*it));
    }
    try {
        return FinitePath(q, arrows);
    } catch (const NotComposable& e) {
        lx.error(e.what());
    }
}

inline std::vector<std::string> parse_display_names(Lexer& lx) {
    std::vector<std::string> names{expect_name(lx)};
    while (lx.accept_punct(".")) names.push_back(expect_name(lx));
    return names;
}

inline Scalar parse_scalar(Lexer& lx, const FieldSpec& f) {
    std::string text = lx.next().text;
    if (lx.accept_punct("/")) {
        if (lx.peek().kind != Token::Kind::Number) lx.error("expected denominator");
        text += "/" + lx.next().text;
    }
    try {
        return Scalar::parse(f, text);
    } catch (const std::exception& e) {
        lx.error(e.what());
    }
}

}  // namespace detail

inline Quiver parse_quiver(const std::string& text) {
    detail::Lexer lx(text);
    if (lx.peek().text != "quiver") lx.error("expected 'quiver'");
    lx.next();
    Quiver q(detail::expect_name(lx));
    lx.expect_punct("{");
    while (!lx.accept_punct("}")) {
        if (lx.peek().text == "vertex") {
            lx.next();
            while (!lx.accept_punct(";")) {
                std::string v = detail::expect_name(lx);
                try {
                    q.add_vertex(v);
                } catch (const std::invalid_argument& e) {
                    lx.error(e.what());
                }
            }
        } else if (lx.peek().text == "arrow") {
            lx.next();
            std::string a = detail::expect_name(lx);
            lx.expect_punct(":");
            std::string src = detail::expect_name(lx);
            lx.expect_punct("->");
            std::string tgt = detail::expect_name(lx);
            lx.expect_punct(";");
            try {
                q.add_arrow(a, src, tgt);
            } catch (const std::invalid_argument& e) {
                lx.error(e.what());
            }
        } else {
            lx.error("expected 'vertex', 'arrow' or '}'");
        }
    }
    if (!lx.at_end()) lx.error("trailing input after quiver");
    return q;
}

inline std::string serialize_quiver(const Quiver& q) {
    std::ostringstream out;
    out << "quiver " << q.name() << " {\n  vertex";
    for (int v = 0; v < q.vertex_count(); ++v) out << " " << q.vertex_name(v);
    out << ";\n";
    for (int a = 0; a < q.arrow_count(); ++a)
        out << "  arrow " << q.arrow_name(a) << ": " << q.vertex_name(q.source(a))
            << " -> " << q.vertex_name(q.target(a)) << ";\n";
    out << "}\n";
    return out.str();
}

namespace detail {

// monomial := 'e_' IDENT | [starpart] [pathpart]
inline Monomial parse_monomial(Lexer& lx, const Quiver& q) {
    auto trivial_at = [&](const std::string& name) -> FinitePath {
        if (!q.has_vertex(name)) lx.error("unknown vertex: " + name);
        return FinitePath(q, q.vertex(name));
    };

    std::optional<FinitePath> star;
    if (lx.accept_punct("(")) {
        auto names = parse_display_names(lx);
        lx.expect_punct(")");
        lx.expect_punct("^*");
        star = path_from_display(lx, q, names);
        if (!lx.accept_punct("."))
            return Monomial::star_path(*star);
    } else {
        const Token& t = lx.peek();
        if (!is_name_token(t)) lx.error("expected monomial, got '" + t.text + "'");
        if (t.text.rfind("e_", 0) == 0) {
            std::string v = lx.next().text.substr(2);
            return Monomial::vertex(q, trivial_at(v).s());
        }
        // lookahead: IDENT '^*' makes a one-arrow star part
        std::string first = lx.next().text;
        if (lx.accept_punct("^*")) {
            star = path_from_display(lx, q, {first});
            if (!lx.accept_punct("."))
                return Monomial::star_path(*star);
        } else {
            std::vector<std::string> names{first};
            while (lx.accept_punct(".")) names.push_back(expect_name(lx));
            return Monomial::path(path_from_display(lx, q, names));
        }
    }
    // star part consumed plus a '.', a path part follows
    auto names = parse_display_names(lx);
    FinitePath qpath = path_from_display(lx, q, names);
    if (star->t() != qpath.t())
        lx.error("star and path parts do not meet: " + star->str() + " vs " +
                 qpath.str());
    return Monomial(*star, qpath);
}

template <class ParseKey>
void parse_terms(Lexer& lx, const FieldSpec& f, ParseKey&& on_term) {
    bool first = true;
    while (true) {
        Scalar sign = Scalar::one(f);
        if (lx.accept_punct("-"))
            sign = -sign;
        else if (!first)
            lx.expect_punct("+");
        else
            lx.accept_punct("+");
        first = false;
        Scalar coeff = Scalar::one(f);
        // a number here is a scalar iff '*' or '/' follows; otherwise it is a
        // digit-led identifier (vertex/arrow name)
        if (lx.peek().kind == Token::Kind::Number) {
            Lexer probe = lx;  // cheap copy, lexer holds a reference
            probe.next();
            if (probe.peek().text == "*" || probe.peek().text == "/") {
                coeff = parse_scalar(lx, f);
                lx.expect_punct("*");
            }
        }
        on_term(sign * coeff);
        if (lx.at_end()) break;
        if (lx.peek().text != "+" && lx.peek().text != "-")
            lx.error("expected '+', '-' or end of input");
    }
}

}  // namespace detail

inline AlgebraElement parse_element(const std::string& text, const Quiver& q,
                                    const FieldSpec& f) {
    detail::Lexer lx(text);
    AlgebraElement out(q, f);
    if (lx.at_end()) lx.error("empty element");
    if (lx.peek().text == "0") {
        lx.next();
        if (!lx.at_end()) lx.error("trailing input after 0");
        return out;
    }
    detail::parse_terms(lx, f, [&](const Scalar& c) {
        out.add_term(detail::parse_monomial(lx, q), c);
    });
    return out;
}

namespace detail {

// basis key: finite path display, 'e_v', or '(cycle)^inf' ['.' prefix]
inline std::variant<FinitePath, EvInfPath> parse_basis_key(Lexer& lx, const Quiver& q) {
    if (lx.accept_punct("(")) {
        auto cyc_names = parse_display_names(lx);
        lx.expect_punct(")");
        lx.expect_punct("^inf");
        FinitePath cycle = path_from_display(lx, q, cyc_names);
        FinitePath prefix(q, cycle.s());
        if (lx.accept_punct(".")) {
            auto pre_names = parse_display_names(lx);
            prefix = path_from_display(lx, q, pre_names);
        }
        try {
            return EvInfPath::make(prefix, cycle);
        } catch (const NotComposable& e) {
            lx.error(e.what());
        }
    }
    const Token& t = lx.peek();
    if (!is_name_token(t)) lx.error("expected basis key, got '" + t.text + "'");
    if (t.text.rfind("e_", 0) == 0) {
        std::string v = lx.next().text.substr(2);
        if (!q.has_vertex(v)) lx.error("unknown vertex: " + v);
        return FinitePath(q, q.vertex(v));
    }
    return path_from_display(lx, q, parse_display_names(lx));
}

}  // namespace detail

// Mixed F/N vector text; finite keys must end at sinks.
inline FNVector parse_vector(const std::string& text, const Quiver& q,
                             const FieldSpec& f) {
    detail::Lexer lx(text);
    FNVector out(f);
    if (lx.at_end()) lx.error("empty vector");
    if (lx.peek().text == "0") {
        lx.next();
        if (!lx.at_end()) lx.error("trailing input after 0");
        return out;
    }
    detail::parse_terms(lx, f, [&](const Scalar& c) {
        auto key = detail::parse_basis_key(lx, q);
        if (std::holds_alternative<EvInfPath>(key)) {
            out.f.add_term(std::get<EvInfPath>(key), c);
        } else {
            const auto& p = std::get<FinitePath>(key);
            if (!q.is_sink(p.t()))
                lx.error("finite basis path " + p.str() + " does not end at a sink");
            out.n.add_term(p, c);
        }
    });
    return out;
}

namespace detail {

inline void append_term(std::string& out, const Scalar& c, const std::string& key) {
    std::string cs = c.str();
    bool neg = !cs.empty() && cs[0] == '-';
    if (neg) cs = cs.substr(1);
    if (out.empty()) {
        if (neg) out += "-";
    } else {
        out += neg ? " - " : " + ";
    }
    if (cs == "1")
        out += key;
    else
        out += cs + " * " + key;
}

}  // namespace detail

inline std::string serialize_vector(const FNVector& v) {
    std::string out;
    for (const auto& [k, c] : v.f) detail::append_term(out, c, k.str());
    for (const auto& [k, c] : v.n) detail::append_term(out, c, k.str());
    return out.empty() ? "0" : out;
}

inline std::string serialize_element(const AlgebraElement& u) { return u.str(); }

inline FiniteBranchingSystem parse_bs(const std::string& text, const Quiver& q) {
    detail::Lexer lx(text);
    if (lx.peek().text != "bs") lx.error("expected 'bs'");
    lx.next();
    lx.expect_punct("{");
    FiniteBranchingSystem X(q);
    bool have_points = false;
    while (!lx.accept_punct("}")) {
        std::string head = detail::expect_name(lx);
        if (head == "sigma") {
            std::string a = detail::expect_name(lx);
            if (!q.has_arrow(a)) lx.error("unknown arrow: " + a);
            lx.expect_punct(":");
            while (!lx.accept_punct(";")) {
                std::string from = detail::expect_name(lx);
                lx.expect_punct("->");
                std::string to = detail::expect_name(lx);
                try {
                    X.set_sigma(q.arrow(a), X.point(from), X.point(to));
                } catch (const PointOutOfSystem& e) {
                    lx.error(e.what());
                }
            }
            continue;
        }
        lx.expect_punct(":");
        if (head == "points") {
            if (have_points) lx.error("duplicate points block");
            have_points = true;
            while (!lx.accept_punct(";")) {
                std::string name = detail::expect_name(lx);
                try {
                    X.add_point(name);
                } catch (const std::invalid_argument& e) {
                    lx.error(e.what());
                }
            }
        } else if (q.has_vertex(head)) {
            while (!lx.accept_punct(";")) {
                std::string p = detail::expect_name(lx);
                try {
                    X.put_in_vertex_set(q.vertex(head), X.point(p));
                } catch (const PointOutOfSystem& e) {
                    lx.error(e.what());
                }
            }
        } else if (q.has_arrow(head)) {
            bool bracket = lx.accept_punct("[");
            while (true) {
                if (bracket && lx.accept_punct("]")) {
                    lx.expect_punct(";");
                    break;
                }
                if (!bracket && lx.accept_punct(";")) break;
                std::string p = detail::expect_name(lx);
                try {
                    X.put_in_arrow_set(q.arrow(head), X.point(p));
                } catch (const PointOutOfSystem& e) {
                    lx.error(e.what());
                }
            }
        } else {
            lx.error("unknown block head: " + head);
        }
    }
    if (!lx.at_end()) lx.error("trailing input after system");
    if (!have_points) lx.error("missing points block");
    return X;
}

inline std::string serialize_bs(const FiniteBranchingSystem& X) {
    const Quiver& q = X.quiver();
    std::ostringstream out;
    out << "bs {\n  points:";
    for (int p = 0; p < X.point_count(); ++p) out << " " << X.point_name(p);
    out << ";\n";
    for (int v = 0; v < q.vertex_count(); ++v) {
        if (X.vertex_set(v).empty()) continue;
        out << "  " << q.vertex_name(v) << ":";
        for (int p : X.vertex_set(v)) out << " " << X.point_name(p);
        out << ";\n";
    }
    for (int a = 0; a < q.arrow_count(); ++a) {
        if (X.arrow_set(a).empty()) continue;
        out << "  " << q.arrow_name(a) << ": [";
        bool first = true;
        for (int p : X.arrow_set(a)) {
            if (!first) out << " ";
            first = false;
            out << X.point_name(p);
        }
        out << "];\n";
    }
    for (int a = 0; a < q.arrow_count(); ++a) {
        bool any = false;
        for (int p = 0; p < X.point_count(); ++p)
            if (X.sigma(a, p)) any = true;
        if (!any) continue;
        out << "  sigma " << q.arrow_name(a) << ":";
        for (int p = 0; p < X.point_count(); ++p)
            if (auto y = X.sigma(a, p))
                out << " " << X.point_name(p) << "->" << X.point_name(*y);
        out << ";\n";
    }
    out << "}\n";
    return out.str();
}

}  // namespace lpa
