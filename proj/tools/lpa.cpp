// Command-line front end: parses quivers/elements/vectors/branching systems,
// dispatches the subcommands, and emits one JSON report per invocation.
// Exit codes: 0 success, 1 negative verdict, 2 input error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "lpa/parse.hpp"
#include "lpa/window.hpp"

using json = nlohmann::ordered_json;
using namespace lpa;

namespace {

struct CommonOpts {
    std::string quiver_file;
    std::string field = "q";
    std::string special_edges;
    int window = 6;
    bool trace = false;
    bool escalate = false;
    bool pretty = false;
    unsigned long seed = 0;
    std::string expect;
};

void add_common(CLI::App* sub, CommonOpts& o, bool needs_quiver = true) {
    if (needs_quiver)
        sub->add_option("quiver", o.quiver_file, "quiver DSL file")->required();
    sub->add_option("--field", o.field, "coefficient field: q | gf:<p>")
        ->default_val("q");
    sub->add_option("--special-edges", o.special_edges,
                    "special-edge overrides, e.g. v=a,w=b");
    sub->add_option("--window", o.window, "verification window bound")->default_val(6);
    sub->add_flag("--trace", o.trace, "include an action trace in the report");
    sub->add_flag("--escalate", o.escalate,
                  "fall back to the twisted-sum search when the hypothesis fails");
    sub->add_flag("--pretty", o.pretty, "indent the JSON report");
    sub->add_option("--seed", o.seed, "seed echoed into the report")->default_val(0);
    sub->add_option("--expect", o.expect,
                    "expected verdict; mismatches exit with code 1");
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

FieldSpec make_field(const std::string& s) {
    if (s == "q") return FieldSpec::rationals();
    if (s.rfind("gf:", 0) == 0)
        return FieldSpec::prime_field(std::stoul(s.substr(3)));
    throw std::invalid_argument("bad field spec: " + s + " (want q or gf:<p>)");
}

SpecialEdgeChoice make_special(const Quiver& q, const std::string& overrides) {
    SpecialEdgeChoice sp(q);
    std::stringstream ss(overrides);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        auto eq = item.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("bad special-edge override: " + item);
        sp.set(q.vertex(item.substr(0, eq)), q.arrow(item.substr(eq + 1)));
    }
    return sp;
}

int emit(const json& report, const CommonOpts& o, int code) {
    if (o.pretty)
        std::cout << report.dump(2) << "\n";
    else
        std::cout << report.dump() << "\n";
    return code;
}

json base_report(const std::string& command, const CommonOpts& o, const Quiver& q) {
    json r;
    r["command"] = command;
    r["quiver"] = q.name();
    r["field"] = o.field;
    r["seed"] = o.seed;
    return r;
}

ScalingVector parse_scaling(const Quiver& q, const FieldSpec& f,
                            const std::string& text) {
    ScalingVector a(q, f);
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        auto eq = item.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("bad scaling entry: " + item);
        a.set(q.arrow(item.substr(0, eq)),
              Scalar::parse(f, item.substr(eq + 1)));
    }
    return a;
}

// ---------------------------------------------------------------------------

int cmd_normalize(const CommonOpts& o, const std::string& elem_text) {
    Quiver q = parse_quiver(read_file(o.quiver_file));
    FieldSpec f = make_field(o.field);
    SpecialEdgeChoice sp = make_special(q, o.special_edges);
    AlgebraElement u = parse_element(elem_text, q, f);
    long rewrites = 0;
    AlgebraElement r = reduce(u, sp, &rewrites);
    json rep = base_report("normalize", o, q);
    rep["input"] = elem_text;
    rep["reduced"] = serialize_element(r);
    rep["rewrites"] = rewrites;
    rep["is_zero"] = r.empty_support();
    if (!r.empty_support()) rep["kappa_hat"] = kappa_hat(r, sp);
    return emit(rep, o, 0);
}

int cmd_mul(const CommonOpts& o, const std::vector<std::string>& elems) {
    Quiver q = parse_quiver(read_file(o.quiver_file));
    FieldSpec f = make_field(o.field);
    SpecialEdgeChoice sp = make_special(q, o.special_edges);
    AlgebraElement lhs = parse_element(elems[0], q, f);
    AlgebraElement rhs = parse_element(elems[1], q, f);
    AlgebraElement raw = lhs * rhs;
    json rep = base_report("mul", o, q);
    rep["lhs"] = elems[0];
    rep["rhs"] = elems[1];
    rep["product"] = serialize_element(reduce(raw, sp));
    if (o.trace) rep["product_raw"] = serialize_element(raw);
    return emit(rep, o, 0);
}

int cmd_act(const CommonOpts& o, const std::string& elem_text,
            const std::string& vec_text) {
    Quiver q = parse_quiver(read_file(o.quiver_file));
    FieldSpec f = make_field(o.field);
    AlgebraElement u = parse_element(elem_text, q, f);
    FNVector v = parse_vector(vec_text, q, f);
    FNVector out = act_FN(u, v);
    json rep = base_report("act", o, q);
    rep["element"] = elem_text;
    rep["vector"] = serialize_vector(v);
    rep["result"] = serialize_vector(out);
    if (o.trace) {
        json tr = json::array();
        for (const auto& [m, c] : u.terms()) {
            for (const auto& [k, d] : v.f)
                if (auto img = lpa::detail::act_mono_inf(m, k))
                    tr.push_back({{"monomial", m.str()},
                                  {"key", k.str()},
                                  {"coefficient", (c * d).str()},
                                  {"image", img->str()}});
            for (const auto& [k, d] : v.n)
                if (auto img = lpa::detail::act_mono_sink(m, k))
                    tr.push_back({{"monomial", m.str()},
                                  {"key", k.str()},
                                  {"coefficient", (c * d).str()},
                                  {"image", img->str()}});
        }
        rep["trace"] = tr;
    }
    return emit(rep, o, 0);
}

int cmd_relcheck(const CommonOpts& o) {
    Quiver q = parse_quiver(read_file(o.quiver_file));
    FieldSpec f = make_field(o.field);
    SpecialEdgeChoice sp = make_special(q, o.special_edges);
    auto fw = f_window(q, o.window);
    auto nw = n_window(q, o.window);
    json failures = json::array();
    auto rels = defining_relations(q, f);
    for (const auto& r : rels) {
        bool alg = equals(r.lhs, r.rhs, sp);
        bool win = relation_holds_on_windows(r, fw, nw, f);
        if (!alg || !win)
            failures.push_back(
                {{"relation", r.name}, {"algebra", alg}, {"windows", win}});
    }
    json rep = base_report("relcheck", o, q);
    rep["relations_checked"] = rels.size();
    rep["f_window_size"] = fw.size();
    rep["n_window_size"] = nw.size();
    rep["failures"] = failures;
    rep["verdict"] = failures.empty() ? "AllHold" : "Failed";
    return emit(rep, o, failures.empty() ? 0 : 1);
}

int cmd_certify(const CommonOpts& o, const std::string& vec_text,
                const std::string& target_text) {
    Quiver q = parse_quiver(read_file(o.quiver_file));
    FieldSpec f = make_field(o.field);
    FNVector u = parse_vector(vec_text, q, f);
    FNVector t = parse_vector(target_text, q, f);
    json rep = base_report("certify", o, q);
    rep["vector"] = serialize_vector(u);
    rep["target"] = serialize_vector(t);
    Certificate cert{AlgebraElement::zero(q, f), Scalar::one(f)};
    bool verified = false;
    if (!u.f.empty() && u.n.empty() && t.f.size() == 1 && t.n.empty()) {
        const EvInfPath& target = t.f.begin()->first;
        cert = generation_certificate_F(u.f, target);
        verified = act_F(cert.element, u.f) == FVector(f, target, cert.lambda);
    } else if (!u.n.empty() && u.f.empty() && t.n.size() == 1 && t.f.empty()) {
        const FinitePath& target = t.n.begin()->first;
        cert = generation_certificate_N(u.n, target);
        verified = act_N(cert.element, u.n) == NVector(f, target, cert.lambda);
    } else {
        throw std::invalid_argument(
            "vector and target must live in the same single component, and the "
            "target must be a single basis path");
    }
    rep["certificate"] = serialize_element(cert.element);
    rep["lambda"] = cert.lambda.str();
    rep["verified"] = verified;
    return emit(rep, o, verified ? 0 : 1);
}

int cmd_classify_bs(const CommonOpts& o, const std::string& bs_file) {
    Quiver q = parse_quiver(read_file(o.quiver_file));
    FieldSpec f = make_field(o.field);
    FiniteBranchingSystem X = parse_bs(read_file(bs_file), q);
    auto val = validate_bs(X);
    json rep = base_report("classify-bs", o, q);
    rep["system"] = bs_file;
    rep["axioms_ok"] = val.axioms_ok;
    rep["saturated"] = val.saturated;
    rep["perfect"] = val.perfect;
    if (!val.violations.empty()) rep["violations"] = val.violations;
    ClassifyResult res = classify_bs(X, f);
    rep["verdict"] = res.irreducible ? "Irreducible" : "Reducible";
    if (res.irreducible) {
        if (std::holds_alternative<SinkBS>(*res.target))
            rep["target"] = {{"kind", "sink"},
                             {"sink", q.vertex_name(std::get<SinkBS>(*res.target).sink)}};
        else
            rep["target"] = {{"kind", "class"},
                             {"class", std::get<ClassBS>(*res.target).cls.str()}};
        rep["structure_maps_match"] = res.structure_maps_match;
    } else {
        std::string w;
        for (const auto& [p, c] : *res.witness)
            lpa::detail::append_term(w, c, X.point_name(p));
        rep["witness"] = w;
        rep["witness_proper"] = res.witness_proper;
    }
    json table;
    for (const auto& [p, tr] : res.trace_table) table[X.point_name(p)] = tr;
    rep["trace_table"] = table;
    int code = 0;
    if (!o.expect.empty()) {
        std::string verdict = res.irreducible ? "irreducible" : "reducible";
        if (verdict != o.expect) code = 1;
    }
    return emit(rep, o, code);
}

int cmd_wedderburn(const CommonOpts& o) {
    Quiver q = parse_quiver(read_file(o.quiver_file));
    FieldSpec f = make_field(o.field);
    SpecialEdgeChoice sp = make_special(q, o.special_edges);
    WedderburnData w = wedderburn(q, f, sp);
    json rep = base_report("wedderburn", o, q);
    json blocks = json::array();
    for (const auto& b : w.blocks)
        blocks.push_back(
            {{"sink", q.vertex_name(b.sink)}, {"n", b.paths.size()}});
    rep["blocks"] = blocks;
    rep["dim"] = w.dim;
    rep["reduced_basis_count"] = w.reduced_basis_count;
    rep["multiplication_ok"] = w.multiplication_ok;
    rep["dimension_ok"] = w.dimension_ok;
    bool ok = w.multiplication_ok && w.dimension_ok;
    rep["verdict"] = ok ? "Verified" : "Failed";
    return emit(rep, o, ok ? 0 : 1);
}

json witness_json(const WitnessReport& w) {
    json r;
    r["element"] = serialize_element(w.input);
    r["probe"] = serialize_vector(w.probe);
    r["result"] = serialize_vector(w.result);
    if (w.lambda) r["lambda"] = w.lambda->str();
    r["verdict"] = w.nonzero ? "Nonzero" : "Zero";
    return r;
}

int cmd_faithful(const CommonOpts& o, const std::string& elem_text, bool twisted) {
    Quiver q = parse_quiver(read_file(o.quiver_file));
    FieldSpec f = make_field(o.field);
    SpecialEdgeChoice sp = make_special(q, o.special_edges);
    AlgebraElement u = parse_element(elem_text, q, f);
    json rep = base_report(twisted ? "sfaithful" : "faithful", o, q);
    rep["element"] = elem_text;
    try {
        WitnessReport w = twisted ? s_faithfulness_witness(u, sp)
                                  : faithfulness_witness(u, sp);
        rep.update(witness_json(w));
        return emit(rep, o, 0);
    } catch (const HypothesisFailed& e) {
        if (!twisted && o.escalate) {
            rep["command"] = "sfaithful";
            rep["escalated_from"] = "faithful";
            WitnessReport w = s_faithfulness_witness(u, sp);
            rep.update(witness_json(w));
            return emit(rep, o, 0);
        }
        rep["verdict"] = "HypothesisFailed";
        rep["vertex"] = e.vertex;
        return emit(rep, o, 1);
    } catch (const NoWitnessInFiniteField&) {
        rep["verdict"] = "NoWitnessInFiniteField";
        rep["nonzero_input"] = !reduce(u, sp).empty_support();
        return emit(rep, o, 1);
    } catch (const ZeroElement&) {
        rep["verdict"] = "ZeroInput";
        return emit(rep, o, 2);
    }
}

int cmd_twist_iso(const CommonOpts& o, const std::string& cycle_text,
                  const std::string& a_text, const std::string& b_text) {
    Quiver q = parse_quiver(read_file(o.quiver_file));
    FieldSpec f = make_field(o.field);
    FNVector cv = parse_vector(cycle_text, q, f);
    if (cv.f.size() != 1 || !cv.n.empty())
        throw std::invalid_argument("--cycle must be a single infinite path");
    TailClass cls(cv.f.begin()->first);
    ScalingVector a = parse_scaling(q, f, a_text);
    ScalingVector b = parse_scaling(q, f, b_text);
    TwistResult res = twist_iso(a, b, cls, o.window);
    json rep = base_report("twist-iso", o, q);
    rep["class"] = cls.str();
    rep["a_eigenvalue"] = twist_eigenvalue(a, cls).str();
    rep["b_eigenvalue"] = twist_eigenvalue(b, cls).str();
    int code = 0;
    if (std::holds_alternative<TwistIso>(res)) {
        const auto& iso = std::get<TwistIso>(res);
        rep["verdict"] = "Iso";
        rep["hom_ok"] = iso.hom_ok;
        json theta;
        for (const auto& [p, s] : iso.theta) theta[p.str()] = s.str();
        rep["theta"] = theta;
        if (!iso.hom_ok) code = 1;
        if (!o.expect.empty() && o.expect != "iso") code = 1;
    } else {
        rep["verdict"] = "Distinguisher";
        if (!o.expect.empty() && o.expect != "distinguisher") code = 1;
    }
    return emit(rep, o, code);
}

int cmd_linepoints(const CommonOpts& o) {
    Quiver q = parse_quiver(read_file(o.quiver_file));
    FieldSpec f = make_field(o.field);
    SpecialEdgeChoice sp = make_special(q, o.special_edges);
    json rep = base_report("linepoints", o, q);
    json pts = json::array();
    for (const auto& lp : line_points(q)) {
        LinePointIso iso = line_point_iso(q, lp.vertex, f, sp, o.window);
        pts.push_back({{"vertex", q.vertex_name(lp.vertex)},
                       {"end", q.vertex_name(lp.end)},
                       {"path", iso.connecting_path.str()},
                       {"idempotent_identities", iso.idempotent_identities},
                       {"hom_ok", iso.hom_ok}});
    }
    rep["line_points"] = pts;
    return emit(rep, o, 0);
}

int cmd_independence(const CommonOpts& o, const std::string& mode_text,
                     const std::vector<std::string>& mono_texts) {
    Quiver q = parse_quiver(read_file(o.quiver_file));
    FieldSpec f = make_field(o.field);
    std::vector<Monomial> monos;
    for (const auto& t : mono_texts) {
        AlgebraElement e = parse_element(t, q, f);
        if (e.terms().size() != 1 || !e.terms().begin()->second.is_one())
            throw std::invalid_argument("not a plain monomial: " + t);
        monos.push_back(e.terms().begin()->first);
    }
    IndependenceMode mode;
    if (mode_text == "sink") {
        mode = SinkEnding{};
    } else if (mode_text.rfind("fixed:", 0) == 0) {
        auto rest = mode_text.substr(6);
        auto comma = rest.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("fixed mode wants fixed:<m>,<n>");
        mode = FixedLengths{std::stoi(rest.substr(0, comma)),
                            std::stoi(rest.substr(comma + 1))};
    } else {
        throw std::invalid_argument("bad mode: " + mode_text +
                                    " (want sink or fixed:<m>,<n>)");
    }
    IndependenceReport r = independence_witness(monos, mode, f);
    json rep = base_report("independence", o, q);
    rep["mode"] = mode_text;
    json ms = json::array();
    for (const auto& m : monos) ms.push_back(m.str());
    rep["monomials"] = ms;
    json probes = json::array();
    for (const auto& p : r.probes) probes.push_back(serialize_vector(p));
    rep["probes"] = probes;
    rep["rank"] = r.rank;
    rep["full_rank"] = r.full_rank;
    rep["verdict"] = r.full_rank ? "Independent" : "RankDeficient";
    return emit(rep, o, r.full_rank ? 0 : 1);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact computer algebra for Leavitt path algebras of finite quivers"};
    app.require_subcommand(1);

    CommonOpts o;
    std::string elem_text, vec_text, target_text, bs_file, mode_text;
    std::string cycle_text, a_text, b_text;
    std::vector<std::string> elems, monos;

    auto* normalize = app.add_subcommand("normalize", "reduce an element to normal form");
    add_common(normalize, o);
    normalize->add_option("-e,--element", elem_text, "element expression")->required();

    auto* mul = app.add_subcommand("mul", "multiply two elements");
    add_common(mul, o);
    mul->add_option("-e,--element", elems, "two element expressions")
        ->expected(2)
        ->required();

    auto* act = app.add_subcommand("act", "act an element on a module vector");
    add_common(act, o);
    act->add_option("-e,--element", elem_text, "element expression")->required();
    act->add_option("-v,--vector", vec_text, "module vector expression")->required();

    auto* relcheck = app.add_subcommand("relcheck", "verify the defining relations");
    add_common(relcheck, o);

    auto* certify = app.add_subcommand(
        "certify", "irreducibility certificate: drive a vector onto a target");
    add_common(certify, o);
    certify->add_option("-v,--vector", vec_text, "module vector")->required();
    certify->add_option("-t,--target", target_text, "target basis path")->required();

    auto* classify = app.add_subcommand("classify-bs", "classify a branching system");
    add_common(classify, o);
    classify->add_option("system", bs_file, "branching-system file")->required();

    auto* wedder = app.add_subcommand("wedderburn",
                                      "matrix decomposition of an acyclic quiver");
    add_common(wedder, o);

    auto* faithful = app.add_subcommand("faithful", "faithfulness witness search");
    add_common(faithful, o);
    faithful->add_option("-e,--element", elem_text, "element expression")->required();

    auto* sfaithful =
        app.add_subcommand("sfaithful", "twisted-sum faithfulness witness search");
    add_common(sfaithful, o);
    sfaithful->add_option("-e,--element", elem_text, "element expression")->required();

    auto* twist = app.add_subcommand("twist-iso", "compare two twisted components");
    add_common(twist, o);
    twist->add_option("--cycle", cycle_text, "class representative, e.g. (a)^inf")
        ->required();
    twist->add_option("-a", a_text, "first scaling, e.g. a=2,b=1")->required();
    twist->add_option("-b", b_text, "second scaling")->required();

    auto* linepoints = app.add_subcommand("linepoints", "find and verify line points");
    add_common(linepoints, o);

    auto* indep = app.add_subcommand("independence", "linear-independence probes");
    add_common(indep, o);
    indep->add_option("--mode", mode_text, "sink | fixed:<m>,<n>")->required();
    indep->add_option("-m,--monomial", monos, "monomial expressions")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (normalize->parsed()) return cmd_normalize(o, elem_text);
        if (mul->parsed()) return cmd_mul(o, elems);
        if (act->parsed()) return cmd_act(o, elem_text, vec_text);
        if (relcheck->parsed()) return cmd_relcheck(o);
        if (certify->parsed()) return cmd_certify(o, vec_text, target_text);
        if (classify->parsed()) return cmd_classify_bs(o, bs_file);
        if (wedder->parsed()) return cmd_wedderburn(o);
        if (faithful->parsed()) return cmd_faithful(o, elem_text, false);
        if (sfaithful->parsed()) return cmd_faithful(o, elem_text, true);
        if (twist->parsed()) return cmd_twist_iso(o, cycle_text, a_text, b_text);
        if (linepoints->parsed()) return cmd_linepoints(o);
        if (indep->parsed()) return cmd_independence(o, mode_text, monos);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    std::cerr << "error: no subcommand\n";
    return 2;
}
