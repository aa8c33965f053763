#include "qvm/cli.hpp"

#include <CLI11.hpp>

#include <iomanip>
#include <ostream>
#include <sstream>

#include "qvm/normalization.hpp"
#include "qvm/reflection.hpp"

namespace qvm::cli {

namespace {

using io::json;

std::string tuple_str(const std::vector<int>& xs) {
    std::string s = "(";
    for (size_t k = 0; k < xs.size(); ++k) s += (k ? "," : "") + std::to_string(xs[k]);
    return s + ")";
}

std::string chain_text(const NormalizationChain& ch) {
    if (ch.steps.empty()) return "no irregular pole";
    std::string s = ch.arrows();
    for (const auto& st : ch.steps)
        s += "\n      at " + st.pole + " (base " + st.base + "): " + st.weyl_decomposition() + (st.weyl_checked ? "" : "  [check failed]");
    return s;
}

json chain_json(const NormalizationChain& ch) {
    json steps = json::array();
    for (const auto& st : ch.steps)
        steps.push_back({{"pole", st.pole},
                         {"base", st.base},
                         {"from", st.from},
                         {"to", st.to},
                         {"weyl", st.weyl_decomposition()},
                         {"weyl_checked", st.weyl_checked}});
    return json{{"type", ch.type}, {"chain", ch.arrows()}, {"steps", steps}};
}

// A section of a document: doc[key] when the document is a bundle carrying it, else the document.
json section(const json& doc, const char* key) {
    if (doc.is_object() && doc.contains(key)) return doc.at(key);
    return doc;
}

void write_output(const json& j, const std::string& path, std::ostream& out) {
    if (path.empty())
        out << j.dump(2) << "\n";
    else
        io::write_json_file(path, j);
}

void print_warnings(const io::Warnings& w, std::ostream& err) {
    for (const auto& s : w) err << "warning: " << s << "\n";
}

int vertex_index(const QuiverMult& q, const std::string& name) {
    int i = q.index(name);
    if (i < 0) fail(ErrorKind::Parse, "unknown vertex '" + name + "'");
    return i;
}

std::vector<int> parse_word(const QuiverMult& q, const std::string& word) {
    std::istringstream in(word);
    std::vector<int> out;
    for (std::string tok; in >> tok;) out.push_back(vertex_index(q, tok));
    return out;
}

std::string int_row(const IntVec& r) {
    std::ostringstream os;
    for (long long x : r) os << std::setw(4) << x;
    return os.str();
}

struct Args {
    std::string quiver, lambda, dims, rep, system, vertex, word, zeta, out, poles, format = "text", suite;
    std::uint64_t seed = 1;
    int points = 3, trials = 100;
};

int quiver_analyze(const Args& a, std::ostream& out, std::ostream& err) {
    io::Warnings w;
    json doc = io::read_json_file(a.quiver);
    QuiverMult q = io::quiver_from_json(section(doc, "quiver"));
    CartanData cd = cartan_data(q);
    std::optional<IntVec> v;
    if (!a.dims.empty()) v = io::dims_from_json(section(io::read_json_file(a.dims), "dims"), q);
    print_warnings(w, err);
    std::vector<std::string> poles;
    for (int i = 0; i < q.size(); ++i)
        if (pole_vertex_info(q, i).is_irregular) poles.push_back(q.names[i]);
    const std::string type = classify_dynkin_type(cd.C);
    if (a.format == "json") {
        json j{{"vertices", q.names}, {"cartan", cd.C}, {"type", type.empty() ? "unrecognized" : type}, {"irregular_poles", poles}};
        if (v) {
            j["root"] = root_kind_name(classify_root(cd, *v));
            j["expected_dim"] = expected_dim(cd, *v);
        }
        out << j.dump(2) << "\n";
        return Ok;
    }
    out << "vertices:";
    for (int i = 0; i < q.size(); ++i) out << " " << q.names[i] << "(d=" << q.mult[i] << ")";
    out << "\ncartan matrix:\n";
    for (const auto& r : cd.C) out << " " << int_row(r) << "\n";
    out << "type: " << (type.empty() ? "unrecognized" : type) << "\n";
    out << "irregular poles:";
    for (const auto& p : poles) out << " " << p;
    out << (poles.empty() ? " none\n" : "\n");
    if (v) {
        out << "dimension vector:" << int_row(*v) << "\n";
        out << "root: " << root_kind_name(classify_root(cd, *v)) << "\n";
        out << "expected dimension: " << expected_dim(cd, *v) << "\n";
    }
    return Ok;
}

int weyl_act(const Args& a, std::ostream& out, std::ostream& err) {
    io::Warnings w;
    json doc = io::read_json_file(a.quiver);
    io::Bundle b;
    b.quiver = io::quiver_from_json(section(doc, "quiver"));
    const QuiverMult& q = *b.quiver;
    IntVec v(q.size(), 0);
    Lambda lam = zero_lambda(q);
    if (!a.dims.empty()) v = io::dims_from_json(section(io::read_json_file(a.dims), "dims"), q);
    if (!a.lambda.empty()) lam = io::lambda_from_json(section(io::read_json_file(a.lambda), "lambda"), q, w);
    print_warnings(w, err);
    WeylImage img = apply_weyl_word(cartan_data(q), parse_word(q, a.word), v, lam);
    b.dims = img.v;
    b.lambda = img.lam;
    write_output(io::bundle_to_json(b), a.out, out);
    return Ok;
}

struct PointInput {
    GRep B;
    Lambda lam;
};

PointInput read_point(const Args& a, std::ostream& err) {
    io::Warnings w;
    GRep B = io::rep_from_json(section(io::read_json_file(a.rep), "rep"), w);
    Lambda lam = io::lambda_from_json(section(io::read_json_file(a.lambda), "lambda"), B.quiver, w);
    print_warnings(w, err);
    return {std::move(B), std::move(lam)};
}

int reflect(const Args& a, std::ostream& out, std::ostream& err) {
    PointInput p = read_point(a, err);
    std::vector<int> word = a.word.empty() ? std::vector<int>{} : parse_word(p.B.quiver, a.word);
    if (!a.vertex.empty()) word.insert(word.begin(), vertex_index(p.B.quiver, a.vertex));
    if (word.empty()) fail(ErrorKind::Parse, "reflect needs --vertex or --word");
    auto r = reflect_word(p.B, p.lam, word);
    io::Bundle b;
    b.rep = r.B;
    b.lambda = r.lam;
    write_output(io::bundle_to_json(b), a.out, out);
    return Ok;
}

int normalize(const Args& a, std::ostream& out, std::ostream& err) {
    PointInput p = read_point(a, err);
    const int i = vertex_index(p.B.quiver, a.vertex);
    auto nb = normalize_point(p.B, p.lam, i);
    io::Bundle b;
    b.quiver = nb.nq.q;
    b.dims = nb.v;
    b.lambda = nb.lam;
    b.rep = nb.B;
    b.extra["normalization"] = {{"original_quiver", io::quiver_to_json(nb.nq.original)},
                                {"pole", nb.nq.q.names[nb.nq.pole]},
                                {"base", nb.nq.q.names[nb.nq.base]},
                                {"pole_lambda", io::scalars_to_json(p.lam[i])},
                                {"frame", io::matrix_to_json(nb.frame)}};
    write_output(io::bundle_to_json(b), a.out, out);
    return Ok;
}

int phi(const Args& a, std::ostream& out, std::ostream& err) {
    io::Warnings w;
    GRep B = io::rep_from_json(section(io::read_json_file(a.rep), "rep"), w);
    std::vector<Gauss> poles;
    if (!a.poles.empty())
        poles = io::scalars_from_json(section(io::read_json_file(a.poles), "poles"), w, "poles");
    else
        for (int k = 1; k < B.quiver.size(); ++k) poles.push_back(Gauss(k - 1));
    print_warnings(w, err);
    io::Bundle b;
    b.system = phi_rep_to_system(B, poles);
    b.poles = poles;
    write_output(io::bundle_to_json(b), a.out, out);
    return Ok;
}

int mc(const Args& a, std::ostream& out, std::ostream& err) {
    io::Warnings w;
    MeromorphicSystem A = io::system_from_json(section(io::read_json_file(a.system), "system"), w);
    Gauss zeta = io::scalar_from_json(json(a.zeta), w, "zeta");
    print_warnings(w, err);
    io::Bundle b;
    b.system = middle_convolution(A, zeta);
    b.poles = b.system->poles;
    write_output(io::bundle_to_json(b), a.out, out);
    return Ok;
}

int catalog(const Args& a, std::ostream& out) {
    PainleveReport r = catalog_painleve();
    if (a.format == "json")
        out << catalog_json(r).dump(2) << "\n";
    else
        out << catalog_text(r);
    return Ok;
}

int selfcheck(const Args& a, std::ostream& out) {
    SuiteOptions opt{a.seed, a.points, a.trials};
    std::vector<SuiteResult> rs;
    if (a.suite.empty())
        rs = run_all_suites(opt);
    else
        rs.push_back(run_suite(a.suite, opt));
    if (a.format == "json")
        out << selfcheck_json(rs, opt).dump(2) << "\n";
    else
        out << selfcheck_text(rs, opt);
    for (const auto& r : rs)
        if (!r.passed()) return PropertyFailure;
    return Ok;
}

} // namespace

std::string catalog_text(const PainleveReport& r) {
    std::ostringstream os;
    int dim = -1;
    for (const auto& row : r.rows) {
        if (row.moduli_dim != dim) {
            dim = row.moduli_dim;
            os << (os.tellp() > 0 ? "\n" : "") << "moduli dimension " << dim << " (star quivers, v = (2,1,...,1))\n";
        }
        os << "  " << std::left << std::setw(10) << tuple_str(row.legs) << std::setw(11) << row.type << "expected dim "
           << row.expected << "   " << chain_text(row.chain) << "\n";
    }
    os << "\nrelated chains (paths with doubled ends)\n";
    for (const auto& ch : r.related) os << "  " << std::left << std::setw(21) << tuple_str(ch.start.mult) << chain_text(ch) << "\n";
    return os.str();
}

json catalog_json(const PainleveReport& r) {
    json rows = json::array();
    for (const auto& row : r.rows)
        rows.push_back({{"tuple", row.legs},
                        {"moduli_dim", row.moduli_dim},
                        {"quiver", io::quiver_to_json(row.quiver)},
                        {"dims", io::dims_to_json(row.quiver, row.v)},
                        {"type", row.type},
                        {"expected_dim", row.expected},
                        {"normalization", chain_json(row.chain)}});
    json related = json::array();
    for (const auto& ch : r.related) {
        json j = chain_json(ch);
        j["mult"] = ch.start.mult;
        related.push_back(j);
    }
    return json{{"rows", rows}, {"related", related}};
}

std::string selfcheck_text(const std::vector<SuiteResult>& rs, const SuiteOptions& opt) {
    std::ostringstream os;
    os << "selfcheck seed=" << opt.seed << " points=" << opt.points << " trials=" << opt.trials << "\n";
    bool all = true;
    for (const auto& r : rs) {
        all = all && r.passed();
        os << (r.passed() ? "PASS " : "FAIL ") << std::left << std::setw(20) << r.name << r.cases << " cases";
        if (r.failures) os << ", " << r.failures << " failed";
        os << "\n";
        if (!r.counterexample.empty()) os << "     counterexample: " << r.counterexample << "\n";
    }
    os << (all ? "all properties hold\n" : "some properties fail\n");
    return os.str();
}

json selfcheck_json(const std::vector<SuiteResult>& rs, const SuiteOptions& opt) {
    json suites = json::array();
    bool all = true;
    for (const auto& r : rs) {
        all = all && r.passed();
        json s{{"name", r.name}, {"passed", r.passed()}, {"cases", r.cases}, {"failures", r.failures}};
        if (!r.counterexample.empty()) s["counterexample"] = r.counterexample;
        suites.push_back(s);
    }
    return json{{"seed", opt.seed}, {"points", opt.points}, {"trials", opt.trials}, {"suites", suites}, {"passed", all}};
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact computations with quiver varieties with multiplicities", "qvm"};
    app.require_subcommand(1);
    Args a;
    auto format = [&](CLI::App* c) { c->add_option("--format", a.format, "text or json")->check(CLI::IsMember({"text", "json"})); };

    auto* quiver = app.add_subcommand("quiver", "quiver tools")->require_subcommand(1);
    auto* analyze = quiver->add_subcommand("analyze", "Cartan matrix, Dynkin type, poles, root data");
    analyze->add_option("--quiver", a.quiver)->required();
    analyze->add_option("--dims", a.dims);
    format(analyze);

    auto* weyl = app.add_subcommand("weyl", "Weyl group actions")->require_subcommand(1);
    auto* act = weyl->add_subcommand("act", "apply a word to (v, lambda); the first letter acts first");
    act->add_option("--quiver", a.quiver)->required();
    act->add_option("--word", a.word)->required();
    act->add_option("--dims", a.dims);
    act->add_option("--lambda", a.lambda);
    act->add_option("--out", a.out);

    auto* refl = app.add_subcommand("reflect", "reflection functor at a vertex, then along --word");
    refl->add_option("--rep", a.rep)->required();
    refl->add_option("--lambda", a.lambda)->required();
    refl->add_option("--vertex", a.vertex);
    refl->add_option("--word", a.word);
    refl->add_option("--out", a.out);

    auto* norm = app.add_subcommand("normalize", "normalization at an irregular pole vertex");
    norm->add_option("--rep", a.rep)->required();
    norm->add_option("--lambda", a.lambda)->required();
    norm->add_option("--vertex", a.vertex)->required();
    norm->add_option("--out", a.out);

    auto* ph = app.add_subcommand("phi", "the system of a star-quiver point");
    ph->add_option("--rep", a.rep)->required();
    ph->add_option("--poles", a.poles, "JSON array of pole positions, one per leg (default 0, 1, ...)");
    ph->add_option("--out", a.out);

    auto* m = app.add_subcommand("mc", "middle convolution");
    m->add_option("--system", a.system)->required();
    m->add_option("--zeta", a.zeta)->required();
    m->add_option("--out", a.out);

    auto* cat = app.add_subcommand("catalog", "classification tables")->require_subcommand(1);
    auto* pain = cat->add_subcommand("painleve", "star quivers of rank-two systems");
    format(pain);

    auto* sc = app.add_subcommand("selfcheck", "run every property suite");
    sc->add_option("--seed", a.seed);
    sc->add_option("--points", a.points, "level points per star")->check(CLI::PositiveNumber);
    sc->add_option("--trials", a.trials, "random inputs for the cheap suites")->check(CLI::PositiveNumber);
    sc->add_option("--suite", a.suite)->check(CLI::IsMember(suite_names()));
    format(sc);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? Ok : InputError;
    }
    try {
        if (analyze->parsed()) return quiver_analyze(a, out, err);
        if (act->parsed()) return weyl_act(a, out, err);
        if (refl->parsed()) return reflect(a, out, err);
        if (norm->parsed()) return normalize(a, out, err);
        if (ph->parsed()) return phi(a, out, err);
        if (m->parsed()) return mc(a, out, err);
        if (pain->parsed()) return catalog(a, out);
        if (sc->parsed()) return selfcheck(a, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return InputError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return InputError;
    }
    return InputError;
}

} // namespace qvm::cli
