#include "qvm/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace qvm::io {

namespace {

const json& member(const json& j, const char* key, const std::string& where) {
    if (!j.is_object() || !j.contains(key)) fail(ErrorKind::Parse, where + ": missing \"" + key + "\"");
    return j.at(key);
}

void expect(bool ok, const std::string& what) {
    if (!ok) fail(ErrorKind::Parse, what);
}

Rat rational_part(const json& j, Warnings& w, const std::string& where) {
    Gauss g = scalar_from_json(j, w, where);
    expect(g.is_real(), where + ": real and imaginary parts must be rational");
    return g.re();
}

int to_int(const json& j, const std::string& where) {
    expect(j.is_number_integer(), where + ": integer expected");
    return j.get<int>();
}

} // namespace

json scalar_to_json(const Gauss& x) {
    if (x.is_real()) return x.re().get_str();
    return json{{"re", x.re().get_str()}, {"im", x.im().get_str()}};
}

Gauss scalar_from_json(const json& j, Warnings& w, const std::string& where) {
    if (j.is_number_integer()) return Gauss(Rat(j.get<long>()));
    if (j.is_string()) {
        bool reduced = true;
        Gauss g = Gauss::parse(j.get<std::string>(), &reduced);
        if (!reduced) w.push_back(where + ": \"" + j.get<std::string>() + "\" reduced to " + g.str());
        return g;
    }
    if (j.is_object()) {
        expect(j.size() == 2 && j.contains("re") && j.contains("im"), where + ": complex scalars need exactly re and im");
        return Gauss(rational_part(j.at("re"), w, where + ".re"), rational_part(j.at("im"), w, where + ".im"));
    }
    fail(ErrorKind::Parse, where + ": scalar must be a string, an integer or {re, im}");
}

json matrix_to_json(const GMat& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json r = json::array();
        for (int k = 0; k < m.cols(); ++k) r.push_back(scalar_to_json(m(i, k)));
        rows.push_back(std::move(r));
    }
    return rows;
}

GMat matrix_from_json(const json& j, int rows, int cols, Warnings& w, const std::string& where) {
    expect(j.is_array(), where + ": matrix must be an array of rows");
    const int r = static_cast<int>(j.size());
    int c = r ? -1 : cols;
    for (const auto& row : j) {
        expect(row.is_array(), where + ": matrix rows must be arrays");
        if (c < 0) c = static_cast<int>(row.size());
        require_shape(static_cast<int>(row.size()) == c, where + ": ragged rows");
    }
    if (rows >= 0 && cols >= 0 && (r != rows || c != cols))
        fail(ErrorKind::ShapeMismatch, where + ": expected " + std::to_string(rows) + "x" + std::to_string(cols) + ", got " +
                                           std::to_string(r) + "x" + std::to_string(std::max(c, 0)));
    GMat m(r, std::max(c, 0));
    for (int i = 0; i < r; ++i)
        for (int k = 0; k < c; ++k)
            m(i, k) = scalar_from_json(j[i][k], w, where + "[" + std::to_string(i) + "][" + std::to_string(k) + "]");
    return m;
}

json quiver_to_json(const QuiverMult& q) {
    json arrows = json::array();
    for (const Arrow& a : q.arrows) arrows.push_back({{"id", a.id}, {"out", q.names[a.out]}, {"in", q.names[a.in]}});
    json mult = json::object();
    for (int i = 0; i < q.size(); ++i) mult[q.names[i]] = q.mult[i];
    return json{{"vertices", q.names}, {"arrows", arrows}, {"mult", mult}};
}

QuiverMult quiver_from_json(const json& j) {
    QuiverMult q;
    const json& vs = member(j, "vertices", "quiver");
    expect(vs.is_array(), "quiver: vertices must be an array");
    for (const auto& v : vs) {
        expect(v.is_string(), "quiver: vertex names must be strings");
        q.names.push_back(v.get<std::string>());
    }
    q.mult.assign(q.names.size(), 1);
    auto vertex = [&](const json& x, const std::string& where) {
        expect(x.is_string(), where + ": vertex name expected");
        auto it = std::find(q.names.begin(), q.names.end(), x.get<std::string>());
        expect(it != q.names.end(), where + ": unknown vertex '" + x.get<std::string>() + "'");
        return static_cast<int>(it - q.names.begin());
    };
    if (j.contains("arrows")) {
        expect(j["arrows"].is_array(), "quiver: arrows must be an array");
        for (const auto& a : j["arrows"]) {
            const json& id = member(a, "id", "quiver arrow");
            expect(id.is_string(), "quiver: arrow id must be a string");
            const std::string where = "arrow '" + id.get<std::string>() + "'";
            q.arrows.push_back({id.get<std::string>(), vertex(member(a, "out", where), where), vertex(member(a, "in", where), where)});
        }
    }
    if (j.contains("mult")) {
        expect(j["mult"].is_object(), "quiver: mult must be an object");
        for (const auto& [name, d] : j["mult"].items()) q.mult[vertex(json(name), "mult")] = to_int(d, "mult of " + name);
    }
    q.validate();
    return q;
}

json dims_to_json(const QuiverMult& q, const IntVec& v) {
    require_shape(static_cast<int>(v.size()) == q.size(), "one dimension per vertex");
    json j = json::object();
    for (int i = 0; i < q.size(); ++i) j[q.names[i]] = v[i];
    return j;
}

IntVec dims_from_json(const json& j, const QuiverMult& q) {
    expect(j.is_object(), "dims: object expected");
    IntVec v(q.size());
    for (int i = 0; i < q.size(); ++i) {
        const json& x = member(j, q.names[i].c_str(), "dims");
        expect(x.is_number_integer() && x.get<long long>() >= 0, "dims: vertex " + q.names[i] + " needs a non-negative integer");
        v[i] = x.get<long long>();
    }
    expect(static_cast<int>(j.size()) == q.size(), "dims: entries for unknown vertices");
    return v;
}

json lambda_to_json(const QuiverMult& q, const Lambda& lam) {
    require_shape(static_cast<int>(lam.size()) == q.size(), "one parameter per vertex");
    json j = json::object();
    for (int i = 0; i < q.size(); ++i) j[q.names[i]] = scalars_to_json(lam[i]);
    return j;
}

Lambda lambda_from_json(const json& j, const QuiverMult& q, Warnings& w) {
    expect(j.is_object(), "lambda: object expected");
    Lambda lam(q.size());
    for (int i = 0; i < q.size(); ++i) {
        const std::string where = "lambda." + q.names[i];
        lam[i] = scalars_from_json(member(j, q.names[i].c_str(), "lambda"), w, where);
        require_shape(static_cast<int>(lam[i].size()) == q.mult[i],
                      where + ": " + std::to_string(q.mult[i]) + " coefficients expected");
    }
    expect(static_cast<int>(j.size()) == q.size(), "lambda: entries for unknown vertices");
    return lam;
}

json rep_to_json(const GRep& B) {
    json mats = json::object();
    for (size_t a = 0; a < B.quiver.arrows.size(); ++a)
        mats[B.quiver.arrows[a].id] = {{"fwd", matrix_to_json(B.fwd[a])}, {"bwd", matrix_to_json(B.bwd[a])}};
    return json{{"quiver", quiver_to_json(B.quiver)}, {"dims", dims_to_json(B.quiver, B.dims)}, {"mats", mats}};
}

GRep rep_from_json(const json& j, Warnings& w) {
    QuiverMult q = quiver_from_json(member(j, "quiver", "rep"));
    GRep B = zero_point<Gauss>(q, dims_from_json(member(j, "dims", "rep"), q));
    const json& mats = member(j, "mats", "rep");
    expect(mats.is_object(), "rep: mats must be an object");
    for (size_t a = 0; a < q.arrows.size(); ++a) {
        const std::string& id = q.arrows[a].id;
        const std::string where = "arrow '" + id + "'";
        const json& m = member(mats, id.c_str(), "rep.mats");
        B.fwd[a] = matrix_from_json(member(m, "fwd", where), B.fwd[a].rows(), B.fwd[a].cols(), w, where + " fwd");
        B.bwd[a] = matrix_from_json(member(m, "bwd", where), B.bwd[a].rows(), B.bwd[a].cols(), w, where + " bwd");
    }
    expect(mats.size() == q.arrows.size(), "rep: matrices for unknown arrows");
    B.check_shapes();
    return B;
}

json system_to_json(const MeromorphicSystem& A) {
    json poles = json::array();
    for (int i = 0; i < A.size(); ++i) {
        json coeffs = json::array();
        for (const auto& m : A.parts[i].c) coeffs.push_back(matrix_to_json(m));
        poles.push_back({{"t", scalar_to_json(A.poles[i])}, {"order", A.order(i)}, {"coeffs", coeffs}});
    }
    return json{{"rank", A.n}, {"poles", poles}};
}

MeromorphicSystem system_from_json(const json& j, Warnings& w) {
    MeromorphicSystem A;
    A.n = to_int(member(j, "rank", "system"), "system.rank");
    expect(A.n >= 0, "system: negative rank");
    const json& ps = member(j, "poles", "system");
    expect(ps.is_array(), "system: poles must be an array");
    for (size_t i = 0; i < ps.size(); ++i) {
        const std::string where = "system.poles[" + std::to_string(i) + "]";
        A.poles.push_back(scalar_from_json(member(ps[i], "t", where), w, where + ".t"));
        const json& cs = member(ps[i], "coeffs", where);
        expect(cs.is_array() && !cs.empty(), where + ": coeffs must be a non-empty array");
        const int k = static_cast<int>(cs.size());
        if (ps[i].contains("order") && to_int(ps[i]["order"], where + ".order") != k)
            fail(ErrorKind::ShapeMismatch, where + ": order differs from the number of coefficients");
        PrincipalPart<Gauss> p(A.n, k);
        for (int m = 1; m <= k; ++m)
            p.coeff(m) = matrix_from_json(cs[m - 1], A.n, A.n, w, where + ".coeffs[" + std::to_string(m - 1) + "]");
        A.parts.push_back(std::move(p));
    }
    A.validate();
    return A;
}

json scalars_to_json(const std::vector<Gauss>& xs) {
    json j = json::array();
    for (const auto& x : xs) j.push_back(scalar_to_json(x));
    return j;
}

std::vector<Gauss> scalars_from_json(const json& j, Warnings& w, const std::string& where) {
    expect(j.is_array(), where + ": array expected");
    std::vector<Gauss> out;
    for (size_t k = 0; k < j.size(); ++k) out.push_back(scalar_from_json(j[k], w, where + "[" + std::to_string(k) + "]"));
    return out;
}

const QuiverMult* Bundle::base_quiver() const {
    if (quiver) return &*quiver;
    if (rep) return &rep->quiver;
    return nullptr;
}

void Bundle::check() const {
    if (quiver && rep && !(rep->quiver == *quiver)) fail(ErrorKind::GraphMismatch, "bundle: rep lives on another quiver");
    const QuiverMult* q = base_quiver();
    if ((dims || lambda) && !q) fail(ErrorKind::Parse, "bundle: dims and lambda need a quiver");
    if (dims) require_shape(static_cast<int>(dims->size()) == q->size(), "bundle: one dimension per vertex");
    if (dims && rep && *dims != rep->dims) fail(ErrorKind::ShapeMismatch, "bundle: dims differ from the dims of rep");
    if (lambda) {
        require_shape(static_cast<int>(lambda->size()) == q->size(), "bundle: one parameter per vertex");
        for (int i = 0; i < q->size(); ++i)
            require_shape(static_cast<int>((*lambda)[i].size()) == q->mult[i], "bundle: lambda order at vertex " + q->names[i]);
    }
    if (rep) rep->check_shapes();
    if (system) system->validate();
    if (system && poles && static_cast<int>(poles->size()) != system->size())
        fail(ErrorKind::ShapeMismatch, "bundle: poles differ in number from the system");
}

Bundle bundle_from_json(const json& j, Warnings& w) {
    expect(j.is_object(), "bundle: object expected");
    Bundle b;
    if (j.contains("quiver")) b.quiver = quiver_from_json(j["quiver"]);
    if (j.contains("rep")) b.rep = rep_from_json(j["rep"], w);
    if (b.quiver && b.rep && !(b.rep->quiver == *b.quiver)) fail(ErrorKind::GraphMismatch, "bundle: rep lives on another quiver");
    const QuiverMult* q = b.base_quiver();
    if ((j.contains("dims") || j.contains("lambda")) && !q) fail(ErrorKind::Parse, "bundle: dims and lambda need a quiver");
    if (j.contains("dims")) b.dims = dims_from_json(j["dims"], *q);
    if (j.contains("lambda")) b.lambda = lambda_from_json(j["lambda"], *q, w);
    if (j.contains("system")) b.system = system_from_json(j["system"], w);
    if (j.contains("poles")) b.poles = scalars_from_json(j["poles"], w, "poles");
    if (j.contains("seed")) {
        expect(j["seed"].is_number_unsigned(), "bundle: seed must be a non-negative integer");
        b.seed = j["seed"].get<std::uint64_t>();
    }
    for (const auto& [key, val] : j.items())
        if (key != "quiver" && key != "rep" && key != "dims" && key != "lambda" && key != "system" && key != "poles" &&
            key != "seed")
            b.extra[key] = val;
    b.check();
    return b;
}

json bundle_to_json(const Bundle& b) {
    b.check();
    json j = b.extra;
    const QuiverMult* q = b.base_quiver();
    if (b.quiver) j["quiver"] = quiver_to_json(*b.quiver);
    if (b.rep) j["rep"] = rep_to_json(*b.rep);
    if (b.dims) j["dims"] = dims_to_json(*q, *b.dims);
    if (b.lambda) j["lambda"] = lambda_to_json(*q, *b.lambda);
    if (b.system) j["system"] = system_to_json(*b.system);
    if (b.poles) j["poles"] = scalars_to_json(*b.poles);
    if (b.seed) j["seed"] = *b.seed;
    return j;
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::Parse, "cannot read " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        fail(ErrorKind::Parse, path + ": " + e.what());
    }
}

void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) fail(ErrorKind::Parse, "cannot write " + path);
    out << j.dump(2) << "\n";
}

Bundle parse_bundle(const std::string& path, Warnings& w) { return bundle_from_json(read_json_file(path), w); }

void serialize_bundle(const Bundle& b, const std::string& path) { write_json_file(path, bundle_to_json(b)); }

} // namespace qvm::io
