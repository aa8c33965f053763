#include "qvm/quiver.hpp"

#include <set>

#include "qvm/mutation.hpp"

namespace qvm {

mutation::Flags& mutation::flags() {
    static Flags f;
    return f;
}

int QuiverMult::index(const std::string& name) const {
    for (int i = 0; i < size(); ++i)
        if (names[i] == name) return i;
    fail(ErrorKind::Parse, "unknown vertex '" + name + "'");
}

int QuiverMult::arrow_index(const std::string& id) const {
    for (size_t a = 0; a < arrows.size(); ++a)
        if (arrows[a].id == id) return static_cast<int>(a);
    fail(ErrorKind::Parse, "unknown arrow '" + id + "'");
}

void QuiverMult::validate() const {
    require_shape(mult.size() == names.size(), "one multiplicity per vertex");
    std::set<std::string> seen(names.begin(), names.end());
    if (seen.size() != names.size()) fail(ErrorKind::Parse, "duplicate vertex name");
    for (int d : mult)
        if (d < 1) fail(ErrorKind::Parse, "multiplicities must be >= 1");
    std::set<std::string> ids;
    for (const Arrow& a : arrows) {
        if (!ids.insert(a.id).second) fail(ErrorKind::Parse, "duplicate arrow id '" + a.id + "'");
        if (a.out < 0 || a.out >= size() || a.in < 0 || a.in >= size())
            fail(ErrorKind::Parse, "arrow '" + a.id + "' has an unknown endpoint");
        if (a.out == a.in) fail(ErrorKind::Parse, "arrow '" + a.id + "' is a loop");
    }
}

bool operator==(const QuiverMult& a, const QuiverMult& b) {
    if (a.names != b.names || a.mult != b.mult || a.arrows.size() != b.arrows.size()) return false;
    for (size_t k = 0; k < a.arrows.size(); ++k)
        if (a.arrows[k].id != b.arrows[k].id || a.arrows[k].out != b.arrows[k].out || a.arrows[k].in != b.arrows[k].in)
            return false;
    return true;
}

QuiverMult star_quiver(const std::vector<int>& leg_mult) {
    QuiverMult q;
    q.names.push_back("0");
    q.mult.push_back(1);
    for (size_t i = 0; i < leg_mult.size(); ++i) {
        q.names.push_back(std::to_string(i + 1));
        q.mult.push_back(leg_mult[i]);
        q.arrows.push_back({"a" + std::to_string(i + 1), static_cast<int>(i + 1), 0});
    }
    q.validate();
    return q;
}

QuiverMult chain_quiver(const std::vector<int>& mult) {
    QuiverMult q;
    for (size_t i = 0; i < mult.size(); ++i) {
        q.names.push_back(std::to_string(i));
        q.mult.push_back(mult[i]);
        if (i > 0) q.arrows.push_back({"e" + std::to_string(i), static_cast<int>(i - 1), static_cast<int>(i)});
    }
    q.validate();
    return q;
}

Lambda zero_lambda(const QuiverMult& q) {
    Lambda lam;
    for (int d : q.mult) lam.emplace_back(d, Gauss(0));
    return lam;
}

std::vector<Gauss> residues(const Lambda& lam) {
    std::vector<Gauss> r;
    for (const auto& l : lam) r.push_back(l.empty() ? Gauss(0) : l[0]);
    return r;
}

std::vector<HalfArrow> half_arrows(const QuiverMult& q) {
    std::vector<HalfArrow> h;
    for (size_t a = 0; a < q.arrows.size(); ++a) {
        const Arrow& ar = q.arrows[a];
        h.push_back({static_cast<int>(a), false, ar.out, ar.in, +1});
        h.push_back({static_cast<int>(a), true, ar.in, ar.out, -1});
    }
    return h;
}

} // namespace qvm
