#include "qvm/catalog.hpp"

#include "qvm/normalization.hpp"

namespace qvm {

std::string NormalizationStep::weyl_decomposition() const {
    return "W(" + from + ") = W(" + to + ") x| Z/2";
}

std::string NormalizationChain::arrows() const {
    std::string s = type;
    for (const auto& st : steps) s += " -> " + st.to;
    return s;
}

NormalizationChain normalization_chain(const QuiverMult& q, int weyl_trials) {
    NormalizationChain ch;
    ch.start = q;
    ch.type = classify_dynkin_type(cartan_data(q).C);
    QuiverMult cur = q;
    std::string cur_type = ch.type;
    // each step lowers the total multiplicity, so this ends
    for (;;) {
        int pole = -1;
        for (int i = 0; i < cur.size() && pole < 0; ++i)
            if (pole_vertex_info(cur, i).is_irregular) pole = i;
        if (pole < 0) break;
        NormalizedQuiver nq = normalize_quiver(cur, pole);
        NormalizationStep st;
        st.pole = cur.names[pole];
        st.base = cur.names[nq.base];
        st.from = cur_type;
        st.to = classify_dynkin_type(cartan_data(nq.q).C);
        st.weyl_checked = phi_weyl_check(cur, pole, weyl_trials, 7).all();
        ch.steps.push_back(st);
        cur = nq.q;
        cur_type = st.to;
    }
    return ch;
}

const std::vector<std::vector<int>>& painleve_tuples(int moduli_dim) {
    static const std::vector<std::vector<int>> zero = {{1, 1, 1}, {2, 1}, {3}};
    static const std::vector<std::vector<int>> two = {{1, 1, 1, 1}, {2, 1, 1}, {3, 1}, {2, 2}, {4}};
    if (moduli_dim == 0) return zero;
    if (moduli_dim == 2) return two;
    fail(ErrorKind::ShapeMismatch, "tuples are listed for dimensions 0 and 2 only");
}

PainleveReport catalog_painleve() {
    PainleveReport rep;
    for (int dim : {0, 2})
        for (const auto& legs : painleve_tuples(dim)) {
            PainleveRow r;
            r.legs = legs;
            r.moduli_dim = dim;
            r.quiver = star_quiver(legs);
            r.v.assign(r.quiver.size(), 1);
            r.v[0] = 2;
            CartanData cd = cartan_data(r.quiver);
            r.type = classify_dynkin_type(cd.C);
            r.expected = expected_dim(cd, r.v);
            r.chain = normalization_chain(r.quiver);
            rep.rows.push_back(std::move(r));
        }
    for (const auto& m : std::vector<std::vector<int>>{{2, 1, 1, 1}, {2, 1, 1, 2}, {2, 1, 1, 1, 2}})
        rep.related.push_back(normalization_chain(chain_quiver(m)));
    return rep;
}

} // namespace qvm
