// One PASS/FAIL line per acceptance criterion; exit status 0 iff all pass.
#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "qvm/catalog.hpp"
#include "qvm/mutation.hpp"
#include "qvm/properties.hpp"

using namespace qvm;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
    bool ok;
    std::string note;
};

Outcome suite_outcome(const SuiteResult& r, int min_cases) {
    if (!r.passed()) return {false, r.name + ": " + std::to_string(r.failures) + " of " + std::to_string(r.cases) + " failed, " + r.counterexample};
    if (r.cases < min_cases) return {false, r.name + ": only " + std::to_string(r.cases) + " cases"};
    return {true, r.name + ": " + std::to_string(r.cases) + " cases"};
}

// Types as printed in the classification tables.
Outcome painleve_types() {
    const auto t0 = Clock::now();
    PainleveReport rep = catalog_painleve();
    const double dt = seconds_since(t0);
    const std::map<std::vector<int>, std::string> expect = {
        {{1, 1, 1, 1}, "D_4^{(1)}"}, {{2, 1, 1}, "A_5^{(2)}"}, {{3, 1}, "D_4^{(3)}"}, {{2, 2}, "C_2^{(1)}"},
        {{4}, "A_2^{(2)}"},          {{1, 1, 1}, "D_4"},       {{2, 1}, "C_3"},       {{3}, "G_2"},
    };
    int matched = 0;
    for (const auto& row : rep.rows) {
        auto it = expect.find(row.legs);
        if (it == expect.end() || it->second != row.type) return {false, "tuple row has type " + row.type};
        ++matched;
    }
    if (matched != static_cast<int>(expect.size())) return {false, "missing rows"};
    if (dt >= 1.0) return {false, "took " + std::to_string(dt) + " s"};
    return {true, "8 tuples in " + std::to_string(dt) + " s"};
}

Outcome normalization_arrows() {
    PainleveReport rep = catalog_painleve();
    std::map<std::string, std::string> got;
    for (const auto& row : rep.rows) got[row.type] = row.chain.arrows();
    for (const auto& ch : rep.related) got[ch.type] = ch.arrows();
    const std::map<std::string, std::string> expect = {
        {"D_4", "D_4"},
        {"C_4", "C_4 -> D_4"},
        {"C_3", "C_3 -> A_3"},
        {"G_2", "G_2 -> A_2"},
        {"D_4^{(1)}", "D_4^{(1)}"},
        {"A_5^{(2)}", "A_5^{(2)} -> A_3^{(1)}"},
        {"D_4^{(3)}", "D_4^{(3)} -> A_2^{(1)}"},
        {"C_2^{(1)}", "C_2^{(1)} -> D_3^{(2)}"},
        {"A_2^{(2)}", "A_2^{(2)} -> A_1^{(1)}"},
        {"C_4^{(1)}", "C_4^{(1)} -> A_7^{(2)} -> D_4^{(1)}"},
        {"C_3^{(1)}", "C_3^{(1)} -> A_5^{(2)} -> A_3^{(1)}"},
    };
    for (const auto& [type, chain] : expect) {
        auto it = got.find(type);
        if (it == got.end()) return {false, "no chain from " + type};
        if (it->second != chain) return {false, type + " gives " + it->second};
    }
    for (const auto& row : rep.rows)
        for (const auto& st : row.chain.steps)
            if (!st.weyl_checked) return {false, st.weyl_decomposition() + " not confirmed"};
    return {true, std::to_string(expect.size()) + " chains"};
}

Outcome mutation_sanity() {
    SuiteOptions opt;
    opt.trials = 40;
    std::string note;
    for (int which = 0; which < 2; ++which) {
        mutation::Flags f;
        (which == 0 ? f.flip_moment_sign : f.lower_shift) = true;
        mutation::Scope scope(f);
        for (const char* name : {"moment-equivariance", "pole-pair"}) {
            SuiteResult r = run_suite(name, opt);
            if (r.passed()) return {false, std::string(name) + " misses the " + (which == 0 ? "sign" : "shift") + " mutation"};
            note += std::string(note.empty() ? "" : "; ") + (which == 0 ? "sign" : "shift") + " -> " + r.counterexample;
        }
    }
    // and the unmutated suites are clean
    for (const char* name : {"moment-equivariance", "pole-pair"})
        if (!run_suite(name, opt).passed()) return {false, std::string(name) + " fails without mutation"};
    return {true, note};
}

} // namespace

int main() {
    SuiteOptions base;
    base.seed = 20240601;
    auto with = [&](int points, int trials) {
        SuiteOptions o = base;
        o.points = points;
        o.trials = trials;
        return o;
    };

    std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"Painleve type table", painleve_types},
        {"normalization chains", normalization_arrows},
        {"Weyl relations", [&] { return suite_outcome(run_suite("weyl-relations", with(1, 100)), 8 * 100); }},
        {"reflection functor",
         [&] {
             const auto t0 = Clock::now();
             Outcome o = suite_outcome(run_suite("reflection", with(20, 100)), 5 * 20);
             const double dt = seconds_since(t0);
             if (o.ok && dt >= 30.0) return Outcome{false, "took " + std::to_string(dt) + " s"};
             o.note += " in " + std::to_string(dt) + " s";
             return o;
         }},
        {"symplectic preservation", [&] { return suite_outcome(run_suite("symplectic", with(3, 100)), 10); }},
        {"dimension formula", [&] { return suite_outcome(run_suite("dimension", with(1, 100)), 8); }},
        {"shifting-trick identities", [&] { return suite_outcome(run_suite("normalization", with(2, 100)), 10); }},
        {"middle-convolution diagram", [&] { return suite_outcome(run_suite("middle-convolution", with(3, 100)), 10); }},
        {"two double poles construction", [&] { return suite_outcome(run_suite("double-pole", with(1, 100)), 10); }},
        {"realization quadruples", [&] { return suite_outcome(run_suite("realization", with(1, 100)), 100); }},
        {"mutation sanity", mutation_sanity},
    };

    bool all = true;
    for (size_t k = 0; k < criteria.size(); ++k) {
        Outcome o{false, ""};
        try {
            o = criteria[k].second();
        } catch (const std::exception& e) {
            o = {false, std::string("error: ") + e.what()};
        }
        all = all && o.ok;
        std::cout << (o.ok ? "PASS" : "FAIL") << " criterion " << (k + 1) << ": " << criteria[k].first << " (" << o.note << ")"
                  << std::endl;
    }
    return all ? 0 : 1;
}
