#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qvm/connections.hpp"

namespace qvm::io {

using json = nlohmann::json;

// Non-fatal findings while reading, such as fractions that were not in lowest terms.
using Warnings = std::vector<std::string>;

// Real scalars are "p/q" strings; others are {"re": "p/q", "im": "p/q"}. Plain integers and
// "a+bi" strings are also read.
json scalar_to_json(const Gauss& x);
Gauss scalar_from_json(const json& j, Warnings& w, const std::string& where);

json matrix_to_json(const GMat& m);
// rows and cols are the expected shape; an empty row list is read as rows x cols when rows is 0.
GMat matrix_from_json(const json& j, int rows, int cols, Warnings& w, const std::string& where);

json quiver_to_json(const QuiverMult& q);
QuiverMult quiver_from_json(const json& j);

json dims_to_json(const QuiverMult& q, const IntVec& v);
IntVec dims_from_json(const json& j, const QuiverMult& q);

json lambda_to_json(const QuiverMult& q, const Lambda& lam);
Lambda lambda_from_json(const json& j, const QuiverMult& q, Warnings& w);

json rep_to_json(const GRep& B);
GRep rep_from_json(const json& j, Warnings& w);

json system_to_json(const MeromorphicSystem& A);
MeromorphicSystem system_from_json(const json& j, Warnings& w);

json scalars_to_json(const std::vector<Gauss>& xs);
std::vector<Gauss> scalars_from_json(const json& j, Warnings& w, const std::string& where);

// Sections travelling together between commands. Unknown sections are kept verbatim.
struct Bundle {
    std::optional<QuiverMult> quiver;
    std::optional<IntVec> dims;
    std::optional<Lambda> lambda;
    std::optional<GRep> rep;
    std::optional<MeromorphicSystem> system;
    std::optional<std::vector<Gauss>> poles;
    std::optional<std::uint64_t> seed;
    json extra = json::object();

    // The quiver that dims and lambda refer to: the explicit one, else the one of rep.
    const QuiverMult* base_quiver() const;
    void check() const;
};

Bundle bundle_from_json(const json& j, Warnings& w);
json bundle_to_json(const Bundle& b);

json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);

Bundle parse_bundle(const std::string& path, Warnings& w);
void serialize_bundle(const Bundle& b, const std::string& path);

} // namespace qvm::io
