#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "divalg/algebra.hpp"
#include "divalg/classify.hpp"

namespace divalg {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// On-disk form of a structure tensor.  Parse/serialize round-trips
/// byte-identically: keys are emitted in sorted order and numbers with
/// round-trip-safe double formatting.
struct TensorDocument {
    int dim = 0;
    std::vector<std::string> basis_names;
    std::vector<double> table;  // dim^3, row-major [i][j][k]
    std::optional<int> unity_index;
    std::optional<Provenance> provenance;
};

namespace io_detail {

using nlohmann::json;

inline json matrix_to_json(const Matrix& M) {
    json rows = json::array();
    for (int i = 0; i < M.rows; ++i) {
        json row = json::array();
        for (int j = 0; j < M.cols; ++j) row.push_back(M.at(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Matrix matrix_from_json(const json& j, const char* field) {
    if (!j.is_array() || j.empty()) throw ParseError(std::string("field '") + field + "' must be a nonempty array");
    const int rows = int(j.size());
    if (!j[0].is_array() || j[0].empty())
        throw ParseError(std::string("field '") + field + "' must be an array of arrays");
    const int cols = int(j[0].size());
    Matrix M(rows, cols);
    for (int i = 0; i < rows; ++i) {
        if (!j[i].is_array() || int(j[i].size()) != cols)
            throw ParseError(std::string("field '") + field + "' has ragged rows");
        for (int jj = 0; jj < cols; ++jj) {
            if (!j[i][jj].is_number()) throw ParseError(std::string("field '") + field + "' has a non-number entry");
            M.at(i, jj) = j[i][jj].get<double>();
        }
    }
    return M;
}

inline json vec_to_json(const Vec& v) {
    json arr = json::array();
    for (double x : v) arr.push_back(x);
    return arr;
}

}  // namespace io_detail

inline nlohmann::json to_json(const TensorDocument& doc) {
    using nlohmann::json;
    json j;
    j["dim"] = doc.dim;
    j["basis_names"] = doc.basis_names;
    json table = json::array();
    for (int i = 0; i < doc.dim; ++i) {
        json plane = json::array();
        for (int jj = 0; jj < doc.dim; ++jj) {
            json row = json::array();
            for (int k = 0; k < doc.dim; ++k)
                row.push_back(doc.table[(std::size_t(i) * doc.dim + jj) * doc.dim + k]);
            plane.push_back(std::move(row));
        }
        table.push_back(std::move(plane));
    }
    j["table"] = std::move(table);
    if (doc.unity_index) j["unity_index"] = *doc.unity_index;
    if (doc.provenance) {
        json p;
        p["generator"] = doc.provenance->generator;
        if (doc.provenance->seed) p["seed"] = *doc.provenance->seed;
        if (doc.provenance->basis_change) p["basis_change"] = io_detail::matrix_to_json(*doc.provenance->basis_change);
        if (!doc.provenance->note.empty()) p["note"] = doc.provenance->note;
        j["provenance"] = std::move(p);
    }
    return j;
}

inline TensorDocument tensor_document_from_json(const nlohmann::json& j, int max_dim = kMaxTensorDim) {
    using nlohmann::json;
    if (!j.is_object()) throw ParseError("document root must be a JSON object");
    TensorDocument doc;
    if (!j.contains("dim") || !j["dim"].is_number_integer()) throw ParseError("field 'dim' missing or not an integer");
    doc.dim = j["dim"].get<int>();
    if (doc.dim < 1 || doc.dim > max_dim)
        throw ParseError("field 'dim' out of range [1, " + std::to_string(max_dim) + "]");

    if (j.contains("basis_names")) {
        if (!j["basis_names"].is_array()) throw ParseError("field 'basis_names' must be an array");
        for (const auto& name : j["basis_names"]) {
            if (!name.is_string()) throw ParseError("field 'basis_names' must contain strings");
            doc.basis_names.push_back(name.get<std::string>());
        }
        if (int(doc.basis_names.size()) != doc.dim) throw ParseError("field 'basis_names' size must equal dim");
    }

    if (!j.contains("table") || !j["table"].is_array()) throw ParseError("field 'table' missing or not an array");
    const auto& table = j["table"];
    if (int(table.size()) != doc.dim) throw ParseError("field 'table' must have dim planes");
    doc.table.resize(std::size_t(doc.dim) * doc.dim * doc.dim);
    for (int i = 0; i < doc.dim; ++i) {
        if (!table[i].is_array() || int(table[i].size()) != doc.dim)
            throw ParseError("field 'table' plane " + std::to_string(i) + " must have dim rows");
        for (int jj = 0; jj < doc.dim; ++jj) {
            const auto& row = table[i][jj];
            if (!row.is_array() || int(row.size()) != doc.dim)
                throw ParseError("field 'table' row (" + std::to_string(i) + "," + std::to_string(jj) +
                                 ") must have dim entries");
            for (int k = 0; k < doc.dim; ++k) {
                if (!row[k].is_number())
                    throw ParseError("field 'table' entry (" + std::to_string(i) + "," + std::to_string(jj) + "," +
                                     std::to_string(k) + ") is not a number");
                const double v = row[k].get<double>();
                if (!std::isfinite(v))
                    throw ParseError("field 'table' entry (" + std::to_string(i) + "," + std::to_string(jj) + "," +
                                     std::to_string(k) + ") is not finite");
                doc.table[(std::size_t(i) * doc.dim + jj) * doc.dim + k] = v;
            }
        }
    }

    if (j.contains("unity_index")) {
        if (!j["unity_index"].is_number_integer()) throw ParseError("field 'unity_index' must be an integer");
        const int u = j["unity_index"].get<int>();
        if (u < 0 || u >= doc.dim) throw ParseError("field 'unity_index' out of range");
        doc.unity_index = u;
    }

    if (j.contains("provenance")) {
        const auto& p = j["provenance"];
        if (!p.is_object()) throw ParseError("field 'provenance' must be an object");
        Provenance prov;
        if (p.contains("generator")) {
            if (!p["generator"].is_string()) throw ParseError("field 'provenance.generator' must be a string");
            prov.generator = p["generator"].get<std::string>();
        }
        if (p.contains("seed")) {
            if (!p["seed"].is_number_unsigned() && !p["seed"].is_number_integer())
                throw ParseError("field 'provenance.seed' must be an integer");
            prov.seed = p["seed"].get<std::uint64_t>();
        }
        if (p.contains("basis_change")) prov.basis_change = io_detail::matrix_from_json(p["basis_change"], "provenance.basis_change");
        if (p.contains("note")) {
            if (!p["note"].is_string()) throw ParseError("field 'provenance.note' must be a string");
            prov.note = p["note"].get<std::string>();
        }
        doc.provenance = std::move(prov);
    }
    return doc;
}

inline TensorDocument parse_tensor_document(const std::string& text, int max_dim = kMaxTensorDim) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    return tensor_document_from_json(j, max_dim);
}

inline std::string serialize(const TensorDocument& doc) { return to_json(doc).dump(2) + "\n"; }

inline TensorDocument to_document(const StructureTensor& T) {
    TensorDocument doc;
    doc.dim = T.dim();
    doc.basis_names = T.basis_names();
    doc.table = T.constants();
    doc.unity_index = T.unity_index();
    doc.provenance = T.provenance();
    return doc;
}

inline StructureTensor to_structure_tensor(const TensorDocument& doc) {
    // A claimed unity_index whose slices are not exact deltas is accepted as
    // data but dropped as a unity claim; find_unity recovers the truth.
    std::optional<int> unity = doc.unity_index;
    if (unity) {
        const int n = doc.dim;
        auto at = [&](int i, int j, int k) { return doc.table[(std::size_t(i) * n + j) * n + k]; };
        for (int j = 0; j < n && unity; ++j)
            for (int k = 0; k < n; ++k) {
                const double want = (j == k) ? 1.0 : 0.0;
                if (at(*unity, j, k) != want || at(j, *unity, k) != want) {
                    unity.reset();
                    break;
                }
            }
    }
    StructureTensor T(doc.dim, doc.table, doc.basis_names, unity);
    if (doc.provenance) T.set_provenance(*doc.provenance);
    return T;
}

// ---- reports ----------------------------------------------------------------

/// Machine-readable run report.  Deterministic modulo the timing field.
struct ReportDocument {
    std::string command;
    bool ok = false;
    std::string outcome;  // label name on success, witness kind on failure
    std::string branch;
    std::optional<Matrix> iso;
    std::optional<double> residual;
    std::optional<Witness> witness;
    std::optional<AxiomReport> axioms;
    Tolerance tolerance;
    double timing_ms = 0.0;
};

inline nlohmann::json to_json(const ReportDocument& rep) {
    using nlohmann::json;
    json j;
    j["command"] = rep.command;
    j["ok"] = rep.ok;
    j["outcome"] = rep.outcome;
    if (!rep.branch.empty()) j["branch"] = rep.branch;
    if (rep.iso) j["iso"] = io_detail::matrix_to_json(*rep.iso);
    if (rep.residual) j["residual"] = *rep.residual;
    if (rep.witness) {
        json w;
        w["kind"] = rep.witness->kind_name();
        if (const auto* zd = std::get_if<ZeroDivisorWitness>(&rep.witness->kind)) {
            w["a"] = io_detail::vec_to_json(zd->a);
            w["b"] = io_detail::vec_to_json(zd->b);
            w["product_residual"] = zd->product_residual;
        } else if (const auto* na = std::get_if<NonAssociativeWitness>(&rep.witness->kind)) {
            w["triple"] = {na->triple[0], na->triple[1], na->triple[2]};
            w["residual"] = na->residual;
        } else if (const auto* ns = std::get_if<NotAlgebraicStepWitness>(&rep.witness->kind)) {
            w["detail"] = ns->detail;
            if (!ns->x.empty()) w["x"] = io_detail::vec_to_json(ns->x);
            if (!ns->y.empty()) w["y"] = io_detail::vec_to_json(ns->y);
            w["residual"] = ns->residual;
        }
        j["witness"] = std::move(w);
    }
    if (rep.axioms) {
        json a;
        a["has_unity"] = rep.axioms->has_unity;
        a["associative"] = rep.axioms->associative;
        a["worst_assoc_residual"] = rep.axioms->worst_assoc_residual;
        if (rep.axioms->witness_triple)
            a["witness_triple"] = {(*rep.axioms->witness_triple)[0], (*rep.axioms->witness_triple)[1],
                                   (*rep.axioms->witness_triple)[2]};
        j["axioms"] = std::move(a);
    }
    j["tolerance"] = {{"eps", rep.tolerance.eps}, {"rel", rep.tolerance.rel}};
    j["timing_ms"] = rep.timing_ms;
    return j;
}

inline std::string serialize(const ReportDocument& rep) { return to_json(rep).dump(2) + "\n"; }

}  // namespace divalg
