#include "qsplit/serialize.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace qsplit {

using nlohmann::json;

namespace {

constexpr const char* kMachineFormat = "qsplit-machine";

double require_finite_number(const json& value, const std::string& what) {
    if (!value.is_number())
        throw Error(ErrorCode::Parse, what + " must be a number");
    const double x = value.get<double>();
    if (!std::isfinite(x)) throw Error(ErrorCode::Parse, what + " must be finite");
    return x;
}

cplx complex_from_json(const json& value, const std::string& what) {
    if (!value.is_array() || value.size() != 2)
        throw Error(ErrorCode::Parse, what + " must be a [re, im] pair");
    return cplx{require_finite_number(value[0], what), require_finite_number(value[1], what)};
}

json complex_to_json(const cplx& z) { return json::array({z.real(), z.imag()}); }

ComplexMatrix matrix_from_json(const json& value, const std::string& what) {
    if (!value.is_array() || value.empty())
        throw Error(ErrorCode::Parse, what + " must be a non-empty array of rows");
    const std::size_t rows = value.size();
    const std::size_t cols = value[0].is_array() ? value[0].size() : 0;
    if (cols == 0) throw Error(ErrorCode::Parse, what + " rows must be non-empty arrays");
    ComplexMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const json& row = value[i];
        if (!row.is_array() || row.size() != cols)
            throw Error(ErrorCode::Parse, what + " rows must have equal length");
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = complex_from_json(row[j], what);
    }
    return m;
}

}  // namespace

json matrix_to_json(const ComplexMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

json vector_to_json(const ComplexVector& v) {
    json entries = json::array();
    for (std::size_t i = 0; i < v.dim(); ++i) entries.push_back(complex_to_json(v[i]));
    return entries;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Io, "cannot open '" + path + "'");
    json doc = json::parse(in, nullptr, false);
    if (doc.is_discarded())
        throw Error(ErrorCode::Parse, "'" + path + "' is not valid JSON");
    return doc;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::Io, "cannot open '" + path + "' for writing");
    out << text;
    if (!out) throw Error(ErrorCode::Io, "failed writing '" + path + "'");
}

BlochAngles normalize_bloch_angles(double theta, double phi) {
    if (!std::isfinite(theta) || !std::isfinite(phi))
        throw Error(ErrorCode::Parse, "angles must be finite");
    const double half = theta / 2.0;
    ComplexVector psi{cplx{std::cos(half), 0.0},
                      std::sin(half) * cplx{std::cos(phi), std::sin(phi)}};
    return bloch_angles_of(psi);
}

FamilyDocument parse_family_document(const json& doc, bool normalize_angles) {
    if (!doc.is_object() || !doc.contains("states") || !doc["states"].is_array())
        throw Error(ErrorCode::Parse, "family document needs a 'states' array");

    FamilyDocument out;
    if (doc.contains("label")) {
        if (!doc["label"].is_string())
            throw Error(ErrorCode::Parse, "family label must be a string");
        out.label = doc["label"].get<std::string>();
    }
    for (const json& state : doc["states"]) {
        if (!state.is_object() || !state.contains("theta") || !state.contains("phi"))
            throw Error(ErrorCode::Parse, "each state needs 'theta' and 'phi'");
        const double theta = require_finite_number(state["theta"], "theta");
        const double phi = require_finite_number(state["phi"], "phi");
        out.states.push_back(normalize_angles ? normalize_bloch_angles(theta, phi)
                                              : BlochAngles{theta, phi});
    }
    if (out.states.empty())
        throw Error(ErrorCode::Parse, "family document lists no states");
    return out;
}

FamilyDocument load_family_document(const std::string& path, bool normalize_angles) {
    return parse_family_document(load_json_file(path), normalize_angles);
}

json machine_to_json(const SplittingMachine& m, const MachineReport& report, double tol) {
    json states = json::array();
    for (const BlochAngles& a : m.family.members())
        states.push_back(json{{"theta", a.theta}, {"phi", a.phi}});

    return json{
        {"format", kMachineFormat},
        {"n", m.n()},
        {"dim_a", m.dim_a},
        {"dim_b", m.dim_b},
        {"dim_probe", m.dim_probe},
        {"mode", to_string(m.mode)},
        {"tol", tol},
        {"family", std::move(states)},
        {"gammas", m.gammas.gammas},
        {"c", matrix_to_json(m.C)},
        {"u", matrix_to_json(m.U)},
        {"defects",
         json{{"unitarity", report.unitarity_defect},
              {"action", report.action_defects},
              {"gram", report.gram_defect}}},
    };
}

SplittingMachine machine_from_json(const json& doc) {
    if (!doc.is_object() || doc.value("format", "") != kMachineFormat)
        throw Error(ErrorCode::Parse, "not a qsplit machine document");
    for (const char* key : {"n", "dim_probe", "mode", "family", "gammas", "c", "u"})
        if (!doc.contains(key))
            throw Error(ErrorCode::Parse, std::string("machine document misses '") + key + "'");

    const std::size_t n = doc["n"].get<std::size_t>();
    std::vector<BlochAngles> members;
    for (const json& state : doc["family"]) {
        members.push_back(BlochAngles{require_finite_number(state["theta"], "theta"),
                                      require_finite_number(state["phi"], "phi")});
    }
    StateFamily family(members);
    if (family.n() != n) throw Error(ErrorCode::Parse, "family size disagrees with 'n'");

    EfficiencyVector gammas{doc["gammas"].get<std::vector<double>>()};
    if (gammas.size() != n) throw Error(ErrorCode::Parse, "gamma count disagrees with 'n'");

    const ProductMode mode = product_mode_from_string(doc["mode"].get<std::string>());
    const std::size_t dim_probe = doc["dim_probe"].get<std::size_t>();
    if (dim_probe < n + 1) throw Error(ErrorCode::Parse, "probe dimension below n + 1");

    ComplexMatrix u = matrix_from_json(doc["u"], "u");
    ComplexMatrix c = matrix_from_json(doc["c"], "c");
    const std::size_t total = 4 * dim_probe;
    if (u.rows() != total || u.cols() != total)
        throw Error(ErrorCode::Parse, "unitary has the wrong shape");
    if (c.rows() != n || c.cols() != n)
        throw Error(ErrorCode::Parse, "failure-amplitude matrix has the wrong shape");

    return SplittingMachine{std::move(family), std::move(gammas), mode,
                            2,                 2,                 dim_probe,
                            std::move(u),      std::move(c)};
}

SplittingMachine load_machine(const std::string& path) {
    return machine_from_json(load_json_file(path));
}

json report_to_json(const FeasibilityReport& report) {
    return json{
        {"independent", report.independent},
        {"min_eig_d", report.min_eig_d},
        {"kernel_hermiticity_defect", report.kernel_hermiticity_defect},
        {"residual_hermiticity_defect", report.residual_hermiticity_defect},
        {"residual_min_eig", report.residual_min_eig},
        {"reality_defects", report.reality_defects},
        {"diagonal_positive", report.diagonal_positive},
        {"hermitian_part_min_eig", report.hermitian_part_min_eig},
        {"feasible", report.feasible},
    };
}

}  // namespace qsplit
