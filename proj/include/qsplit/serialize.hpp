#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "qsplit/machine.hpp"
#include "qsplit/simulator.hpp"

namespace qsplit {

/// On-disk family document: {"label": optional, "states": [{"theta", "phi"}]}.
struct FamilyDocument {
    std::optional<std::string> label;
    std::vector<BlochAngles> states;

    StateFamily to_family() const { return StateFamily(states); }
};

FamilyDocument parse_family_document(const nlohmann::json& doc, bool normalize_angles);
FamilyDocument load_family_document(const std::string& path, bool normalize_angles);

nlohmann::json machine_to_json(const SplittingMachine& m, const MachineReport& report,
                               double tol);
SplittingMachine machine_from_json(const nlohmann::json& doc);
SplittingMachine load_machine(const std::string& path);

nlohmann::json report_to_json(const FeasibilityReport& report);
nlohmann::json matrix_to_json(const ComplexMatrix& m);
nlohmann::json vector_to_json(const ComplexVector& v);

nlohmann::json load_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// Fold an arbitrary finite angle pair into theta in [0, pi], phi in [0, 2pi).
BlochAngles normalize_bloch_angles(double theta, double phi);

}  // namespace qsplit
