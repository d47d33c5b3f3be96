#include "qsplit/cli.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qsplit/serialize.hpp"

namespace qsplit {

using nlohmann::json;

namespace {

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::Parse:
        case ErrorCode::Io:
        case ErrorCode::AngleOutOfRange:
        case ErrorCode::DuplicateState:
        case ErrorCode::EmptyFamily:
        case ErrorCode::LengthMismatch:
        case ErrorCode::IndexOutOfRange:
        case ErrorCode::ZeroSuperposition:
        case ErrorCode::DimMismatch:
        case ErrorCode::NotNormalized:
            return 2;
        case ErrorCode::Infeasible:
        case ErrorCode::RankDeficient:
        case ErrorCode::GramMismatch:
        case ErrorCode::NotPsd:
            return 3;
        case ErrorCode::NonSquare:
        case ErrorCode::NotHermitian:
        case ErrorCode::Numerical:
            return 4;
    }
    return 4;
}

std::string format_double(double x) {
    char buf[64];
    const auto result = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, result.ptr);
}

std::vector<double> parse_csv_doubles(const std::string& text, const std::string& what) {
    std::vector<double> out;
    std::stringstream stream(text);
    std::string piece;
    while (std::getline(stream, piece, ',')) {
        try {
            std::size_t used = 0;
            const double value = std::stod(piece, &used);
            while (used < piece.size() && std::isspace(static_cast<unsigned char>(piece[used])))
                ++used;
            if (used != piece.size()) throw std::invalid_argument(piece);
            out.push_back(value);
        } catch (const std::exception&) {
            throw Error(ErrorCode::Parse, what + ": '" + piece + "' is not a number");
        }
    }
    if (out.empty()) throw Error(ErrorCode::Parse, what + ": empty list");
    return out;
}

EfficiencyVector parse_gammas(const std::string& text, std::size_t n) {
    EfficiencyVector gammas{parse_csv_doubles(text, "--gammas")};
    if (gammas.size() != n)
        throw Error(ErrorCode::Parse, "--gammas needs exactly " + std::to_string(n) + " values");
    for (double g : gammas.gammas)
        if (!(g >= 0.0 && g <= 1.0))
            throw Error(ErrorCode::Parse, "--gammas values must lie in [0, 1]");
    return gammas;
}

std::vector<cplx> parse_coeffs(const std::string& text) {
    const std::vector<double> parts = parse_csv_doubles(text, "--coeffs");
    if (parts.size() % 2 != 0)
        throw Error(ErrorCode::Parse, "--coeffs needs re,im pairs (even count)");
    std::vector<cplx> out;
    for (std::size_t i = 0; i < parts.size(); i += 2) out.emplace_back(parts[i], parts[i + 1]);
    return out;
}

json family_to_json(const StateFamily& family) {
    json states = json::array();
    for (const BlochAngles& a : family.members())
        states.push_back(json{{"theta", a.theta}, {"phi", a.phi}});
    return states;
}

json report_header(const std::string& command, ProductMode mode, double tol) {
    return json{{"format", "qsplit-report"},
                {"tool_version", kToolVersion},
                {"command", command},
                {"mode", to_string(mode)},
                {"tol", tol}};
}

struct CommonOptions {
    std::string family_path;
    std::string mode_name = "tensor";
    double tol = 1e-9;
    bool normalize_angles = false;

    ProductMode mode() const { return product_mode_from_string(mode_name); }
};

void add_common(CLI::App* cmd, CommonOptions& opts, bool with_family = true) {
    if (with_family)
        cmd->add_option("family", opts.family_path, "family document (JSON)")->required();
    cmd->add_option("--mode", opts.mode_name, "kernel reading: tensor or matrix")
        ->check(CLI::IsMember({"tensor", "matrix"}))
        ->capture_default_str();
    cmd->add_option("--tol", opts.tol, "numerical tolerance")
        ->envname("QSPLIT_TOL")
        ->capture_default_str();
    if (with_family)
        cmd->add_flag("--normalize-angles", opts.normalize_angles,
                      "fold out-of-range angles into the canonical chart");
}

int cmd_analyze(const CommonOptions& opts, const std::string& gammas_csv, bool hard_check,
                std::ostream& out) {
    const FamilyDocument doc = load_family_document(opts.family_path, opts.normalize_angles);
    const StateFamily family = doc.to_family();
    const GramTriple triple = build_triple(family);
    const ProductMode mode = opts.mode();

    const double gamma_star = max_uniform_gamma(triple, mode, opts.tol);
    const EfficiencyVector gammas = gammas_csv.empty()
                                        ? EfficiencyVector::uniform(family.n(), gamma_star)
                                        : parse_gammas(gammas_csv, family.n());
    const FeasibilityReport report = analyze(triple, gammas, mode, opts.tol);

    json result = report_header("analyze", mode, opts.tol);
    if (doc.label) result["label"] = *doc.label;
    result["family"] = family_to_json(family);
    result["gamma_star"] = gamma_star;
    result["gammas_used"] = gammas.gammas;
    result.update(report_to_json(report));
    out << result.dump(2) << '\n';
    return (hard_check && !report.feasible) ? 3 : 0;
}

int cmd_gamma(const CommonOptions& opts, bool per_state, bool hard_check, std::ostream& out) {
    const StateFamily family =
        load_family_document(opts.family_path, opts.normalize_angles).to_family();
    const GramTriple triple = build_triple(family);
    const ProductMode mode = opts.mode();

    json result = report_header("gamma", mode, opts.tol);
    result["family"] = family_to_json(family);
    double achieved = 0.0;
    if (per_state) {
        const EfficiencyVector gammas = maximize_gammas(triple, mode, opts.tol);
        result["gammas"] = gammas.gammas;
        result["total"] = gammas.total();
        achieved = gammas.total();
    } else {
        achieved = max_uniform_gamma(triple, mode, opts.tol);
        result["gamma_star"] = achieved;
    }
    out << result.dump(2) << '\n';
    return (hard_check && achieved <= opts.tol) ? 3 : 0;
}

int cmd_construct(const CommonOptions& opts, const std::string& gammas_csv,
                  const std::string& out_path, std::ostream& out) {
    const StateFamily family =
        load_family_document(opts.family_path, opts.normalize_angles).to_family();
    const EfficiencyVector gammas = parse_gammas(gammas_csv, family.n());

    const SplittingMachine machine = construct_machine(family, gammas, opts.mode(), opts.tol);
    const MachineReport report = verify_machine(machine, opts.tol);
    write_text_file(out_path, machine_to_json(machine, report, opts.tol).dump(2) + "\n");

    json result = report_header("construct", machine.mode, opts.tol);
    result["out"] = out_path;
    result["unitarity_defect"] = report.unitarity_defect;
    result["action_defects"] = report.action_defects;
    result["gram_defect"] = report.gram_defect;
    out << result.dump(2) << '\n';
    return 0;
}

int cmd_simulate(const std::string& machine_path, std::size_t state_index, std::size_t shots,
                 std::uint64_t seed, std::ostream& out) {
    const SplittingMachine machine = load_machine(machine_path);
    const SplitOutcome outcome = run_split(machine, state_index);

    json result{{"format", "qsplit-report"},
                {"tool_version", kToolVersion},
                {"command", "simulate"},
                {"mode", to_string(machine.mode)},
                {"state_index", state_index},
                {"success_prob", outcome.success_prob},
                {"branch_probs", outcome.branch_probs}};
    if (outcome.post_state_defined) {
        result["post_state"] = vector_to_json(outcome.post_state);
        result["fidelity_target"] = outcome.fidelity_target;
    } else {
        result["post_state"] = nullptr;
    }
    if (shots > 0) {
        result["shots"] = shots;
        result["seed"] = seed;
        result["empirical_frequency"] = sample_measurement(machine, state_index, shots, seed);
    }
    out << result.dump(2) << '\n';
    return 0;
}

int cmd_witness(const std::string& machine_path, const std::string& coeffs_csv,
                std::ostream& out) {
    const SplittingMachine machine = load_machine(machine_path);
    const std::vector<cplx> coeffs = parse_coeffs(coeffs_csv);
    const WitnessResult witness = nogo_witness(machine, coeffs);

    json coeff_json = json::array();
    for (const cplx& c : witness.coefficients)
        coeff_json.push_back(json::array({c.real(), c.imag()}));

    json result{{"format", "qsplit-report"},
                {"tool_version", kToolVersion},
                {"command", "witness"},
                {"mode", to_string(machine.mode)},
                {"coefficients", std::move(coeff_json)},
                {"recovered_theta", witness.recovered_theta},
                {"recovered_phi", witness.recovered_phi},
                {"success_prob", witness.success_prob},
                {"fidelity", witness.fidelity},
                {"distance", witness.distance},
                {"ideal_target", vector_to_json(witness.ideal_target)},
                {"propagated", vector_to_json(witness.propagated)}};
    out << result.dump(2) << '\n';
    return 0;
}

int cmd_oracle(const CommonOptions& opts, const std::string& gammas_csv, std::ostream& out) {
    const StateFamily family =
        load_family_document(opts.family_path, opts.normalize_angles).to_family();
    const EfficiencyVector gammas = parse_gammas(gammas_csv, family.n());
    const OutputGramOracle oracle = oracle_output_gram(family, gammas, opts.mode(), opts.tol);

    json result = report_header("oracle", opts.mode(), opts.tol);
    result["constructed"] = matrix_to_json(oracle.constructed);
    result["matrix_mode_prediction"] = matrix_to_json(oracle.matrix_mode_prediction);
    result["tensor_mode_prediction"] = matrix_to_json(oracle.tensor_mode_prediction);
    result["matrix_mode_deviation"] = oracle.matrix_mode_deviation;
    result["tensor_mode_deviation"] = oracle.tensor_mode_deviation;
    out << result.dump(2) << '\n';
    return 0;
}

struct ScanOptions {
    std::size_t theta2_steps = 0;
    std::size_t phi2_steps = 0;
    double theta1 = 0.0;
    double phi1 = 0.0;
    std::string out_path;
};

int cmd_scan(const CommonOptions& opts, const ScanOptions& scan, std::ostream& out) {
    constexpr double pi = std::numbers::pi;
    if (scan.theta2_steps == 0 || scan.phi2_steps == 0)
        throw Error(ErrorCode::Parse, "step counts must be at least 1");

    const ProductMode mode = opts.mode();
    std::string csv = "theta1,phi1,theta2,phi2,gamma_star\n";
    // Row-major over the grid: theta2 outer (inclusive of both poles), phi2
    // inner (period excluded).
    for (std::size_t i = 0; i < scan.theta2_steps; ++i) {
        const double theta2 = scan.theta2_steps == 1
                                  ? 0.0
                                  : pi * static_cast<double>(i) /
                                        static_cast<double>(scan.theta2_steps - 1);
        for (std::size_t j = 0; j < scan.phi2_steps; ++j) {
            const double phi2 =
                2.0 * pi * static_cast<double>(j) / static_cast<double>(scan.phi2_steps);
            double gamma_star = std::numeric_limits<double>::quiet_NaN();
            const bool duplicate = std::abs(theta2 - scan.theta1) <= 1e-12 &&
                                   std::abs(phi2 - scan.phi1) <= 1e-12;
            if (!duplicate) {
                const StateFamily family(
                    {BlochAngles{scan.theta1, scan.phi1}, BlochAngles{theta2, phi2}});
                gamma_star = max_uniform_gamma(build_triple(family), mode, opts.tol);
            }
            csv += format_double(scan.theta1) + ',' + format_double(scan.phi1) + ',' +
                   format_double(theta2) + ',' + format_double(phi2) + ',' +
                   format_double(gamma_star) + '\n';
        }
    }
    if (scan.out_path.empty()) {
        out << csv;
    } else {
        write_text_file(scan.out_path, csv);
        out << json{{"format", "qsplit-report"},
                    {"command", "scan"},
                    {"mode", to_string(mode)},
                    {"rows", scan.theta2_steps * scan.phi2_steps},
                    {"out", scan.out_path}}
                   .dump(2)
            << '\n';
    }
    return 0;
}

}  // namespace

int run_command(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"probabilistic quantum-information splitting toolkit"};
    app.require_subcommand(1);

    CommonOptions analyze_opts, gamma_opts, construct_opts, oracle_opts, scan_common;
    std::string analyze_gammas, construct_gammas, oracle_gammas, witness_coeffs;
    std::string construct_out, machine_path_sim, machine_path_wit;
    bool analyze_check = false, gamma_check = false, per_state = false, uniform = false;
    std::size_t state_index = 0, shots = 0;
    std::uint64_t seed = 1;
    ScanOptions scan_opts;

    CLI::App* analyze_cmd =
        app.add_subcommand("analyze", "feasibility report for a family at a given Gamma");
    add_common(analyze_cmd, analyze_opts);
    analyze_cmd->add_option("--gammas", analyze_gammas,
                            "comma-separated per-state probabilities (default: maximal uniform)");
    analyze_cmd->add_flag("--check", analyze_check, "exit 3 when the verdict is infeasible");

    CLI::App* gamma_cmd =
        app.add_subcommand("gamma", "maximal success probabilities for a family");
    add_common(gamma_cmd, gamma_opts);
    gamma_cmd->add_flag("--per-state", per_state, "coordinate-wise maximization");
    gamma_cmd->add_flag("--uniform", uniform, "uniform maximization (default)");
    gamma_cmd->add_flag("--check", gamma_check, "exit 3 when only the trivial Gamma is feasible");

    CLI::App* construct_cmd =
        app.add_subcommand("construct", "build the splitting machine and write it to a file");
    add_common(construct_cmd, construct_opts);
    construct_cmd->add_option("--gammas", construct_gammas, "per-state probabilities")->required();
    construct_cmd->add_option("--out", construct_out, "machine file path")->required();

    CLI::App* simulate_cmd =
        app.add_subcommand("simulate", "run one splitting attempt from a machine file");
    simulate_cmd->add_option("machine", machine_path_sim, "machine document (JSON)")->required();
    simulate_cmd->add_option("--state-index", state_index, "family member to feed in")
        ->required();
    simulate_cmd->add_option("--shots", shots, "Bernoulli shots for an empirical frequency");
    simulate_cmd->add_option("--seed", seed, "generator seed")->capture_default_str();

    CLI::App* witness_cmd =
        app.add_subcommand("witness", "linearity witness for a superposed input");
    witness_cmd->add_option("machine", machine_path_wit, "machine document (JSON)")->required();
    witness_cmd
        ->add_option("--coeffs", witness_coeffs, "superposition coefficients re1,im1,re2,im2,...")
        ->required();

    CLI::App* oracle_cmd = app.add_subcommand(
        "oracle", "compare constructed output Grams against both kernel readings");
    add_common(oracle_cmd, oracle_opts);
    oracle_cmd->add_option("--gammas", oracle_gammas, "per-state probabilities")->required();

    CLI::App* scan_cmd =
        app.add_subcommand("scan", "grid of maximal uniform gamma over the second state");
    add_common(scan_cmd, scan_common, /*with_family=*/false);
    scan_cmd->add_option("--theta2-steps", scan_opts.theta2_steps, "grid points over [0, pi]")
        ->required();
    scan_cmd->add_option("--phi2-steps", scan_opts.phi2_steps, "grid points over [0, 2*pi)")
        ->required();
    scan_cmd->add_option("--fixed-theta1", scan_opts.theta1, "first state theta")->required();
    scan_cmd->add_option("--fixed-phi1", scan_opts.phi1, "first state phi")->required();
    scan_cmd->add_option("--out", scan_opts.out_path, "CSV path (default: result stream)");

    std::vector<const char*> raw;
    raw.push_back("qsplit");
    for (const std::string& arg : argv) raw.push_back(arg.c_str());

    try {
        app.parse(static_cast<int>(raw.size()), raw.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "error: parse: " << e.what() << '\n';
        return 2;
    }

    try {
        if (analyze_cmd->parsed())
            return cmd_analyze(analyze_opts, analyze_gammas, analyze_check, out);
        if (gamma_cmd->parsed()) return cmd_gamma(gamma_opts, per_state, gamma_check, out);
        if (construct_cmd->parsed())
            return cmd_construct(construct_opts, construct_gammas, construct_out, out);
        if (simulate_cmd->parsed())
            return cmd_simulate(machine_path_sim, state_index, shots, seed, out);
        if (witness_cmd->parsed()) return cmd_witness(machine_path_wit, witness_coeffs, out);
        if (oracle_cmd->parsed()) return cmd_oracle(oracle_opts, oracle_gammas, out);
        if (scan_cmd->parsed()) return cmd_scan(scan_common, scan_opts, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        err << "error: internal: " << e.what() << '\n';
        return 4;
    }
    err << "error: parse: no subcommand given\n";
    return 2;
}

}  // namespace qsplit
