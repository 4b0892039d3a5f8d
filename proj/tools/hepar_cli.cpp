#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "hepar/advisor.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitValidationFailure = 3;

std::string read_file(const std::string& path, const char* what) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument(std::string(what) + " file not found: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_output(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open output file: " + out_path);
    out << text;
}

hepar::Priorities parse_priorities(const std::string& text) {
    hepar::Priorities p;
    char extra = 0;
    if (std::sscanf(text.c_str(), "%lf,%lf,%lf%c", &p.precision, &p.performance, &p.security, &extra) != 3)
        throw std::invalid_argument("--priorities must be precision,performance,security");
    for (double v : {p.precision, p.performance, p.security})
        if (!(v >= 0.0 && v <= 10.0)) throw std::invalid_argument("priorities must lie in [0, 10]");
    return p;
}

hepar::BudgetTable load_budgets(const std::string& path) {
    if (path.empty()) return hepar::BudgetTable();
    return hepar::BudgetTable::from_json(read_file(path, "budget override"));
}

struct AdviseArgs {
    std::string priorities, circuit, budgets, out;
    double epsilon = 0.05;
};

hepar::AdviceResult run_pipeline(const AdviseArgs& a) {
    hepar::AdviceRequest req;
    req.priorities = parse_priorities(a.priorities);
    req.circuit = hepar::load_circuit(read_file(a.circuit, "circuit"));
    req.budgets = load_budgets(a.budgets);
    req.epsilon = a.epsilon;
    return hepar::advise(req);
}

int cmd_advise(const AdviseArgs& a) {
    const auto res = run_pipeline(a);
    if (res.status == hepar::AdviceStatus::infeasible) {
        std::cerr << "no secure parametrization under these priorities and this circuit\n";
        return kExitInfeasible;
    }
    write_output(a.out, res.params.to_json().dump(2) + "\n");
    return kExitOk;
}

int cmd_explain(const AdviseArgs& a) {
    hepar::AdviceRequest req;
    req.priorities = parse_priorities(a.priorities);
    req.circuit = hepar::load_circuit(read_file(a.circuit, "circuit"));
    req.budgets = load_budgets(a.budgets);
    req.epsilon = a.epsilon;
    const auto profile = hepar::profile_of(req.circuit);
    const auto gp = hepar::global_params(req.priorities, profile);
    const auto costs = hepar::choice_cost(profile, req.budgets, gp.k_log_n, gp.k_log_q, req.epsilon);
    const auto model = hepar::build_model(profile, costs, gp, req.budgets);
    write_output(a.out, hepar::explain(model, costs));
    return kExitOk;
}

int cmd_validate(const std::string& params_path, const std::string& circuit_path,
                 const std::string& budgets_path) {
    const auto params = hepar::Parametrization::from_json(read_file(params_path, "parametrization"));
    const auto circuit = hepar::load_circuit(read_file(circuit_path, "circuit"));
    const auto report = hepar::validate(params, hepar::profile_of(circuit), load_budgets(budgets_path));
    std::cout << report.to_text();
    return report.pass() ? kExitOk : kExitValidationFailure;
}

int cmd_surfaces(const std::string& fip, int res, const std::string& out_path) {
    const auto pts = hepar::surface_grid(fip, res);
    std::ostringstream os;
    os << "x,y,z\n";
    os.precision(12);
    for (const auto& p : pts) os << p.x << "," << p.y << "," << p.z << "\n";
    write_output(out_path, os.str());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"HE parametrization advisor: priorities and a circuit in, a "
                 "standard-compliant CKKS parameter set out"};
    app.require_subcommand(1);

    AdviseArgs adv;
    auto* advise = app.add_subcommand("advise", "select a parametrization");
    advise->add_option("--priorities", adv.priorities, "precision,performance,security in [0,10]")->required();
    advise->add_option("--circuit", adv.circuit, "circuit document (JSON)")->required();
    advise->add_option("--budgets", adv.budgets, "budget override file (JSON)");
    advise->add_option("--epsilon", adv.epsilon, "constant used for spreadless cost metrics");
    advise->add_option("--out", adv.out, "write the parametrization here instead of stdout");

    AdviseArgs exp;
    auto* explain = app.add_subcommand("explain", "dump the program and its cost table");
    explain->add_option("--priorities", exp.priorities, "precision,performance,security in [0,10]")->required();
    explain->add_option("--circuit", exp.circuit, "circuit document (JSON)")->required();
    explain->add_option("--budgets", exp.budgets, "budget override file (JSON)");
    explain->add_option("--epsilon", exp.epsilon, "constant used for spreadless cost metrics");
    explain->add_option("--out", exp.out, "write the dump here instead of stdout");

    std::string val_params, val_circuit, val_budgets;
    auto* validate = app.add_subcommand("validate", "check a parametrization against the standard");
    validate->add_option("--params", val_params, "parametrization file (JSON)")->required();
    validate->add_option("--circuit", val_circuit, "circuit document (JSON)")->required();
    validate->add_option("--budgets", val_budgets, "budget override file (JSON)");

    std::string surf_fip, surf_out;
    int surf_res = 101;
    auto* surfaces = app.add_subcommand("surfaces", "export a fuzzy inference surface as CSV");
    surfaces->add_option("--fip", surf_fip,
                         "one of initial-real, initial-dec, final-real, final-dec, k-logN, k-logQ")
        ->required();
    surfaces->add_option("--res", surf_res, "samples per axis (default 101)");
    surfaces->add_option("--out", surf_out, "write the CSV here instead of stdout");

    try {
        app.parse(argc, argv);
        if (advise->parsed()) return cmd_advise(adv);
        if (explain->parsed()) return cmd_explain(exp);
        if (validate->parsed()) return cmd_validate(val_params, val_circuit, val_budgets);
        if (surfaces->parsed()) return cmd_surfaces(surf_fip, surf_res, surf_out);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}
