// Command-line front end: no-go demonstrations, count-formula tables,
// window and full-grid simulations, and the validation suite.
//
// Exit codes: 0 success / expected verdict, 1 validation failure, 2 usage,
// 3 I/O, 4 parse, 5 resource budget.

#include <CLI11.hpp>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>

#include "qlbm/dense.hpp"
#include "qlbm/errors.hpp"
#include "qlbm/io.hpp"
#include "qlbm/lattice.hpp"
#include "qlbm/realizability.hpp"
#include "qlbm/simulator.hpp"
#include "qlbm/spacetime.hpp"
#include "qlbm/validation.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitParse = 4;
constexpr int kExitBudget = 5;

using nlohmann::json;

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text << "\n";
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw qlbm::IoError("cannot write \"" + out_path + "\"");
    out << text << "\n";
}

std::string ket(const qlbm::BasisLabel& label) { return "|" + label.to_string() + ">"; }

std::string format_state(const qlbm::SparseState& state) {
    std::string text;
    for (const auto& [label, amp] : state.sorted_entries()) {
        char buf[64];
        if (std::abs(amp.imag()) < 1e-15)
            std::snprintf(buf, sizeof(buf), "%+.6g ", amp.real());
        else
            std::snprintf(buf, sizeof(buf), "+(%.6g%+.6gi) ", amp.real(), amp.imag());
        text += buf;
        text += ket(label) + " ";
    }
    return text.empty() ? "0" : text;
}

struct NogoOptions {
    std::string encoding;
    double gamma1 = 1.0;
    double beta2 = M_SQRT1_2;
    double theta = 0.0;
    std::string format = "json";
    std::string out;
};

int cmd_nogo(const NogoOptions& opt) {
    qlbm::TransitionSpec spec;
    json extra;
    bool expect_realizable = false;
    if (opt.encoding == "cbs") {
        spec = qlbm::cbs_nogo_instance();
    } else {
        qlbm::AmplitudeNogoParams params;
        params.gamma1 = {opt.gamma1, 0.0};
        if (std::abs(opt.gamma1) > 1.0 || std::abs(opt.beta2) > 1.0)
            throw std::invalid_argument("--gamma1 and --beta2 must lie in [-1, 1]");
        params.gamma0 = {std::sqrt(1.0 - opt.gamma1 * opt.gamma1), 0.0};
        params.beta2 = {opt.beta2, 0.0};
        params.beta3 = {std::sqrt(1.0 - opt.beta2 * opt.beta2), 0.0};
        params.theta = opt.theta;
        spec = qlbm::amplitude_nogo_instance(params);
        expect_realizable = opt.gamma1 == 0.0;
        extra["params"] = {{"gamma1", opt.gamma1}, {"beta2", opt.beta2}, {"theta", opt.theta}};
    }

    const qlbm::GramReport report = qlbm::gram_check(spec);
    const bool verdict_reproduced = report.realizable == expect_realizable;

    json j;
    j["schema"] = 1;
    j["kind"] = "nogo_report";
    j["encoding"] = opt.encoding;
    j["expected_verdict_reproduced"] = verdict_reproduced;
    j["gram"] = qlbm::to_json(report);
    if (!report.violations.empty()) {
        const auto& v = report.violations.front();
        j["violation"] = {{"in", std::abs(v.inner_in)},
                          {"out", std::abs(v.inner_out)},
                          {"magnitude", v.abs_difference}};
    }
    if (!extra.is_null()) j.update(extra);

    if (opt.format == "human") {
        std::string text;
        text += "encoding: " + opt.encoding + "\n";
        for (std::size_t i = 0; i < spec.pairs.size(); ++i) {
            text += "pair " + std::to_string(i + 1) + ":\n";
            text += "  in : " + format_state(spec.pairs[i].first) + "\n";
            text += "  out: " + format_state(spec.pairs[i].second) + "\n";
        }
        text += report.realizable
                    ? "realizable: a unitary with these transitions exists\n"
                    : "NOT realizable: pairwise inner products are not preserved\n";
        for (const auto& v : report.violations) {
            char buf[160];
            std::snprintf(buf, sizeof(buf),
                          "  pair (%zu,%zu): |<in_i|in_j>| = %.12g but |<out_i|out_j>| = %.12g\n",
                          v.i, v.j, std::abs(v.inner_in), std::abs(v.inner_out));
            text += buf;
        }
        emit(text, opt.out);
    } else {
        emit(qlbm::canonical_json(j), opt.out);
    }
    return verdict_reproduced ? kExitOk : kExitValidation;
}

struct FormulasOptions {
    int nt_max = 8;
    std::string lattice = "d2q4";
    std::string out;
};

int cmd_formulas(const FormulasOptions& opt) {
    if (opt.nt_max < 0 || opt.nt_max > 64)
        throw std::invalid_argument("--nt-max must lie in 0..64");
    const qlbm::LatticeDescriptor descriptor = qlbm::build_descriptor(opt.lattice);

    std::string csv = "nt,t,n_v_formula,n_v_enum,c_formula,c_enum,n_swap_formula,n_swap_enum,"
                      "depth_measured,depth_bound\n";
    bool all_match = true;
    for (int nt = 0; nt <= opt.nt_max; ++nt) {
        const qlbm::VicinityLayout layout = qlbm::enumerate_vicinity(descriptor, nt);
        const std::int64_t nv_formula = qlbm::qubit_count_formula(descriptor, nt);
        const std::int64_t nv_enum = layout.num_qubits();
        all_match = all_match && nv_formula == nv_enum;
        if (nt == 0) {
            csv += "0,," + std::to_string(nv_formula) + "," + std::to_string(nv_enum) +
                   ",,,,,,\n";
            continue;
        }
        for (int t = 1; t <= nt; ++t) {
            const qlbm::StepCircuits step =
                qlbm::build_step_circuits(layout, qlbm::CollisionParams{}, t);
            const std::int64_t c_formula = qlbm::collision_count_formula(descriptor, nt, t);
            const std::int64_t swap_formula = qlbm::swap_count_formula(descriptor, nt, t);
            all_match = all_match && c_formula == static_cast<std::int64_t>(step.collisions_applied);
            all_match = all_match &&
                        swap_formula == static_cast<std::int64_t>(step.swaps_applied);
            csv += std::to_string(nt) + "," + std::to_string(t) + "," +
                   std::to_string(nv_formula) + "," + std::to_string(nv_enum) + "," +
                   std::to_string(c_formula) + "," + std::to_string(step.collisions_applied) +
                   "," + std::to_string(swap_formula) + "," +
                   std::to_string(step.swaps_applied) + "," +
                   std::to_string(step.streaming.depth()) + "," +
                   std::to_string(qlbm::swap_depth_bound(nt, t)) + "\n";
        }
    }
    emit(csv.substr(0, csv.size() - 1), opt.out);
    return all_match ? kExitOk : kExitValidation;
}

struct SimulateOptions {
    std::string lattice = "d2q4";
    int nt = 1;
    double alpha = 1.0;
    double beta = 0.0;
    std::string init;
    std::string order = "collide-stream";
    bool verify = false;
    std::string format = "json";
    std::string out;
};

qlbm::StepOrder parse_order(const std::string& order) {
    if (order == "collide-stream") return qlbm::StepOrder::CollideThenStream;
    if (order == "stream-collide") return qlbm::StepOrder::StreamThenCollide;
    throw std::invalid_argument("--order must be collide-stream or stream-collide");
}

int cmd_simulate(const SimulateOptions& opt) {
    qlbm::RunConfig config;
    config.lattice = opt.lattice;
    config.extent = opt.nt;
    config.collision = {{opt.alpha, 0.0}, {opt.beta, 0.0}};
    config.collision.validate();
    config.order = parse_order(opt.order);

    const qlbm::WindowFile file = qlbm::load_window_file(opt.init);
    if (file.extent && *file.extent != opt.nt)
        throw qlbm::ParseError("window extent " + std::to_string(*file.extent) +
                               " does not match --nt " + std::to_string(opt.nt));
    const qlbm::LatticeDescriptor descriptor = qlbm::build_descriptor(config.lattice);
    if (qlbm::build_descriptor(file.lattice).name != descriptor.name)
        throw qlbm::ParseError("window lattice does not match --lattice");
    const qlbm::VicinityLayout layout = qlbm::enumerate_vicinity(descriptor, config.extent);
    config.windows = {{1.0, qlbm::window_bits_from_file(file, layout)}};

    const qlbm::RunResult result = qlbm::run(config);

    json j;
    j["schema"] = 1;
    j["kind"] = "simulation_result";
    j["config"] = {{"lattice", descriptor.name}, {"nt", opt.nt},     {"alpha", opt.alpha},
                   {"beta", opt.beta},           {"order", opt.order}};
    j["focal_distribution"] = qlbm::to_json(result.focal);
    j["final_norm"] = result.final_state().norm();
    j["sparse_entries_peak"] = result.peak_entries;
    j["interference_merges"] = result.merges;
    if (opt.verify) j["comparison"] = qlbm::to_json(qlbm::compare(config));

    if (opt.format == "human") {
        std::string text = "focal distribution after " + std::to_string(opt.nt) + " step(s):\n";
        for (const auto& [pattern, p] : result.focal.probs) {
            char buf[96];
            std::snprintf(buf, sizeof(buf), "  |%s>  %.12g\n",
                          qlbm::pattern_to_string(pattern, result.focal.num_directions).c_str(),
                          p);
            text += buf;
        }
        if (opt.verify) {
            const auto comparison = qlbm::compare(config);
            text += "verified against the classical ensemble: TV distance = " +
                    std::to_string(comparison.tv_distance) +
                    (comparison.pass ? " (pass)" : " (MISMATCH)") + "\n";
        }
        emit(text, opt.out);
    } else {
        emit(qlbm::canonical_json(j), opt.out);
    }
    if (opt.verify && !qlbm::compare(config).pass) return kExitValidation;
    return kExitOk;
}

struct FullGridOptions {
    std::string lattice = "d1q2";
    std::vector<int> grid;
    int sites = 0;
    int steps = 1;
    double alpha = 1.0;
    double beta = 0.0;
    std::string init;
    std::string order = "collide-stream";
    bool verify = false;
    std::string format = "json";
    std::string out;
};

int cmd_fullgrid(const FullGridOptions& opt) {
    qlbm::FullGridConfig config;
    config.lattice = opt.lattice;
    config.collision = {{opt.alpha, 0.0}, {opt.beta, 0.0}};
    config.collision.validate();
    config.steps = opt.steps;
    config.order = parse_order(opt.order);

    const qlbm::WindowFile file = qlbm::load_window_file(opt.init);
    const qlbm::OccupancyField initial = qlbm::field_from_file(file);
    if (qlbm::build_descriptor(opt.lattice).name != initial.descriptor().name)
        throw qlbm::ParseError("grid lattice does not match --lattice");
    config.extents = initial.extents();
    if (!opt.grid.empty() && opt.grid != config.extents)
        throw qlbm::ParseError("--grid does not match the init file's grid header");
    if (opt.sites > 0 && config.extents != std::vector<int>{opt.sites})
        throw qlbm::ParseError("--sites does not match the init file's grid header");

    const qlbm::FullGridResult result = qlbm::full_grid_run(config, initial);

    // Verification: deterministic collision must track the classical field
    // evolution exactly, step by step.
    bool matches_classical = true;
    const bool deterministic =
        std::abs(opt.alpha) == 1.0 || std::abs(opt.beta) == 1.0;
    if (opt.verify) {
        if (!deterministic)
            throw std::invalid_argument("--verify requires a deterministic collision "
                                        "(|alpha| or |beta| equal to 1)");
        const qlbm::CollisionRule rule = std::abs(opt.beta) == 1.0
                                             ? qlbm::CollisionRule::SwapClass
                                             : qlbm::CollisionRule::Identity;
        qlbm::OccupancyField reference = initial;
        for (int step = 1; step <= opt.steps; ++step) {
            if (config.order == qlbm::StepOrder::CollideThenStream)
                reference = qlbm::stream_classical(qlbm::collide_classical(reference, rule));
            else
                reference = qlbm::collide_classical(qlbm::stream_classical(reference), rule);
            matches_classical = matches_classical && result.trace[static_cast<std::size_t>(step)] &&
                                *result.trace[static_cast<std::size_t>(step)] == reference;
        }
    }

    json j;
    j["schema"] = 1;
    j["kind"] = "fullgrid_result";
    j["config"] = {{"lattice", initial.descriptor().name},
                   {"steps", opt.steps},
                   {"alpha", opt.alpha},
                   {"beta", opt.beta},
                   {"order", opt.order}};
    json trace = json::array();
    const int m = initial.descriptor().num_directions();
    for (std::size_t step = 0; step < result.trace.size(); ++step) {
        json entry;
        entry["step"] = step;
        if (result.trace[step]) {
            json sites = json::array();
            for (std::size_t site = 0; site < initial.num_sites(); ++site)
                sites.push_back(qlbm::pattern_to_string(result.trace[step]->local_pattern(site), m));
            entry["occupancy"] = sites;
        } else {
            entry["superposed"] = true;
        }
        trace.push_back(entry);
    }
    j["trace"] = trace;
    if (opt.verify) j["matches_classical"] = matches_classical;

    if (opt.format == "human") {
        std::string text;
        for (std::size_t step = 0; step < result.trace.size(); ++step) {
            text += "step " + std::to_string(step) + ": ";
            if (result.trace[step]) {
                for (std::size_t site = 0; site < initial.num_sites(); ++site)
                    text += qlbm::pattern_to_string(result.trace[step]->local_pattern(site), m) +
                            " ";
            } else {
                text += "(superposed)";
            }
            text += "\n";
        }
        if (opt.verify)
            text += matches_classical ? "matches the classical evolution\n"
                                      : "MISMATCH against the classical evolution\n";
        emit(text, opt.out);
    } else {
        emit(qlbm::canonical_json(j), opt.out);
    }
    return (!opt.verify || matches_classical) ? kExitOk : kExitValidation;
}

int cmd_validate(bool inject_fault) {
    qlbm::ValidationOptions options;
    options.inject_fault = inject_fault;
    const auto results = qlbm::run_acceptance_checks(options);
    bool all_passed = true;
    for (const auto& result : results) {
        std::printf("[%s] %s (%.2fs) %s\n", result.passed ? "PASS" : "FAIL",
                    result.name.c_str(), result.seconds, result.detail.c_str());
        all_passed = all_passed && result.passed;
    }
    std::printf("%s\n", all_passed ? "all checks passed" : "SOME CHECKS FAILED");
    return all_passed ? kExitOk : kExitValidation;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantum lattice-Boltzmann encoding toolkit"};
    app.require_subcommand(1);

    NogoOptions nogo;
    auto* nogo_cmd = app.add_subcommand(
        "nogo", "check unitary realizability of an encoding's required transitions");
    nogo_cmd->add_option("encoding", nogo.encoding, "amplitude or cbs")
        ->required()
        ->check(CLI::IsMember({"amplitude", "cbs"}));
    nogo_cmd->add_option("--gamma1", nogo.gamma1, "collision weight moved onto the partner");
    nogo_cmd->add_option("--beta2", nogo.beta2, "first partner amplitude");
    nogo_cmd->add_option("--theta", nogo.theta, "phase picked up by the single-velocity state");
    nogo_cmd->add_option("--format", nogo.format)->check(CLI::IsMember({"json", "human"}));
    nogo_cmd->add_option("--out", nogo.out, "write the report to a file");

    FormulasOptions formulas;
    auto* formulas_cmd =
        app.add_subcommand("formulas", "tabulate window qubit/gate counts vs built circuits");
    formulas_cmd->add_option("--nt-max", formulas.nt_max, "largest window extent")
        ->check(CLI::Range(0, 64));
    formulas_cmd->add_option("--lattice", formulas.lattice);
    formulas_cmd->add_option("--out", formulas.out);

    SimulateOptions sim;
    auto* sim_cmd = app.add_subcommand("simulate", "run one space-time window");
    sim_cmd->add_option("--lattice", sim.lattice);
    sim_cmd->add_option("--nt", sim.nt, "time steps (window extent)")->check(CLI::Range(0, 16));
    sim_cmd->add_option("--alpha", sim.alpha, "collision keep amplitude");
    sim_cmd->add_option("--beta", sim.beta, "collision swap amplitude");
    sim_cmd->add_option("--init", sim.init, "window file (.win)")->required();
    sim_cmd->add_option("--order", sim.order)
        ->check(CLI::IsMember({"collide-stream", "stream-collide"}));
    sim_cmd->add_flag("--verify", sim.verify, "compare against the classical ensemble");
    sim_cmd->add_option("--format", sim.format)->check(CLI::IsMember({"json", "human"}));
    sim_cmd->add_option("--out", sim.out);

    FullGridOptions grid;
    auto* grid_cmd = app.add_subcommand("fullgrid", "simulate an entire periodic grid");
    grid_cmd->add_option("--lattice", grid.lattice);
    grid_cmd->add_option("--grid", grid.grid, "grid extents (must match the init file)");
    grid_cmd->add_option("--sites", grid.sites, "1D shorthand for --grid");
    grid_cmd->add_option("--steps", grid.steps)->check(CLI::Range(0, 1 << 20));
    grid_cmd->add_option("--alpha", grid.alpha);
    grid_cmd->add_option("--beta", grid.beta);
    grid_cmd->add_option("--init", grid.init, "grid file (.win)")->required();
    grid_cmd->add_option("--order", grid.order)
        ->check(CLI::IsMember({"collide-stream", "stream-collide"}));
    grid_cmd->add_flag("--verify", grid.verify, "compare against the classical evolution");
    grid_cmd->add_option("--format", grid.format)->check(CLI::IsMember({"json", "human"}));
    grid_cmd->add_option("--out", grid.out);

    bool inject_fault = false;
    auto* validate_cmd = app.add_subcommand("validate", "run the full acceptance suite");
    validate_cmd->add_flag("--inject-fault", inject_fault,
                           "perturb a collision amplitude pair to test the harness");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (nogo_cmd->parsed()) return cmd_nogo(nogo);
        if (formulas_cmd->parsed()) return cmd_formulas(formulas);
        if (sim_cmd->parsed()) return cmd_simulate(sim);
        if (grid_cmd->parsed()) return cmd_fullgrid(grid);
        if (validate_cmd->parsed()) return cmd_validate(inject_fault);
    } catch (const qlbm::IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return kExitIo;
    } catch (const qlbm::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const qlbm::BudgetError& e) {
        std::cerr << "budget error: " << e.what() << "\n";
        return kExitBudget;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitUsage;
}
