// SPDX-License-Identifier: Apache-2.0
//
// Command-line driver: run scenarios, analyze and render traces, validate
// scenario files. Exit codes: 0 success, 1 validation failure, 2 I/O or
// parse failure.
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "imhere/imhere.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;

int cmd_run(const std::string& scenario_path, std::optional<std::uint64_t> ticks,
            std::optional<std::uint64_t> seed, const std::string& out_path) {
    imhere::Scenario scenario = imhere::load_scenario(scenario_path);
    if (ticks) scenario.ticks = *ticks;
    if (seed) scenario.world.rng_seed = *seed;

    auto records = imhere::run(scenario.world, scenario.model, scenario.params,
                               scenario.ticks, scenario.stop);
    imhere::TraceHeader header = imhere::make_trace_header(scenario);
    if (out_path.empty())
        imhere::write_trace(header, records, std::cout);
    else
        imhere::write_trace(header, records, out_path);
    std::cerr << "ran " << records.size() << " tick(s)\n";
    return kExitOk;
}

int cmd_analyze(const std::string& trace_path, const std::string& format,
                const std::string& scenario_path) {
    imhere::Trace trace = imhere::read_trace(trace_path);
    if (!scenario_path.empty()) {
        imhere::Scenario scenario = imhere::load_scenario(scenario_path);
        if (imhere::scenario_hash(scenario) != trace.header.scenario_hash)
            std::cerr << "warning: trace was produced from a different scenario (hash "
                      << trace.header.scenario_hash << ", file hashes to "
                      << imhere::scenario_hash(scenario) << ")\n";
    }
    imhere::AnalysisReport report = imhere::analyze(trace.records);
    if (format == "machine-readable")
        std::cout << imhere::report_to_json(report, trace.header).dump(2) << "\n";
    else
        imhere::print_report_text(report, trace.header, std::cout);
    return kExitOk;
}

int cmd_render(const std::string& trace_path, std::uint64_t tick,
               const std::string& out_path) {
    imhere::Trace trace = imhere::read_trace(trace_path);
    for (const imhere::TickRecord& rec : trace.records) {
        if (rec.tick == tick) {
            imhere::render_snapshot_file(rec, trace.header, out_path);
            return kExitOk;
        }
    }
    std::cerr << "error: trace has no tick " << tick << "\n";
    return kExitIo;
}

int cmd_validate(const std::string& scenario_path) {
    imhere::Scenario scenario = imhere::load_scenario(scenario_path);
    std::cout << "ok: " << scenario.world.size() << " entities, " << scenario.ticks
              << " tick(s), hash " << imhere::scenario_hash(scenario) << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"IM HERE engagement simulation"};
    app.require_subcommand(1);

    std::string scenario_path, trace_path, out_path, format = "text";
    std::optional<std::uint64_t> ticks, seed;
    std::uint64_t render_tick = 0;
    std::string cross_check_scenario;

    auto* run = app.add_subcommand("run", "run a scenario and emit a trace");
    run->add_option("scenario", scenario_path, "scenario file")->required();
    run->add_option("--ticks", ticks, "override the scenario tick limit");
    run->add_option("--seed", seed, "override the scenario seed");
    run->add_option("--out", out_path, "trace output path (default: stdout)");

    auto* analyze = app.add_subcommand("analyze", "summarize a trace");
    analyze->add_option("trace", trace_path, "trace file")->required();
    analyze->add_option("--format", format, "text or machine-readable")
        ->check(CLI::IsMember({"text", "machine-readable"}));
    analyze->add_option("--scenario", cross_check_scenario,
                        "cross-check the trace against this scenario file");

    auto* render = app.add_subcommand("render", "render one tick as SVG");
    render->add_option("trace", trace_path, "trace file")->required();
    render->add_option("--tick", render_tick, "tick to render")->required();
    render->add_option("--out", out_path, "output SVG path")->required();

    auto* validate = app.add_subcommand("validate", "check a scenario file");
    validate->add_option("scenario", scenario_path, "scenario file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(scenario_path, ticks, seed, out_path);
        if (analyze->parsed())
            return cmd_analyze(trace_path, format, cross_check_scenario);
        if (render->parsed()) return cmd_render(trace_path, render_tick, out_path);
        if (validate->parsed()) return cmd_validate(scenario_path);
    } catch (const imhere::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const imhere::FormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const imhere::TraceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitOk;
}
