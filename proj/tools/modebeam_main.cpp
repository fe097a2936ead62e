// modebeam: multimode antenna beamforming simulator CLI.
//
// Subcommands: run (full scenario), resonance, pattern, steer, ecc, presets.
// Exit codes: 0 success, 2 configuration error, 3 solver infeasible,
// 4 numeric failure.

#include "modebeam/scenario.hpp"
#include "modebeam/errors.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

using namespace modebeam;
using nlohmann::json;

namespace {

struct CommonOpts {
    std::string antenna = "antenna1";
    std::string config = "A";
    double radius = 10.0;
    std::optional<double> frequency;
    std::string grid = "64x128";
};

Scenario scenario_from(const CommonOpts& o) {
    json doc;
    doc["antenna"] = o.antenna;
    doc["configuration"] = o.config;
    if (o.config != "A") doc["bend_radius_mm"] = o.radius;
    if (o.frequency) doc["frequency_ghz"] = *o.frequency;
    doc["grid"] = o.grid;
    return parse_scenario_json(doc.dump(), ".cli");
}

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--antenna", o.antenna, "antenna1 or antenna2")
        ->check(CLI::IsMember({"antenna1", "antenna2"}));
    cmd->add_option("--config", o.config, "bend configuration: A (flat), B, C")
        ->check(CLI::IsMember({"A", "B", "C"}));
    cmd->add_option("--radius", o.radius, "bend radius, mm (B/C)");
    cmd->add_option("--frequency", o.frequency, "evaluation frequency, GHz (default: auto)");
    cmd->add_option("--grid", o.grid, "sphere grid, e.g. 64x128");
}

std::string resolve_out_dir(const std::string& cli_out, const std::string& scenario_out) {
    if (!cli_out.empty()) return cli_out;
    if (!scenario_out.empty()) return scenario_out;
    if (const char* env = std::getenv("MODEBEAM_OUT"); env && *env) return env;
    return "modebeam_out";
}

CutPlane plane_from(const std::string& name, double theta_deg) {
    if (name == "xz") return CutPlane::xz();
    if (name == "yz") return CutPlane::yz();
    if (name == "horizontal") return CutPlane::horizontal(theta_deg);
    throw ConfigError("plane must be xz, yz, or horizontal");
}

void emit(const json& doc, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << doc.dump(2) << "\n";
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw ConfigError("cannot open " + out_path);
    out << doc.dump(2) << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Analytical multimode MIMO antenna beamforming simulator"};
    app.require_subcommand(1);

    bool strict = true;
    bool seedless = false;
    app.add_flag("--strict", strict, "strict config validation (default: on)");
    app.add_flag("--seedless", seedless,
                 "reserved; all algorithms are deterministic already");

    // run
    std::string scenario_path, run_out;
    auto* run = app.add_subcommand("run", "run a scenario file end to end");
    run->add_option("--scenario", scenario_path, "scenario JSON path")->required();
    run->add_option("--out", run_out, "output directory");
    std::string run_grid;
    run->add_option("--grid", run_grid, "override sphere grid, e.g. 64x128");

    // presets
    std::string presets_out;
    auto* presets = app.add_subcommand("presets", "dump the antenna layout presets");
    presets->add_option("--out", presets_out, "directory for antenna1/antenna2 JSON files");

    // resonance
    CommonOpts res_opts;
    auto* resonance = app.add_subcommand("resonance", "flat and bent resonance summary");
    add_common(resonance, res_opts);

    // pattern
    CommonOpts pat_opts;
    std::string pat_port = "F1", pat_plane = "xz", pat_out;
    double pat_theta = 60.0;
    auto* pattern = app.add_subcommand("pattern", "single-port pattern cut CSV");
    add_common(pattern, pat_opts);
    pattern->add_option("--port", pat_port, "feed port id")->required();
    pattern->add_option("--plane", pat_plane, "xz, yz, or horizontal");
    pattern->add_option("--theta", pat_theta, "elevation of the horizontal cut, deg");
    pattern->add_option("--out", pat_out, "CSV path (default: stdout)");

    // steer
    CommonOpts steer_opts;
    std::string steer_plane = "xz";
    double steer_angle = 20.0;
    std::vector<std::string> steer_ports;
    std::string steer_out;
    auto* steer = app.add_subcommand("steer", "solve one steering target");
    add_common(steer, steer_opts);
    steer->add_option("--plane", steer_plane, "xz, yz, or azimuth");
    steer->add_option("--angle", steer_angle, "target angle, deg")->required();
    steer->add_option("--ports", steer_ports, "allowed ports (default: all)");
    steer->add_option("--out", steer_out, "write solution JSON here instead of stdout");

    // ecc
    CommonOpts ecc_opts;
    std::string ecc_out;
    auto* ecc_cmd = app.add_subcommand("ecc", "port-pair envelope correlation matrix");
    add_common(ecc_cmd, ecc_opts);
    ecc_cmd->add_option("--out", ecc_out, "write JSON here instead of stdout");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            Scenario s = parse_scenario(scenario_path);
            if (!run_grid.empty()) {
                json patch = {{"antenna", s.antenna},
                              {"configuration", "A"},
                              {"grid", run_grid}};
                const Scenario g = parse_scenario_json(patch.dump(), "--grid");
                s.grid_n_theta = g.grid_n_theta;
                s.grid_n_phi = g.grid_n_phi;
            }
            const std::string out_dir = resolve_out_dir(run_out, s.output_dir);
            const RunResult r = run_scenario(s, out_dir);
            std::cout << "wrote " << r.files.size() << " files to " << out_dir
                      << " (f = " << r.frequency_ghz << " GHz)\n";
            return 0;
        }
        if (*presets) {
            for (const AntennaLayout& layout : {build_antenna1(), build_antenna2()}) {
                const std::string text = layout_to_json(layout);
                if (presets_out.empty()) {
                    std::cout << text;
                } else {
                    std::filesystem::create_directories(presets_out);
                    std::ofstream out(std::filesystem::path(presets_out) /
                                          (layout.name + ".json"),
                                      std::ios::binary);
                    out << text;
                }
            }
            return 0;
        }
        if (*resonance) {
            const Scenario s = scenario_from(res_opts);
            const AntennaLayout layout =
                s.antenna == "antenna1" ? build_antenna1() : build_antenna2();
            const ResonanceModel model = calibrate_slot_loading(layout, s.resonance);
            const BendSpec bend = bend_for(s);
            json doc;
            doc["antenna"] = layout.name;
            doc["design_frequency_ghz"] = layout.design_frequency_ghz;
            for (const ModeSpec& m : layout.modes)
                doc["flat_ghz"][m.port] = resonant_frequency(layout, m, model);
            doc["slot_loading"] = {{"patch", model.slot_loading_patch},
                                   {"ring", model.slot_loading_ring}};
            doc["bent_center_ghz"] =
                bent_frequency(layout.design_frequency_ghz, layout, bend, model);
            emit(doc, "");
            return 0;
        }
        if (*pattern) {
            const Scenario s = scenario_from(pat_opts);
            const AntennaLayout layout =
                s.antenna == "antenna1" ? build_antenna1() : build_antenna2();
            const ResonanceModel model = calibrate_slot_loading(layout, s.resonance);
            const BendSpec bend = bend_for(s);
            const double f = s.frequency_ghz
                                 ? *s.frequency_ghz
                                 : bent_frequency(layout.design_frequency_ghz, layout,
                                                  bend, model);
            const auto field = make_port_field(layout, pat_port, f, bend);
            const PatternCut cut = make_cut(*field, plane_from(pat_plane, pat_theta));
            std::string csv = "angle_deg,power_db,e_theta_re,e_theta_im,e_phi_re,e_phi_im\n";
            char buf[256];
            for (std::size_t i = 0; i < cut.angles_deg.size(); ++i) {
                std::snprintf(buf, sizeof buf, "%.10g,%.10g,%.10g,%.10g,%.10g,%.10g\n",
                              cut.angles_deg[i], cut.power_db[i],
                              cut.fields[i].e_theta.real(), cut.fields[i].e_theta.imag(),
                              cut.fields[i].e_phi.real(), cut.fields[i].e_phi.imag());
                csv += buf;
            }
            if (pat_out.empty()) {
                std::cout << csv;
            } else {
                std::ofstream out(pat_out, std::ios::binary);
                out << csv;
            }
            return 0;
        }
        if (*steer) {
            const Scenario s = scenario_from(steer_opts);
            const AntennaLayout layout =
                s.antenna == "antenna1" ? build_antenna1() : build_antenna2();
            const ResonanceModel model = calibrate_slot_loading(layout, s.resonance);
            const BendSpec bend = bend_for(s);
            const double f = s.frequency_ghz
                                 ? *s.frequency_ghz
                                 : bent_frequency(layout.design_frequency_ghz, layout,
                                                  bend, model);
            SteeringSolution sol;
            if (steer_plane == "azimuth") {
                sol = steer_azimuth(layout, steer_angle, f, bend);
            } else {
                std::set<std::string> allowed(steer_ports.begin(), steer_ports.end());
                if (allowed.empty())
                    for (const PortDef& p : layout.ports) allowed.insert(p.id);
                sol = steer_elevation(layout, plane_from(steer_plane, 60.0), steer_angle,
                                      f, bend, allowed);
            }
            json doc;
            doc["target_deg"] = sol.target_deg;
            doc["achieved_peak_deg"] = sol.achieved_peak_deg;
            doc["relative_phase_deg"] = sol.trace.relative_phase_deg;
            doc["peak_gain_rel_db"] = sol.peak_gain_rel_db;
            if (!sol.trace.port_pair.empty()) doc["port_pair"] = sol.trace.port_pair;
            json weights = json::object();
            for (const auto& [port, w] : sol.excitation.weights)
                weights[port] = {{"amplitude", std::abs(w)},
                                 {"phase_deg", rad2deg(std::arg(w))}};
            doc["excitation"] = weights;
            try {
                doc["hpbw_deg"] = hpbw(sol.cut);
            } catch (const OpenBeamError&) {
                doc["hpbw_deg"] = nullptr; // beam never drops 3 dB
            }
            emit(doc, steer_out);
            return 0;
        }
        if (*ecc_cmd) {
            const Scenario s = scenario_from(ecc_opts);
            const AntennaLayout layout =
                s.antenna == "antenna1" ? build_antenna1() : build_antenna2();
            const ResonanceModel model = calibrate_slot_loading(layout, s.resonance);
            const BendSpec bend = bend_for(s);
            const double f = s.frequency_ghz
                                 ? *s.frequency_ghz
                                 : bent_frequency(layout.design_frequency_ghz, layout,
                                                  bend, model);
            const SphereGrid grid = make_sphere_grid(s.grid_n_theta, s.grid_n_phi);
            std::vector<SampledField> samples;
            for (const PortDef& p : layout.ports)
                samples.push_back(sample_field(*make_port_field(layout, p.id, f, bend), grid));
            json doc;
            doc["antenna"] = layout.name;
            doc["frequency_ghz"] = f;
            for (std::size_t i = 0; i < layout.ports.size(); ++i)
                for (std::size_t j = i + 1; j < layout.ports.size(); ++j)
                    doc["ecc"][layout.ports[i].id + "-" + layout.ports[j].id] =
                        ecc(samples[i], samples[j]);
            emit(doc, ecc_out);
            return 0;
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const GeometryError& e) {
        std::cerr << "geometry error: " << e.what() << "\n";
        return 2;
    } catch (const InfeasibleError& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return 3;
    } catch (const NumericError& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 4;
    } catch (const std::domain_error& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
