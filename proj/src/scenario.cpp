#include "modebeam/scenario.hpp"
#include "modebeam/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace modebeam {

using nlohmann::json;

namespace {

void check_keys(const json& obj, std::initializer_list<const char*> allowed,
                const std::string& context) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (std::find_if(allowed.begin(), allowed.end(), [&](const char* k) {
                return it.key() == k;
            }) == allowed.end())
            throw ConfigError(context + ": unknown key '" + it.key() + "'");
    }
}

const std::set<std::string>& ports_of(const std::string& antenna) {
    static const std::set<std::string> a1{"F1", "F2", "F3", "F4"};
    static const std::set<std::string> a2{"F1", "F2", "F3"};
    if (antenna == "antenna1") return a1;
    if (antenna == "antenna2") return a2;
    throw ConfigError("unknown antenna '" + antenna + "'");
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string angle_token(double deg) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", std::fabs(deg));
    std::string s = buf;
    std::replace(s.begin(), s.end(), '.', '_');
    return s;
}

std::string target_stem(const SteeringTarget& t) {
    if (t.kind == SteeringTarget::Kind::azimuth) return "cut_az_" + angle_token(t.angle_deg);
    const std::string plane = t.plane == CutPlane::Kind::xz ? "xz" : "yz";
    return "cut_" + plane + "_" + (t.angle_deg < 0.0 ? "m" : "p") + angle_token(t.angle_deg);
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open " + path.string() + " for writing");
    out << text;
}

std::string cut_to_csv(const PatternCut& cut) {
    std::string csv = "angle_deg,power_db,e_theta_re,e_theta_im,e_phi_re,e_phi_im\n";
    for (std::size_t i = 0; i < cut.angles_deg.size(); ++i) {
        csv += fmt(cut.angles_deg[i]);
        csv += ',';
        csv += fmt(cut.power_db[i]);
        csv += ',';
        csv += fmt(cut.fields[i].e_theta.real());
        csv += ',';
        csv += fmt(cut.fields[i].e_theta.imag());
        csv += ',';
        csv += fmt(cut.fields[i].e_phi.real());
        csv += ',';
        csv += fmt(cut.fields[i].e_phi.imag());
        csv += '\n';
    }
    return csv;
}

json excitation_to_json(const ExcitationVector& exc) {
    json out = json::object();
    for (const auto& [port, w] : exc.weights) {
        out[port] = {{"amplitude", std::abs(w)},
                     {"phase_deg", rad2deg(std::arg(w))}};
    }
    return out;
}

} // namespace

Scenario parse_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("scenario file not found: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_scenario_json(ss.str(), path);
}

Scenario parse_scenario_json(const std::string& json_text, const std::string& origin) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(origin + ": " + e.what());
    }
    if (!doc.is_object()) throw ConfigError(origin + ": top level must be an object");
    check_keys(doc,
               {"antenna", "configuration", "bend_radius_mm", "frequency_ghz",
                "steering", "allowed_ports", "resonance", "output_dir", "grid"},
               origin);

    Scenario s;
    if (!doc.contains("antenna")) throw ConfigError(origin + ": 'antenna' is required");
    s.antenna = doc.at("antenna").get<std::string>();
    (void)ports_of(s.antenna);

    if (!doc.contains("configuration"))
        throw ConfigError(origin + ": 'configuration' is required");
    const std::string cfg = doc.at("configuration").get<std::string>();
    if (cfg == "A") s.configuration = Configuration::A;
    else if (cfg == "B") s.configuration = Configuration::B;
    else if (cfg == "C") s.configuration = Configuration::C;
    else throw ConfigError(origin + ": configuration must be A, B, or C");

    if (doc.contains("bend_radius_mm")) {
        if (s.configuration == Configuration::A)
            throw ConfigError(origin + ": configuration A is flat; bend_radius_mm not allowed");
        s.bend_radius_mm = doc.at("bend_radius_mm").get<double>();
        if (!(s.bend_radius_mm >= 5.0))
            throw ConfigError(origin + ": bend_radius_mm must be >= 5");
    }

    if (doc.contains("frequency_ghz")) {
        const json& f = doc.at("frequency_ghz");
        if (f.is_string()) {
            if (f.get<std::string>() != "auto")
                throw ConfigError(origin + ": frequency_ghz must be a number or \"auto\"");
        } else {
            s.frequency_ghz = f.get<double>();
            if (!(*s.frequency_ghz > 0.0))
                throw ConfigError(origin + ": frequency_ghz must be > 0");
        }
    }

    if (doc.contains("steering")) {
        const json& st = doc.at("steering");
        if (!st.is_array()) throw ConfigError(origin + ": steering must be a list");
        for (const json& t : st) {
            check_keys(t, {"plane", "theta_deg", "azimuth_deg"}, origin + ": steering");
            SteeringTarget target;
            if (t.contains("azimuth_deg")) {
                if (t.contains("plane") || t.contains("theta_deg"))
                    throw ConfigError(origin + ": steering entry mixes azimuth and elevation");
                target.kind = SteeringTarget::Kind::azimuth;
                target.angle_deg = t.at("azimuth_deg").get<double>();
            } else {
                if (!t.contains("plane") || !t.contains("theta_deg"))
                    throw ConfigError(origin + ": elevation steering needs plane and theta_deg");
                const std::string plane = t.at("plane").get<std::string>();
                if (plane == "xz") target.plane = CutPlane::Kind::xz;
                else if (plane == "yz") target.plane = CutPlane::Kind::yz;
                else throw ConfigError(origin + ": plane must be xz or yz");
                target.kind = SteeringTarget::Kind::elevation;
                target.angle_deg = t.at("theta_deg").get<double>();
                if (!(std::fabs(target.angle_deg) <= 60.0))
                    throw ConfigError(origin + ": |theta_deg| must be <= 60");
            }
            s.steering.push_back(target);
        }
    }

    if (doc.contains("allowed_ports")) {
        const json& ap = doc.at("allowed_ports");
        if (ap.is_string()) {
            if (ap.get<std::string>() != "all")
                throw ConfigError(origin + ": allowed_ports must be \"all\" or a list");
        } else if (ap.is_array()) {
            for (const json& p : ap) {
                const std::string id = p.get<std::string>();
                if (!ports_of(s.antenna).count(id))
                    throw ConfigError(origin + ": unknown port '" + id + "' for " + s.antenna);
                s.allowed_ports.insert(id);
            }
            if (s.allowed_ports.empty())
                throw ConfigError(origin + ": allowed_ports list is empty");
        } else {
            throw ConfigError(origin + ": allowed_ports must be \"all\" or a list");
        }
    }

    if (doc.contains("resonance")) {
        const json& r = doc.at("resonance");
        check_keys(r, {"eps_r", "loss_tangent", "kappa_f", "slot_loading"},
                   origin + ": resonance");
        if (r.contains("eps_r")) {
            s.resonance.eps_r = r.at("eps_r").get<double>();
            if (!(s.resonance.eps_r >= 1.0))
                throw ConfigError(origin + ": eps_r must be >= 1");
        }
        if (r.contains("loss_tangent"))
            s.resonance.loss_tangent = r.at("loss_tangent").get<double>();
        if (r.contains("kappa_f"))
            s.resonance.bend_coefficient = r.at("kappa_f").get<double>();
        if (r.contains("slot_loading")) {
            const json& sl = r.at("slot_loading");
            if (sl.is_string()) {
                if (sl.get<std::string>() != "calibrated")
                    throw ConfigError(origin + ": slot_loading must be \"calibrated\" or an object");
            } else {
                check_keys(sl, {"patch", "ring"}, origin + ": slot_loading");
                s.calibrate_loading = false;
                if (sl.contains("patch"))
                    s.resonance.slot_loading_patch = sl.at("patch").get<double>();
                if (sl.contains("ring"))
                    s.resonance.slot_loading_ring = sl.at("ring").get<double>();
                for (double v : {s.resonance.slot_loading_patch, s.resonance.slot_loading_ring})
                    if (!(v > 0.0 && v <= 1.0))
                        throw ConfigError(origin + ": slot loadings must lie in (0, 1]");
            }
        }
    }

    if (doc.contains("output_dir")) s.output_dir = doc.at("output_dir").get<std::string>();

    if (doc.contains("grid")) {
        const std::string g = doc.at("grid").get<std::string>();
        const auto xpos = g.find('x');
        if (xpos == std::string::npos)
            throw ConfigError(origin + ": grid must look like \"64x128\"");
        try {
            s.grid_n_theta = std::stoi(g.substr(0, xpos));
            s.grid_n_phi = std::stoi(g.substr(xpos + 1));
        } catch (const std::exception&) {
            throw ConfigError(origin + ": grid must look like \"64x128\"");
        }
        if (s.grid_n_theta < 8 || s.grid_n_phi < 16)
            throw ConfigError(origin + ": grid too small (min 8x16)");
    }
    return s;
}

BendSpec bend_for(const Scenario& s) {
    switch (s.configuration) {
        case Configuration::A: return BendSpec::none();
        // B bends along x: the x coordinate curls, the cylinder axis is y.
        case Configuration::B: return BendSpec::about_y(s.bend_radius_mm);
        case Configuration::C: return BendSpec::about_x(s.bend_radius_mm);
    }
    throw ConfigError("bend_for: bad configuration");
}

std::set<std::string> resolve_allowed_ports(const Scenario& s, const AntennaLayout& layout) {
    if (!s.allowed_ports.empty()) return s.allowed_ports;
    std::set<std::string> all;
    for (const PortDef& p : layout.ports) all.insert(p.id);
    return all;
}

std::vector<SteeringTarget> resolve_steering(const Scenario& s) {
    if (!s.steering.empty()) return s.steering;
    std::vector<SteeringTarget> out;
    if (s.antenna == "antenna1") {
        for (const CutPlane::Kind plane : {CutPlane::Kind::xz, CutPlane::Kind::yz})
            for (const double angle : {20.0, -20.0})
                out.push_back({SteeringTarget::Kind::elevation, plane, angle});
    } else {
        for (const double angle : {0.0, 45.0, 90.0})
            out.push_back({SteeringTarget::Kind::azimuth, CutPlane::Kind::xz, angle});
    }
    return out;
}

std::string layout_to_json(const AntennaLayout& layout) {
    json doc;
    doc["name"] = layout.name;
    doc["board_side_mm"] = layout.board_side_mm;
    doc["substrate_thickness_mm"] = layout.substrate_thickness_mm;
    doc["metal_thickness_mm"] = layout.metal_thickness_mm;
    doc["patch_diameter_mm"] = layout.patch_diameter_mm;
    doc["ring_inner_diameter_mm"] = layout.ring_inner_diameter_mm;
    doc["ring_outer_diameter_mm"] = layout.ring_outer_diameter_mm;
    doc["design_frequency_ghz"] = layout.design_frequency_ghz;
    doc["ports"] = json::array();
    for (const PortDef& p : layout.ports)
        doc["ports"].push_back({{"id", p.id},
                                {"x_mm", p.x_mm},
                                {"y_mm", p.y_mm},
                                {"radiator", p.radiator == Radiator::patch ? "patch" : "ring"}});
    doc["modes"] = json::array();
    for (const ModeSpec& m : layout.modes) {
        const char* family = m.family == ModeFamily::patch_tm11 ? "patch_tm11"
                             : m.family == ModeFamily::ring_tm21 ? "ring_tm21"
                                                                 : "patch_tm01_monopole";
        doc["modes"].push_back({{"port", m.port},
                                {"family", family},
                                {"azimuthal_order", m.azimuthal_order},
                                {"orientation",
                                 m.orientation == Orientation::cos_phi ? "cos" : "sin"},
                                {"effective_radius_mm", m.effective_radius_mm},
                                {"gain_scale", m.gain_scale}});
    }
    return doc.dump(2) + "\n";
}

RunResult run_scenario(const Scenario& s, const std::string& out_dir) {
    const AntennaLayout layout = s.antenna == "antenna1" ? build_antenna1()
                                                         : build_antenna2();
    const BendSpec bend = bend_for(s);
    const ResonanceModel model = s.calibrate_loading
                                     ? calibrate_slot_loading(layout, s.resonance)
                                     : s.resonance;
    const SphereGrid grid = make_sphere_grid(s.grid_n_theta, s.grid_n_phi);

    // Flat center frequency per radiator family, then the bend-shifted value.
    json resonance_report = json::object();
    json flat_freqs = json::object();
    for (const ModeSpec& m : layout.modes) {
        const char* family = m.family == ModeFamily::patch_tm11 ? "patch_tm11"
                             : m.family == ModeFamily::ring_tm21 ? "ring_tm21"
                                                                 : "patch_tm01_monopole";
        if (!flat_freqs.contains(family))
            flat_freqs[family] = resonant_frequency(layout, m, model);
    }
    const double f_flat = layout.design_frequency_ghz;
    const double f_bent = bent_frequency(f_flat, layout, bend, model);
    const double f_run = s.frequency_ghz ? *s.frequency_ghz
                         : bend.flat     ? f_flat
                                         : f_bent;
    resonance_report["flat_ghz"] = flat_freqs;
    resonance_report["bent_center_ghz"] = f_bent;
    resonance_report["run_frequency_ghz"] = f_run;
    resonance_report["eps_r"] = model.eps_r;
    resonance_report["loss_tangent"] = model.loss_tangent;
    resonance_report["slot_loading"] = {{"patch", model.slot_loading_patch},
                                        {"ring", model.slot_loading_ring}};
    resonance_report["kappa_f"] = model.bend_coefficient;

    const std::set<std::string> allowed = resolve_allowed_ports(s, layout);
    const std::vector<SteeringTarget> targets = resolve_steering(s);

    std::filesystem::create_directories(out_dir);
    RunResult result;
    result.frequency_ghz = f_run;

    json target_reports = json::array();
    for (const SteeringTarget& t : targets) {
        SteeringSolution sol;
        if (t.kind == SteeringTarget::Kind::azimuth) {
            sol = steer_azimuth(layout, t.angle_deg, f_run, bend);
        } else {
            const CutPlane plane =
                t.plane == CutPlane::Kind::xz ? CutPlane::xz() : CutPlane::yz();
            sol = steer_elevation(layout, plane, t.angle_deg, f_run, bend, allowed);
        }
        const std::string csv_name = target_stem(t) + ".csv";
        write_text(std::filesystem::path(out_dir) / csv_name, cut_to_csv(sol.cut));
        result.files.push_back(csv_name);

        MetricsReport metrics;
        metrics.peak_direction_deg = sol.achieved_peak_deg;
        try {
            metrics.hpbw_deg = hpbw(sol.cut);
        } catch (const OpenBeamError&) {
            metrics.hpbw_defined = false; // beam never drops 3 dB on this cut
        }
        metrics.front_to_back_db = front_to_back_db(sol.cut);
        metrics.directivity_dbi = directivity_dbi(*sol.field, grid);

        json rep;
        rep["target"] =
            t.kind == SteeringTarget::Kind::azimuth
                ? json{{"azimuth_deg", t.angle_deg}}
                : json{{"plane", t.plane == CutPlane::Kind::xz ? "xz" : "yz"},
                       {"theta_deg", t.angle_deg}};
        rep["cut_file"] = csv_name;
        rep["excitation"] = excitation_to_json(sol.excitation);
        rep["achieved_peak_deg"] = metrics.peak_direction_deg;
        rep["peak_gain_rel_db"] = sol.peak_gain_rel_db;
        rep["relative_phase_deg"] = sol.trace.relative_phase_deg;
        if (!sol.trace.port_pair.empty()) rep["port_pair"] = sol.trace.port_pair;
        rep["hpbw_deg"] = metrics.hpbw_defined ? json(metrics.hpbw_deg) : json(nullptr);
        rep["front_to_back_db"] = metrics.front_to_back_db;
        rep["directivity_dbi"] = metrics.directivity_dbi;
        target_reports.push_back(rep);
    }

    // Pattern-orthogonality proxy for every port pair at the run frequency.
    json ecc_matrix = json::object();
    std::vector<SampledField> port_samples;
    for (const PortDef& p : layout.ports) {
        const auto field = make_port_field(layout, p.id, f_run, bend);
        port_samples.push_back(sample_field(*field, grid));
    }
    for (std::size_t i = 0; i < layout.ports.size(); ++i)
        for (std::size_t j = i + 1; j < layout.ports.size(); ++j)
            ecc_matrix[layout.ports[i].id + "-" + layout.ports[j].id] =
                ecc(port_samples[i], port_samples[j]);

    json report;
    report["antenna"] = layout.name;
    report["configuration"] = s.configuration == Configuration::A   ? "A"
                              : s.configuration == Configuration::B ? "B"
                                                                    : "C";
    report["resonance"] = resonance_report;
    report["targets"] = target_reports;
    report["ecc_matrix"] = ecc_matrix;
    write_text(std::filesystem::path(out_dir) / "report.json", report.dump(2) + "\n");
    result.files.push_back("report.json");

    json manifest;
    manifest["version"] = kVersion;
    manifest["antenna"] = layout.name;
    manifest["configuration"] = report["configuration"];
    manifest["bend_radius_mm"] =
        s.configuration == Configuration::A ? json(nullptr) : json(s.bend_radius_mm);
    manifest["frequency_ghz"] = f_run;
    manifest["grid"] = std::to_string(s.grid_n_theta) + "x" + std::to_string(s.grid_n_phi);
    manifest["allowed_ports"] = allowed;
    manifest["outputs"] = result.files;
    manifest["outputs"].push_back("manifest.json");
    write_text(std::filesystem::path(out_dir) / "manifest.json", manifest.dump(2) + "\n");
    result.files.push_back("manifest.json");
    return result;
}

} // namespace modebeam
