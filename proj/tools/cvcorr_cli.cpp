#include "cvcorr/channels.hpp"
#include "cvcorr/correlations.hpp"
#include "cvcorr/json_io.hpp"
#include "cvcorr/mid.hpp"
#include "cvcorr/protocols.hpp"
#include "cvcorr/random_states.hpp"
#include "cvcorr/vector_field.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>
#include <omp.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using cvcorr::RunManifest;
using nlohmann::json;

constexpr const char* kVersion = "0.1.0";

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitPhysicality = 3;
constexpr int kExitIo = 4;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw std::invalid_argument("malformed JSON in " + path + ": " + e.what());
    }
    return j;
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << text;
    if (!out) throw IoError("write failed for " + path);
}

void write_json_output(const std::string& path, const RunManifest& manifest,
                       const char* key, json payload) {
    json j;
    j["manifest"] = manifest_to_json(manifest);
    j[key] = std::move(payload);
    write_text(path, j.dump(2) + "\n");
}

RunManifest make_manifest(std::string command, std::vector<std::string> inputs,
                          json params, std::string output) {
    return {std::move(command), std::move(inputs), std::move(params),
            std::move(output), kVersion};
}

struct MeasuresOpts {
    std::string in, out;
    int n_max = 30;
    std::uint64_t seed = 0;
};

int run_measures(const MeasuresOpts& o) {
    const cvcorr::GaussianState state = cvcorr::state_from_json(read_json_file(o.in));
    const cvcorr::CorrelationReport rep =
        cvcorr::correlation_report(state, o.n_max, o.seed);
    const RunManifest m = make_manifest(
        "measures", {o.in}, {{"nmax", o.n_max}, {"seed", o.seed}}, o.out);
    write_json_output(o.out, m, "report", cvcorr::report_to_json(rep));
    return kExitOk;
}

struct ScatterOpts {
    int n = 1000;
    std::uint64_t seed = 0;
    int n_max = 30;
    std::string out;
};

int run_scatter(const ScatterOpts& o) {
    cvcorr::SamplerSpec spec;
    spec.count = o.n;
    spec.seed = o.seed;
    spec.n_max = o.n_max;
    const auto records = cvcorr::scatter(spec);
    const RunManifest m = make_manifest(
        "scatter", {}, {{"n", o.n}, {"seed", o.seed}, {"nmax", o.n_max}}, o.out);
    write_text(o.out, cvcorr::scatter_csv(records, m));
    return kExitOk;
}

struct DistributeOpts {
    double r = 0.5;
    double eta = 0.5;
    double gain_min = 0.0;
    double gain_max = 3.0;
    std::string out, sweep_out;
    double r_min = 0.1, r_max = 1.5;
    int r_steps = 15;
};

int run_distribute(const DistributeOpts& o) {
    cvcorr::DistributionConfig cfg;
    cfg.r = o.r;
    cfg.eta_b = o.eta;
    cfg.gain_min = o.gain_min;
    cfg.gain_max = o.gain_max;
    const cvcorr::ProtocolTrace trace = cvcorr::run_distribution(cfg);
    const RunManifest m = make_manifest("protocol distribute", {},
                                        {{"r", o.r},
                                         {"eta", o.eta},
                                         {"gain_min", o.gain_min},
                                         {"gain_max", o.gain_max}},
                                        o.out);
    write_json_output(o.out, m, "trace", cvcorr::trace_to_json(trace));

    if (!o.sweep_out.empty()) {
        std::ostringstream csv;
        const RunManifest ms = make_manifest(
            "protocol distribute --sweep", {},
            {{"eta", o.eta}, {"r_min", o.r_min}, {"r_max", o.r_max},
             {"r_steps", o.r_steps}},
            o.sweep_out);
        csv << "# manifest: " << manifest_to_json(ms).dump() << "\n";
        csv << "r,g_opt,duan,c_separable_all_stages\n";
        for (int i = 0; i < o.r_steps; ++i) {
            cfg.r = o.r_min + (o.r_max - o.r_min) * i /
                                  std::max(1, o.r_steps - 1);
            const cvcorr::ProtocolTrace t = cvcorr::run_distribution(cfg);
            bool c_sep = true;
            for (const auto& st : t.stages) c_sep = c_sep && st.separable[2];
            csv << cvcorr::format_double(cfg.r) << ','
                << cvcorr::format_double(t.g_opt) << ','
                << cvcorr::format_double(t.duan) << ',' << (c_sep ? 1 : 0) << "\n";
        }
        write_text(o.sweep_out, csv.str());
    }
    return kExitOk;
}

struct BsOpts {
    double nbar = 2.0;
    double corr = 1.0;
    std::string out;
};

int run_bs(const BsOpts& o) {
    const cvcorr::ProtocolTrace trace =
        cvcorr::run_bs_discord_entanglement(o.nbar, o.corr);
    const RunManifest m = make_manifest(
        "protocol bs", {}, {{"nbar", o.nbar}, {"corr", o.corr}}, o.out);
    write_json_output(o.out, m, "trace", cvcorr::trace_to_json(trace));
    return kExitOk;
}

struct MuellerOpts {
    std::string in, out;
};

int run_mueller(const MuellerOpts& o) {
    const cvcorr::MuellerMatrix ref =
        cvcorr::mueller_from_json(read_json_file(o.in));
    const cvcorr::CoherenceMatrix4 probe =
        cvcorr::coherence_matrix({cvcorr::TDoFField::radial()});
    cvcorr::CoherenceMatrix4 out_state;
    try {
        out_state = cvcorr::apply_mueller(probe, ref);
    } catch (const std::invalid_argument& e) {
        std::cerr << "cvcorr: " << e.what() << "\n";
        return kExitPhysicality;
    }
    const cvcorr::MuellerMatrix rec = cvcorr::recover_mueller_single_shot(out_state);
    const double err = (rec.m - ref.m).cwiseAbs().maxCoeff();

    const RunManifest m = make_manifest("polarimetry mueller", {o.in}, {}, o.out);
    json payload;
    payload["recovered"] = cvcorr::mueller_to_json(rec)["m"];
    payload["max_error_vs_reference"] = err;
    write_json_output(o.out, m, "polarimetry", std::move(payload));
    return kExitOk;
}

struct KinematicsOpts {
    double x0 = 0.0;
    int resolution = 201;
    std::string out;
};

int run_kinematics(const KinematicsOpts& o) {
    const cvcorr::KinematicResult res = cvcorr::kinematic_sense(o.x0, o.resolution);
    const RunManifest m = make_manifest(
        "polarimetry kinematics", {},
        {{"x0", o.x0}, {"resolution", o.resolution}}, o.out);
    std::ostringstream csv;
    csv << "# manifest: " << manifest_to_json(m).dump() << "\n";
    csv << "x0,S0,S1,S2,S3,x0_hat\n";
    csv << cvcorr::format_double(o.x0);
    for (double s : res.stokes.s) csv << ',' << cvcorr::format_double(s);
    csv << ',' << cvcorr::format_double(res.x0_hat) << "\n";
    write_text(o.out, csv.str());
    return kExitOk;
}

struct FieldOpts {
    std::string in, out;
};

int run_field(const FieldOpts& o) {
    const cvcorr::TDoFField field = cvcorr::field_from_json(read_json_file(o.in));
    const cvcorr::CoherenceMatrix4 g = cvcorr::coherence_matrix({field});

    json payload;
    payload["entanglement_degree"] = cvcorr::entanglement_degree(g);
    payload["polarization_degree"] = cvcorr::polarization_degree(g);
    payload["concurrence"] = cvcorr::concurrence(field);
    payload["schmidt_weight"] = cvcorr::schmidt_weight(field);
    try {
        const auto cp = cvcorr::coherence_and_predictability(g);
        payload["mu"] = {cp.mu.real(), cp.mu.imag()};
        payload["delta"] = cp.delta;
        payload["identity_residual"] = cvcorr::verify_entanglement_identity(field);
    } catch (const std::invalid_argument&) {
        payload["mu"] = nullptr;
        payload["delta"] = nullptr;
    }
    const cvcorr::TDoFStokes s = cvcorr::tdof_stokes(g);
    json rows = json::array();
    for (int j = 0; j < 4; ++j) {
        json row = json::array();
        for (int k = 0; k < 4; ++k) row.push_back(s.s(j, k));
        rows.push_back(std::move(row));
    }
    payload["tdof_stokes"] = std::move(rows);

    const RunManifest m = make_manifest("field analyze", {o.in}, {}, o.out);
    write_json_output(o.out, m, "field", std::move(payload));
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    if (const char* threads = std::getenv("CVCORR_THREADS")) {
        const int n = std::atoi(threads);
        if (n > 0) omp_set_num_threads(n);
    }

    CLI::App app{"Continuous-variable correlation and classical-entanglement toolkit"};
    app.require_subcommand(1);

    MeasuresOpts mo;
    CLI::App* measures = app.add_subcommand("measures", "Correlation report of a two-mode state");
    measures->add_option("--in", mo.in, "GaussianState JSON")->required();
    measures->add_option("--out", mo.out, "Output path (default stdout)");
    measures->add_option("--nmax", mo.n_max, "Fock truncation for MID (<= 0 skips)");
    measures->add_option("--seed", mo.seed, "Optimizer seed");

    ScatterOpts so;
    CLI::App* scatter = app.add_subcommand("scatter", "Random-state measure scatter (CSV)");
    scatter->add_option("--n", so.n, "Number of states")->check(CLI::PositiveNumber);
    scatter->add_option("--seed", so.seed, "RNG seed");
    scatter->add_option("--nmax", so.n_max, "Fock truncation for MID");
    scatter->add_option("--out", so.out, "Output path (default stdout)");

    CLI::App* protocol = app.add_subcommand("protocol", "Protocol simulations");
    protocol->require_subcommand(1);
    DistributeOpts dopt;
    CLI::App* distribute = protocol->add_subcommand(
        "distribute", "Entanglement distribution by separable ancilla");
    distribute->add_option("--r", dopt.r, "Squeezing");
    distribute->add_option("--eta", dopt.eta, "Mode-B transmittance");
    distribute->add_option("--gain-min", dopt.gain_min, "Gain search lower bound");
    distribute->add_option("--gain-max", dopt.gain_max, "Gain search upper bound");
    distribute->add_option("--out", dopt.out, "Trace JSON path (default stdout)");
    distribute->add_option("--sweep-out", dopt.sweep_out, "Also sweep r, write CSV here");
    distribute->add_option("--r-min", dopt.r_min, "Sweep start");
    distribute->add_option("--r-max", dopt.r_max, "Sweep end");
    distribute->add_option("--r-steps", dopt.r_steps, "Sweep steps");
    BsOpts bopt;
    CLI::App* bs = protocol->add_subcommand(
        "bs", "Entanglement from discord at a beam splitter");
    bs->add_option("--nbar", bopt.nbar, "Thermal occupation of input B");
    bs->add_option("--corr", bopt.corr, "Noise anticorrelation in [0, 1]");
    bs->add_option("--out", bopt.out, "Trace JSON path (default stdout)");

    CLI::App* polarimetry = app.add_subcommand("polarimetry", "Mueller polarimetry");
    polarimetry->require_subcommand(1);
    MuellerOpts muo;
    CLI::App* mueller = polarimetry->add_subcommand(
        "mueller", "Single-shot Mueller recovery with the radial probe");
    mueller->add_option("--in", muo.in, "Mueller JSON")->required();
    mueller->add_option("--out", muo.out, "Output path (default stdout)");
    KinematicsOpts ko;
    CLI::App* kinematics = polarimetry->add_subcommand(
        "kinematics", "Knife-edge position from integrated Stokes");
    kinematics->add_option("--x0", ko.x0, "Edge position in waist units")->required();
    kinematics->add_option("--resolution", ko.resolution, "Quadrature resolution");
    kinematics->add_option("--out", ko.out, "Output path (default stdout)");

    CLI::App* field = app.add_subcommand("field", "Vector-field analysis");
    field->require_subcommand(1);
    FieldOpts fo;
    CLI::App* analyze = field->add_subcommand("analyze", "Classical-entanglement measures");
    analyze->add_option("--in", fo.in, "Field JSON")->required();
    analyze->add_option("--out", fo.out, "Output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (*measures) return run_measures(mo);
        if (*scatter) return run_scatter(so);
        if (*distribute) return run_distribute(dopt);
        if (*bs) return run_bs(bopt);
        if (*mueller) return run_mueller(muo);
        if (*kinematics) return run_kinematics(ko);
        if (*analyze) return run_field(fo);
    } catch (const cvcorr::PhysicalityError& e) {
        std::cerr << "cvcorr: " << e.what() << "\n";
        return kExitPhysicality;
    } catch (const IoError& e) {
        std::cerr << "cvcorr: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "cvcorr: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}
