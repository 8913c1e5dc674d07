#include "cvcorr/json_io.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace cvcorr {

using nlohmann::json;

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

json state_to_json(const GaussianState& state) {
    json j;
    j["n_modes"] = state.n_modes();
    j["mean"] = std::vector<double>(state.mean().data(),
                                    state.mean().data() + state.mean().size());
    json cov = json::array();
    for (int r = 0; r < state.cov().rows(); ++r) {
        json row = json::array();
        for (int c = 0; c < state.cov().cols(); ++c) row.push_back(state.cov()(r, c));
        cov.push_back(std::move(row));
    }
    j["cov"] = std::move(cov);
    return j;
}

GaussianState state_from_json(const json& j) {
    if (!j.is_object() || !j.contains("n_modes") || !j.contains("mean") ||
        !j.contains("cov"))
        throw std::invalid_argument("state JSON needs n_modes, mean, cov");
    const int n = j.at("n_modes").get<int>();
    if (n <= 0) throw std::invalid_argument("n_modes must be positive");
    const auto mean = j.at("mean").get<std::vector<double>>();
    if (static_cast<int>(mean.size()) != 2 * n)
        throw std::invalid_argument("mean must have 2*n_modes entries");
    const auto cov = j.at("cov").get<std::vector<std::vector<double>>>();
    if (static_cast<int>(cov.size()) != 2 * n)
        throw std::invalid_argument("cov must be 2n x 2n");
    Eigen::VectorXd mu(2 * n);
    Eigen::MatrixXd g(2 * n, 2 * n);
    for (int r = 0; r < 2 * n; ++r) {
        if (static_cast<int>(cov[r].size()) != 2 * n)
            throw std::invalid_argument("cov must be 2n x 2n");
        mu(r) = mean[r];
        for (int c = 0; c < 2 * n; ++c) g(r, c) = cov[r][c];
    }
    return {mu, g};
}

json report_to_json(const CorrelationReport& report) {
    json j;
    j["mutual_info"] = report.mutual_info;
    j["discord_left"] = report.discord_left;
    j["discord_right"] = report.discord_right;
    j["discord_two_way"] = report.discord_two_way;
    j["mid"] = report.mid ? json(*report.mid) : json(nullptr);
    j["amid"] = report.amid ? json(*report.amid) : json(nullptr);
    j["p_classical"] = report.p_classical;
    j["classification"] = to_string(report.classification);
    return j;
}

json trace_to_json(const ProtocolTrace& trace) {
    json stages = json::array();
    for (const StageRecord& st : trace.stages) {
        json s;
        s["name"] = st.name;
        s["state"] = state_to_json(st.state);
        s["ppt_min_nu"] = st.ppt_min_nu;
        s["separable"] = st.separable;
        stages.push_back(std::move(s));
    }
    json j;
    j["stages"] = std::move(stages);
    j["discord_c_ab"] = trace.discord_c_ab;
    j["g_opt"] = trace.g_opt;
    j["duan"] = trace.duan;
    j["gain_bracketed"] = trace.gain_bracketed;
    return j;
}

json field_to_json(const TDoFField& field) {
    json amps = json::array();
    for (int i = 0; i < 4; ++i)
        amps.push_back({field.amplitudes(i).real(), field.amplitudes(i).imag()});
    return {{"basis", field.basis == FieldBasis::Points ? "points" : "hg"},
            {"amplitudes", std::move(amps)}};
}

TDoFField field_from_json(const json& j) {
    if (!j.is_object() || !j.contains("basis") || !j.contains("amplitudes"))
        throw std::invalid_argument("field JSON needs basis, amplitudes");
    TDoFField f;
    const std::string basis = j.at("basis").get<std::string>();
    if (basis == "points")
        f.basis = FieldBasis::Points;
    else if (basis == "hg")
        f.basis = FieldBasis::HermiteGauss;
    else
        throw std::invalid_argument("basis must be \"points\" or \"hg\"");
    const auto amps = j.at("amplitudes").get<std::vector<std::vector<double>>>();
    if (amps.size() != 4)
        throw std::invalid_argument("amplitudes must have four [re,im] pairs");
    for (int i = 0; i < 4; ++i) {
        if (amps[i].size() != 2)
            throw std::invalid_argument("amplitudes must have four [re,im] pairs");
        f.amplitudes(i) = {amps[i][0], amps[i][1]};
    }
    return f;
}

json mueller_to_json(const MuellerMatrix& m) {
    json rows = json::array();
    for (int r = 0; r < 4; ++r) {
        json row = json::array();
        for (int c = 0; c < 4; ++c) row.push_back(m.m(r, c));
        rows.push_back(std::move(row));
    }
    return {{"m", std::move(rows)}};
}

MuellerMatrix mueller_from_json(const json& j) {
    if (!j.is_object() || !j.contains("m"))
        throw std::invalid_argument("Mueller JSON needs key m");
    const auto rows = j.at("m").get<std::vector<std::vector<double>>>();
    if (rows.size() != 4) throw std::invalid_argument("m must be 4x4");
    MuellerMatrix m;
    for (int r = 0; r < 4; ++r) {
        if (rows[r].size() != 4) throw std::invalid_argument("m must be 4x4");
        for (int c = 0; c < 4; ++c) m.m(r, c) = rows[r][c];
    }
    return m;
}

json manifest_to_json(const RunManifest& manifest) {
    json j;
    j["command"] = manifest.command;
    j["inputs"] = manifest.inputs;
    j["params"] = manifest.params;
    j["output"] = manifest.output;
    j["version"] = manifest.version;
    return j;
}

std::string scatter_csv(const std::vector<ScatterRecord>& records,
                        const RunManifest& manifest) {
    std::ostringstream out;
    out << "# manifest: " << manifest_to_json(manifest).dump() << "\n";
    out << "index,nu1,nu2,I,D_left,D_right,D_two_way,MID,AMID,p_classical\n";
    for (const ScatterRecord& r : records) {
        out << r.index << ',' << format_double(r.nu1) << ',' << format_double(r.nu2)
            << ',' << format_double(r.report.mutual_info) << ','
            << format_double(r.report.discord_left) << ','
            << format_double(r.report.discord_right) << ','
            << format_double(r.report.discord_two_way) << ','
            << (r.report.mid ? format_double(*r.report.mid) : "") << ','
            << (r.report.amid ? format_double(*r.report.amid) : "") << ','
            << (r.report.p_classical ? 1 : 0) << "\n";
    }
    return out.str();
}

}  // namespace cvcorr
