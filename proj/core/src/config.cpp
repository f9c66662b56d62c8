#include "rfisim/config.hpp"

#include <cstdio>
#include <ctime>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace rfisim {
namespace {

using nlohmann::json;

std::string hex64(uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

json config_to_json(const CampaignFileConfig& c) {
    json j;
    j["schema_version"] = c.schema_version;
    j["scenario_type"] = c.scenario_type;
    j["geodata"] = c.geodata_path;
    if (!c.node_list_path.empty()) j["node_list"] = c.node_list_path;
    j["lambda_per_km2"] = c.lambda_per_km2;
    j["d_max_m"] = c.d_max_m;
    j["seed"] = c.seed;
    j["iterations"] = c.iterations;
    j["rho"] = c.rho_values;
    j["satellites"] = c.satellites;
    j["nadir_deg"] = c.nadir_deg;
    j["azimuth_deg"] = c.azimuth_deg;
    j["roughness_sigma_m"] = c.roughness_sigma_m;
    j["gnb_tx_power_dbm"] = c.gnb_tx_power_dbm;
    j["backhaul_tx_power_dbm"] = c.backhaul_tx_power_dbm;
    if (!c.atmosphere_path.empty()) j["atmosphere"] = c.atmosphere_path;
    j["output_dir"] = c.output_dir;
    j["workers"] = c.workers;
    return j;
}

}  // namespace

CampaignFileConfig load_campaign_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw std::runtime_error("config: parse error in " + path + ": " + e.what());
    }
    CampaignFileConfig c;
    c.schema_version = j.value("schema_version", 0);
    if (c.schema_version != 1) {
        throw std::runtime_error("config: unsupported schema_version " +
                                 std::to_string(c.schema_version) + " (expected 1)");
    }
    c.scenario_type = j.value("scenario_type", c.scenario_type);
    if (c.scenario_type != "urban" && c.scenario_type != "backhaul") {
        throw std::runtime_error("config: scenario_type must be 'urban' or 'backhaul'");
    }
    c.geodata_path = j.value("geodata", c.geodata_path);
    c.node_list_path = j.value("node_list", c.node_list_path);
    c.lambda_per_km2 = j.value("lambda_per_km2", c.lambda_per_km2);
    c.d_max_m = j.value("d_max_m", c.d_max_m);
    c.seed = j.value("seed", c.seed);
    c.iterations = j.value("iterations", c.iterations);
    if (c.iterations < 1) throw std::runtime_error("config: iterations must be >= 1");
    if (j.contains("rho")) c.rho_values = j.at("rho").get<std::vector<double>>();
    for (double rho : c.rho_values) {
        if (rho < 0.0 || rho > 1.0) throw std::runtime_error("config: rho must be in [0,1]");
    }
    if (j.contains("satellites")) c.satellites = j.at("satellites").get<std::vector<std::string>>();
    if (j.contains("nadir_deg")) c.nadir_deg = j.at("nadir_deg").get<std::vector<double>>();
    if (j.contains("azimuth_deg")) c.azimuth_deg = j.at("azimuth_deg").get<std::vector<double>>();
    c.roughness_sigma_m = j.value("roughness_sigma_m", c.roughness_sigma_m);
    c.gnb_tx_power_dbm = j.value("gnb_tx_power_dbm", c.gnb_tx_power_dbm);
    c.backhaul_tx_power_dbm = j.value("backhaul_tx_power_dbm", c.backhaul_tx_power_dbm);
    c.atmosphere_path = j.value("atmosphere", c.atmosphere_path);
    c.output_dir = j.value("output_dir", c.output_dir);
    c.workers = j.value("workers", c.workers);
    return c;
}

std::string campaign_config_json(const CampaignFileConfig& cfg) {
    return config_to_json(cfg).dump(2);
}

uint64_t fnv1a_bytes(const std::string& data) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : data) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

uint64_t fnv1a_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("manifest: cannot hash missing file " + path);
    std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return fnv1a_bytes(data);
}

std::string RunManifest::to_json() const {
    json j;
    j["code_version"] = code_version;
    j["seed"] = seed;
    j["config"] = json::parse(config_snapshot_json);
    json hashes = json::object();
    for (const auto& [path, hash] : input_hashes) hashes[path] = hash;
    j["input_hashes"] = hashes;
    j["timestamp"] = timestamp;
    return j.dump(2);
}

RunManifest make_manifest(const CampaignFileConfig& cfg, const std::string& code_version) {
    RunManifest m;
    m.code_version = code_version;
    m.config_snapshot_json = campaign_config_json(cfg);
    m.seed = cfg.seed;
    if (!cfg.geodata_path.empty()) m.input_hashes[cfg.geodata_path] = hex64(fnv1a_file(cfg.geodata_path));
    if (!cfg.node_list_path.empty()) {
        m.input_hashes[cfg.node_list_path] = hex64(fnv1a_file(cfg.node_list_path));
    }
    if (!cfg.atmosphere_path.empty()) {
        m.input_hashes[cfg.atmosphere_path] = hex64(fnv1a_file(cfg.atmosphere_path));
    }
    std::time_t now = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    m.timestamp = buf;
    return m;
}

void write_manifest(const RunManifest& manifest, const std::string& dir) {
    const std::string path = dir + "/manifest.json";
    std::ofstream out(path);
    if (!out) throw std::runtime_error("manifest: cannot write " + path);
    out << manifest.to_json() << "\n";
}

}  // namespace rfisim
