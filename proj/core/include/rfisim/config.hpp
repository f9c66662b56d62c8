#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace rfisim {

// Campaign description as read from a JSON config file. Angles are in degrees
// here (file/CLI boundary); everything downstream works in radians.
struct CampaignFileConfig {
    int schema_version = 1;
    std::string scenario_type = "urban";  // "urban" | "backhaul"
    std::string geodata_path;
    std::string node_list_path;  // optional override of the random placement
    double lambda_per_km2 = 45.0;
    double d_max_m = 200.0;
    uint64_t seed = 0;
    int iterations = 1000;
    std::vector<double> rho_values = {1.0};
    std::vector<std::string> satellites = {"tempest-178"};
    std::vector<double> nadir_deg = {10.0, 35.0, 65.0};
    std::vector<double> azimuth_deg = {0.0};
    double roughness_sigma_m = 0.05e-3;
    double gnb_tx_power_dbm = 10.0;
    double backhaul_tx_power_dbm = 30.0;
    std::string atmosphere_path;
    std::string output_dir = "out";
    int workers = 0;
};

CampaignFileConfig load_campaign_config(const std::string& path);
std::string campaign_config_json(const CampaignFileConfig& cfg);

// FNV-1a over the raw bytes of a file, for manifest input hashes.
uint64_t fnv1a_file(const std::string& path);
uint64_t fnv1a_bytes(const std::string& data);

// Everything needed to reproduce a run: the resolved configuration snapshot,
// code version, seed, and content hashes of every input file. The timestamp is
// informational and excluded from reproducibility comparisons.
struct RunManifest {
    std::string code_version;
    std::string config_snapshot_json;
    uint64_t seed = 0;
    std::map<std::string, std::string> input_hashes;  // path -> hex hash
    std::string timestamp;

    std::string to_json() const;
};

RunManifest make_manifest(const CampaignFileConfig& cfg, const std::string& code_version);
void write_manifest(const RunManifest& manifest, const std::string& dir);

}  // namespace rfisim
