#pragma once

#include <chrono>
#include <cstdio>
#include <ctime>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bibliorank/csv.hpp"
#include "bibliorank/sha256.hpp"
#include "bibliorank/version.hpp"

namespace bibliorank {

inline std::string now_utc_iso8601() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02dZ", tm.tm_year + 1900, tm.tm_mon + 1,
                tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec);
  return buf;
}

// Provenance sidecar written once per CLI run: what ran, on which inputs,
// producing which outputs, all content-addressed. The timestamp lives here
// and only here, so data outputs stay byte-reproducible.
struct RunManifest {
  std::string command;
  std::vector<std::string> argv;
  std::string timestamp = now_utc_iso8601();

  struct Entry {
    std::string path;
    std::string sha256;
  };
  std::vector<Entry> inputs;
  std::vector<Entry> configs;
  std::vector<Entry> outputs;
  std::vector<std::pair<std::string, std::string>> summary;  // key-value run facts

  void add_input(const std::string& path) { inputs.push_back({path, sha256_file_hex(path)}); }
  void add_config(const std::string& path) { configs.push_back({path, sha256_file_hex(path)}); }
  void add_output(const std::string& path) { outputs.push_back({path, sha256_file_hex(path)}); }
  void add_summary(const std::string& key, const std::string& value) { summary.emplace_back(key, value); }

  std::string to_json() const {
    nlohmann::ordered_json j;
    j["tool"] = kToolName;
    j["version"] = kToolVersion;
    j["command"] = command;
    j["argv"] = argv;
    j["timestamp"] = timestamp;
    auto entries = [](const std::vector<Entry>& v) {
      nlohmann::ordered_json a = nlohmann::ordered_json::array();
      for (const auto& e : v) a.push_back({{"path", e.path}, {"sha256", e.sha256}});
      return a;
    };
    j["inputs"] = entries(inputs);
    j["configs"] = entries(configs);
    j["outputs"] = entries(outputs);
    nlohmann::ordered_json s = nlohmann::ordered_json::object();
    for (const auto& [k, v] : summary) s[k] = v;
    j["summary"] = s;
    return j.dump(2) + "\n";
  }

  void write(const std::string& path) const { write_file(path, to_json()); }
};

// The per-run key-value summary file, plain "key=value" lines in insertion
// order so pipelines can grep without a JSON parser.
inline std::string summary_kv(const std::vector<std::pair<std::string, std::string>>& summary) {
  std::string out;
  for (const auto& [k, v] : summary) out += k + "=" + v + "\n";
  return out;
}

}  // namespace bibliorank
