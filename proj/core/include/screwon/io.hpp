#pragma once

#include <map>
#include <string>
#include <vector>

#include "screwon/conserved.hpp"
#include "screwon/dynamics.hpp"
#include "screwon/types.hpp"

namespace screwon::io {

// Shortest decimal that round-trips to the same double (std::to_chars).
std::string format_double(double v);

// Trajectory as RFC-4180 CSV with columns
// t,L1,L2,L3,S1,S2,S3,c,m,s,h,E
std::string trajectory_csv(const dynamics::Trajectory& traj, const ModelParams& p);

// Minimal INI-style config: [section] headers and key = value lines.
struct ConfigError {
    int line = 0, column = 0;
    std::string message;
};

class Config {
  public:
    // throws std::runtime_error carrying line/column on parse failure
    static Config parse(const std::string& text);
    static Config parse_file(const std::string& path);

    bool has(const std::string& section, const std::string& key) const;
    std::string get(const std::string& section, const std::string& key,
                    const std::string& fallback = "") const;
    double get_double(const std::string& section, const std::string& key,
                      double fallback) const;
    int get_int(const std::string& section, const std::string& key, int fallback) const;
    std::vector<std::string> sections() const;

    const std::map<std::string, std::map<std::string, std::string>>& raw() const {
        return data_;
    }

  private:
    std::map<std::string, std::map<std::string, std::string>> data_;
};

}  // namespace screwon::io
