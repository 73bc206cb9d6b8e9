#include "screwon/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace screwon::io {

std::string format_double(double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string trajectory_csv(const dynamics::Trajectory& traj, const ModelParams& p) {
    std::ostringstream os;
    os << "t,L1,L2,L3,S1,S2,S3,c,m,s,h,E\r\n";
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const auto& st = traj.states[i];
        const auto q = conserved::conserved_set(st, p);
        os << format_double(traj.times[i]);
        for (int a = 0; a < 3; ++a) os << ',' << format_double(st.L[a]);
        for (int a = 0; a < 3; ++a) os << ',' << format_double(st.S[a]);
        os << ',' << format_double(q.c) << ',' << format_double(q.m) << ','
           << format_double(q.s) << ',' << format_double(q.h) << ',' << format_double(q.E)
           << "\r\n";
    }
    return os.str();
}

namespace {

[[noreturn]] void parse_fail(int line, int col, const std::string& what) {
    std::ostringstream os;
    os << "config parse error at line " << line << ", column " << col << ": " << what;
    throw std::runtime_error(os.str());
}

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    std::size_t b = s.find_last_not_of(" \t\r");
    if (a == std::string::npos) return "";
    return s.substr(a, b - a + 1);
}

}  // namespace

Config Config::parse(const std::string& text) {
    Config cfg;
    std::istringstream is(text);
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        if (t.front() == '[') {
            if (t.back() != ']')
                parse_fail(lineno, static_cast<int>(line.size()), "unterminated section header");
            section = trim(t.substr(1, t.size() - 2));
            if (section.empty()) parse_fail(lineno, 2, "empty section name");
            cfg.data_[section];
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            parse_fail(lineno, 1, "expected key = value");
        const std::string key = trim(t.substr(0, eq));
        const std::string val = trim(t.substr(eq + 1));
        if (key.empty()) parse_fail(lineno, 1, "empty key");
        cfg.data_[section][key] = val;
    }
    return cfg;
}

Config Config::parse_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::ios_base::failure("cannot open config file: " + path);
    std::ostringstream os;
    os << f.rdbuf();
    return parse(os.str());
}

bool Config::has(const std::string& section, const std::string& key) const {
    auto it = data_.find(section);
    return it != data_.end() && it->second.count(key) > 0;
}

std::string Config::get(const std::string& section, const std::string& key,
                        const std::string& fallback) const {
    auto it = data_.find(section);
    if (it == data_.end()) return fallback;
    auto kt = it->second.find(key);
    return kt == it->second.end() ? fallback : kt->second;
}

double Config::get_double(const std::string& section, const std::string& key,
                          double fallback) const {
    if (!has(section, key)) return fallback;
    const std::string v = get(section, key);
    try {
        return std::stod(v);
    } catch (const std::exception&) {
        throw std::runtime_error("config: bad number for " + section + "." + key + ": " + v);
    }
}

int Config::get_int(const std::string& section, const std::string& key, int fallback) const {
    if (!has(section, key)) return fallback;
    const std::string v = get(section, key);
    try {
        return std::stoi(v);
    } catch (const std::exception&) {
        throw std::runtime_error("config: bad integer for " + section + "." + key + ": " + v);
    }
}

std::vector<std::string> Config::sections() const {
    std::vector<std::string> out;
    for (const auto& [k, v] : data_) out.push_back(k);
    return out;
}

}  // namespace screwon::io
