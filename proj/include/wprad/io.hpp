#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "wprad/numeric.hpp"
#include "wprad/smith_purcell.hpp"
#include "wprad/wigner.hpp"

namespace wprad::io {

// Shortest text that round-trips a double exactly.
inline std::string format_g17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
}

// ---------------------------------------------------------------------------
// Flat dotted-key configuration: `section.key = value` lines, `#` comments.
// Values stay strings until a typed getter pulls them; getters record which
// keys were touched so callers can reject typos.

class Config {
  public:
    void set(const std::string& key, const std::string& value) { kv_[key] = value; }
    void set(const std::string& key, double value) { kv_[key] = format_g17(value); }
    void set_if_absent(const std::string& key, const std::string& value) {
        kv_.emplace(key, value);
    }
    bool has(const std::string& key) const { return kv_.count(key) != 0; }

    std::string get_string(const std::string& key, const std::string& fallback = "") const {
        used_.insert(key);
        auto it = kv_.find(key);
        return it == kv_.end() ? fallback : it->second;
    }

    double get_double(const std::string& key, double fallback) const {
        used_.insert(key);
        auto it = kv_.find(key);
        if (it == kv_.end()) return fallback;
        return parse_double(key, it->second);
    }

    double require_double(const std::string& key) const {
        used_.insert(key);
        auto it = kv_.find(key);
        if (it == kv_.end()) throw validation_error("config: missing key " + key);
        return parse_double(key, it->second);
    }

    long long get_int(const std::string& key, long long fallback) const {
        used_.insert(key);
        auto it = kv_.find(key);
        if (it == kv_.end()) return fallback;
        try {
            std::size_t pos = 0;
            long long v = std::stoll(it->second, &pos);
            if (pos != it->second.size()) throw std::invalid_argument("");
            return v;
        } catch (...) {
            throw validation_error("config: key " + key + " is not an integer: " + it->second);
        }
    }

    bool get_bool(const std::string& key, bool fallback) const {
        used_.insert(key);
        auto it = kv_.find(key);
        if (it == kv_.end()) return fallback;
        if (it->second == "true" || it->second == "1" || it->second == "yes") return true;
        if (it->second == "false" || it->second == "0" || it->second == "no") return false;
        throw validation_error("config: key " + key + " is not a boolean: " + it->second);
    }

    std::vector<int> get_int_list(const std::string& key, std::vector<int> fallback) const {
        used_.insert(key);
        auto it = kv_.find(key);
        if (it == kv_.end()) return fallback;
        std::vector<int> out;
        std::stringstream ss(it->second);
        std::string tok;
        while (std::getline(ss, tok, ','))
            try {
                out.push_back(std::stoi(tok));
            } catch (...) {
                throw validation_error("config: key " + key + " is not an integer list");
            }
        if (out.empty())
            throw validation_error("config: key " + key + " is an empty list");
        return out;
    }

    std::vector<std::string> unused_keys() const {
        std::vector<std::string> out;
        for (const auto& [k, v] : kv_)
            if (!used_.count(k)) out.push_back(k);
        return out;
    }

    const std::map<std::string, std::string>& entries() const { return kv_; }

    static Config parse_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw validation_error("config: cannot open " + path);
        Config cfg;
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            std::string s = strip(line);
            if (s.empty() || s[0] == '#') continue;
            auto eq = s.find('=');
            if (eq == std::string::npos)
                throw validation_error("config: " + path + ":" + std::to_string(lineno) +
                                       ": expected key = value");
            std::string key = strip(s.substr(0, eq));
            std::string value = strip(s.substr(eq + 1));
            if (key.empty())
                throw validation_error("config: " + path + ":" + std::to_string(lineno) +
                                       ": empty key");
            cfg.kv_[key] = value;
        }
        return cfg;
    }

  private:
    static std::string strip(const std::string& s) {
        std::size_t a = s.find_first_not_of(" \t\r");
        if (a == std::string::npos) return "";
        std::size_t b = s.find_last_not_of(" \t\r");
        return s.substr(a, b - a + 1);
    }

    static double parse_double(const std::string& key, const std::string& text) {
        try {
            std::size_t pos = 0;
            double v = std::stod(text, &pos);
            if (pos != text.size()) throw std::invalid_argument("");
            return v;
        } catch (...) {
            throw validation_error("config: key " + key + " is not a number: " + text);
        }
    }

    std::map<std::string, std::string> kv_;
    mutable std::set<std::string> used_;
};

// ---------------------------------------------------------------------------
// CSV products. All numbers round-trip; newline is always '\n'.

inline std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw validation_error("cannot open output file " + path);
    return out;
}

inline void write_bl_csv(const std::string& path, const BunchingSpectrum& bs) {
    auto out = open_out(path);
    out << "l,re,im,abs\n";
    for (int l = -bs.l_max; l <= bs.l_max; ++l) {
        cplx B = bs.B(l);
        out << l << ',' << format_g17(B.real()) << ',' << format_g17(B.imag()) << ','
            << format_g17(std::abs(B)) << '\n';
    }
}

struct SpectrumRow {
    double omega = 0.0;
    double value = 0.0;
    std::string channel;
    int l = 0, m = 0;
};

inline void write_spectrum_csv(const std::string& path,
                               const std::vector<SpectrumRow>& rows) {
    auto out = open_out(path);
    out << "omega,value,channel,l,m\n";
    for (const auto& r : rows)
        out << format_g17(r.omega) << ',' << format_g17(r.value) << ',' << r.channel << ','
            << r.l << ',' << r.m << '\n';
}

inline const char* channel_name(MapChannel c) {
    switch (c) {
        case MapChannel::classical: return "classical";
        case MapChannel::quantum: return "quantum";
        case MapChannel::modulated: return "modulated";
        default: return "revival";
    }
}

inline void write_map_csv(const std::string& path, const SpectralMap& map) {
    auto out = open_out(path);
    out << "lambda,theta,channel,value,l,m\n";
    const char* ch = channel_name(map.channel);
    for (std::size_t i = 0; i < map.n_theta(); ++i)
        for (std::size_t j = 0; j < map.n_lambda(); ++j)
            out << format_g17(map.axes.lambda[j]) << ',' << format_g17(map.axes.theta[i])
                << ',' << ch << ',' << format_g17(map.at(i, j)) << ','
                << int(map.label_l[i * map.n_lambda() + j]) << ','
                << int(map.label_m[i * map.n_lambda() + j]) << '\n';
}

struct EnsembleRow {
    int l = 0;
    double omega = 0.0;
    double analytic = 0.0;
    double mc_mean = 0.0;
    double mc_stderr = 0.0;
    std::size_t n_trials = 0;
    std::uint64_t seed = 0;
};

inline void write_ensemble_csv(const std::string& path,
                               const std::vector<EnsembleRow>& rows) {
    auto out = open_out(path);
    out << "l,omega,analytic,mc_mean,mc_stderr,n_trials,seed\n";
    for (const auto& r : rows)
        out << r.l << ',' << format_g17(r.omega) << ',' << format_g17(r.analytic) << ','
            << format_g17(r.mc_mean) << ',' << format_g17(r.mc_stderr) << ',' << r.n_trials
            << ',' << r.seed << '\n';
}

// Matrix CSV: first row is the column axis, first column the row axis.
inline void write_matrix_csv(const std::string& path, const std::string& corner,
                             const std::vector<double>& row_axis,
                             const std::vector<double>& col_axis,
                             const std::vector<double>& values) {
    if (values.size() != row_axis.size() * col_axis.size())
        throw validation_error("matrix csv: value count does not match axes");
    auto out = open_out(path);
    out << corner;
    for (double c : col_axis) out << ',' << format_g17(c);
    out << '\n';
    for (std::size_t i = 0; i < row_axis.size(); ++i) {
        out << format_g17(row_axis[i]);
        for (std::size_t j = 0; j < col_axis.size(); ++j)
            out << ',' << format_g17(values[i * col_axis.size() + j]);
        out << '\n';
    }
}

// Binary grid: magic "WPGRID01", two uint64 dims, row axis, column axis,
// then row-major float64 payload. Native (little-endian) byte order.
inline void write_binary_grid(const std::string& path, const std::vector<double>& row_axis,
                              const std::vector<double>& col_axis,
                              const std::vector<double>& values) {
    if (values.size() != row_axis.size() * col_axis.size())
        throw validation_error("binary grid: value count does not match axes");
    auto out = open_out(path);
    out.write("WPGRID01", 8);
    std::uint64_t dims[2] = {row_axis.size(), col_axis.size()};
    out.write(reinterpret_cast<const char*>(dims), sizeof dims);
    auto dump = [&out](const std::vector<double>& v) {
        out.write(reinterpret_cast<const char*>(v.data()),
                  std::streamsize(v.size() * sizeof(double)));
    };
    dump(row_axis);
    dump(col_axis);
    dump(values);
    if (!out) throw validation_error("binary grid: write failed for " + path);
}

struct BinaryGrid {
    std::vector<double> row_axis, col_axis, values;
};

inline BinaryGrid read_binary_grid(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw validation_error("cannot open grid file " + path);
    char magic[8];
    in.read(magic, 8);
    if (!in || std::string(magic, 8) != "WPGRID01")
        throw validation_error("not a grid file: " + path);
    std::uint64_t dims[2];
    in.read(reinterpret_cast<char*>(dims), sizeof dims);
    BinaryGrid g;
    auto slurp = [&in, &path](std::vector<double>& v, std::uint64_t n) {
        v.resize(n);
        in.read(reinterpret_cast<char*>(v.data()), std::streamsize(n * sizeof(double)));
        if (!in) throw validation_error("truncated grid file: " + path);
    };
    slurp(g.row_axis, dims[0]);
    slurp(g.col_axis, dims[1]);
    slurp(g.values, dims[0] * dims[1]);
    return g;
}

// Manifest: the fully resolved configuration, alphabetical keys, so identical
// runs serialize identically.
inline void write_manifest(const std::string& path, const Config& cfg,
                           const std::string& tool_version,
                           const std::vector<std::string>& outputs) {
    nlohmann::json j;
    j["tool"] = "wprad";
    j["version"] = tool_version;
    nlohmann::json cfgj = nlohmann::json::object();
    for (const auto& [k, v] : cfg.entries()) cfgj[k] = v;
    j["config"] = cfgj;
    j["outputs"] = outputs;
    auto out = open_out(path);
    out << j.dump(2) << '\n';
}

// Replayable companion to the manifest: feed back via --config to reproduce a run.
inline void write_config_flat(const std::string& path, const Config& cfg) {
    auto out = open_out(path);
    for (const auto& [k, v] : cfg.entries()) out << k << " = " << v << '\n';
}

} // namespace wprad::io
