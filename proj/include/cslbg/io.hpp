#pragma once

// CSV ingestion and serialization for the bundled and user-supplied
// datasets, plus the data manifest with content checksums.
//
// All CSVs use a fixed header line, `#` comment lines, `%.6e` numbers on
// output, LF line endings and UTF-8.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cslbg/attenuation.hpp"
#include "cslbg/errors.hpp"
#include "cslbg/fit.hpp"
#include "cslbg/gamma.hpp"
#include "cslbg/muon.hpp"
#include "cslbg/sensitivity.hpp"
#include "cslbg/thermal.hpp"

namespace cslbg {

//! Fixed-width scientific formatting used by every writer.
inline std::string fmt_e(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6e", v);
    return buf;
}

namespace detail {

inline std::string rtrim(std::string s)
{
    while (!s.empty() && (s.back() == '\r' || s.back() == '\n' || s.back() == ' '
                          || s.back() == '\t'))
        s.pop_back();
    return s;
}

inline std::string ltrim(std::string s)
{
    std::size_t i = 0;
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    return s.substr(i);
}

struct CsvReader {
    std::string path;
    std::ifstream in;
    std::size_t line_no = 0;

    explicit CsvReader(const std::string& p) : path(p), in(p, std::ios::binary)
    {
        if (!in)
            throw parse_error(path, 0, "cannot open file");
    }

    //! Next non-blank, non-comment line, trimmed; false at EOF.
    bool next(std::string& out)
    {
        std::string line;
        while (std::getline(in, line)) {
            ++line_no;
            line = rtrim(ltrim(line));
            if (line.empty() || line[0] == '#') continue;
            out = line;
            return true;
        }
        return false;
    }

    void expect_header(const std::string& header)
    {
        std::string line;
        if (!next(line))
            throw parse_error(path, line_no, "missing header line (expected '" + header + "')");
        if (line != header)
            throw parse_error(path, line_no,
                              "bad header '" + line + "' (expected '" + header + "')");
    }

    std::vector<double> fields(const std::string& line, std::size_t expected)
    {
        std::vector<std::string> parts;
        std::string cur;
        for (char ch : line) {
            if (ch == ',') {
                parts.push_back(cur);
                cur.clear();
            } else {
                cur += ch;
            }
        }
        parts.push_back(cur);
        if (parts.size() != expected)
            throw parse_error(path, line_no,
                              "expected " + std::to_string(expected) + " fields, got "
                              + std::to_string(parts.size()));
        std::vector<double> out;
        out.reserve(expected);
        for (const auto& p : parts) {
            const std::string t = rtrim(ltrim(p));
            char* end = nullptr;
            const double v = std::strtod(t.c_str(), &end);
            if (t.empty() || end != t.c_str() + t.size())
                throw parse_error(path, line_no, "not a number: '" + t + "'");
            out.push_back(v);
        }
        return out;
    }
};

inline std::ofstream open_out(const std::string& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open '" + path + "' for writing");
    return out;
}

//! Prefix validation messages with the file they came from.
template <typename Fn>
inline void validate_loaded(const std::string& path, Fn&& fn)
{
    try {
        fn();
    } catch (const validation_error& e) {
        throw validation_error(path + ": " + e.what());
    }
}

} // namespace detail

inline constexpr const char* attenuation_header = "energy_MeV,mu_total_cm2_g,mu_en_cm2_g";
inline constexpr const char* gamma_spectrum_header = "e_low_MeV,e_high_MeV,flux_cm2_s,flux_err_cm2_s";
inline constexpr const char* depth_intensity_header = "depth_kmwe,intensity_cm2_s_sr,intensity_err";

inline AttenuationTable load_attenuation(const std::string& path, const Material& material)
{
    detail::CsvReader r(path);
    r.expect_header(attenuation_header);
    AttenuationTable t{material, {}};
    std::string line;
    while (r.next(line)) {
        const auto f = r.fields(line, 3);
        t.rows.push_back({f[0], f[1], f[2]});
    }
    detail::validate_loaded(path, [&] { validate(t); });
    return t;
}

inline AttenuationTable load_attenuation(const std::string& path,
                                         const std::string& material_name)
{
    return load_attenuation(path, materials::by_name(material_name));
}

inline void save_attenuation(const std::string& path, const AttenuationTable& t)
{
    auto out = detail::open_out(path);
    out << "# material: " << t.material.name << "\n" << attenuation_header << "\n";
    for (const auto& r : t.rows)
        out << fmt_e(r.energy_MeV) << ',' << fmt_e(r.mu_total_cm2_g) << ','
            << fmt_e(r.mu_en_cm2_g) << "\n";
}

inline GammaSpectrum load_gamma_spectrum(const std::string& path)
{
    detail::CsvReader r(path);
    r.expect_header(gamma_spectrum_header);
    GammaSpectrum s;
    std::string line;
    while (r.next(line)) {
        const auto f = r.fields(line, 4);
        s.bins.push_back({f[0], f[1], f[2], f[3]});
    }
    detail::validate_loaded(path, [&] { validate(s); });
    return s;
}

inline void save_gamma_spectrum(const std::string& path, const GammaSpectrum& s)
{
    auto out = detail::open_out(path);
    out << gamma_spectrum_header << "\n";
    for (const auto& b : s.bins)
        out << fmt_e(b.e_low_MeV) << ',' << fmt_e(b.e_high_MeV) << ',' << fmt_e(b.flux_cm2_s)
            << ',' << fmt_e(b.flux_err_cm2_s) << "\n";
}

inline DepthIntensityTable load_depth_intensity(const std::string& path,
                                                const std::string& site)
{
    detail::CsvReader r(path);
    r.expect_header(depth_intensity_header);
    DepthIntensityTable t{site, {}};
    std::string line;
    while (r.next(line)) {
        const auto f = r.fields(line, 3);
        t.rows.push_back({f[0], f[1], f[2]});
    }
    detail::validate_loaded(path, [&] { validate(t); });
    return t;
}

inline void save_depth_intensity(const std::string& path, const DepthIntensityTable& t)
{
    auto out = detail::open_out(path);
    out << "# site: " << t.site << "\n" << depth_intensity_header << "\n";
    for (const auto& r : t.rows)
        out << fmt_e(r.depth_kmwe) << ',' << fmt_e(r.intensity_cm2_s_sr) << ','
            << fmt_e(r.intensity_err) << "\n";
}

// --- result writers ---

inline void save_shield_scan(const std::string& path, const std::vector<ThicknessPoint>& scan)
{
    auto out = detail::open_out(path);
    out << "thickness_cm,power_W,power_err_W\n";
    for (const auto& p : scan)
        out << fmt_e(p.thickness_cm) << ',' << fmt_e(p.power_W) << ',' << fmt_e(p.power_err_W)
            << "\n";
}

inline void save_depth_scan(const std::string& path, const std::vector<DepthScanPoint>& scan)
{
    auto out = detail::open_out(path);
    out << "depth_kmwe,event_rate_per_s,event_rate_err,power_W,power_err_W\n";
    for (const auto& p : scan)
        out << fmt_e(p.depth_kmwe) << ',' << fmt_e(p.event_rate_per_s) << ','
            << fmt_e(p.event_rate_err_per_s) << ',' << fmt_e(p.muon_power_W) << ','
            << fmt_e(p.muon_power_err_W) << "\n";
}

inline void save_lambda_scan(const std::string& path, const std::vector<DepthScanPoint>& scan)
{
    auto out = detail::open_out(path);
    out << "depth_kmwe,power_W,power_err_W,lambda_per_s\n";
    for (const auto& p : scan)
        out << fmt_e(p.depth_kmwe) << ',' << fmt_e(p.muon_power_W) << ','
            << fmt_e(p.muon_power_err_W) << ',' << fmt_e(p.detectable_lambda_per_s) << "\n";
}

inline void save_fit(const std::string& path, const FitResult& f)
{
    auto out = detail::open_out(path);
    out << "slope,intercept,slope_err,intercept_err,chi2,n\n";
    out << fmt_e(f.slope) << ',' << fmt_e(f.intercept) << ',' << fmt_e(f.slope_err) << ','
        << fmt_e(f.intercept_err) << ',' << fmt_e(f.chi2) << ',' << f.n_points << "\n";
}

inline void save_contour(const std::string& path, const ExclusionContour& cont)
{
    auto out = detail::open_out(path);
    out << "# depth_kmwe: " << fmt_e(cont.depth_kmwe) << "\n";
    out << "# background_power_W: " << fmt_e(cont.background_power_W) << "\n";
    out << "# margin: " << fmt_e(cont.margin) << "\n";
    out << "r_c_m,lambda_per_s\n";
    for (const auto& p : cont.points)
        out << fmt_e(p.r_c_m) << ',' << fmt_e(p.detectable_lambda_per_s) << "\n";
}

inline void save_trace(const std::string& path, const Trace& trace)
{
    auto out = detail::open_out(path);
    out << "# steady_level_K=" << fmt_e(trace.steady_level_K) << "\n";
    out << "# undersampled=" << (trace.undersampled ? 1 : 0) << "\n";
    out << "# n_events=" << trace.events.size() << "\n";
    out << "time_s,temperature_K\n";
    for (const auto& s : trace.samples)
        out << fmt_e(s.time_s) << ',' << fmt_e(s.temperature_K) << "\n";
}

inline void save_event_log(const std::string& path, const std::vector<TraceEvent>& events)
{
    auto out = detail::open_out(path);
    out << "time_s,energy_MeV\n";
    for (const auto& e : events)
        out << fmt_e(e.time_s) << ',' << fmt_e(e.energy_MeV) << "\n";
}

// --- manifest ---

//! FNV-1a 64-bit hash of a byte string.
inline std::uint64_t fnv1a64(const std::string& bytes)
{
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char b : bytes) {
        h ^= b;
        h *= 1099511628211ULL;
    }
    return h;
}

inline std::string checksum_hex(const std::string& bytes)
{
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(bytes)));
    return buf;
}

inline std::string read_file_bytes(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::string file_checksum_hex(const std::string& path)
{
    return checksum_hex(read_file_bytes(path));
}

struct ManifestEntry {
    std::string kind;  //!< attenuation | gamma_spectrum | depth_intensity | overlay_bound
    std::string path;  //!< relative to the manifest's directory
    std::string label; //!< material or site name
    std::string checksum;
};

struct DataManifest {
    std::vector<ManifestEntry> entries;

    const ManifestEntry* find(const std::string& kind, const std::string& label) const
    {
        for (const auto& e : entries)
            if (e.kind == kind && e.label == label) return &e;
        return nullptr;
    }
};

inline void validate(const DataManifest& m)
{
    static const char* kinds[] = {"attenuation", "gamma_spectrum", "depth_intensity",
                                  "overlay_bound"};
    for (std::size_t i = 0; i < m.entries.size(); ++i) {
        const auto& e = m.entries[i];
        const std::string where = "manifest entry " + std::to_string(i + 1);
        bool known = false;
        for (const char* k : kinds) known = known || e.kind == k;
        if (!known)
            throw validation_error(where + ": unknown kind '" + e.kind + "'");
        if (e.path.empty() || e.checksum.empty())
            throw validation_error(where + ": path and checksum are required");
        for (std::size_t j = 0; j < i; ++j)
            if (m.entries[j].path == e.path)
                throw validation_error(where + ": duplicate path '" + e.path + "'");
    }
}

//! Manifest file: records of `key=value` lines (keys kind, path, label,
//! checksum) separated by blank lines; `#` comments permitted.
inline DataManifest load_manifest(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw parse_error(path, 0, "cannot open file");
    DataManifest m;
    ManifestEntry cur;
    bool has_any = false;
    std::string line;
    std::size_t line_no = 0;
    auto flush = [&] {
        if (has_any) m.entries.push_back(cur);
        cur = {};
        has_any = false;
    };
    while (std::getline(in, line)) {
        ++line_no;
        line = detail::rtrim(detail::ltrim(line));
        if (line.empty()) {
            flush();
            continue;
        }
        if (line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw parse_error(path, line_no, "expected key=value, got '" + line + "'");
        const std::string key = detail::rtrim(line.substr(0, eq));
        const std::string value = detail::ltrim(line.substr(eq + 1));
        if (key == "kind") cur.kind = value;
        else if (key == "path") cur.path = value;
        else if (key == "label") cur.label = value;
        else if (key == "checksum") cur.checksum = value;
        else throw parse_error(path, line_no, "unknown key '" + key + "'");
        has_any = true;
    }
    flush();
    detail::validate_loaded(path, [&] { validate(m); });
    return m;
}

inline void save_manifest(const std::string& path, const DataManifest& m)
{
    auto out = detail::open_out(path);
    out << "# bundled data manifest: kind/path/label/checksum records\n";
    out << "# checksum is the FNV-1a 64-bit hash of the file bytes, lowercase hex\n";
    for (const auto& e : m.entries) {
        out << "\nkind=" << e.kind << "\npath=" << e.path << "\nlabel=" << e.label
            << "\nchecksum=" << e.checksum << "\n";
    }
}

//! Absolute path of a manifest entry after checksum verification.
inline std::string verified_path(const DataManifest& m, const std::string& base_dir,
                                 const std::string& kind, const std::string& label)
{
    const auto* e = m.find(kind, label);
    if (!e)
        throw std::invalid_argument("manifest has no entry of kind '" + kind
                                    + "' labeled '" + label + "'");
    const std::string full = base_dir.empty() ? e->path : base_dir + "/" + e->path;
    const std::string actual = file_checksum_hex(full);
    if (actual != e->checksum)
        throw validation_error("checksum mismatch for '" + full + "': manifest says "
                               + e->checksum + ", file hashes to " + actual
                               + " (the data file was modified; regenerate the manifest"
                               " if the change is intended)");
    return full;
}

//! Environment variable naming the default data directory.
inline constexpr const char* data_dir_env_var = "CSLBG_DATA_DIR";

//! Data directory resolution: an explicit value wins, then the environment
//! variable, then `data` relative to the working directory.
inline std::string resolve_data_dir(const std::string& explicit_dir = {})
{
    if (!explicit_dir.empty()) return explicit_dir;
    if (const char* env = std::getenv(data_dir_env_var); env && *env) return env;
    return "data";
}

} // namespace cslbg
