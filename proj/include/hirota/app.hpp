#pragma once

// Grid evaluation, the preset catalog, CSV / manifest I/O and parameter files.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "hirota/errors.hpp"
#include "hirota/field.hpp"
#include "hirota/gdt.hpp"
#include "hirota/model.hpp"
#include "hirota/numerics/laurent_jet.hpp"
#include "hirota/numerics/mat3.hpp"

namespace hirota {

inline constexpr const char* kEngineVersion = "1.0.0";

struct FieldGrid {
    GridSpec spec;
    ComplexField u, v;
    SeedParams params;
    int order = 0;
};

struct EvalOptions {
    GdtOptions gdt{};
    /// 0 uses the hardware concurrency.
    unsigned threads = 0;
};

/// u[N], v[N] at every node of `gs`. Nodes are independent; rows are handed
/// to worker threads and the result does not depend on the split.
inline FieldGrid evaluate_grid(const SeedParams& p, int N, const GridSpec& gs, const EvalOptions& opt = {}) {
    gs.validate();
    p.validate();
    FieldGrid fg{gs, ComplexField(gs), ComplexField(gs), p, N};
    unsigned nthreads = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
    nthreads = std::min<unsigned>(nthreads, static_cast<unsigned>(gs.nx));

    std::mutex err_mu;
    std::optional<std::string> first_error;
    auto work = [&](unsigned k) {
        for (int i = static_cast<int>(k); i < gs.nx; i += static_cast<int>(nthreads)) {
            for (int j = 0; j < gs.nt; ++j) {
                const double x = gs.x(i), t = gs.t(j);
                try {
                    const GdtResult r = gdt_point(p, N, x, t, opt.gdt);
                    fg.u(i, j) = r.u;
                    fg.v(i, j) = r.v;
                } catch (const std::exception& e) {
                    std::ostringstream os;
                    os.precision(17);
                    os << "grid node (" << i << ", " << j << ") at x = " << x << ", t = " << t << ": " << e.what();
                    std::lock_guard lk(err_mu);
                    if (!first_error) first_error = os.str();
                    return;
                }
            }
            std::lock_guard lk(err_mu);
            if (first_error) return;
        }
    };
    if (nthreads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        for (unsigned k = 0; k < nthreads; ++k) pool.emplace_back(work, k);
        for (auto& th : pool) th.join();
    }
    if (first_error) throw GridError(*first_error);
    return fg;
}

// --- presets ---------------------------------------------------------------

struct Preset {
    std::string name;
    SeedParams params;
    int order = 1;
    GridSpec grid;
    std::string description;
};

inline const std::vector<Preset>& presets() {
    static const std::vector<Preset> catalog = [] {
        const double eps = 1.0 / 100.0;
        const GridSpec wide{-20.0, 20.0, 201, -25.0, 25.0, 201};
        const GridSpec narrow{-10.0, 10.0, 201, -5.0, 5.0, 201};
        auto sp = [](double m1) { return std::vector<Shift>{{m1, 0.0}}; };
        return std::vector<Preset>{
            {"fig1", {1, 0, eps, 10.0, {}}, 1, wide, "dark-bright soliton merged with a first-order rogue wave"},
            {"fig4", {1, 0, eps, 0.1, {}}, 1, wide, "dark-bright soliton separated from a first-order rogue wave"},
            {"fig5", {1, 1, eps, 1.0, {}}, 1, narrow, "Akhmediev breather merged with a first-order rogue wave"},
            {"fig6", {1, 1, eps, 0.01, {}}, 1, narrow, "Akhmediev breather separated from a first-order rogue wave"},
            {"fig7", {1, 0, eps, 1.0, sp(0)}, 2, wide, "two dark-bright solitons merged with a second-order rogue wave"},
            {"fig10", {1, 0, eps, 1e-4, sp(0)}, 2, wide, "two dark-bright solitons separated from a second-order rogue wave"},
            {"fig11", {1, 0, eps, 1e-4, sp(10)}, 2, wide, "two dark-bright solitons and a triangular second-order rogue wave"},
            {"fig12", {1, 1, eps, 10.0, sp(0)}, 2, narrow, "two breathers merged with a second-order rogue wave"},
            {"fig13", {1, 1, eps, 1e-4, sp(0)}, 2, narrow, "two breathers separated from a second-order rogue wave"},
            {"fig14", {1, 1, eps, 1e-4, sp(10)}, 2, narrow, "two breathers and a triangular second-order rogue wave"},
        };
    }();
    return catalog;
}

inline std::optional<Preset> find_preset(std::string_view name) {
    for (const auto& p : presets())
        if (p.name == name) return p;
    return std::nullopt;
}

// --- manifest --------------------------------------------------------------

struct RunManifest {
    SeedParams params;
    int order = 1;
    GridSpec grid;
    std::optional<std::string> preset;
    std::string engine_version = kEngineVersion;
    int truncation = 0; ///< 0 means the default 4N + 4
    double kernel_tol = kKernelTolerance;
    double even_tol = kEvennessTolerance;
    double jet_trim = kJetTrimRelative;
    double det_threshold = kDetThreshold;
    double projector_switch = kProjectorSwitch;
    std::string phase_reading = "imaginary";
    double lax_order_imaginary = 0.0;
    double lax_order_real = 0.0;
    std::string shift_placement = "in_bracket";
    double wall_clock_seconds = 0.0;

    friend bool operator==(const RunManifest&, const RunManifest&) = default;
};

inline nlohmann::ordered_json to_json(const RunManifest& m) {
    nlohmann::ordered_json j;
    nlohmann::ordered_json s = nlohmann::ordered_json::array();
    for (const auto& sk : m.params.s) s.push_back({{"m", sk.m}, {"n", sk.n}});
    j["params"] = {{"d1", m.params.d1}, {"d2", m.params.d2}, {"eps", m.params.eps}, {"alpha", m.params.alpha}, {"s", s}};
    j["order"] = m.order;
    j["grid"] = {{"xmin", m.grid.xmin}, {"xmax", m.grid.xmax}, {"nx", m.grid.nx},
                 {"tmin", m.grid.tmin}, {"tmax", m.grid.tmax}, {"nt", m.grid.nt}};
    j["preset"] = m.preset ? nlohmann::ordered_json(*m.preset) : nlohmann::ordered_json(nullptr);
    j["engine_version"] = m.engine_version;
    j["tolerances"] = {{"truncation", m.truncation},   {"kernel_tol", m.kernel_tol},
                       {"even_tol", m.even_tol},       {"jet_trim", m.jet_trim},
                       {"det_threshold", m.det_threshold}, {"projector_switch", m.projector_switch}};
    j["arbitration"] = {{"phase_reading", m.phase_reading},
                        {"lax_order_imaginary", m.lax_order_imaginary},
                        {"lax_order_real", m.lax_order_real},
                        {"shift_placement", m.shift_placement}};
    j["wall_clock_seconds"] = m.wall_clock_seconds;
    return j;
}

inline RunManifest manifest_from_json(const nlohmann::ordered_json& j) {
    RunManifest m;
    const auto& p = j.at("params");
    m.params.d1 = p.at("d1").get<double>();
    m.params.d2 = p.at("d2").get<double>();
    m.params.eps = p.at("eps").get<double>();
    m.params.alpha = p.at("alpha").get<double>();
    for (const auto& sk : p.at("s")) m.params.s.push_back({sk.at("m").get<double>(), sk.at("n").get<double>()});
    m.order = j.at("order").get<int>();
    const auto& g = j.at("grid");
    m.grid = {g.at("xmin").get<double>(), g.at("xmax").get<double>(), g.at("nx").get<int>(),
              g.at("tmin").get<double>(), g.at("tmax").get<double>(), g.at("nt").get<int>()};
    if (!j.at("preset").is_null()) m.preset = j.at("preset").get<std::string>();
    m.engine_version = j.at("engine_version").get<std::string>();
    const auto& tol = j.at("tolerances");
    m.truncation = tol.at("truncation").get<int>();
    m.kernel_tol = tol.at("kernel_tol").get<double>();
    m.even_tol = tol.at("even_tol").get<double>();
    m.jet_trim = tol.at("jet_trim").get<double>();
    m.det_threshold = tol.at("det_threshold").get<double>();
    m.projector_switch = tol.at("projector_switch").get<double>();
    const auto& a = j.at("arbitration");
    m.phase_reading = a.at("phase_reading").get<std::string>();
    m.lax_order_imaginary = a.at("lax_order_imaginary").get<double>();
    m.lax_order_real = a.at("lax_order_real").get<double>();
    m.shift_placement = a.at("shift_placement").get<std::string>();
    m.wall_clock_seconds = j.at("wall_clock_seconds").get<double>();
    return m;
}

// --- CSV -------------------------------------------------------------------

inline constexpr const char* kCsvHeader = "x,t,re_u,im_u,re_v,im_v,abs_u,abs_v";

/// One row per node, x outer and t inner, 17 significant digits.
inline void write_csv(const FieldGrid& fg, std::ostream& os) {
    os << kCsvHeader << '\n';
    char buf[512];
    for (int i = 0; i < fg.spec.nx; ++i)
        for (int j = 0; j < fg.spec.nt; ++j) {
            const Complex u = fg.u(i, j), v = fg.v(i, j);
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", fg.spec.x(i),
                          fg.spec.t(j), u.real(), u.imag(), v.real(), v.imag(), std::abs(u), std::abs(v));
            os << buf;
        }
}

inline void write_csv(const FieldGrid& fg, const std::filesystem::path& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error("cannot open " + path.string() + " for writing");
    write_csv(fg, os);
    if (!os) throw Error("write failed for " + path.string());
}

/// Reads a CSV written by write_csv. The grid is recovered from the
/// distinct x and t values; parameters are not part of the CSV.
inline FieldGrid read_csv(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw Error("cannot open " + path.string() + " for reading");
    std::string line;
    if (!std::getline(is, line) || line != kCsvHeader) throw Error(path.string() + ": missing or unexpected CSV header");
    struct Row {
        double x, t;
        Complex u, v;
    };
    std::vector<Row> rows;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        double c[8];
        std::istringstream ls(line);
        std::string cell;
        for (int k = 0; k < 8; ++k) {
            if (!std::getline(ls, cell, ',')) throw Error(path.string() + ": short CSV row");
            c[k] = std::stod(cell);
        }
        rows.push_back({c[0], c[1], {c[2], c[3]}, {c[4], c[5]}});
    }
    if (rows.empty()) throw Error(path.string() + ": no data rows");
    int nt = 0;
    while (nt < static_cast<int>(rows.size()) && rows[nt].x == rows[0].x) ++nt;
    if (nt < 2 || rows.size() % static_cast<std::size_t>(nt) != 0) throw GridError(path.string() + ": rows do not form a grid");
    const int nx = static_cast<int>(rows.size()) / nt;
    FieldGrid fg;
    fg.spec = {rows.front().x, rows.back().x, nx, rows.front().t, rows.back().t, nt};
    fg.spec.validate();
    fg.u = ComplexField(fg.spec);
    fg.v = ComplexField(fg.spec);
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < nt; ++j) {
            const Row& r = rows[static_cast<std::size_t>(i) * nt + j];
            fg.u(i, j) = r.u;
            fg.v(i, j) = r.v;
        }
    return fg;
}

inline constexpr const char* kFieldFile = "field.csv";
inline constexpr const char* kManifestFile = "manifest.json";

inline void export_run(const FieldGrid& fg, const RunManifest& m, const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw Error("cannot create " + dir.string() + ": " + ec.message());
    write_csv(fg, dir / kFieldFile);
    std::ofstream os(dir / kManifestFile);
    if (!os) throw Error("cannot open " + (dir / kManifestFile).string() + " for writing");
    os << to_json(m).dump(2) << '\n';
    if (!os) throw Error("write failed for " + (dir / kManifestFile).string());
}

inline std::pair<FieldGrid, RunManifest> load_run(const std::filesystem::path& dir) {
    std::ifstream is(dir / kManifestFile);
    if (!is) throw Error("cannot open " + (dir / kManifestFile).string());
    RunManifest m;
    try {
        m = manifest_from_json(nlohmann::ordered_json::parse(is));
    } catch (const nlohmann::json::exception& e) {
        throw Error((dir / kManifestFile).string() + ": " + e.what());
    }
    FieldGrid fg = read_csv(dir / kFieldFile);
    fg.params = m.params;
    fg.order = m.order;
    return {std::move(fg), std::move(m)};
}

// --- parameter files -------------------------------------------------------

struct ParamFile {
    SeedParams params;
    std::optional<int> order;
};

/// Builds the shift list from (m1, n1), (m2, n2); missing entries are zero and
/// trailing all-zero pairs beyond the last given one are dropped.
inline std::vector<Shift> shifts_from(const std::map<int, Shift>& given) {
    std::vector<Shift> s;
    if (given.empty()) return s;
    s.resize(static_cast<std::size_t>(given.rbegin()->first));
    for (const auto& [k, v] : given) s[static_cast<std::size_t>(k - 1)] = v;
    return s;
}

/// Flat `key = value` text; `#` starts a comment. Keys: d1 d2 eps alpha m1 n1 m2 n2 order.
inline ParamFile parse_param_text(std::istream& is, const std::string& origin = "<params>") {
    ParamFile pf;
    std::map<int, Shift> shifts;
    std::string line;
    int lineno = 0;
    auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        if (b == std::string::npos) return std::string{};
        const auto e = s.find_last_not_of(" \t\r");
        return s.substr(b, e - b + 1);
    };
    while (std::getline(is, line)) {
        ++lineno;
        if (const auto h = line.find('#'); h != std::string::npos) line.erase(h);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        const std::string where = origin + ":" + std::to_string(lineno);
        if (eq == std::string::npos) throw InvalidParams(where + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        double x = 0.0;
        try {
            std::size_t used = 0;
            x = std::stod(val, &used);
            if (used != val.size()) throw std::invalid_argument(val);
        } catch (const std::exception&) {
            throw InvalidParams(where + ": value of '" + key + "' is not a number");
        }
        if (key == "d1") pf.params.d1 = x;
        else if (key == "d2") pf.params.d2 = x;
        else if (key == "eps") pf.params.eps = x;
        else if (key == "alpha") pf.params.alpha = x;
        else if (key == "m1") shifts[1].m = x;
        else if (key == "n1") shifts[1].n = x;
        else if (key == "m2") shifts[2].m = x;
        else if (key == "n2") shifts[2].n = x;
        else if (key == "order") {
            if (x != std::floor(x) || x < 0) throw InvalidParams(where + ": order must be a non-negative integer");
            pf.order = static_cast<int>(x);
        } else
            throw InvalidParams(where + ": unknown key '" + key + "'");
    }
    pf.params.s = shifts_from(shifts);
    pf.params.validate();
    return pf;
}

inline ParamFile parse_param_file(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw Error("cannot open parameter file " + path.string());
    return parse_param_text(is, path.string());
}

/// "xmin,xmax,nx,tmin,tmax,nt".
inline GridSpec parse_grid(const std::string& text) {
    std::vector<std::string> parts;
    std::istringstream is(text);
    std::string cell;
    while (std::getline(is, cell, ',')) parts.push_back(cell);
    if (parts.size() != 6) throw GridError("grid must be xmin,xmax,nx,tmin,tmax,nt");
    GridSpec g;
    try {
        g.xmin = std::stod(parts[0]);
        g.xmax = std::stod(parts[1]);
        g.nx = std::stoi(parts[2]);
        g.tmin = std::stod(parts[3]);
        g.tmax = std::stod(parts[4]);
        g.nt = std::stoi(parts[5]);
    } catch (const std::exception&) {
        throw GridError("grid must be xmin,xmax,nx,tmin,tmax,nt");
    }
    g.validate();
    return g;
}

} // namespace hirota
