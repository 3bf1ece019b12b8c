#include "hxtwin/harness/config.hpp"

#include "hxtwin/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

namespace hxtwin {

TimeSeries::TimeSeries(double constant) : t_{0.0}, v_{constant} {}

TimeSeries::TimeSeries(std::vector<double> t, std::vector<double> v) : t_(std::move(t)), v_(std::move(v)) {
    if (t_.empty() || t_.size() != v_.size()) throw ConfigError("time series needs matching, non-empty knots");
    for (std::size_t i = 1; i < t_.size(); ++i) {
        if (!(t_[i] > t_[i - 1])) throw ConfigError("time series knots must be strictly increasing");
    }
}

double TimeSeries::operator()(double t) const {
    if (t_.empty()) throw ConfigError("empty time series");
    if (t <= t_.front()) return v_.front();
    if (t >= t_.back()) return v_.back();
    auto it = std::upper_bound(t_.begin(), t_.end(), t);
    std::size_t i = static_cast<std::size_t>(it - t_.begin());
    double w = (t - t_[i - 1]) / (t_[i] - t_[i - 1]);
    return v_[i - 1] + w * (v_[i] - v_[i - 1]);
}

Conductances TruthSpec::at(double t, const InletConditions& u) const {
    if (kind == Kind::series) return {aA_h(t), aA_c(t)};
    return {reference_alpha_A(hot_corr, u.mdot_h, hot_props), reference_alpha_A(cold_corr, u.mdot_c, cold_props)};
}

Streams ScenarioConfig::monitor_streams() const {
    return {monitor.hot.value_or(streams.hot), monitor.cold.value_or(streams.cold)};
}

std::size_t ScenarioConfig::record_count() const {
    return static_cast<std::size_t>(std::llround(duration / dt)) + 1;
}

InletConditions ScenarioConfig::inputs_at(double t) const {
    InletConditions u = nominal;
    auto channel = [&u](Channel c) -> double& {
        switch (c) {
            case Channel::T_h1: return u.T_h1;
            case Channel::T_c1: return u.T_c1;
            case Channel::mdot_h: return u.mdot_h;
            case Channel::mdot_c: return u.mdot_c;
        }
        return u.mdot_c;
    };
    switch (excitation.kind) {
        case ExcitationSpec::Kind::constant: break;
        case ExcitationSpec::Kind::step:
            if (t >= excitation.step.t_f) channel(excitation.step.channel) *= 1.0 + excitation.step.magnitude;
            break;
        case ExcitationSpec::Kind::chirp: {
            const auto& c = excitation.chirp;
            // linear chirp phase, continued at f1 after the sweep
            double tc = std::min(t, c.duration);
            double psi = 2.0 * std::numbers::pi * (c.f0 * tc + 0.5 * (c.f1 - c.f0) * tc * tc / c.duration);
            if (t > c.duration) psi += 2.0 * std::numbers::pi * c.f1 * (t - c.duration);
            const Channel order[] = {Channel::T_h1, Channel::T_c1, Channel::mdot_h, Channel::mdot_c};
            for (int i = 0; i < 4; ++i) channel(order[i]) += c.amplitude[i] * std::sin(psi + c.phase[i]);
            break;
        }
    }
    return u;
}

EkfConfig default_ekf_config(double theta7, double Q_design, Variant v) {
    EkfConfig c;
    double rate = Q_design / (100.0 * theta7);  // K/s
    c.Rx = 0.1 * rate * rate * Eigen::Matrix2d::Identity();
    c.Rupsilon = 0.1 * 100.0 * 100.0 * Eigen::Matrix2d::Identity();
    c.Ry = 1.0 * 0.1 * 0.1 * Eigen::Matrix2d::Identity();
    c.Rmdotc = 0.1;
    c.variant = v;
    c.wall.theta7 = theta7;
    return c;
}

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

struct Entry {
    std::string value;
    std::size_t line = 0;
    bool used = false;
};

struct Section {
    std::size_t line = 0;
    std::map<std::string, Entry> entries;
};

class Ini {
public:
    Ini(std::istream& in, std::string source) : source_(std::move(source)) {
        std::string raw;
        std::size_t line = 0;
        Section* cur = nullptr;
        while (std::getline(in, raw)) {
            ++line;
            auto hash = raw.find_first_of("#;");
            std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
            if (s.empty()) continue;
            if (s.front() == '[') {
                if (s.back() != ']') fail(line, "malformed section header");
                std::string name = trim(s.substr(1, s.size() - 2));
                if (sections_.count(name)) fail(line, "duplicate section [" + name + "]");
                cur = &sections_[name];
                cur->line = line;
                continue;
            }
            auto eq = s.find('=');
            if (eq == std::string::npos) fail(line, "expected 'key = value'");
            if (!cur) fail(line, "key outside of any section");
            std::string key = trim(s.substr(0, eq));
            if (key.empty()) fail(line, "empty key");
            if (cur->entries.count(key)) fail(line, "duplicate key '" + key + "'");
            cur->entries[key] = {trim(s.substr(eq + 1)), line, false};
        }
        last_line_ = line;
    }

    [[noreturn]] void fail(std::size_t line, const std::string& msg) const {
        throw ConfigError(source_ + ":" + std::to_string(line) + ": " + msg);
    }

    bool has_section(const std::string& sec) const { return sections_.count(sec) > 0; }
    std::size_t section_line(const std::string& sec) const {
        auto it = sections_.find(sec);
        return it == sections_.end() ? last_line_ : it->second.line;
    }

    Entry* find(const std::string& sec, const std::string& key) {
        auto s = sections_.find(sec);
        if (s == sections_.end()) return nullptr;
        auto e = s->second.entries.find(key);
        if (e == s->second.entries.end()) return nullptr;
        e->second.used = true;
        return &e->second;
    }

    Entry& require(const std::string& sec, const std::string& key) {
        Entry* e = find(sec, key);
        if (!e) fail(section_line(sec), "missing required key '" + key + "' in [" + sec + "]");
        return *e;
    }

    double to_double(const Entry& e, const std::string& key) const {
        double v = 0.0;
        const char* b = e.value.data();
        const char* end = b + e.value.size();
        auto [p, ec] = std::from_chars(b, end, v);
        if (ec != std::errc() || p != end || !std::isfinite(v)) fail(e.line, "'" + key + "' is not a finite number");
        return v;
    }

    std::vector<double> to_list(const Entry& e, const std::string& key) const {
        std::string s = e.value;
        std::replace(s.begin(), s.end(), ',', ' ');
        std::istringstream is(s);
        std::vector<double> out;
        std::string tok;
        while (is >> tok) {
            Entry t{tok, e.line, true};
            out.push_back(to_double(t, key));
        }
        return out;
    }

    double num(const std::string& sec, const std::string& key) { return to_double(require(sec, key), key); }
    double num(const std::string& sec, const std::string& key, double def) {
        Entry* e = find(sec, key);
        return e ? to_double(*e, key) : def;
    }
    std::optional<double> opt_num(const std::string& sec, const std::string& key) {
        Entry* e = find(sec, key);
        if (!e) return std::nullopt;
        return to_double(*e, key);
    }
    std::string str(const std::string& sec, const std::string& key, const std::string& def) {
        Entry* e = find(sec, key);
        return e ? e->value : def;
    }

    // Value must satisfy the predicate; failure names the key's line.
    template <class Pred>
    double checked(const std::string& sec, const std::string& key, double v, Pred ok, const char* what) {
        if (!ok(v)) {
            Entry* e = find(sec, key);
            fail(e ? e->line : section_line(sec), "'" + key + "' " + what);
        }
        return v;
    }

    void reject_unused() const {
        for (const auto& [name, sec] : sections_) {
            if (!known_sections_.count(name)) fail(sec.line, "unknown section [" + name + "]");
            for (const auto& [key, e] : sec.entries) {
                if (!e.used) fail(e.line, "unknown key '" + key + "' in [" + name + "]");
            }
        }
    }

    void known(const std::string& sec) { known_sections_.insert({sec, true}); }

private:
    std::string source_;
    std::map<std::string, Section> sections_;
    std::map<std::string, bool> known_sections_;
    std::size_t last_line_ = 0;
};

auto positive = [](double v) { return v > 0.0; };
auto nonnegative = [](double v) { return v >= 0.0; };

StreamConfig parse_stream(Ini& ini, const std::string& sec, const std::filesystem::path& base) {
    ini.known(sec);
    std::string kind = ini.str(sec, "fluid", "");
    double p = ini.checked(sec, "pressure", ini.num(sec, "pressure"), positive, "must be positive");
    auto line_of = [&](const std::string& key) {
        Entry* e = ini.find(sec, key);
        return e ? e->line : ini.section_line(sec);
    };
    try {
        if (kind == "constant") {
            double cp = ini.checked(sec, "cp", ini.num(sec, "cp"), positive, "must be positive");
            return {FluidModel(CaloricallyPerfect{cp}), p};
        }
        if (kind == "polynomial") {
            auto coeffs = ini.to_list(ini.require(sec, "coeffs"), "coeffs");
            return {FluidModel(ThermallyPerfect::polynomial(coeffs, ini.num(sec, "T_min"), ini.num(sec, "T_max"))), p};
        }
        if (kind == "cp_table") {
            auto T = ini.to_list(ini.require(sec, "cp_T"), "cp_T");
            auto cp = ini.to_list(ini.require(sec, "cp_values"), "cp_values");
            return {FluidModel(ThermallyPerfect::table(T, cp)), p};
        }
        if (kind == "table") {
            std::filesystem::path path = ini.require(sec, "table").value;
            if (path.is_relative()) path = base / path;
            StreamConfig s{load_fluid_table(path), p};
            const auto& tab = std::get<TabulatedFluid>(s.fluid.variant());
            if (p < tab.p_axis().front() || p > tab.p_axis().back()) {
                ini.fail(line_of("pressure"), "pressure outside the table's p axis");
            }
            return s;
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        ini.fail(line_of(kind == "table" ? "table" : "fluid"), std::string("invalid fluid: ") + e.what());
    }
    ini.fail(line_of("fluid"), "fluid must be one of constant, polynomial, cp_table, table");
}

Channel parse_channel(Ini& ini, const std::string& sec, const std::string& key, const std::string& v) {
    if (v == "T_h1") return Channel::T_h1;
    if (v == "T_c1") return Channel::T_c1;
    if (v == "mdot_h") return Channel::mdot_h;
    if (v == "mdot_c") return Channel::mdot_c;
    ini.fail(ini.find(sec, key)->line, "channel must be one of T_h1, T_c1, mdot_h, mdot_c");
}

TimeSeries parse_series(Ini& ini, const std::string& sec, const std::string& key) {
    Entry& e = ini.require(sec, key);
    if (e.value.find(':') == std::string::npos) {
        double v = ini.to_double(e, key);
        if (!(v > 0.0)) ini.fail(e.line, "'" + key + "' must be positive");
        return TimeSeries(v);
    }
    std::vector<double> t, v;
    std::string s = e.value;
    std::replace(s.begin(), s.end(), ',', ' ');
    std::istringstream is(s);
    std::string tok;
    while (is >> tok) {
        auto c = tok.find(':');
        if (c == std::string::npos) ini.fail(e.line, "expected 't:value' pairs in '" + key + "'");
        t.push_back(ini.to_double(Entry{tok.substr(0, c), e.line, true}, key));
        v.push_back(ini.to_double(Entry{tok.substr(c + 1), e.line, true}, key));
        if (!(v.back() > 0.0)) ini.fail(e.line, "'" + key + "' values must be positive");
    }
    try {
        return TimeSeries(t, v);
    } catch (const ConfigError& err) {
        ini.fail(e.line, std::string("'") + key + "': " + err.what());
    }
}

}  // namespace

ScenarioConfig parse_config(std::istream& in, const std::filesystem::path& base, const std::string& source) {
    Ini ini(in, source);
    ScenarioConfig c;

    ini.known("scenario");
    c.name = ini.str("scenario", "name", "scenario");
    c.dt = ini.checked("scenario", "dt", ini.num("scenario", "dt", 1.0), positive, "must be positive");
    c.duration = ini.checked("scenario", "duration", ini.num("scenario", "duration"), positive, "must be positive");
    c.noise_std = ini.checked("scenario", "noise_std", ini.num("scenario", "noise_std", 0.1), nonnegative,
                              "must be non-negative");
    double seed = ini.checked("scenario", "seed", ini.num("scenario", "seed", 1.0),
                              [](double v) { return v >= 0.0 && v == std::floor(v) && v < 1.8e19; },
                              "must be a non-negative integer");
    c.seed = static_cast<std::uint64_t>(seed);
    c.Q_design = ini.checked("scenario", "Q_design", ini.num("scenario", "Q_design", 1.6e6), positive,
                             "must be positive");

    c.streams.hot = parse_stream(ini, "hot", base);
    c.streams.cold = parse_stream(ini, "cold", base);

    ini.known("inlet");
    c.nominal.T_h1 = ini.checked("inlet", "T_h1", ini.num("inlet", "T_h1"), positive, "must be positive (K)");
    c.nominal.T_c1 = ini.checked("inlet", "T_c1", ini.num("inlet", "T_c1"), positive, "must be positive (K)");
    c.nominal.mdot_h = ini.checked("inlet", "mdot_h", ini.num("inlet", "mdot_h"), positive, "must be positive");
    c.nominal.mdot_c = ini.checked("inlet", "mdot_c", ini.num("inlet", "mdot_c"), positive, "must be positive");

    ini.known("excitation");
    std::string kind = ini.str("excitation", "kind", "constant");
    if (kind == "constant") {
        c.excitation.kind = ExcitationSpec::Kind::constant;
    } else if (kind == "step") {
        c.excitation.kind = ExcitationSpec::Kind::step;
        c.excitation.step.channel =
            parse_channel(ini, "excitation", "channel", ini.require("excitation", "channel").value);
        c.excitation.step.t_f = ini.num("excitation", "t_f");
        c.excitation.step.magnitude = ini.checked("excitation", "magnitude", ini.num("excitation", "magnitude"),
                                                  [](double v) { return v > -1.0; }, "must be > -1");
    } else if (kind == "chirp") {
        auto& ch = c.excitation.chirp;
        c.excitation.kind = ExcitationSpec::Kind::chirp;
        ch.f0 = ini.checked("excitation", "f0", ini.num("excitation", "f0", 0.0), nonnegative, "must be >= 0");
        ch.f1 = ini.checked("excitation", "f1", ini.num("excitation", "f1", 0.5), nonnegative, "must be >= 0");
        ch.duration = ini.checked("excitation", "chirp_duration", ini.num("excitation", "chirp_duration", c.duration),
                                  positive, "must be positive");
        const char* names[] = {"T_h1", "T_c1", "mdot_h", "mdot_c"};
        const double defaults[] = {3.0, 3.0, 0.1 * c.nominal.mdot_h, 0.1 * c.nominal.mdot_c};
        for (int i = 0; i < 4; ++i) {
            std::string ak = std::string("amp_") + names[i];
            ch.amplitude[i] = ini.checked("excitation", ak, ini.num("excitation", ak, defaults[i]), nonnegative,
                                          "must be >= 0");
            ch.phase[i] = ini.num("excitation", std::string("phase_") + names[i], 0.0);
        }
        if (!(ch.amplitude[2] < c.nominal.mdot_h && ch.amplitude[3] < c.nominal.mdot_c)) {
            ini.fail(ini.section_line("excitation"), "flow amplitudes must stay below the nominal flows");
        }
    } else {
        Entry* e = ini.find("excitation", "kind");
        ini.fail(e ? e->line : ini.section_line("excitation"), "kind must be one of constant, step, chirp");
    }

    ini.known("truth");
    std::string tk = ini.str("truth", "kind", "series");
    if (tk == "series") {
        c.truth.kind = TruthSpec::Kind::series;
        c.truth.aA_h = parse_series(ini, "truth", "aA_h");
        c.truth.aA_c = parse_series(ini, "truth", "aA_c");
    } else if (tk == "reference_correlations") {
        c.truth.kind = TruthSpec::Kind::reference_correlations;
        auto prop = [&](const char* key) {
            return ini.checked("truth", key, ini.num("truth", key), positive, "must be positive");
        };
        c.truth.hot_props = {prop("hot_cp"), prop("hot_eta"), prop("hot_lambda")};
        c.truth.cold_props = {prop("cold_cp"), prop("cold_eta"), ini.num("truth", "cold_lambda", 1.0)};
    } else {
        Entry* e = ini.find("truth", "kind");
        ini.fail(e ? e->line : ini.section_line("truth"), "kind must be series or reference_correlations");
    }

    ini.known("wall");
    WallDynamicsConfig wall;
    wall.theta7 = ini.checked("wall", "theta7", ini.num("wall", "theta7", 566.5e3), positive, "must be positive");
    wall.sector_v_epsilon = ini.checked("wall", "sector_v_epsilon", ini.num("wall", "sector_v_epsilon", 1e-9),
                                        positive, "must be positive");
    wall.tdw_lower_bound = ini.checked("wall", "tdw_lower_bound", ini.num("wall", "tdw_lower_bound", 1e-6),
                                       nonnegative, "must be >= 0");
    double sub = ini.checked("wall", "substeps", ini.num("wall", "substeps", 10.0),
                             [](double v) { return v >= 1.0 && v == std::floor(v) && v <= 1e6; },
                             "must be a positive integer");
    wall.substeps_per_sample = static_cast<int>(sub);

    ini.known("ekf");
    Variant variant = Variant::A;
    if (Entry* e = ini.find("ekf", "variant")) {
        try {
            variant = parse_variant(e->value);
        } catch (const ConfigError& err) {
            ini.fail(e->line, err.what());
        }
    }
    c.ekf = default_ekf_config(wall.theta7, c.Q_design, variant);
    c.ekf.wall = wall;
    auto diag = [&](const char* key, Eigen::Matrix2d& m) {
        if (auto v = ini.opt_num("ekf", key)) {
            ini.checked("ekf", key, *v, nonnegative, "must be >= 0");
            m = *v * Eigen::Matrix2d::Identity();
        }
    };
    diag("Rx", c.ekf.Rx);
    diag("Rupsilon", c.ekf.Rupsilon);
    diag("Ry", c.ekf.Ry);
    c.ekf.Rmdotc = ini.checked("ekf", "Rmdotc", ini.num("ekf", "Rmdotc", c.ekf.Rmdotc), nonnegative, "must be >= 0");
    c.ekf.jacobian_step = ini.checked("ekf", "jacobian_step", ini.num("ekf", "jacobian_step", 1e-6), positive,
                                      "must be positive");

    ini.known("monitor");
    c.monitor.corr.upsilon_h = ini.checked("monitor", "upsilon_h0", ini.num("monitor", "upsilon_h0"), positive,
                                           "must be positive");
    c.monitor.corr.upsilon_c = ini.checked("monitor", "upsilon_c0", ini.num("monitor", "upsilon_c0"), positive,
                                           "must be positive");
    if (Entry* e = ini.find("monitor", "theta_hc")) {
        auto v = ini.to_list(*e, "theta_hc");
        if (v.size() != 6) ini.fail(e->line, "theta_hc needs 6 values");
        std::copy(v.begin(), v.end(), c.monitor.corr.theta_hc.begin());
    }
    if (auto v = ini.opt_num("monitor", "mdot_c0")) {
        c.monitor.mdot_c0 = ini.checked("monitor", "mdot_c0", *v, positive, "must be positive");
    }
    if (auto v = ini.opt_num("monitor", "mdot_c_given")) {
        c.monitor.mdot_c_given = ini.checked("monitor", "mdot_c_given", *v, positive, "must be positive");
    }
    double passes = ini.checked("monitor", "cp_passes", ini.num("monitor", "cp_passes", 8.0),
                                [](double v) { return v >= 1.0 && v == std::floor(v) && v <= 100; },
                                "must be an integer in [1, 100]");
    c.monitor.cp_passes = static_cast<int>(passes);
    if (ini.has_section("monitor_hot")) c.monitor.hot = parse_stream(ini, "monitor_hot", base);
    if (ini.has_section("monitor_cold")) c.monitor.cold = parse_stream(ini, "monitor_cold", base);

    ini.reject_unused();
    return c;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
    return parse_config(in, path.parent_path(), path.string());
}

}  // namespace hxtwin
