#include "hxtwin/harness/telemetry.hpp"

#include "hxtwin/errors.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <string>

namespace hxtwin {

namespace {

const char* const kTelemetryCols[] = {"t",         "T_h1",      "T_c1",      "mdot_h",    "mdot_c",   "p_h",
                                      "p_c",       "T_h2_true", "T_c2_true", "T_h2_meas", "T_c2_meas",
                                      "T_w1_true", "T_w2_true", "aA_h_true", "aA_c_true", "kA_true",  "flags"};

const char* const kMonitorCols[] = {"t",        "T_w1_hat", "T_w2_hat", "ups_h_hat", "ups_c_hat",
                                    "mdot_c_hat", "aA_h_hat", "aA_c_hat", "kA_hat",   "innov_h2",
                                    "innov_c2", "eps_h2",   "eps_c2",   "flags"};

// Shortest round-trip representation; NaN becomes an empty cell.
void cell(std::string& line, double v) {
    if (!line.empty()) line += ',';
    if (!std::isnan(v)) line += fmt::format("{}", v);
}

void cell(std::string& line, unsigned v) {
    if (!line.empty()) line += ',';
    line += fmt::format("{}", v);
}

template <std::size_t N>
void header(std::ostream& out, const char* const (&cols)[N]) {
    std::string line;
    for (const char* c : cols) {
        if (!line.empty()) line += ',';
        line += c;
    }
    out << line << '\n';
}

class CsvReader {
public:
    template <std::size_t N>
    CsvReader(std::istream& in, const char* const (&cols)[N]) : in_(in) {
        std::string line;
        if (!std::getline(in_, line)) throw ParseError("empty CSV", 1);
        line_no_ = 1;
        auto names = split(line);
        std::map<std::string, std::size_t> pos;
        for (std::size_t i = 0; i < names.size(); ++i) pos[names[i]] = i;
        for (const char* c : cols) {
            auto it = pos.find(c);
            if (it == pos.end()) throw ParseError(std::string("missing column '") + c + "'", 1);
            index_.push_back(it->second);
        }
        width_ = names.size();
    }

    // Reads the next row into values ordered like the requested columns.
    bool next(std::vector<double>& values) {
        std::string line;
        while (std::getline(in_, line)) {
            ++line_no_;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty()) continue;
            auto cells = split(line);
            if (cells.size() != width_) {
                throw ParseError("expected " + std::to_string(width_) + " cells, found " +
                                     std::to_string(cells.size()),
                                 line_no_);
            }
            values.clear();
            for (std::size_t i : index_) values.push_back(parse(cells[i], i));
            return true;
        }
        return false;
    }

    std::size_t line() const { return line_no_; }

private:
    static std::vector<std::string> split(const std::string& s) {
        std::vector<std::string> out(1);
        for (char ch : s) {
            if (ch == ',') out.emplace_back();
            else if (ch != '\r') out.back() += ch;
        }
        return out;
    }

    double parse(const std::string& s, std::size_t col) const {
        if (s.empty()) return kNaN;
        double v = 0.0;
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || p != s.data() + s.size()) {
            throw ParseError("column " + std::to_string(col + 1) + ": not a number: '" + s + "'", line_no_);
        }
        return v;
    }

    std::istream& in_;
    std::vector<std::size_t> index_;
    std::size_t width_ = 0;
    std::size_t line_no_ = 0;
};

std::ofstream open_out(const std::filesystem::path& p) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw Error("cannot write '" + p.string() + "'");
    return out;
}

std::ifstream open_in(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw Error("cannot read '" + p.string() + "'");
    return in;
}

}  // namespace

void write_telemetry_csv(std::ostream& out, const std::vector<TelemetryRecord>& recs) {
    header(out, kTelemetryCols);
    for (const auto& r : recs) {
        std::string l;
        for (double v : {r.t, r.u.T_h1, r.u.T_c1, r.u.mdot_h, r.u.mdot_c, r.p_h, r.p_c, r.y_true.T_h2, r.y_true.T_c2,
                         r.y_meas.T_h2, r.y_meas.T_c2, r.x_true.T_w1, r.x_true.T_w2, r.cond_true.aA_h,
                         r.cond_true.aA_c, r.kA_true}) {
            cell(l, v);
        }
        cell(l, r.flags);
        out << l << '\n';
    }
}

void write_monitor_csv(std::ostream& out, const std::vector<MonitorRecord>& recs) {
    header(out, kMonitorCols);
    for (const auto& r : recs) {
        std::string l;
        for (double v : {r.t, r.x_hat.T_w1, r.x_hat.T_w2, r.ups_h, r.ups_c, r.mdot_c, r.cond_hat.aA_h, r.cond_hat.aA_c,
                         r.kA_hat, r.innov_h2, r.innov_c2, r.eps_h2, r.eps_c2}) {
            cell(l, v);
        }
        cell(l, r.flags);
        out << l << '\n';
    }
}

void write_telemetry_csv(const std::filesystem::path& p, const std::vector<TelemetryRecord>& recs) {
    auto out = open_out(p);
    write_telemetry_csv(out, recs);
}

void write_monitor_csv(const std::filesystem::path& p, const std::vector<MonitorRecord>& recs) {
    auto out = open_out(p);
    write_monitor_csv(out, recs);
}

std::vector<TelemetryRecord> read_telemetry_csv(std::istream& in) {
    CsvReader rd(in, kTelemetryCols);
    std::vector<TelemetryRecord> out;
    std::vector<double> v;
    while (rd.next(v)) {
        TelemetryRecord r;
        r.t = v[0];
        r.u = {v[1], v[2], v[3], v[4]};
        r.p_h = v[5];
        r.p_c = v[6];
        r.y_true = {v[7], v[8]};
        r.y_meas = {v[9], v[10]};
        r.x_true = {v[11], v[12]};
        r.cond_true = {v[13], v[14]};
        r.kA_true = v[15];
        r.flags = std::isnan(v[16]) ? 0u : static_cast<unsigned>(v[16]);
        if (!out.empty() && !(r.t > out.back().t)) throw ParseError("time column not increasing", rd.line());
        out.push_back(r);
    }
    return out;
}

std::vector<MonitorRecord> read_monitor_csv(std::istream& in) {
    CsvReader rd(in, kMonitorCols);
    std::vector<MonitorRecord> out;
    std::vector<double> v;
    while (rd.next(v)) {
        MonitorRecord r;
        r.t = v[0];
        r.x_hat = {v[1], v[2]};
        r.ups_h = v[3];
        r.ups_c = v[4];
        r.mdot_c = v[5];
        r.cond_hat = {v[6], v[7]};
        r.kA_hat = v[8];
        r.innov_h2 = v[9];
        r.innov_c2 = v[10];
        r.eps_h2 = v[11];
        r.eps_c2 = v[12];
        r.flags = std::isnan(v[13]) ? 0u : static_cast<unsigned>(v[13]);
        if (!out.empty() && !(r.t > out.back().t)) throw ParseError("time column not increasing", rd.line());
        out.push_back(r);
    }
    return out;
}

std::vector<TelemetryRecord> read_telemetry_csv(const std::filesystem::path& p) {
    auto in = open_in(p);
    return read_telemetry_csv(in);
}

std::vector<MonitorRecord> read_monitor_csv(const std::filesystem::path& p) {
    auto in = open_in(p);
    return read_monitor_csv(in);
}

}  // namespace hxtwin
