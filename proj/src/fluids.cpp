#include "hxtwin/fluids.hpp"

#include "hxtwin/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

namespace hxtwin {

namespace {

constexpr double kDegenerateSpan = 1e-6;  // K
constexpr double kPointStep = 0.01;       // K, full span of the centered difference

std::string fmt_num(double v) {
    std::ostringstream os;
    os << std::setprecision(10) << v;
    return os.str();
}

void require_increasing(const std::vector<double>& axis, const std::string& name) {
    for (std::size_t i = 1; i < axis.size(); ++i) {
        if (!(axis[i] > axis[i - 1])) throw NonMonotonicAxis(name, i);
    }
}

// Index of the cell [axis[i], axis[i+1]] holding v; v must be inside the axis.
std::size_t cell_index(const std::vector<double>& axis, double v) {
    auto it = std::upper_bound(axis.begin(), axis.end(), v);
    std::size_t i = static_cast<std::size_t>(it - axis.begin());
    if (i == 0) return 0;
    return std::min(i - 1, axis.size() - 2);
}

}  // namespace

// ---------------------------------------------------------------------------
// ThermallyPerfect

ThermallyPerfect ThermallyPerfect::polynomial(std::vector<double> coeffs, double T_min, double T_max) {
    if (coeffs.empty()) throw DomainError("cp polynomial needs at least one coefficient");
    if (!(T_min > 0.0) || !(T_max > T_min)) throw DomainError("cp polynomial needs 0 < T_min < T_max");
    ThermallyPerfect m;
    m.coeffs_ = std::move(coeffs);
    m.T_min_ = T_min;
    m.T_max_ = T_max;
    // positive heat capacity over the whole validity range
    for (int i = 0; i <= 200; ++i) {
        double T = T_min + (T_max - T_min) * i / 200.0;
        if (!(m.specific_heat(T) > 0.0))
            throw DomainError("cp polynomial not positive at T=" + fmt_num(T) + " K");
    }
    return m;
}

ThermallyPerfect ThermallyPerfect::table(std::vector<double> T, std::vector<double> cp) {
    if (T.size() < 2 || T.size() != cp.size())
        throw DomainError("cp table needs at least two (T, cp) nodes of equal count");
    require_increasing(T, "T");
    for (std::size_t i = 0; i < cp.size(); ++i) {
        if (!(cp[i] > 0.0)) throw DomainError("cp table value not positive at node " + std::to_string(i));
    }
    ThermallyPerfect m;
    m.T_ = std::move(T);
    m.cp_ = std::move(cp);
    m.T_min_ = m.T_.front();
    m.T_max_ = m.T_.back();
    m.h_nodes_.assign(m.T_.size(), 0.0);
    for (std::size_t i = 1; i < m.T_.size(); ++i) {
        m.h_nodes_[i] = m.h_nodes_[i - 1] + 0.5 * (m.cp_[i] + m.cp_[i - 1]) * (m.T_[i] - m.T_[i - 1]);
    }
    return m;
}

void ThermallyPerfect::check_range(double T) const {
    if (!(T >= T_min_ && T <= T_max_))
        throw OutOfRange("T=" + fmt_num(T) + " K outside [" + fmt_num(T_min_) + ", " + fmt_num(T_max_) + "]");
}

double ThermallyPerfect::specific_heat(double T) const {
    check_range(T);
    if (!coeffs_.empty()) {
        double acc = 0.0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * T + *it;
        return acc;
    }
    std::size_t i = cell_index(T_, T);
    double w = (T - T_[i]) / (T_[i + 1] - T_[i]);
    return cp_[i] + w * (cp_[i + 1] - cp_[i]);
}

double ThermallyPerfect::enthalpy(double T) const {
    check_range(T);
    if (!coeffs_.empty()) {
        // integral of sum c_i T^i from 0, Horner form
        double acc = 0.0;
        for (std::size_t k = coeffs_.size(); k-- > 0;) acc = acc * T + coeffs_[k] / static_cast<double>(k + 1);
        return acc * T;
    }
    std::size_t i = cell_index(T_, T);
    double d = T - T_[i];
    double slope = (cp_[i + 1] - cp_[i]) / (T_[i + 1] - T_[i]);
    return h_nodes_[i] + cp_[i] * d + 0.5 * slope * d * d;
}

// ---------------------------------------------------------------------------
// TabulatedFluid

TabulatedFluid::TabulatedFluid(std::vector<double> T_axis, std::vector<double> p_axis, std::vector<double> h,
                               std::string name)
    : T_(std::move(T_axis)), p_(std::move(p_axis)), h_(std::move(h)), name_(std::move(name)) {
    if (T_.size() < 2 || p_.size() < 2) throw DomainError("fluid table needs at least a 2x2 grid");
    if (h_.size() != T_.size() * p_.size()) throw DomainError("fluid table size does not match its axes");
    require_increasing(T_, "T");
    require_increasing(p_, "p");
    for (std::size_t ip = 0; ip < p_.size(); ++ip) {
        for (std::size_t iT = 1; iT < T_.size(); ++iT) {
            if (!(node(iT, ip) > node(iT - 1, ip)))
                throw DomainError("enthalpy not strictly increasing in T at row " + std::to_string(iT) +
                                  ", column " + std::to_string(ip));
        }
    }
}

double TabulatedFluid::enthalpy(double T, double p) const {
    if (!(T >= T_.front() && T <= T_.back() && p >= p_.front() && p <= p_.back())) {
        throw OutOfRange("(T=" + fmt_num(T) + " K, p=" + fmt_num(p) + " Pa) outside table hull");
    }
    std::size_t i = cell_index(T_, T);
    std::size_t j = cell_index(p_, p);
    double wT = (T - T_[i]) / (T_[i + 1] - T_[i]);
    double wp = (p - p_[j]) / (p_[j + 1] - p_[j]);
    double h0 = node(i, j) + wT * (node(i + 1, j) - node(i, j));
    double h1 = node(i, j + 1) + wT * (node(i + 1, j + 1) - node(i, j + 1));
    return h0 + wp * (h1 - h0);
}

// ---------------------------------------------------------------------------
// FluidModel

FluidModel::FluidModel(CaloricallyPerfect m) : model_(m) {
    if (!(m.cp > 0.0) || !std::isfinite(m.cp)) throw DomainError("cp must be positive");
}
FluidModel::FluidModel(ThermallyPerfect m) : model_(std::move(m)) {}
FluidModel::FluidModel(TabulatedFluid m) : model_(std::move(m)) {}

double FluidModel::enthalpy(double T, double p) const {
    return std::visit(
        [&](const auto& m) -> double {
            using M = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<M, CaloricallyPerfect>) {
                if (!(T > 0.0) || !std::isfinite(T)) throw OutOfRange("T=" + fmt_num(T) + " K not positive");
                return m.cp * T;
            } else if constexpr (std::is_same_v<M, ThermallyPerfect>) {
                return m.enthalpy(T);
            } else {
                return m.enthalpy(T, p);
            }
        },
        model_);
}

bool FluidModel::contains(double T, double p) const {
    return std::visit(
        [&](const auto& m) -> bool {
            using M = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<M, CaloricallyPerfect>) {
                return T > 0.0 && std::isfinite(T);
            } else if constexpr (std::is_same_v<M, ThermallyPerfect>) {
                return T >= m.T_min() && T <= m.T_max();
            } else {
                return T >= m.T_axis().front() && T <= m.T_axis().back() && p >= m.p_axis().front() &&
                       p <= m.p_axis().back();
            }
        },
        model_);
}

std::string FluidModel::description() const {
    return std::visit(
        [](const auto& m) -> std::string {
            using M = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<M, CaloricallyPerfect>) {
                return "calorically perfect, cp=" + fmt_num(m.cp) + " J/(kg K)";
            } else if constexpr (std::is_same_v<M, ThermallyPerfect>) {
                return std::string("thermally perfect (") + (m.is_polynomial() ? "polynomial" : "table") +
                       "), T in [" + fmt_num(m.T_min()) + ", " + fmt_num(m.T_max()) + "] K";
            } else {
                return "tabulated '" + m.name() + "', " + std::to_string(m.T_axis().size()) + "x" +
                       std::to_string(m.p_axis().size()) + " grid";
            }
        },
        model_);
}

void validate(const StreamConfig& s) {
    if (!(s.pressure > 0.0) || !std::isfinite(s.pressure)) throw DomainError("stream pressure must be positive");
}

double enthalpy(const FluidModel& model, double T, double p) { return model.enthalpy(T, p); }

double point_specific_heat(const FluidModel& model, double T, double p) {
    if (const auto* cpm = std::get_if<CaloricallyPerfect>(&model.variant())) {
        if (!(T > 0.0)) throw OutOfRange("T=" + fmt_num(T) + " K not positive");
        return cpm->cp;
    }
    if (!model.contains(T, p)) throw OutOfRange("T=" + fmt_num(T) + " K outside fluid hull");
    double lo = T - 0.5 * kPointStep;
    double hi = T + 0.5 * kPointStep;
    if (!model.contains(lo, p)) {
        lo = T;
        hi = T + kPointStep;
    } else if (!model.contains(hi, p)) {
        lo = T - kPointStep;
        hi = T;
    }
    return (model.enthalpy(hi, p) - model.enthalpy(lo, p)) / (hi - lo);
}

double mean_specific_heat(const FluidModel& model, double T_from, double T_to, double p) {
    if (const auto* cpm = std::get_if<CaloricallyPerfect>(&model.variant())) {
        if (!(T_from > 0.0) || !(T_to > 0.0)) throw OutOfRange("temperatures must be positive");
        return cpm->cp;
    }
    if (std::abs(T_to - T_from) < kDegenerateSpan) return point_specific_heat(model, 0.5 * (T_from + T_to), p);
    return (model.enthalpy(T_to, p) - model.enthalpy(T_from, p)) / (T_to - T_from);
}

// ---------------------------------------------------------------------------
// Table file I/O
//
//   hxtwin-fluid-table 1
//   name <free text>            (optional)
//   T_axis <T_0> ... <T_n-1>    K, strictly increasing
//   p_axis <p_0> ... <p_m-1>    Pa, strictly increasing
//   T/K p/Pa h/(J/kg)
//   <T_0> <p_0> <h_00>
//   <T_0> <p_1> <h_01>          row-major, T outer
//   ...
//
// '#' starts a comment; blank lines are ignored.

namespace {

std::vector<double> parse_numbers(std::istringstream& is, std::size_t line) {
    std::vector<double> out;
    std::string tok;
    while (is >> tok) {
        try {
            std::size_t used = 0;
            double v = std::stod(tok, &used);
            if (used != tok.size() || !std::isfinite(v)) throw std::invalid_argument(tok);
            out.push_back(v);
        } catch (const std::exception&) {
            throw ParseError("not a number: '" + tok + "'", line);
        }
    }
    return out;
}

bool same_node(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b)); }

}  // namespace

FluidModel load_fluid_table(std::istream& in) {
    std::string raw;
    std::size_t line_no = 0;
    bool have_magic = false;
    bool in_body = false;
    std::string name;
    std::vector<double> T_axis, p_axis, h;
    std::size_t row = 0;

    while (std::getline(in, raw)) {
        ++line_no;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        std::istringstream is(raw);
        std::string key;
        if (!(is >> key)) continue;

        if (!have_magic) {
            std::string version;
            if (key != "hxtwin-fluid-table" || !(is >> version) || version != "1")
                throw ParseError("expected header 'hxtwin-fluid-table 1'", line_no);
            have_magic = true;
            continue;
        }
        if (!in_body) {
            if (key == "name") {
                std::getline(is >> std::ws, name);
                while (!name.empty() && std::isspace(static_cast<unsigned char>(name.back()))) name.pop_back();
            } else if (key == "T_axis") {
                T_axis = parse_numbers(is, line_no);
                if (T_axis.size() < 2) throw ParseError("T_axis needs at least two values", line_no);
            } else if (key == "p_axis") {
                p_axis = parse_numbers(is, line_no);
                if (p_axis.size() < 2) throw ParseError("p_axis needs at least two values", line_no);
            } else if (key == "T/K") {
                std::string a, b;
                if (!(is >> a >> b) || a != "p/Pa" || b != "h/(J/kg)")
                    throw ParseError("expected column header 'T/K p/Pa h/(J/kg)'", line_no);
                if (T_axis.empty() || p_axis.empty())
                    throw ParseError("T_axis and p_axis must precede the column header", line_no);
                require_increasing(T_axis, "T");
                require_increasing(p_axis, "p");
                h.reserve(T_axis.size() * p_axis.size());
                in_body = true;
            } else {
                throw ParseError("unknown preamble key '" + key + "'", line_no);
            }
            continue;
        }

        std::istringstream body(raw);
        auto vals = parse_numbers(body, line_no);
        if (vals.size() != 3) throw ParseError("expected 3 columns 'T p h'", line_no);
        std::size_t iT = row / p_axis.size();
        std::size_t ip = row % p_axis.size();
        if (iT >= T_axis.size()) throw ParseError("more rows than grid cells", line_no);
        if (!same_node(vals[0], T_axis[iT]) || !same_node(vals[1], p_axis[ip])) {
            throw ParseError("cell (row " + std::to_string(iT) + ", column " + std::to_string(ip) +
                                 ") expected T=" + fmt_num(T_axis[iT]) + " p=" + fmt_num(p_axis[ip]),
                             line_no);
        }
        h.push_back(vals[2]);
        ++row;
    }
    if (!have_magic) throw ParseError("empty fluid table", line_no);
    if (!in_body) throw ParseError("missing column header 'T/K p/Pa h/(J/kg)'", line_no);
    if (h.size() != T_axis.size() * p_axis.size()) {
        std::size_t iT = row / p_axis.size();
        std::size_t ip = row % p_axis.size();
        throw ParseError("missing cell at row " + std::to_string(iT) + ", column " + std::to_string(ip), line_no);
    }
    return FluidModel(TabulatedFluid(std::move(T_axis), std::move(p_axis), std::move(h), name));
}

FluidModel load_fluid_table(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open fluid table '" + path.string() + "'", 0);
    return load_fluid_table(in);
}

void write_fluid_table(std::ostream& out, const TabulatedFluid& table) {
    const auto prec = std::numeric_limits<double>::max_digits10;
    out << "hxtwin-fluid-table 1\n";
    if (!table.name().empty()) out << "name " << table.name() << "\n";
    out << std::setprecision(prec);
    out << "T_axis";
    for (double v : table.T_axis()) out << ' ' << v;
    out << "\np_axis";
    for (double v : table.p_axis()) out << ' ' << v;
    out << "\nT/K p/Pa h/(J/kg)\n";
    for (std::size_t i = 0; i < table.T_axis().size(); ++i) {
        for (std::size_t j = 0; j < table.p_axis().size(); ++j) {
            out << table.T_axis()[i] << ' ' << table.p_axis()[j] << ' ' << table.node(i, j) << '\n';
        }
    }
}

}  // namespace hxtwin
