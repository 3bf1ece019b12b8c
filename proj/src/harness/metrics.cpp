#include "hxtwin/harness/metrics.hpp"

#include "hxtwin/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <ostream>

namespace hxtwin {

std::vector<Window> tile_windows(double t0, double t1, double width) {
    if (!(width > 0.0) || !(t1 > t0)) throw WindowOutOfRange("invalid window tiling");
    std::vector<Window> w;
    const double eps = 1e-9 * width;
    for (double a = t0; a + width <= t1 + eps; a += width) w.push_back({a, a + width});
    return w;
}

namespace {

ChannelStats stats(const std::vector<double>& v) {
    ChannelStats s;
    s.n = v.size();
    if (v.empty()) return s;
    double sum = 0.0;
    for (double x : v) sum += x;
    s.mean = sum / v.size();
    double ss = 0.0;
    for (double x : v) ss += (x - s.mean) * (x - s.mean);
    s.std = v.size() > 1 ? std::sqrt(ss / (v.size() - 1)) : 0.0;
    return s;
}

}  // namespace

MetricsReport compute_metrics(const std::vector<TelemetryRecord>& truth, const std::vector<MonitorRecord>& mon,
                              const std::vector<Window>& windows, const MetricsOptions& opts) {
    if (truth.size() != mon.size()) throw DimensionMismatch("truth and monitor records are not aligned");
    for (std::size_t i = 0; i < truth.size(); ++i) {
        if (truth[i].t != mon[i].t) throw DimensionMismatch("truth and monitor timestamps differ");
    }
    if (opts.rating && opts.rating->size() != truth.size()) {
        throw DimensionMismatch("rating and truth records are not aligned");
    }
    MetricsReport rep;
    if (truth.empty()) {
        if (!windows.empty()) throw WindowOutOfRange("no records");
        return rep;
    }
    const double first = truth.front().t, last = truth.back().t;
    for (const Window& w : windows) {
        if (!(w.t1 >= w.t0) || w.t0 < first || w.t1 > last + 1e-9 * std::max(1.0, std::abs(last))) {
            throw WindowOutOfRange("window outside the recorded time span");
        }
        WindowMetrics wm;
        wm.window = w;
        std::vector<double> ih, ic;
        double sum = 0.0, sum_abs = 0.0, rmax = 0.0;
        bool have_rating = false;
        for (std::size_t i = 0; i < truth.size(); ++i) {
            double t = truth[i].t;
            if (t < w.t0 || t > w.t1) continue;
            double e = (mon[i].kA_hat - truth[i].kA_true) / truth[i].kA_true;
            ++wm.n;
            sum += e;
            sum_abs += std::abs(e);
            wm.max_abs_rel_err = std::max(wm.max_abs_rel_err, std::abs(e));
            if (!std::isnan(mon[i].innov_h2)) ih.push_back(mon[i].innov_h2);
            if (!std::isnan(mon[i].innov_c2)) ic.push_back(mon[i].innov_c2);
            if (opts.rating && !(*opts.rating)[i].flagged) {
                have_rating = true;
                rmax = std::max(rmax, std::abs(((*opts.rating)[i].kA - truth[i].kA_true) / truth[i].kA_true));
            }
        }
        if (wm.n == 0) throw WindowOutOfRange("window contains no samples");
        wm.mean_rel_err = sum / wm.n;
        wm.mean_abs_rel_err = sum_abs / wm.n;
        wm.innov_h2 = stats(ih);
        wm.innov_c2 = stats(ic);
        if (have_rating) wm.rating_max_abs_rel_err = rmax;
        rep.windows.push_back(wm);
    }
    if (opts.event_time) {
        for (std::size_t i = 0; i < truth.size(); ++i) {
            if (truth[i].t < *opts.event_time) continue;
            double truth_m = truth[i].u.mdot_c;
            if (std::abs(mon[i].mdot_c - truth_m) <= 0.1 * truth_m) {
                rep.mdot_c_recovery_time = truth[i].t - *opts.event_time;
                break;
            }
        }
    }
    return rep;
}

void write_report(std::ostream& out, const MetricsReport& rep) {
    using nlohmann::json;
    auto num = [](double v) { return std::isnan(v) ? json(nullptr) : json(v); };
    auto ch = [&](const ChannelStats& s) { return json{{"n", s.n}, {"mean", num(s.mean)}, {"std", num(s.std)}}; };
    json j;
    j["windows"] = json::array();
    for (const auto& w : rep.windows) {
        json jw{{"t0", w.window.t0},
                {"t1", w.window.t1},
                {"n", w.n},
                {"kA_mean_rel_err", w.mean_rel_err},
                {"kA_mean_abs_rel_err", w.mean_abs_rel_err},
                {"kA_max_abs_rel_err", w.max_abs_rel_err},
                {"innov_h2", ch(w.innov_h2)},
                {"innov_c2", ch(w.innov_c2)}};
        if (w.rating_max_abs_rel_err) jw["rating_max_abs_rel_err"] = *w.rating_max_abs_rel_err;
        j["windows"].push_back(jw);
    }
    auto opt = [&](const char* k, const std::optional<double>& v) { j[k] = v ? json(*v) : json(nullptr); };
    opt("mdot_c_recovery_time", rep.mdot_c_recovery_time);
    opt("runtime_s", rep.runtime_s);
    opt("speedup", rep.speedup);
    out << j.dump(2) << '\n';
}

}  // namespace hxtwin
