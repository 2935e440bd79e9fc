#include "mvfill/doe.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <tuple>

namespace mvfill {

std::vector<Waveform> DoeFactors::default_waveforms()
{
    return {Waveform::dc(300.0), Waveform::pulsed(300.0, 0.010, 0.010),
            Waveform::reverse_pulsed(300.0, 0.020, 900.0, 0.001)};
}

void check(const DoeFactors& factors)
{
    if (factors.waveforms.empty()) throw std::invalid_argument("doe.waveforms: must not be empty");
    if (factors.powers.empty()) throw std::invalid_argument("doe.powers_w: must not be empty");
    if (factors.angles.empty()) throw std::invalid_argument("doe.angles_deg: must not be empty");
    for (double p : factors.powers) {
        if (!(p >= 0.0)) throw std::invalid_argument("doe.powers_w: must satisfy >= 0");
    }
    for (double a : factors.angles) {
        if (!(a >= 0.0 && a < 90.0)) throw std::invalid_argument("doe.angles_deg: must satisfy 0 <= angle < 90");
    }
}

namespace {

struct Cell {
    Waveform waveform;
    double power;
    double angle;
};

DoeRow run_cell(const Cell& cell, const SimConfig& base)
{
    DoeRow row{cell.waveform.kind, cell.power, cell.angle, {}, {}, std::nullopt, 0.0, std::nullopt, 0.0};
    SimConfig cfg = base;
    cfg.waveform = cell.waveform;
    cfg.field.power = cell.power;
    cfg.field.angle_deg = cell.angle;
    try {
        const SimResult result = run_simulation(cfg);
        row.outcome = std::string(to_string(result.metrics.outcome));
        row.fill_time = result.metrics.fill_time;
        row.fill_fraction = result.metrics.fill_fraction;
        row.throwing_power = result.metrics.throwing_power;
        row.mean_rate_um_h = result.metrics.mean_rate_um_h;
    } catch (const std::exception& e) {
        row.outcome = "ERROR";
        row.error = e.what();
    }
    return row;
}

bool close_enough(double a, double b)
{
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 || std::abs(a - b) <= 0.01 * scale;
}

bool close_enough(const std::optional<double>& a, const std::optional<double>& b)
{
    if (a.has_value() != b.has_value()) return false;
    return !a || close_enough(*a, *b);
}

}  // namespace

DoeTable run_full_factorial(const DoeFactors& factors, unsigned threads)
{
    check(factors);
    check(factors.base);

    auto waveforms = factors.waveforms;
    auto powers = factors.powers;
    auto angles = factors.angles;
    std::stable_sort(waveforms.begin(), waveforms.end(),
                     [](const Waveform& a, const Waveform& b) { return a.kind < b.kind; });
    std::sort(powers.begin(), powers.end());
    std::sort(angles.begin(), angles.end());

    std::vector<Cell> cells;
    cells.reserve(waveforms.size() * powers.size() * angles.size());
    for (const auto& w : waveforms) {
        for (double p : powers) {
            for (double a : angles) cells.push_back({w, p, a});
        }
    }

    DoeTable table;
    table.rows.resize(cells.size());
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(cells.size()));

    // Each worker writes only to the rows it claims, so the table is identical
    // for any thread count.
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < cells.size(); i = next++) {
            table.rows[i] = run_cell(cells[i], factors.base);
        }
    };
    if (threads <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
    }
    return table;
}

DoeSummary summarize(const DoeTable& table)
{
    DoeSummary summary;
    auto accumulate = [](DoeAggregate& agg, const DoeRow& row, std::pair<double, int>& tp) {
        ++agg.cells;
        if (row.outcome == to_string(Outcome::Filled)) {
            ++agg.filled;
            if (row.throwing_power) {
                tp.first += *row.throwing_power;
                ++tp.second;
            }
        }
    };
    std::map<WaveformKind, std::pair<double, int>> tp_wave;
    std::map<double, std::pair<double, int>> tp_power;
    for (const auto& row : table.rows) {
        accumulate(summary.by_waveform[row.waveform], row, tp_wave[row.waveform]);
        accumulate(summary.by_power[row.power], row, tp_power[row.power]);
    }
    auto finish = [](DoeAggregate& agg, const std::pair<double, int>& tp) {
        agg.fill_success_rate = agg.cells > 0 ? static_cast<double>(agg.filled) / agg.cells : 0.0;
        if (tp.second > 0) agg.mean_throwing_power = tp.first / tp.second;
    };
    for (auto& [k, agg] : summary.by_waveform) finish(agg, tp_wave[k]);
    for (auto& [p, agg] : summary.by_power) finish(agg, tp_power[p]);

    std::optional<double> min_positive;
    for (const auto& row : table.rows) {
        if (row.power > 0.0 && (!min_positive || row.power < *min_positive)) min_positive = row.power;
    }
    bool dc_seen = false;
    bool dc_ok = true;
    for (const auto& row : table.rows) {
        if (row.waveform != WaveformKind::DC || !min_positive || row.power < *min_positive) continue;
        dc_seen = true;
        dc_ok = dc_ok && row.outcome == to_string(Outcome::Filled);
    }
    summary.dc_sufficient = dc_seen && dc_ok;

    // Rows are sorted by (waveform, power, angle): compare every row with the
    // first row of its (waveform, power) group.
    bool invariant = true;
    const DoeRow* anchor = nullptr;
    for (const auto& row : table.rows) {
        if (!anchor || anchor->waveform != row.waveform || anchor->power != row.power) {
            anchor = &row;
            continue;
        }
        invariant = invariant && anchor->outcome == row.outcome
                    && close_enough(anchor->fill_time, row.fill_time)
                    && close_enough(anchor->fill_fraction, row.fill_fraction)
                    && close_enough(anchor->throwing_power, row.throwing_power)
                    && close_enough(anchor->mean_rate_um_h, row.mean_rate_um_h);
    }
    summary.angle_invariant = invariant;
    return summary;
}

}  // namespace mvfill
