#include "mvfill/viasim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace mvfill {

namespace {

constexpr double kPi = std::numbers::pi;

void require(bool ok, const char* what)
{
    if (!ok) {
        throw std::invalid_argument(what);
    }
}

std::vector<double> face_diffusivity(const SimConfig& cfg, int faces)
{
    const int n = cfg.geometry.cells;
    std::vector<double> d(static_cast<std::size_t>(faces));
    for (int f = 0; f < faces; ++f) {
        const double xi = std::min(1.0, static_cast<double>(f) / n);
        d[f] = cfg.electrolyte.diffusivity * streaming_enhancement(cfg.field, xi);
    }
    return d;
}

// Seeded cells form a prefix starting at the mouth.
int seeded_cell_count(const ViaGeometry& g)
{
    return g.deepest_seeded_cell() + 1;
}

double local_fill(double r, double r0)
{
    const double q = r / r0;
    return 1.0 - q * q;
}

}  // namespace

int ViaGeometry::deepest_seeded_cell() const
{
    for (int i = cells - 1; i >= 0; --i) {
        if (seeded(i)) return i;
    }
    return -1;
}

void check(const SimConfig& cfg)
{
    check(cfg.electrolyte);
    check(cfg.field);
    check(cfg.flow);
    const auto& g = cfg.geometry;
    require(g.radius > 0.0, "geometry.radius: must satisfy > 0");
    require(g.depth > 0.0, "geometry.depth: must satisfy > 0");
    require(g.cells >= 16, "geometry.cells: must satisfy >= 16");
    require(g.seed_coverage > 0.0 && g.seed_coverage <= 1.0, "geometry.seed_coverage: must satisfy 0 < s <= 1");
    require(cfg.t_end > 0.0, "sim.t_end: must satisfy > 0");
    require(cfg.dr_max_frac > 0.0 && cfg.dr_max_frac <= 0.05, "sim.dr_max_frac: must satisfy 0 < f <= 0.05");
    require(cfg.c_tol > 0.0, "sim.c_tol: must satisfy > 0");
    require(cfg.r_close_frac > 0.0 && cfg.r_close_frac < 0.1, "sim.r_close_frac: must satisfy 0 < f < 0.1");
    require(cfg.fill_frac_target > 0.0 && cfg.fill_frac_target <= 1.0,
            "sim.fill_frac_target: must satisfy 0 < f <= 1");
    require(cfg.snapshot_count >= 2, "sim.snapshots: must satisfy >= 2");
    const auto report = validate_waveform(cfg.waveform);
    if (!report.ok()) {
        throw std::invalid_argument("waveform." + std::string(to_string(cfg.waveform.kind)) + ": "
                                    + report.errors.front());
    }
}

SimState SimState::initial(const ViaGeometry& geometry)
{
    SimState s;
    s.radius.assign(static_cast<std::size_t>(geometry.cells), geometry.radius);
    s.conc.assign(static_cast<std::size_t>(geometry.cells), 1.0);
    return s;
}

int open_cell_count(const SimState& state, const SimConfig& cfg)
{
    const double r_close = cfg.r_close_frac * cfg.geometry.radius;
    int n = 0;
    while (n < static_cast<int>(state.radius.size()) && state.radius[n] > r_close) ++n;
    return n;
}

ConcentrationSolve solve_concentration_profile(const SimState& state, const SimConfig& cfg, double rate)
{
    ConcentrationSolve out;
    const auto& g = cfg.geometry;
    const int open = open_cell_count(state, cfg);
    out.open_cells = open;
    out.conc.assign(static_cast<std::size_t>(g.cells), 0.0);
    if (open == 0) {
        out.pinched = true;
        return out;
    }
    std::vector<unsigned char> reactive(static_cast<std::size_t>(open));
    for (int i = 0; i < open; ++i) reactive[i] = g.seeded(i) ? 1 : 0;
    const auto faces = face_diffusivity(cfg, open + 1);

    PoreProblem problem;
    problem.radius = std::span<const double>(state.radius.data(), static_cast<std::size_t>(open));
    problem.face_diffusivity = faces;
    problem.wall_reactive = reactive;
    problem.cell_size = g.cell_size();
    problem.rate = rate;
    problem.film_thickness = effective_delta(cfg.electrolyte, cfg.field, cfg.flow);
    problem.bottom_reactive = open == g.cells && g.bottom_seeded();
    problem.tolerance = cfg.c_tol;

    PoreSolution sol;
    try {
        sol = solve_pore(problem);
    } catch (const NumericalError& e) {
        throw NumericalError(e.what(), state);
    }
    std::copy(sol.conc.begin(), sol.conc.end(), out.conc.begin());
    out.bottom_conc = open == g.cells ? sol.bottom_conc : 0.0;
    out.balance_error = sol.balance_error;
    out.residual = sol.residual;
    return out;
}

namespace {

void advance_open(SimState& s, const SimConfig& cfg, double dt, double segment_current, int open)
{
    const auto& g = cfg.geometry;
    const auto& elec = cfg.electrolyte;
    const double r0 = g.radius;
    const double dx = g.cell_size();
    const double charge_per_volume = elec.charge * PhysicalConstants::F * elec.density / elec.molar_mass;
    s.t += dt;
    if (segment_current == 0.0) {
        return;
    }
    const bool floor_exposed = open == g.cells && g.bottom_seeded();

    if (segment_current > 0.0) {
        const double speed_per_current = faraday_velocity(elec, 1.0);
        const int plating = std::min(open, seeded_cell_count(g));
        double charge = 0.0;
        for (int i = 0; i < plating; ++i) {
            const double local = segment_current * s.conc[i];
            const double v = speed_per_current * local;
            const double r_old = s.radius[i];
            double r_new = r_old - v * dt;
            double dt_eff = dt;
            if (r_new < 0.0) {
                dt_eff = r_old / v;
                s.clamped_volume += kPi * r_old * dx * v * (dt - dt_eff);
                r_new = 0.0;
            }
            s.radius[i] = r_new;
            charge += local * (r_old + r_new) * dt_eff;
        }
        s.q_total += charge * kPi * dx;
        if (floor_exposed) {
            const double local = segment_current * s.bottom_conc;
            const double growth = faraday_velocity(elec, local) * dt;
            const double area = kPi * s.radius[g.cells - 1] * s.radius[g.cells - 1];
            s.bottom_thickness += growth;
            s.bottom_volume += area * growth;
            s.q_total += local * area * dt;
        }
        return;
    }

    // Dissolution: kinetically limited, uniform over deposit-bearing surfaces.
    const double v = -faraday_velocity(elec, segment_current);
    double charge = 0.0;
    for (int i = 0; i < open; ++i) {
        const double r_old = s.radius[i];
        if (r_old >= r0) continue;
        double r_new = r_old + v * dt;
        double dt_eff = dt;
        if (r_new > r0) {
            r_new = r0;
            dt_eff = (r0 - r_old) / v;
        }
        s.radius[i] = r_new;
        charge += (r_old + r_new) * dt_eff;
    }
    s.q_total += segment_current * kPi * dx * charge;
    if (floor_exposed && s.bottom_thickness > 0.0) {
        const double area = kPi * s.radius[g.cells - 1] * s.radius[g.cells - 1];
        double removed = std::min(s.bottom_thickness, v * dt);
        double removed_volume = area * removed;
        if (removed_volume > s.bottom_volume) {
            removed_volume = s.bottom_volume;
        }
        s.bottom_thickness -= removed;
        s.bottom_volume -= removed_volume;
        s.q_total -= removed_volume * charge_per_volume;
    }
}

}  // namespace

void advance_geometry_in_place(SimState& s, const SimConfig& cfg, double dt, double segment_current)
{
    advance_open(s, cfg, dt, segment_current, open_cell_count(s, cfg));
}

SimState advance_geometry(const SimState& state, const SimConfig& cfg, double dt, double segment_current)
{
    SimState next = state;
    advance_geometry_in_place(next, cfg, dt, segment_current);
    return next;
}

std::optional<PinchEvent> check_pinch_off(const SimState& state, const SimConfig& cfg)
{
    // Any closed cell that seals an unfilled open cell also has the shallowest
    // closed cell above it, so only the first closed cell needs testing.
    const auto& g = cfg.geometry;
    const double r_close = cfg.r_close_frac * g.radius;
    const int n = static_cast<int>(state.radius.size());
    const int first_closed = open_cell_count(state, cfg);
    for (int j = first_closed + 1; j < n; ++j) {
        const double r = state.radius[j];
        if (r > r_close && local_fill(r, g.radius) < cfg.fill_frac_target) {
            return PinchEvent{first_closed, state.t};
        }
    }
    return std::nullopt;
}

namespace {

class Runner {
public:
    explicit Runner(const SimConfig& cfg)
        : cfg_(cfg),
          faces_(face_diffusivity(cfg, cfg.geometry.cells + 1)),
          film_(effective_delta(cfg.electrolyte, cfg.field, cfg.flow))
    {
        const auto& g = cfg.geometry;
        reactive_.resize(static_cast<std::size_t>(g.cells));
        for (int i = 0; i < g.cells; ++i) reactive_[i] = g.seeded(i) ? 1 : 0;
    }

    // Quasi-steady concentration for the current geometry. Returns false when
    // the mouth is sealed.
    bool solve(SimState& s, double rate, RunDiagnostics& diag)
    {
        const auto& g = cfg_.geometry;
        const int open = open_cell_count(s, cfg_);
        if (open == 0) return false;
        PoreProblem p;
        const auto n = static_cast<std::size_t>(open);
        p.radius = std::span<const double>(s.radius.data(), n);
        p.face_diffusivity = std::span<const double>(faces_.data(), n + 1);
        p.wall_reactive = std::span<const unsigned char>(reactive_.data(), n);
        p.cell_size = g.cell_size();
        p.rate = rate;
        p.film_thickness = film_;
        p.bottom_reactive = open == g.cells && g.bottom_seeded();
        p.tolerance = cfg_.c_tol;
        auto& sol = solution_;
        try {
            solve_pore(p, work_, sol);
        } catch (const NumericalError& e) {
            throw NumericalError(e.what(), s);
        }
        std::copy(sol.conc.begin(), sol.conc.end(), s.conc.begin());
        std::fill(s.conc.begin() + open, s.conc.end(), 0.0);
        s.bottom_conc = open == g.cells ? sol.bottom_conc : 0.0;
        ++diag.solves;
        diag.max_balance_error = std::max(diag.max_balance_error, sol.balance_error);
        diag.max_residual = std::max(diag.max_residual, sol.residual);
        return true;
    }

    void relax(SimState& s) const
    {
        const int open = open_cell_count(s, cfg_);
        std::fill(s.conc.begin(), s.conc.begin() + open, 1.0);
        std::fill(s.conc.begin() + open, s.conc.end(), 0.0);
        s.bottom_conc = open == cfg_.geometry.cells ? 1.0 : 0.0;
    }

    // Largest sidewall or floor speed under forward current at the solved concentrations.
    double max_forward_speed(const SimState& s, double current) const
    {
        const auto& g = cfg_.geometry;
        const int open = open_cell_count(s, cfg_);
        double c_max = 0.0;
        for (int i = 0; i < open; ++i) {
            if (reactive_[i]) c_max = std::max(c_max, s.conc[i]);
        }
        if (open == g.cells && g.bottom_seeded()) c_max = std::max(c_max, s.bottom_conc);
        return faraday_velocity(cfg_.electrolyte, current * c_max);
    }

private:
    const SimConfig& cfg_;
    std::vector<double> faces_;
    std::vector<unsigned char> reactive_;
    double film_;
    PoreWorkspace work_;
    PoreSolution solution_;
};

Snapshot snapshot_of(const SimState& s)
{
    return Snapshot{s.t, s.radius, s.bottom_thickness, s.conc};
}

// All locally unfilled open cells below `from` lie outside the seeded depth.
bool unfilled_only_unseeded(const SimState& s, const SimConfig& cfg, int from)
{
    const auto& g = cfg.geometry;
    for (int j = from; j < g.cells; ++j) {
        const bool unfilled = local_fill(s.radius[j], g.radius) < cfg.fill_frac_target
                              && s.radius[j] > cfg.r_close_frac * g.radius;
        if (unfilled && g.seeded(j)) return false;
    }
    return true;
}

}  // namespace

SimResult run_simulation(const SimConfig& cfg)
{
    check(cfg);
    const auto& g = cfg.geometry;
    Runner runner(cfg);

    SimResult result;
    result.geometry = g;
    SimState s = SimState::initial(g);

    const auto segs = segments(cfg.waveform);
    const bool steady = cfg.waveform.kind == WaveformKind::DC;
    const double rate_forward = wall_rate_constant(cfg.electrolyte, cfg.waveform.i_forward);
    const double dr_cap = cfg.dr_max_frac * g.radius;

    const int n_snap = cfg.snapshot_count;
    auto snap_time = [&](int j) { return cfg.t_end * j / (n_snap - 1); };
    result.snapshots.reserve(static_cast<std::size_t>(n_snap) + 1);
    result.snapshots.push_back(snapshot_of(s));
    int next_snap = 1;

    std::size_t seg = 0;
    double seg_left = steady ? std::numeric_limits<double>::infinity() : segs[0].duration;
    bool done = false;

    // The concentration field is re-solved at the start of every forward
    // segment, whenever the open path changes, and whenever the front has moved
    // more than 1% of dr_max since the last solve. Near closure the mouth
    // conductance is very sensitive to radius, so a coarser reuse rule shifts
    // pinch-off times.
    const double resolve_drift = 0.01 * dr_cap;
    bool stale = true;
    bool relaxed = true;
    double drift = 0.0;
    double solved_speed = 0.0;
    int open = g.cells;
    int open_at_solve = -1;

    while (!done) {
        const Segment& current = segs[seg];
        const double t_target = snap_time(next_snap);
        double dt = std::min(seg_left, t_target - s.t);
        double drive = 0.0;
        double speed = 0.0;

        if (current.kind == SegmentKind::Forward) {
            if (stale || drift > resolve_drift || open != open_at_solve) {
                if (!runner.solve(s, rate_forward, result.diagnostics)) {
                    // Mouth sealed without a pinch below it; nothing can change.
                    break;
                }
                stale = false;
                relaxed = false;
                drift = 0.0;
                open_at_solve = open;
                solved_speed = runner.max_forward_speed(s, current.current);
            }
            speed = solved_speed;
            if (speed > 0.0) dt = std::min(dt, dr_cap / speed);
            if (!steady) dt = std::min(dt, current.duration / 10.0);
            drive = current.current;
        } else {
            if (!relaxed) {
                runner.relax(s);
                relaxed = true;
            }
            stale = true;
            if (current.kind == SegmentKind::Reverse) {
                speed = -faraday_velocity(cfg.electrolyte, current.current);
                dt = std::min(dt, current.duration / 10.0);
                if (speed > 0.0) dt = std::min(dt, dr_cap / speed);
                drive = current.current;
            }
        }

        const double t_before = s.t;
        advance_open(s, cfg, dt, drive, open);
        drift += speed * dt;
        ++result.diagnostics.steps;
        if (dt == t_target - t_before) s.t = t_target;
        const int open_before = open;
        if (drive != 0.0) open = open_cell_count(s, cfg);
        if (!std::isfinite(s.t) || !std::isfinite(s.q_total)) {
            throw NumericalError("non-finite state after step", s);
        }

        if (!steady) {
            if (dt >= seg_left) {
                seg = (seg + 1) % segs.size();
                seg_left = segs[seg].duration;
                stale = true;
            } else {
                seg_left -= dt;
            }
        }

        const bool at_snapshot = s.t >= t_target;
        if (at_snapshot) {
            result.snapshots.push_back(snapshot_of(s));
            ++next_snap;
        }

        if (fill_fraction(s, g) >= cfg.fill_frac_target) {
            result.outcome = Outcome::Filled;
            result.fill_time = s.t;
            done = true;
        } else if (open < g.cells && (open != open_before || drive < 0.0)) {
            // Pinch status can only change when a cell closes or deposit dissolves.
            if (auto pinch = check_pinch_off(s, cfg)) {
                result.pinch = pinch;
                result.outcome = unfilled_only_unseeded(s, cfg, pinch->cell + 1) ? Outcome::SeedStarved
                                                                                 : Outcome::Voided;
                done = true;
            }
        }
        if (!done && next_snap >= n_snap) {
            result.outcome = unfilled_only_unseeded(s, cfg, 0) ? Outcome::SeedStarved : Outcome::Underfilled;
            done = true;
        }
    }
    if (!done) {
        result.outcome = unfilled_only_unseeded(s, cfg, 0) ? Outcome::SeedStarved : Outcome::Underfilled;
    }

    if (result.snapshots.back().t != s.t) {
        result.snapshots.push_back(snapshot_of(s));
    }
    result.final_state = std::move(s);
    result.metrics = evaluate_metrics(result);
    return result;
}

}  // namespace mvfill
