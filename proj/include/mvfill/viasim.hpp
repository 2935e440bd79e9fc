#pragma once

// Quasi-steady reaction-diffusion of cupric ion in a cylindrical blind via,
// coupled to Faraday growth of the deposit. Axial cells are indexed from the
// mouth (i = 0) to the bottom (i = N - 1); the via floor is a lumped disc.

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "mvfill/hydro.hpp"
#include "mvfill/metrics.hpp"
#include "mvfill/physchem.hpp"
#include "mvfill/waveform.hpp"

namespace mvfill {

struct ViaGeometry {
    double radius = 50.0e-6;   // r0, m
    double depth = 200.0e-6;   // L, m
    int cells = 200;
    double seed_coverage = 1.0;  // seeded fraction of depth, from the mouth

    double aspect_ratio() const { return depth / (2.0 * radius); }
    double cell_size() const { return depth / cells; }
    double cell_center(int i) const { return (i + 0.5) * cell_size(); }
    bool seeded(int i) const { return cell_center(i) < seed_coverage * depth; }
    bool bottom_seeded() const { return seed_coverage >= 1.0; }
    /// -1 when no cell is seeded.
    int deepest_seeded_cell() const;

    bool operator==(const ViaGeometry&) const = default;
};

struct SimConfig {
    Electrolyte electrolyte;
    ViaGeometry geometry;
    MegasonicField field;
    FlowConditions flow;
    Waveform waveform;
    double t_end = 14400.0;        // s
    double dr_max_frac = 0.005;
    double c_tol = 1.0e-10;
    double r_close_frac = 0.01;
    double fill_frac_target = 0.98;
    int snapshot_count = 200;

    bool operator==(const SimConfig&) const = default;
};

/// Throws std::invalid_argument naming the violated field.
void check(const SimConfig& cfg);

struct SimState {
    double t = 0.0;
    std::vector<double> radius;     // open radius per cell, m
    double bottom_thickness = 0.0;  // m
    double bottom_volume = 0.0;     // m^3 deposited on the floor disc
    std::vector<double> conc;       // c / c_bulk per cell
    double bottom_conc = 1.0;       // c / c_bulk at the floor
    double q_total = 0.0;           // C
    double clamped_volume = 0.0;    // m^3 of growth lost to r < 0 clamping

    static SimState initial(const ViaGeometry& geometry);
};

struct Snapshot {
    double t;
    std::vector<double> radius;
    double bottom_thickness;
    std::vector<double> conc;
};

struct PinchEvent {
    int cell;
    double t;
};

struct RunDiagnostics {
    long steps = 0;
    long solves = 0;
    double max_balance_error = 0.0;
    double max_residual = 0.0;
};

struct SimResult {
    Outcome outcome = Outcome::Underfilled;
    std::optional<double> fill_time;
    std::optional<PinchEvent> pinch;
    ViaGeometry geometry;
    SimState final_state;
    std::vector<Snapshot> snapshots;
    MetricsReport metrics;
    RunDiagnostics diagnostics;
};

/// Thrown when a solve or step cannot produce a finite state; carries the
/// state of the failing step.
class NumericalError : public std::runtime_error {
public:
    NumericalError(const std::string& what, SimState state)
        : std::runtime_error(what), state_(std::move(state)) {}
    const SimState& state() const { return state_; }

private:
    SimState state_;
};

// ---------------------------------------------------------------------------
// Pore transport

/// Finite-volume description of the open part of the via. Face arrays have one
/// more entry than cell arrays; face 0 is the mouth.
struct PoreProblem {
    std::span<const double> radius;        // per open cell, m
    std::span<const double> face_diffusivity;  // D_eff at faces 0..n, m^2/s
    std::span<const unsigned char> wall_reactive;  // per open cell
    double cell_size = 0.0;    // m
    double rate = 0.0;         // first-order wall rate constant k, m/s
    double film_thickness = 0.0;  // external diffusion layer, m
    bool bottom_reactive = false; // floor disc consumes at face n
    double tolerance = 1.0e-10;
};

struct PoreSolution {
    std::vector<double> conc;
    double bottom_conc = 1.0;
    double mouth_flux = 0.0;    // mol/s per unit c_bulk
    double total_sink = 0.0;    // mol/s per unit c_bulk
    double balance_error = 0.0; // |influx - sinks| / max(influx, sinks)
    double residual = 0.0;      // max scaled equation residual
};

/// Scratch storage reused across solves.
struct PoreWorkspace {
    std::vector<double> face, sink, lower, diag, upper, rhs, u, scratch, correction, residual;
};

/// Direct tridiagonal solve of d/dx(D A dc/dx) = p k c with film and floor
/// boundary conditions. Throws NumericalError on a singular or non-finite system.
PoreSolution solve_pore(const PoreProblem& problem);
void solve_pore(const PoreProblem& problem, PoreWorkspace& work, PoreSolution& out);

/// cosh(m (L - x)) / cosh(m L), m = sqrt(2 k / (D r)): constant-radius pore with
/// the mouth pinned to bulk and an inert floor.
double analytic_profile_oracle(double radius, double depth, double diffusivity, double rate, double x);

struct ConcentrationSolve {
    bool pinched = false;   // mouth cell closed, no path to the bath
    int open_cells = 0;     // cells 0..open_cells-1 are connected to the mouth
    std::vector<double> conc;  // length N; zero below the first closed cell
    double bottom_conc = 0.0;
    double balance_error = 0.0;
    double residual = 0.0;
};

ConcentrationSolve solve_concentration_profile(const SimState& state, const SimConfig& cfg, double rate);

/// Number of leading cells with radius above the closure threshold.
int open_cell_count(const SimState& state, const SimConfig& cfg);

// ---------------------------------------------------------------------------
// Geometry evolution

/// Moves the deposit for dt under a segment carrying kinetic-limit current
/// `segment_current` (positive: deposition scaled by state.conc; negative:
/// uniform dissolution of existing deposit; zero: idle). Only t changes when idle.
SimState advance_geometry(const SimState& state, const SimConfig& cfg, double dt, double segment_current);
void advance_geometry_in_place(SimState& state, const SimConfig& cfg, double dt, double segment_current);

/// Shallowest closed cell that seals an unfilled open cell below it.
std::optional<PinchEvent> check_pinch_off(const SimState& state, const SimConfig& cfg);

SimResult run_simulation(const SimConfig& cfg);

}  // namespace mvfill
