#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "mvfill/viasim.hpp"

namespace mvfill {

namespace {

// Thomas elimination, written for the depletion u = 1 - c so that the mouth
// influx G0 * u0 is free of cancellation when the sink is weak.
void thomas(const std::vector<double>& lower, const std::vector<double>& diag,
            const std::vector<double>& upper, const std::vector<double>& rhs,
            std::vector<double>& x, std::vector<double>& scratch, std::size_t n)
{
    double beta = diag[0];
    x[0] = rhs[0] / beta;
    for (std::size_t i = 1; i < n; ++i) {
        scratch[i] = upper[i - 1] / beta;
        beta = diag[i] - lower[i] * scratch[i];
        x[i] = (rhs[i] - lower[i] * x[i - 1]) / beta;
    }
    for (std::size_t i = n - 1; i-- > 0;) {
        x[i] -= scratch[i + 1] * x[i + 1];
    }
}

double scaled_residual(const PoreWorkspace& w, const std::vector<double>& x, std::vector<double>* out,
                       std::size_t n)
{
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double lhs = w.diag[i] * x[i];
        double scale = std::abs(lhs) + std::abs(w.rhs[i]);
        if (i > 0) {
            lhs += w.lower[i] * x[i - 1];
            scale += std::abs(w.lower[i] * x[i - 1]);
        }
        if (i + 1 < n) {
            lhs += w.upper[i] * x[i + 1];
            scale += std::abs(w.upper[i] * x[i + 1]);
        }
        const double res = w.rhs[i] - lhs;
        if (out) (*out)[i] = res;
        if (scale > 0.0) worst = std::max(worst, std::abs(res) / scale);
    }
    return worst;
}

}  // namespace

void solve_pore(const PoreProblem& p, PoreWorkspace& w, PoreSolution& out)
{
    const std::size_t n = p.radius.size();
    if (n == 0 || p.face_diffusivity.size() != n + 1 || p.wall_reactive.size() != n) {
        throw std::invalid_argument("solve_pore: inconsistent array sizes");
    }
    for (auto* v : {&w.face, &w.sink, &w.lower, &w.diag, &w.upper, &w.rhs, &w.u, &w.scratch}) {
        if (v->size() < n + 1) v->resize(n + 1);
    }
    const double dx = p.cell_size;
    const double pi = std::numbers::pi;

    // Face conductances, m^3/s per unit normalized concentration.
    auto& face = w.face;
    auto& sink = w.sink;
    double area_prev = pi * p.radius[0] * p.radius[0];
    face[0] = p.face_diffusivity[0] * area_prev / (p.film_thickness + 0.5 * dx);
    for (std::size_t i = 1; i < n; ++i) {
        const double area = pi * p.radius[i] * p.radius[i];
        face[i] = p.face_diffusivity[i] * 2.0 * area_prev * area / ((area_prev + area) * dx);
        area_prev = area;
    }
    double half_bottom = 0.0;
    double floor_reaction = 0.0;
    face[n] = 0.0;
    if (p.bottom_reactive && p.rate > 0.0) {
        half_bottom = p.face_diffusivity[n] * area_prev / (0.5 * dx);
        floor_reaction = p.rate * area_prev;
        face[n] = half_bottom * floor_reaction / (half_bottom + floor_reaction);
    }
    const double wall_factor = p.rate * 2.0 * pi * dx;
    for (std::size_t i = 0; i < n; ++i) {
        sink[i] = p.wall_reactive[i] ? wall_factor * p.radius[i] : 0.0;
        w.diag[i] = face[i] + face[i + 1] + sink[i];
        w.rhs[i] = sink[i];
        w.lower[i] = i > 0 ? -face[i] : 0.0;
        w.upper[i] = i + 1 < n ? -face[i + 1] : 0.0;
    }
    w.rhs[n - 1] += face[n];

    thomas(w.lower, w.diag, w.upper, w.rhs, w.u, w.scratch, n);
    double residual = scaled_residual(w, w.u, nullptr, n);
    if (!(residual <= p.tolerance)) {
        // One step of iterative refinement.
        w.residual.resize(n + 1);
        w.correction.resize(n + 1);
        scaled_residual(w, w.u, &w.residual, n);
        thomas(w.lower, w.diag, w.upper, w.residual, w.correction, w.scratch, n);
        for (std::size_t i = 0; i < n; ++i) w.u[i] += w.correction[i];
        residual = scaled_residual(w, w.u, nullptr, n);
    }

    out.conc.resize(n);
    bool finite = true;
    for (std::size_t i = 0; i < n; ++i) {
        finite = finite && std::isfinite(w.u[i]);
        out.conc[i] = std::clamp(1.0 - w.u[i], 0.0, 1.0);
    }
    if (!finite || !(residual <= p.tolerance)) {
        std::ostringstream msg;
        msg << "pore solve failed: residual " << residual << " over " << n << " cells";
        for (std::size_t i = 0; i < n; ++i) {
            if (!std::isfinite(w.u[i]) || !(w.diag[i] > 0.0)) {
                msg << "; first bad cell " << i << " radius " << p.radius[i] << " diag " << w.diag[i];
                break;
            }
        }
        throw NumericalError(msg.str(), SimState{});
    }

    const double c_last = out.conc[n - 1];
    out.bottom_conc = half_bottom > 0.0 ? half_bottom * c_last / (half_bottom + floor_reaction) : c_last;
    out.mouth_flux = face[0] * w.u[0];
    double total = face[n] * c_last;
    for (std::size_t i = 0; i < n; ++i) total += sink[i] * out.conc[i];
    out.total_sink = total;
    const double scale = std::max(out.mouth_flux, out.total_sink);
    out.balance_error = scale > 0.0 ? std::abs(out.mouth_flux - out.total_sink) / scale : 0.0;
    out.residual = residual;
}

PoreSolution solve_pore(const PoreProblem& problem)
{
    PoreWorkspace work;
    PoreSolution out;
    solve_pore(problem, work, out);
    return out;
}

double analytic_profile_oracle(double radius, double depth, double diffusivity, double rate, double x)
{
    if (rate <= 0.0) {
        return 1.0;
    }
    const double m = std::sqrt(2.0 * rate / (diffusivity * radius));
    const double ml = m * depth;
    if (ml > 700.0) {
        return (std::exp(-m * x) + std::exp(-m * (2.0 * depth - x))) / (1.0 + std::exp(-2.0 * ml));
    }
    return std::cosh(m * (depth - x)) / std::cosh(ml);
}

}  // namespace mvfill
