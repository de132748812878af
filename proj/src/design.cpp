#include "sgcircuit/design.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "sgcircuit/spectrum.hpp"

namespace sgcircuit {

namespace {

bool is_integer_param(const std::string& name) {
    return name == "n_junctions" || name == "m_squids";
}

double get_param(const CircuitParams& p, const std::string& name) {
    if (name == "ej_a") return p.ej_a;
    if (name == "ej_b") return p.ej_b;
    if (name == "ec_a") return p.ec_a;
    if (name == "ec_b") return p.ec_b;
    if (name == "n_junctions") return static_cast<double>(p.n_junctions);
    if (name == "m_squids") return static_cast<double>(p.m_squids);
    throw std::invalid_argument("design: unknown parameter '" + name + "'");
}

CircuitParams with_param(CircuitParams p, const std::string& name, double value) {
    if (name == "ej_a") p.ej_a = value;
    else if (name == "ej_b") p.ej_b = value;
    else if (name == "ec_a") p.ec_a = value;
    else if (name == "ec_b") p.ec_b = value;
    else if (name == "n_junctions") p.n_junctions = static_cast<int>(std::llround(value));
    else if (name == "m_squids") p.m_squids = static_cast<int>(std::llround(value));
    else throw std::invalid_argument("design: unknown parameter '" + name + "'");
    return p;
}

std::vector<double> range_values(const ParamRange& r) {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(r.steps));
    for (int i = 0; i < r.steps; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(r.steps - 1);
        double v;
        if (i == 0) {
            v = r.min;  // exact endpoints: log/exp round trips must not move them
        } else if (i == r.steps - 1) {
            v = r.max;
        } else if (r.scale == SweepScale::log_scale) {
            const double sign = r.min < 0.0 ? -1.0 : 1.0;
            const double lo = std::log(std::abs(r.min));
            const double hi = std::log(std::abs(r.max));
            v = sign * std::exp(lo + t * (hi - lo));
        } else {
            v = r.min + t * (r.max - r.min);
        }
        if (is_integer_param(r.name)) v = std::round(v);
        out.push_back(v);
    }
    if (is_integer_param(r.name)) out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

auto params_key(const CircuitParams& p) {
    return std::make_tuple(p.ej_a, p.ej_b, p.ec_a, p.ec_b, p.n_junctions, p.m_squids);
}

}  // namespace

void DesignSpace::validate() const {
    if (ranges.empty()) throw std::invalid_argument("DesignSpace: ranges must be non-empty");
    for (const auto& r : ranges) {
        get_param(fixed, r.name);  // validates the name
        if (!(r.min < r.max)) throw std::invalid_argument("DesignSpace: range needs min < max");
        if (r.steps < 2) throw std::invalid_argument("DesignSpace: range needs steps >= 2");
        if (r.scale == SweepScale::log_scale && r.min * r.max <= 0.0)
            throw std::invalid_argument("DesignSpace: log range must not cross zero");
    }
    if (!(constraints.strictness > 1.0))
        throw std::invalid_argument("DesignSpace: strictness must be > 1");
    if (!(constraints.k_max > 0.0))
        throw std::invalid_argument("DesignSpace: k_max must be > 0");
}

DesignCandidate evaluate_candidate(const CircuitParams& params,
                                   const DesignConstraints& constraints) {
    DesignCandidate c;
    c.params = params;
    try {
        params.validate();
    } catch (const std::invalid_argument&) {
        c.infeasible_reason = "invalid_params";
        return c;
    }
    c.regime = validate_regime(params, constraints.strictness);
    try {
        c.sg = map_circuit_to_sg(params);
    } catch (const std::domain_error&) {
        c.infeasible_reason = "gapless";
        return c;
    }
    const double k = c.sg->stiffness_k;
    c.stable = mott_cdw_stability(k, 1).superconducting_stable;

    const PhaseLabel phase = classify_phase(*c.sg);
    std::vector<BoundaryLevel> levels;
    if (phase == PhaseLabel::topological && c.sg->soliton_mass) {
        levels = boundary_breather_energies(*c.sg->soliton_mass, c.sg->xi);
        if (!levels.empty()) {
            const auto bulk = bulk_breather_masses(*c.sg->soliton_mass, c.sg->xi);
            c.delta = bulk.front().mass - levels.front().energy;
        }
    }

    if (!c.regime.valid) c.infeasible_reason = "regime_invalid";
    else if (!c.stable) c.infeasible_reason = "mott_cdw_unstable";
    else if (!(k < constraints.k_max)) c.infeasible_reason = "k_above_kmax";
    else if (constraints.require_boundary && levels.empty())
        c.infeasible_reason = "no_boundary_breathers";
    else c.feasible = true;
    return c;
}

SweepResult sweep(const DesignSpace& space) {
    space.validate();

    std::vector<std::vector<double>> axes;
    axes.reserve(space.ranges.size());
    std::size_t total = 1;
    for (const auto& r : space.ranges) {
        axes.push_back(range_values(r));
        total *= axes.back().size();
    }

    const auto point_params = [&](std::size_t flat) {
        CircuitParams p = space.fixed;
        for (std::size_t d = 0; d < axes.size(); ++d) {
            const std::size_t idx = flat % axes[d].size();
            flat /= axes[d].size();
            p = with_param(p, space.ranges[d].name, axes[d][idx]);
        }
        return p;
    };

    std::vector<DesignCandidate> results(total);
    const unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    if (workers > 1 && total > 64) {
        // Results land in a pre-indexed vector, so the merge order is a pure
        // function of the grid regardless of completion order.
        const std::size_t chunk = (total + workers - 1) / workers;
        std::vector<std::future<void>> jobs;
        for (unsigned w = 0; w < workers; ++w) {
            const std::size_t lo = static_cast<std::size_t>(w) * chunk;
            const std::size_t hi = std::min(total, lo + chunk);
            if (lo >= hi) break;
            jobs.push_back(std::async(std::launch::async, [&, lo, hi] {
                for (std::size_t i = lo; i < hi; ++i)
                    results[i] = evaluate_candidate(point_params(i), space.constraints);
            }));
        }
        for (auto& j : jobs) j.get();
    } else {
        for (std::size_t i = 0; i < total; ++i)
            results[i] = evaluate_candidate(point_params(i), space.constraints);
    }

    SweepResult out;
    out.candidates = std::move(results);
    std::stable_sort(out.candidates.begin(), out.candidates.end(),
                     [](const DesignCandidate& a, const DesignCandidate& b) {
                         if (a.feasible != b.feasible) return a.feasible;
                         if (a.feasible) {
                             const double da = a.delta.value_or(0.0);
                             const double db = b.delta.value_or(0.0);
                             if (da != db) return da > db;
                         }
                         return params_key(a.params) < params_key(b.params);
                     });
    for (const auto& c : out.candidates) {
        if (c.feasible) ++out.feasible_count;
        else ++out.binding_constraints[c.infeasible_reason];
    }
    return out;
}

namespace {

struct BudgetedObjective {
    const DesignConstraints& constraints;
    int budget;
    int used = 0;
    DesignCandidate best;  // best feasible seen

    bool exhausted() const { return used >= budget; }

    // Returns the objective value (-inf when infeasible) or nullopt when the
    // budget is gone.
    std::optional<double> eval(const CircuitParams& p) {
        if (exhausted()) return std::nullopt;
        ++used;
        DesignCandidate c = evaluate_candidate(p, constraints);
        if (!c.feasible || !c.delta) return -std::numeric_limits<double>::infinity();
        if (!best.feasible || *c.delta > best.delta.value_or(0.0)) best = c;
        return *c.delta;
    }
};

}  // namespace

OptimizeResult optimize_delta(const DesignSpace& space, int budget) {
    const SweepResult grid = sweep(space);
    if (grid.feasible_count == 0)
        throw std::runtime_error("optimize_delta: no feasible grid point to refine");
    const DesignCandidate grid_best = grid.candidates.front();

    OptimizeResult out;
    out.best = grid_best;
    if (budget <= 0) return out;

    BudgetedObjective obj{space.constraints, budget, 0, DesignCandidate{}};
    obj.best = grid_best;
    CircuitParams current = grid_best.params;
    double current_value = grid_best.delta.value_or(0.0);

    const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
    bool progressed = true;
    while (progressed && !obj.exhausted()) {
        progressed = false;
        for (const auto& range : space.ranges) {
            if (obj.exhausted()) break;
            if (is_integer_param(range.name)) {
                // Exhaustive local scan within +-20% of the current integer.
                const long long v0 = std::llround(get_param(current, range.name));
                const long long spread = std::max<long long>(1, std::llabs(v0) / 5);
                const long long lo =
                    std::max<long long>(std::llround(range.min), v0 - spread);
                const long long hi = std::min<long long>(std::llround(range.max), v0 + spread);
                for (long long v = lo; v <= hi && !obj.exhausted(); ++v) {
                    if (v == v0) continue;
                    obj.eval(with_param(current, range.name, static_cast<double>(v)));
                }
            } else {
                // Golden-section maximization along the coordinate; log-scaled
                // axes are searched in log|v| with the sign carried through.
                const bool log_axis = range.scale == SweepScale::log_scale;
                const double sign = range.min < 0.0 ? -1.0 : 1.0;
                const auto to_x = [&](double v) { return log_axis ? std::log(std::abs(v)) : v; };
                const auto to_v = [&](double x) { return log_axis ? sign * std::exp(x) : x; };
                double a = to_x(range.min), b = to_x(range.max);
                if (a > b) std::swap(a, b);
                double x1 = b - golden * (b - a), x2 = a + golden * (b - a);
                auto f1 = obj.eval(with_param(current, range.name, to_v(x1)));
                auto f2 = obj.eval(with_param(current, range.name, to_v(x2)));
                for (int it = 0; it < 50 && f1 && f2; ++it) {
                    if (std::abs(b - a) < 1e-10 * (1.0 + std::abs(a) + std::abs(b))) break;
                    if (*f1 < *f2) {
                        a = x1;
                        x1 = x2;
                        f1 = f2;
                        x2 = a + golden * (b - a);
                        f2 = obj.eval(with_param(current, range.name, to_v(x2)));
                    } else {
                        b = x2;
                        x2 = x1;
                        f2 = f1;
                        x1 = b - golden * (b - a);
                        f1 = obj.eval(with_param(current, range.name, to_v(x1)));
                    }
                }
            }
            if (obj.best.feasible && obj.best.delta.value_or(0.0) > current_value) {
                current = obj.best.params;
                current_value = obj.best.delta.value_or(0.0);
                progressed = true;
            }
        }
    }

    out.evaluations = obj.used;
    if (obj.best.delta.value_or(0.0) > grid_best.delta.value_or(0.0)) {
        out.best = obj.best;
        out.improved = true;
    }
    return out;
}

}  // namespace sgcircuit
