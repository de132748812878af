#include "sgcircuit/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <tuple>

#include "sgcircuit/special_functions.hpp"

namespace sgcircuit {

namespace {

constexpr double kTieRelTol = 1e-12;

struct LevelCount {
    int count = 0;
    bool tie = false;  // reciprocal was an exact integer; top index is a threshold state
};

LevelCount tie_floor(double x) {
    const double r = std::round(x);
    if (r >= 1.0 && std::abs(x - r) <= kTieRelTol * std::max(1.0, std::abs(x)))
        return {static_cast<int>(r), true};
    if (x < 1.0) return {0, false};
    return {static_cast<int>(std::floor(x)), false};
}

// Cap inclusion is tolerant on the high side so states sitting exactly at the
// cap (e.g. the (P,P) tower state at 2m when K = 2/5) are kept.
bool within_cap(double energy, double cap) { return energy <= cap * (1.0 + 1e-12); }

}  // namespace

double soliton_mass(double abs_ej_b, double ec_b, double stiffness_k) {
    if (!(abs_ej_b > 0.0)) throw std::invalid_argument("soliton_mass: |ej_b| must be > 0");
    if (!(ec_b > 0.0)) throw std::invalid_argument("soliton_mass: ec_b must be > 0");
    if (!(stiffness_k > 0.0)) throw std::domain_error("soliton_mass: K must be > 0");
    if (stiffness_k > 1.95)
        throw std::domain_error("soliton_mass: K too close to 2 (Gamma(1 - K/2) pole)");

    const double k = stiffness_k;
    const double xi = k / (2.0 - k);
    const double inv_exp = 1.0 / (2.0 - k);
    const double log_pi = std::log(std::numbers::pi);

    double log_m = std::log(ec_b);
    log_m += inv_exp * std::log(abs_ej_b / ec_b);
    log_m -= (1.0 - k) * inv_exp * std::log(2.0 * std::numbers::pi * k);
    log_m += std::numbers::ln2 + log_gamma_fn(xi / 2.0) - 0.5 * log_pi - log_gamma_fn((1.0 + xi) / 2.0);
    log_m += inv_exp * (log_pi + log_gamma_fn(1.0 - k / 2.0) - std::numbers::ln2 - log_gamma_fn(k / 2.0));

    const double m = std::exp(log_m);
    if (!std::isfinite(m) || !(m > 0.0))
        throw std::domain_error("soliton_mass: result not representable");
    return m;
}

std::vector<BulkBreather> bulk_breather_masses(double m, double xi) {
    if (!(m > 0.0)) throw std::invalid_argument("bulk_breather_masses: m must be > 0");
    if (!(xi > 0.0)) throw std::invalid_argument("bulk_breather_masses: xi must be > 0");
    std::vector<BulkBreather> out;
    if (xi >= 1.0) return out;  // repulsive regime: no breathers
    const auto [count, tie] = tie_floor(1.0 / xi);
    out.reserve(static_cast<std::size_t>(count));
    for (int p = 1; p <= count; ++p) {
        const bool top_tie = tie && p == count;
        const double mass = 2.0 * m * std::sin(0.5 * std::numbers::pi * static_cast<double>(p) * xi);
        out.push_back({p, mass, top_tie});
    }
    return out;
}

std::vector<BoundaryLevel> boundary_breather_energies(double m, double xi) {
    if (!(m > 0.0)) throw std::invalid_argument("boundary_breather_energies: m must be > 0");
    if (!(xi > 0.0)) throw std::invalid_argument("boundary_breather_energies: xi must be > 0");
    std::vector<BoundaryLevel> out;
    if (xi >= 0.5) return out;  // bound states exist only for K < 2/3
    const auto [count, tie] = tie_floor(1.0 / (2.0 * xi));
    out.reserve(static_cast<std::size_t>(count));
    for (int p = 1; p <= count; ++p) {
        const bool top_tie = tie && p == count;
        const double energy = m * std::sin(std::numbers::pi * static_cast<double>(p) * xi);
        out.push_back({p, energy, top_tie});
    }
    return out;
}

SpectrumCatalog enumerate_spectrum(const SgParams& sg, double energy_cap) {
    if (!(energy_cap > 0.0)) throw std::invalid_argument("enumerate_spectrum: energy_cap must be > 0");
    const PhaseLabel phase = classify_phase(sg);
    if (phase == PhaseLabel::gapless)
        throw std::domain_error("enumerate_spectrum: gapless phase has no sine-Gordon spectrum");
    if (phase == PhaseLabel::free_boson)
        throw std::domain_error("enumerate_spectrum: free boson, no cosine");

    SpectrumCatalog cat;
    cat.phase = phase;
    cat.energy_cap = energy_cap;

    // Mass from the stored value when available, otherwise reconstructed from
    // the field-theory parameters alone (|ej_b| = |lambda| a0, ec_b = 2 pi K u / a0).
    const double m = sg.soliton_mass
                         ? *sg.soliton_mass
                         : soliton_mass(std::abs(sg.lambda) * sg.a0,
                                        2.0 * std::numbers::pi * sg.stiffness_k * sg.u / sg.a0,
                                        sg.stiffness_k);
    cat.soliton_mass = m;

    const double xi = sg.xi;

    const auto bulk_all = bulk_breather_masses(m, xi);
    for (const auto& b : bulk_all)
        if (within_cap(b.mass, energy_cap)) cat.bulk_breathers.push_back(b);

    if (phase == PhaseLabel::topological) {
        cat.ground_states = {"0_L", "0_R"};
        cat.solitonic_states = within_cap(m, energy_cap);

        const auto levels_all = boundary_breather_energies(m, xi);
        for (const auto& lv : levels_all)
            if (within_cap(lv.energy, energy_cap)) cat.boundary_levels.push_back(lv);

        // Towers |0_{L,R}>_{p,q}, p,q = 0..P, (p,q) != (0,0); E_B0 = 0.
        const int top = static_cast<int>(levels_all.size());
        const auto level_energy = [&](int p) {
            return p == 0 ? 0.0 : levels_all[static_cast<std::size_t>(p - 1)].energy;
        };
        for (const Tower tower : {Tower::left, Tower::right}) {
            for (int p = 0; p <= top; ++p) {
                for (int q = 0; q <= top; ++q) {
                    if (p == 0 && q == 0) continue;
                    const double e = level_energy(p) + level_energy(q);
                    if (within_cap(e, energy_cap)) cat.tower_states.push_back({tower, p, q, e});
                }
            }
        }
        std::sort(cat.tower_states.begin(), cat.tower_states.end(),
                  [](const TowerState& a, const TowerState& b) {
                      return std::tie(a.energy, a.tower, a.p, a.q) <
                             std::tie(b.energy, b.tower, b.p, b.q);
                  });

        // Gap to the continuum: m for K > 1/2, lightest bulk breather for
        // K < 1/2, i.e. min(m, m_B1).
        cat.continuum_threshold = bulk_all.empty() ? m : std::min(m, bulk_all.front().mass);

        if (!levels_all.empty() && !bulk_all.empty())
            cat.midgap_separation = bulk_all.front().mass - levels_all.front().energy;
    } else {
        // Trivial phase: unique ground state, no single-soliton states; the
        // continuum starts at the lightest breather (K < 1) or at the
        // soliton-antisoliton pair threshold 2m (K >= 1).
        cat.ground_states = {"0"};
        cat.solitonic_states = false;
        cat.continuum_threshold = bulk_all.empty() ? 2.0 * m : bulk_all.front().mass;
    }

    return cat;
}

std::optional<double> midgap_separation(const SpectrumCatalog& catalog) {
    return catalog.midgap_separation;
}

StabilityReport mott_cdw_stability(double stiffness_k, int n) {
    if (!(stiffness_k > 0.0)) throw std::invalid_argument("mott_cdw_stability: K must be > 0");
    if (n < 1) throw std::invalid_argument("mott_cdw_stability: n must be >= 1");
    StabilityReport report;
    report.n = n;
    report.dim_super = stiffness_k;
    report.dim_insulator = static_cast<double>(n) * static_cast<double>(n) / (4.0 * stiffness_k);
    report.superconducting_stable = report.dim_super < report.dim_insulator;
    return report;
}

double breather_dispersion(double mass, double rapidity) { return mass * std::cosh(rapidity); }

}  // namespace sgcircuit
