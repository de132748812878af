#include "sgcircuit/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sgcircuit/numerics.hpp"

namespace sgcircuit {

namespace {

// atan(exp(s)) without overflow for large s.
double kink_angle(double s) {
    if (s > 0.0) return 0.5 * std::numbers::pi - std::atan(std::exp(-s));
    return std::atan(std::exp(s));
}

}  // namespace

double EdgeProfile::spacing() const {
    return grid.size() > 1 ? grid[1] - grid[0] : 0.0;
}

double EdgeProfile::delta_phi_left_at(double x) const {
    const double s = scale * x / u;
    if (regime == ProfileRegime::semiclassical)
        return 2.0 * scale / (std::numbers::pi * u * std::cosh(s));
    return (2.0 * scale / u) * std::exp(-2.0 * s);
}

double EdgeProfile::phi_at(double x) const {
    const double s = scale * x / u;
    const double sr = scale * (length - x) / u;
    double phi;
    if (regime == ProfileRegime::semiclassical) {
        phi = 4.0 * (kink_angle(s) + kink_angle(sr)) - 3.0 * std::numbers::pi;
    } else {
        phi = std::numbers::pi *
              ((1.0 - std::exp(-2.0 * s)) -
               (std::exp(-2.0 * sr) - std::exp(-2.0 * scale * length / u)));
    }
    return ground_state == GroundSel::left ? phi : -phi;
}

EdgeProfile edge_profile(const SgParams& sg, ProfileRegime regime, GroundSel ground_state,
                         const ProfileGridSpec& grid) {
    const PhaseLabel phase = classify_phase(sg);
    if (phase != PhaseLabel::topological)
        throw std::domain_error("edge_profile: no edge profiles in trivial phase");
    if (grid.points_per_decay_length < 2)
        throw std::invalid_argument("edge_profile: points_per_decay_length must be >= 2");

    EdgeProfile p;
    p.regime = regime;
    p.ground_state = ground_state;
    p.u = sg.u;
    p.stiffness_k = sg.stiffness_k;
    p.lambda = sg.lambda;
    p.length = sg.length;
    p.a0 = sg.a0;

    const double abs_ejb = std::abs(sg.lambda) * sg.a0;
    const double ec_b = 2.0 * std::numbers::pi * sg.stiffness_k * sg.u / sg.a0;
    if (regime == ProfileRegime::semiclassical) {
        p.scale = std::sqrt(2.0 * ec_b * abs_ejb);
        p.approximate_regime = sg.stiffness_k > 0.1;
    } else {
        p.scale = std::numbers::pi * abs_ejb;
        p.approximate_regime = std::abs(sg.stiffness_k - 1.0) > 1e-9;
    }

    const double decay = p.u / p.scale;
    p.edge_overlap = p.length < 10.0 * decay;

    std::size_t intervals = static_cast<std::size_t>(
        std::ceil(p.length / decay * static_cast<double>(grid.points_per_decay_length)));
    intervals = std::clamp<std::size_t>(intervals, 2, grid.max_points - 1);
    if (intervals % 2 == 1) ++intervals;  // Simpson needs an even interval count
    p.grid = uniform_grid(p.length, intervals + 1);

    const double sign = ground_state == GroundSel::left ? 0.5 : -0.5;
    p.delta_phi_l.resize(p.grid.size());
    p.delta_phi_r.resize(p.grid.size());
    p.phi_density.resize(p.grid.size());
    for (std::size_t i = 0; i < p.grid.size(); ++i) {
        p.delta_phi_l[i] = p.delta_phi_left_at(p.grid[i]);
        p.delta_phi_r[i] = p.delta_phi_left_at(p.length - p.grid[i]);
        p.phi_density[i] = sign * (p.delta_phi_l[i] - p.delta_phi_r[i]);
    }
    return p;
}

SigmaResult sigma_accumulation(const EdgeProfile& profile, Edge edge, double eta) {
    if (!(eta > 0.0)) throw std::invalid_argument("sigma_accumulation: eta must be > 0");
    SigmaResult result;
    result.filter_warning = eta * profile.length < 5.0;

    std::vector<double> integrand(profile.grid.size());
    for (std::size_t i = 0; i < profile.grid.size(); ++i) {
        const double x = profile.grid[i];
        const double w = edge == Edge::left ? std::exp(-eta * x)
                                            : std::exp(-eta * (profile.length - x));
        integrand[i] = w * profile.phi_density[i];
    }
    result.value = simpson(integrand, profile.spacing());
    return result;
}

CurrentProfile current_profile(const SgParams& sg, const EdgeProfile& profile) {
    const auto mismatched = [](double a, double b) {
        return std::abs(a - b) > 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
    };
    if (mismatched(sg.u, profile.u) || mismatched(sg.stiffness_k, profile.stiffness_k) ||
        mismatched(sg.lambda, profile.lambda) || mismatched(sg.length, profile.length))
        throw std::invalid_argument("current_profile: profile does not match the supplied parameters");

    const double h = profile.spacing();
    if (h <= 0.0) throw std::invalid_argument("current_profile: empty profile");
    if (profile.decay_length() / h < 8.0)
        throw std::invalid_argument(
            "current_profile: grid too coarse, need >= 8 points per decay length");

    const double sign = profile.ground_state == GroundSel::left ? 1.0 : -1.0;
    const double prefactor = sign * profile.u / (4.0 * profile.stiffness_k);

    CurrentProfile cp;
    cp.grid = profile.grid;
    cp.i_coupler.resize(profile.grid.size());
    for (std::size_t i = 0; i < profile.grid.size(); ++i)
        cp.i_coupler[i] = prefactor * (profile.delta_phi_l[i] - profile.delta_phi_r[i]);

    const auto di = gradient_uniform(cp.i_coupler, h);
    cp.i_squid.resize(profile.grid.size());
    for (std::size_t i = 0; i < profile.grid.size(); ++i) cp.i_squid[i] = profile.a0 * di[i];

    // Independent route for the SQUID current: ej_b sin Phi(x) where the
    // regime supplies Phi in closed form (semiclassical kink), otherwise the
    // analytic derivative of the coupler current.
    const double ejb = profile.lambda * profile.a0;
    double residual = 0.0, max_squid = 0.0;
    for (std::size_t i = 1; i + 1 < profile.grid.size(); ++i) {
        const double x = profile.grid[i];
        double direct;
        if (profile.regime == ProfileRegime::semiclassical) {
            direct = ejb * std::sin(profile.phi_at(x));
        } else {
            const double s = profile.scale * x / profile.u;
            const double sr = profile.scale * (profile.length - x) / profile.u;
            const double ddl = -(2.0 * profile.scale / profile.u) * (2.0 * profile.scale / profile.u) *
                               (std::exp(-2.0 * s) + std::exp(-2.0 * sr));
            direct = profile.a0 * sign * (profile.u / (4.0 * profile.stiffness_k)) * ddl;
        }
        residual = std::max(residual, std::abs(cp.i_squid[i] - direct));
        max_squid = std::max(max_squid, std::abs(cp.i_squid[i]));
    }
    cp.conservation_residual = residual;
    cp.max_abs_squid = max_squid;
    return cp;
}

}  // namespace sgcircuit
