#pragma once

// First-order bolometer model: a single heat capacity C coupled to the bath
// through a thermal resistance R. Impulsive deposits raise the temperature
// by E/C and relax exponentially with tau = C*R; steady power sits at a
// constant gradient R*W; the thermodynamic fluctuation floor is
// sqrt(k_B T^2 / C). Synthetic traces are bitwise reproducible per seed.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "cslbg/constants.hpp"
#include "cslbg/rng.hpp"

namespace cslbg {

struct ThermalSpec {
    double heat_capacity_J_K;
    double thermal_resistance_K_W;
    double bath_temperature_K;

    double time_constant_s() const { return heat_capacity_J_K * thermal_resistance_K_W; }
};

inline void validate(const ThermalSpec& s)
{
    if (!(s.heat_capacity_J_K > 0) || !std::isfinite(s.heat_capacity_J_K))
        throw std::domain_error("heat capacity must be finite and > 0");
    if (!(s.thermal_resistance_K_W > 0) || !std::isfinite(s.thermal_resistance_K_W))
        throw std::domain_error("thermal resistance must be finite and > 0");
    if (!(s.bath_temperature_K > 0) || !std::isfinite(s.bath_temperature_K))
        throw std::domain_error("bath temperature must be finite and > 0");
}

namespace bolometer {

//! A 0.75 kg crystal at 10 mK: C = 2 nJ/K, R = 2e8 K/W, tau = 0.4 s.
inline ThermalSpec cuore_like()
{
    return {2e-9, 2e8, 0.01};
}
inline constexpr double cuore_like_mass_kg = 0.75;

//! Projected upgrade: ten times the mass at 1 mK. The heat capacity falls
//! by ~100 (Debye T^3 against the tenfold mass) and the contact resistance
//! grows as T^-3; both are extrapolations from the 10 mK values.
inline ThermalSpec upgraded()
{
    return {2e-11, 2e11, 1e-3};
}
inline constexpr double upgraded_mass_kg = 7.5;

} // namespace bolometer

//! Peak temperature rise from an impulsive deposit: E/C.
inline double pulse_peak_K(const ThermalSpec& s, double event_energy_J)
{
    validate(s);
    if (!(event_energy_J >= 0) || !std::isfinite(event_energy_J))
        throw std::domain_error("event energy must be finite and >= 0");
    return event_energy_J / s.heat_capacity_J_K;
}

//! Steady-state gradient from continuous power: T - T0 = R*W.
inline double steady_gradient_K(const ThermalSpec& s, double power_W)
{
    validate(s);
    if (!(power_W >= 0) || !std::isfinite(power_W))
        throw std::domain_error("power must be finite and >= 0");
    return s.thermal_resistance_K_W * power_W;
}

//! Thermodynamic temperature fluctuation scale sqrt(k_B T^2 / C).
inline double fluctuation_floor_K(const ThermalSpec& s, double temperature_K,
                                  const Constants& c = paper_constants())
{
    validate(s);
    if (!(temperature_K > 0) || !std::isfinite(temperature_K))
        throw std::domain_error("temperature must be finite and > 0");
    return std::sqrt(c.k_B_J_K * temperature_K * temperature_K / s.heat_capacity_J_K);
}

struct TraceEvent {
    double time_s;
    double energy_MeV;
};

//! Event energies are either one fixed value or a discrete tabulated
//! distribution sampled per event.
struct FixedEnergy {
    double energy_MeV;
};

struct DiscreteEnergy {
    std::vector<double> energies_MeV;
    std::vector<double> weights;
};

using EventEnergyModel = std::variant<FixedEnergy, DiscreteEnergy>;

struct TraceConfig {
    double duration_s;
    double sample_interval_s;
    double event_rate_per_s = 0;
    EventEnergyModel energy_model = FixedEnergy{1.0};
    double csl_power_W = 0;
    std::uint64_t rng_seed = 0;
    bool include_fluctuation_noise = false;
    std::vector<TraceEvent> injected_events; //!< added verbatim, no draws consumed
};

inline void validate(const TraceConfig& cfg)
{
    if (!(cfg.duration_s > 0) || !std::isfinite(cfg.duration_s))
        throw std::domain_error("trace duration must be finite and > 0");
    if (!(cfg.sample_interval_s > 0) || !(cfg.sample_interval_s <= cfg.duration_s))
        throw std::domain_error("sample interval must satisfy 0 < interval <= duration");
    if (!(cfg.event_rate_per_s >= 0) || !std::isfinite(cfg.event_rate_per_s))
        throw std::domain_error("event rate must be finite and >= 0");
    if (!(cfg.csl_power_W >= 0) || !std::isfinite(cfg.csl_power_W))
        throw std::domain_error("trace csl power must be finite and >= 0");
    if (const auto* d = std::get_if<DiscreteEnergy>(&cfg.energy_model)) {
        if (d->energies_MeV.empty() || d->energies_MeV.size() != d->weights.size())
            throw std::domain_error("discrete energy model needs matching non-empty tables");
        double wsum = 0;
        for (double w : d->weights) {
            if (!(w >= 0) || !std::isfinite(w))
                throw std::domain_error("discrete energy weights must be finite and >= 0");
            wsum += w;
        }
        if (!(wsum > 0))
            throw std::domain_error("discrete energy weights must not all be zero");
    } else if (const auto* f = std::get_if<FixedEnergy>(&cfg.energy_model)) {
        if (!(f->energy_MeV > 0) || !std::isfinite(f->energy_MeV))
            throw std::domain_error("fixed event energy must be finite and > 0");
    }
    for (const auto& e : cfg.injected_events)
        if (!(e.time_s >= 0) || !(e.energy_MeV > 0))
            throw std::domain_error("injected events need time >= 0 and energy > 0");
}

struct TraceSample {
    double time_s;
    double temperature_K;
};

struct Trace {
    std::vector<TraceSample> samples;
    std::vector<TraceEvent> events;  //!< ground-truth log, sorted by time
    double steady_level_K;           //!< T0 + R * csl_power
    bool undersampled;               //!< sample interval exceeds tau/2
};

//! Generate a temperature trace
//!   T(t) = T0 + R*W + sum_i (E_i/C) exp(-(t - t_i)/tau) [t >= t_i] + noise.
//!
//! Draw order (one mt19937_64 stream, PortableRng algorithms): first the
//! Poisson event times as exponential inter-arrival gaps until the duration
//! is exceeded; then, for a discrete energy model only, one uniform per
//! event in time order; then, if noise is on, one standard-normal per sample
//! taken from consecutive Box-Muller pairs (sample 0 the first member of
//! pair 0, sample 1 the second, and so on). Injected events consume nothing.
inline Trace simulate_trace(const ThermalSpec& spec, const TraceConfig& cfg,
                            const Constants& c = paper_constants())
{
    validate(spec);
    validate(cfg);

    PortableRng rng(cfg.rng_seed);
    std::vector<TraceEvent> events = cfg.injected_events;
    std::vector<std::size_t> drawn_index;
    if (cfg.event_rate_per_s > 0) {
        double t = rng.exponential(cfg.event_rate_per_s);
        while (t <= cfg.duration_s) {
            drawn_index.push_back(events.size());
            events.push_back({t, 0.0});
            t += rng.exponential(cfg.event_rate_per_s);
        }
    }
    if (const auto* f = std::get_if<FixedEnergy>(&cfg.energy_model)) {
        for (std::size_t i : drawn_index) events[i].energy_MeV = f->energy_MeV;
    } else {
        const auto& d = std::get<DiscreteEnergy>(cfg.energy_model);
        double wsum = 0;
        for (double w : d.weights) wsum += w;
        for (std::size_t i : drawn_index) {
            const double u = rng.uniform() * wsum;
            double acc = 0;
            std::size_t k = 0;
            for (; k + 1 < d.weights.size(); ++k) {
                acc += d.weights[k];
                if (u < acc) break;
            }
            events[i].energy_MeV = d.energies_MeV[k];
        }
    }
    std::sort(events.begin(), events.end(),
              [](const TraceEvent& a, const TraceEvent& b) { return a.time_s < b.time_s; });

    const double tau = spec.time_constant_s();
    const double steady = spec.bath_temperature_K
                          + steady_gradient_K(spec, cfg.csl_power_W);
    const std::size_t n = static_cast<std::size_t>(cfg.duration_s / cfg.sample_interval_s) + 1;

    Trace out;
    out.steady_level_K = steady;
    out.undersampled = cfg.sample_interval_s > tau / 2.0;
    out.events = events;
    out.samples.resize(n);

    const double noise_sigma = cfg.include_fluctuation_noise
                                   ? fluctuation_floor_K(spec, spec.bath_temperature_K, c)
                                   : 0.0;
    PortableRng::NormalPair pair{};
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) * cfg.sample_interval_s;
        double temp = steady;
        for (const auto& e : events) {
            if (e.time_s > t) break;
            temp += (e.energy_MeV * c.MeV_to_J / spec.heat_capacity_J_K)
                    * std::exp(-(t - e.time_s) / tau);
        }
        if (noise_sigma > 0) {
            if (i % 2 == 0) pair = rng.normal_pair();
            temp += noise_sigma * (i % 2 == 0 ? pair.first : pair.second);
        }
        out.samples[i] = {t, temp};
    }
    return out;
}

struct SubtractionResult {
    std::vector<TraceSample> cleaned;
    double recovered_gradient_K;
    std::vector<double> pulse_times_s;      //!< first sample time of each found pulse
    std::vector<double> pulse_amplitudes_K; //!< amplitude referenced to that sample
};

//! Find pulses by threshold crossing above a robust (median) baseline, fit
//! each to amplitude * exp(-t/tau) from the above-threshold samples, and
//! subtract the analytic tail. The recovered steady gradient is the mean of
//! the cleaned trace minus the bath temperature. The threshold is measured
//! relative to the baseline and must sit at least 5 fluctuation floors above
//! it so noise excursions are not treated as pulses.
inline SubtractionResult subtract_events(const ThermalSpec& spec, const Trace& trace,
                                         double detection_threshold_K,
                                         const Constants& c = paper_constants())
{
    validate(spec);
    if (trace.samples.empty())
        throw std::invalid_argument("cannot subtract events from an empty trace");
    const double floor = fluctuation_floor_K(spec, spec.bath_temperature_K, c);
    if (!(detection_threshold_K >= 5.0 * floor)) {
        char msg[192];
        std::snprintf(msg, sizeof msg,
                      "detection threshold %.6e K is below 5x the fluctuation floor "
                      "(%.6e K); raise it so noise excursions are not subtracted as pulses",
                      detection_threshold_K, 5.0 * floor);
        throw std::domain_error(msg);
    }

    const double tau = spec.time_constant_s();
    std::vector<double> temps;
    temps.reserve(trace.samples.size());
    for (const auto& s : trace.samples) temps.push_back(s.temperature_K);
    std::nth_element(temps.begin(), temps.begin() + temps.size() / 2, temps.end());
    const double baseline = temps[temps.size() / 2];

    SubtractionResult out;
    out.cleaned = trace.samples;
    std::size_t i = 0;
    const std::size_t n = out.cleaned.size();
    while (i < n) {
        if (out.cleaned[i].temperature_K - baseline <= detection_threshold_K) {
            ++i;
            continue;
        }
        const double t_start = out.cleaned[i].time_s;
        // amplitude estimate: within the above-threshold run, each sample
        // satisfies T - baseline = A * exp(-(t - t_start)/tau), so rewinding
        // the decay gives A; average the rewound values over the first tau
        // to keep the late-run noise amplification out
        double amp_sum = 0;
        std::size_t amp_count = 0, j = i;
        while (j < n && out.cleaned[j].temperature_K - baseline > detection_threshold_K) {
            const double dt = out.cleaned[j].time_s - t_start;
            if (dt <= tau) {
                amp_sum += (out.cleaned[j].temperature_K - baseline) * std::exp(dt / tau);
                ++amp_count;
            }
            ++j;
        }
        const double amp = amp_sum / static_cast<double>(amp_count);
        for (std::size_t k = i; k < n; ++k)
            out.cleaned[k].temperature_K -=
                amp * std::exp(-(out.cleaned[k].time_s - t_start) / tau);
        out.pulse_times_s.push_back(t_start);
        out.pulse_amplitudes_K.push_back(amp);
        i = j;
    }

    double mean = 0;
    for (const auto& s : out.cleaned) mean += s.temperature_K;
    mean /= static_cast<double>(n);
    out.recovered_gradient_K = mean - spec.bath_temperature_K;
    return out;
}

} // namespace cslbg
