#pragma once

#include <array>
#include <cmath>
#include <iostream>
#include <limits>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "qpr/routing.hpp"

namespace qpr {

// Order of the four quantities everywhere: tiers, length, bumps, tsvs.
inline constexpr std::array<const char*, 4> kParamNames{"tiers", "length", "bumps", "tsvs"};

struct HardwareParams {
    double q_tiers = 1;
    double q_length = 1;
    double q_bumps = 0;
    double q_tsvs = 0;

    std::array<double, 4> values() const { return {q_tiers, q_length, q_bumps, q_tsvs}; }
};

struct ComplexityModel {
    std::array<double, 4> baseline{1, 1, 0, 0};
    std::array<double, 4> optimistic{5, 10, 4, 3};
    std::array<double, 4> weights{1, 1, 1, 1};

    void validate() const {
        double wsum = 0;
        for (std::size_t i = 0; i < 4; ++i) {
            if (optimistic[i] == baseline[i])
                fail(ErrorKind::config, std::string("optimistic value equals baseline for ") + kParamNames[i]);
            if (weights[i] < 0) fail(ErrorKind::config, "weights must be nonnegative");
            wsum += weights[i];
        }
        if (wsum <= 0) fail(ErrorKind::config, "weights must not all be zero");
    }
};

struct CodeReport {
    std::string family;
    std::size_t n = 0, k = 0;
    int d = 0;
    bool d_upper_bound = false;
    double efficiency = 0;
    HardwareParams params;
    std::array<double, 4> c{};
    double c_hw = 1;
    double runtime_s = 0;
    std::uint64_t seed = 0;
    std::size_t edges = 0;
};

struct FidelityEstimate {
    double n_tsv = 0;
    double q_tsv = 0;
    double omega_cplr = 0;
    double t_g = 0;
    double q_cplr = 0;
    double t1_cplr = 0;
    double f_2qb = 0;
};

inline double logical_efficiency(std::size_t n, std::size_t k, double d) {
    if (n == 0) fail(ErrorKind::parameter, "logical efficiency needs n >= 1");
    return static_cast<double>(k) * d * d / static_cast<double>(n);
}

// Rounded to two decimals for reporting, from the exact k*d^2/n.
inline double logical_efficiency_reported(std::size_t n, std::size_t k, long long d) {
    if (n == 0) fail(ErrorKind::parameter, "logical efficiency needs n >= 1");
    const long long num = static_cast<long long>(k) * d * d * 100;
    const long long den = static_cast<long long>(n);
    return static_cast<double>((2 * num + den) / (2 * den)) / 100.0;
}

// Length is measured against the shortest routed edge of the whole layout;
// without higher-tier edges it is 1 by definition. Bumps take the largest
// per-tier mean.
inline HardwareParams extract_params(const RoutedLayout& rl) {
    if (rl.edges.empty()) fail(ErrorKind::parameter, "empty layout");
    HardwareParams p;
    p.q_tiers = rl.num_tiers;
    double min_len = std::numeric_limits<double>::infinity();
    for (const auto& e : rl.edges) min_len = std::min(min_len, e.length);
    std::map<int, std::pair<double, std::size_t>> bumps;
    double hl = 0, ht = 0;
    std::size_t higher = 0;
    for (const auto& e : rl.edges) {
        auto& b = bumps[e.tier];
        b.first += e.bumps;
        ++b.second;
        if (e.tier >= 1) {
            hl += e.length;
            ht += e.tsvs;
            ++higher;
        }
    }
    if (higher) {
        p.q_length = (hl / static_cast<double>(higher)) / min_len;
        p.q_tsvs = ht / static_cast<double>(higher);
    }
    for (const auto& [tier, b] : bumps) p.q_bumps = std::max(p.q_bumps, b.first / static_cast<double>(b.second));
    return p;
}

inline std::array<double, 4> rescale(const HardwareParams& p, const ComplexityModel& m) {
    const auto q = p.values();
    std::array<double, 4> c{};
    for (std::size_t i = 0; i < 4; ++i) c[i] = (q[i] - m.baseline[i]) / (m.optimistic[i] - m.baseline[i]);
    return c;
}

inline double complexity(const std::array<double, 4>& c, const std::array<double, 4>& w) {
    double num = 0, den = 0;
    for (std::size_t i = 0; i < 4; ++i) {
        if (w[i] < 0) fail(ErrorKind::config, "weights must be nonnegative");
        num += w[i] * c[i];
        den += w[i];
    }
    if (den <= 0) fail(ErrorKind::config, "weights must not all be zero");
    return 1 + num / den;
}

inline double complexity(const HardwareParams& p, const ComplexityModel& m) {
    m.validate();
    return complexity(rescale(p, m), m.weights);
}

// Coupler lifetime limited by n lossy TSVs in series: Q_cplr = Q_TSV / n.
inline FidelityEstimate tsv_fidelity_estimate(double n_tsv, double q_tsv, double omega_cplr, double t_g) {
    if (!(n_tsv > 0 && q_tsv > 0 && omega_cplr > 0 && t_g >= 0))
        fail(ErrorKind::parameter, "fidelity estimate needs positive inputs");
    FidelityEstimate f{n_tsv, q_tsv, omega_cplr, t_g};
    f.q_cplr = q_tsv / n_tsv;
    f.t1_cplr = f.q_cplr / omega_cplr;
    f.f_2qb = 1 - (0.8 * t_g) / f.t1_cplr;
    if (f.f_2qb < 0) {
        std::cerr << "warning: fidelity estimate below zero, clamped\n";
        f.f_2qb = 0;
    }
    return f;
}

inline void rescore(CodeReport& r, const ComplexityModel& m) {
    m.validate();
    r.c = rescale(r.params, m);
    r.c_hw = complexity(r.c, m.weights);
}

enum class SweepParameter { tiers = 0, length = 1, bumps = 2, tsvs = 3 };

struct SweepVariant {
    std::string label;
    ComplexityModel model;
    std::vector<CodeReport> reports;
};

// Optimistic value of one parameter scaled by each multiplier; raw q_i untouched.
inline std::vector<SweepVariant> sweep_optimistic(const std::vector<CodeReport>& reports, SweepParameter param,
                                                  const std::vector<double>& multipliers,
                                                  const ComplexityModel& base = {}) {
    std::vector<SweepVariant> out;
    const auto i = static_cast<std::size_t>(param);
    for (double mult : multipliers) {
        if (mult == 0) fail(ErrorKind::config, "sweep multiplier must be nonzero");
        SweepVariant v;
        v.model = base;
        v.model.optimistic[i] = base.optimistic[i] * mult;
        v.label = std::string("p_") + kParamNames[i] + " x" + std::to_string(mult);
        v.reports = reports;
        for (auto& r : v.reports) rescore(r, v.model);
        out.push_back(std::move(v));
    }
    return out;
}

// Each parameter in isolation: weight 1 on it, 0 elsewhere.
inline std::vector<SweepVariant> sweep_isolation(const std::vector<CodeReport>& reports,
                                                 const ComplexityModel& base = {}) {
    std::vector<SweepVariant> out;
    for (std::size_t i = 0; i < 4; ++i) {
        SweepVariant v;
        v.model = base;
        v.model.weights = {0, 0, 0, 0};
        v.model.weights[i] = 1;
        v.label = std::string("only_") + kParamNames[i];
        v.reports = reports;
        for (auto& r : v.reports) rescore(r, v.model);
        out.push_back(std::move(v));
    }
    return out;
}

}  // namespace qpr
