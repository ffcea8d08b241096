#pragma once

#include <algorithm>
#include <bit>
#include <limits>
#include <optional>

#include "qpr/css_code.hpp"
#include "qpr/rng.hpp"

namespace qpr {

struct DistanceOptions {
    std::size_t trials = 10000;
    std::size_t exhaustive_threshold = 12;
    std::uint64_t seed = 1;
    // Stop as soon as a logical of weight <= stop_at has been found.
    std::optional<int> stop_at;
};

namespace detail {

// Logicals of one type: vectors in ker(h) that are not in rowspace(stab).
struct LogicalSide {
    std::vector<BitVec> kernel;
    EchelonBasis stabilizers;
    int best = std::numeric_limits<int>::max();

    LogicalSide(const BinaryMatrix& h, const BinaryMatrix& stab) : kernel(kernel_basis(h)), stabilizers(h.cols()) {
        for (auto& r : stab.dense_rows()) stabilizers.insert(std::move(r));
    }

    void consider(const BitVec& v) {
        const int w = static_cast<int>(v.popcount());
        if (w > 0 && w < best && !stabilizers.contains(v)) best = w;
    }

    std::size_t enumerate() {
        const std::size_t dim = kernel.size();
        if (dim == 0) return 0;
        BitVec v(stabilizers.width());
        const std::uint64_t total = std::uint64_t{1} << dim;
        for (std::uint64_t t = 1; t < total; ++t) {
            v ^= kernel[static_cast<std::size_t>(std::countr_zero(t))];
            consider(v);
        }
        return static_cast<std::size_t>(total - 1);
    }

    // One information-set sample: random column order, then each row of the
    // reduced kernel basis is a low-weight candidate.
    void sample(Rng& rng, std::vector<std::size_t>& order) {
        shuffle(order, rng);
        std::vector<BitVec> rows = kernel;
        rref(rows, order);
        for (const auto& r : rows) consider(r);
    }
};

}  // namespace detail

inline DistanceEstimate estimate_distance(const CssCode& code, const DistanceOptions& opt = {}) {
    if (code.k == 0) fail(ErrorKind::parameter, "distance undefined for k = 0");
    if (opt.trials < 1) fail(ErrorKind::parameter, "trial budget must be >= 1");
    detail::LogicalSide zside(code.hx, code.hz);
    detail::LogicalSide xside(code.hz, code.hx);

    const bool z_small = zside.kernel.size() <= opt.exhaustive_threshold;
    const bool x_small = xside.kernel.size() <= opt.exhaustive_threshold;
    DistanceEstimate est;
    if (z_small) est.trials_used += zside.enumerate();
    if (x_small) est.trials_used += xside.enumerate();

    auto done = [&] {
        return opt.stop_at && std::min(zside.best, xside.best) <= *opt.stop_at;
    };
    if (!(z_small && x_small) && !done()) {
        Rng rng(opt.seed);
        std::vector<std::size_t> order(code.n);
        for (std::size_t i = 0; i < code.n; ++i) order[i] = i;
        // Both sides draw from one stream per trial so a longer budget replays
        // every sample of a shorter one.
        for (std::size_t t = 0; t < opt.trials; ++t) {
            if (!z_small) zside.sample(rng, order);
            if (!x_small) xside.sample(rng, order);
            ++est.trials_used;
            if (done()) break;
        }
    }
    est.value = std::min(zside.best, xside.best);
    est.kind = (z_small && x_small) ? DistanceKind::exact : DistanceKind::upper_bound;
    return est;
}

}  // namespace qpr
