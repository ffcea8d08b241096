#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qpr/css_code.hpp"
#include "qpr/distance.hpp"
#include "qpr/rng.hpp"

namespace qpr {

struct RadialSpec {
    int r = 2;
    int s = 2;
    std::uint64_t seed = 1;
    int max_retries = 1000;
    // When set, instances whose exhaustive distance is below this value are resampled.
    std::optional<int> min_distance;
};

namespace detail {

// Lifted product over F2[Z_s] of two r x r matrices of monomials x^e.
// Block (p, q) of size s is the circulant permutation with row i -> column i + e.
inline CssCode radial_instance(int r, int s, const std::vector<int>& a, const std::vector<int>& b) {
    const std::size_t S = static_cast<std::size_t>(s);
    const std::size_t R = static_cast<std::size_t>(r);
    const std::size_t half = R * R * S;
    auto at = [r](const std::vector<int>& e, int p, int q) { return e[static_cast<std::size_t>(p * r + q)]; };
    auto star = [&](const std::vector<int>& e, int p, int q) { return ((s - at(e, q, p)) % s + s) % s; };
    // Row/column block index for the pair (ring i, ring k) is i * r + k.
    auto place = [&](std::vector<BinaryMatrix::Entry>& out, std::size_t rb, std::size_t cb, int e) {
        for (std::size_t i = 0; i < S; ++i)
            out.emplace_back(rb * S + i, cb * S + (i + static_cast<std::size_t>(e)) % S);
    };
    std::vector<BinaryMatrix::Entry> ex, ez;
    for (int i = 0; i < r; ++i)
        for (int k = 0; k < r; ++k) {
            const std::size_t row = static_cast<std::size_t>(i * r + k);
            for (int j = 0; j < r; ++j) {
                // H_X = [A (x) I | I (x) B]
                place(ex, row, static_cast<std::size_t>(j * r + k), at(a, i, j));
                place(ex, row, R * R + static_cast<std::size_t>(i * r + j), at(b, k, j));
                // H_Z = [I (x) B* | A* (x) I]
                place(ez, row, static_cast<std::size_t>(i * r + j), star(b, k, j));
                place(ez, row, R * R + static_cast<std::size_t>(j * r + k), star(a, i, j));
            }
        }
    return make_css_code(BinaryMatrix(half, 2 * half, std::move(ex)), BinaryMatrix(half, 2 * half, std::move(ez)),
                         "radial");
}

}  // namespace detail

// Samples monomial exponent matrices until the instance has k = 2(r-1)^2
// (and, optionally, distance >= min_distance). Attempt t uses seed + t.
inline CssCode build_radial_code(const RadialSpec& spec) {
    if (spec.r < 2 || spec.s < 2) fail(ErrorKind::parameter, "radial code needs r >= 2 and s >= 2");
    const std::size_t target_k = static_cast<std::size_t>(2 * (spec.r - 1) * (spec.r - 1));
    const std::size_t cells = static_cast<std::size_t>(spec.r * spec.r);
    for (int attempt = 0; attempt < spec.max_retries; ++attempt) {
        Rng rng(spec.seed + static_cast<std::uint64_t>(attempt));
        std::vector<int> a(cells), b(cells);
        for (auto& e : a) e = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(spec.s)));
        for (auto& e : b) e = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(spec.s)));
        CssCode code;
        try {
            code = detail::radial_instance(spec.r, spec.s, a, b);
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::commutation) continue;
            throw;
        }
        if (code.k != target_k) continue;
        if (spec.min_distance) {
            DistanceOptions opt;
            opt.seed = spec.seed;
            opt.stop_at = *spec.min_distance - 1;
            const auto d = estimate_distance(code, opt);
            if (d.value < *spec.min_distance) continue;
            code.d_est = d;
        }
        return code;
    }
    fail(ErrorKind::parameter, "no radial instance with k = " + std::to_string(target_k) + " after " +
                                   std::to_string(spec.max_retries) + " attempts");
}

}  // namespace qpr
