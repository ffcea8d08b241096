#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qpr/css_code.hpp"

namespace qpr {

// Monomial x^i y^j.
struct Monomial {
    int i = 0;
    int j = 0;
    auto operator<=>(const Monomial&) const = default;
};

struct BBSpec {
    int l = 0;
    int m = 0;
    std::vector<Monomial> a;
    std::vector<Monomial> b;
    int shift = 0;  // x^l = y^shift
    std::optional<int> declared_distance;
};

// Z^2 modulo the lattice spanned by (l, shift) and (0, m); shift = 0 gives
// the plain torus Z_l x Z_m. Elements are indexed i * m + j.
class TwistedTorus {
public:
    TwistedTorus(int l, int m, int shift) : l_(l), m_(m), s_(((shift % m) + m) % m) {}

    int size() const { return l_ * m_; }
    int index(int i, int j) const {
        const auto [a, b] = reduce(i, j);
        return a * m_ + b;
    }
    std::pair<int, int> element(int idx) const { return {idx / m_, idx % m_}; }

    int add(int g, int h) const {
        const auto [gi, gj] = element(g);
        const auto [hi, hj] = element(h);
        return index(gi + hi, gj + hj);
    }
    int add(int g, Monomial mono) const {
        const auto [gi, gj] = element(g);
        return index(gi + mono.i, gj + mono.j);
    }
    int neg(int g) const {
        const auto [gi, gj] = element(g);
        return index(-gi, -gj);
    }
    int sub(int g, int h) const { return add(g, neg(h)); }
    int of(Monomial mono) const { return index(mono.i, mono.j); }

    int order(int g) const {
        int acc = g, t = 1;
        while (acc != 0) {
            acc = add(acc, g);
            ++t;
        }
        return t;
    }

private:
    std::pair<int, int> reduce(int i, int j) const {
        // Bring i into [0, l) using (l, s) steps, then j into [0, m).
        const int q = (i >= 0) ? i / l_ : -((-i + l_ - 1) / l_);
        i -= q * l_;
        j -= q * s_;
        j %= m_;
        if (j < 0) j += m_;
        return {i, j};
    }

    int l_, m_, s_;
};

struct ToricLayoutInfo {
    int width = 0;   // grid columns
    int height = 0;  // grid rows
    double aspect_ratio() const {
        return static_cast<double>(std::max(width, height)) / static_cast<double>(std::min(width, height));
    }
};

namespace detail {

struct ToricChoice {
    int mu = 0, lambda = 0;    // generators of the 2D torus
    Monomial a_plus, b_plus;   // the monomials that become nearest neighbours to the right / above
    int ord_mu = 0, ord_lambda = 0;
};

// Finds a_i - a_j and b_g - b_h that generate the group with
// ord(mu) * ord(lambda) = lm; picks the most square candidate, first found on ties.
inline std::optional<ToricChoice> find_toric_choice(const BBSpec& s, const TwistedTorus& grp) {
    std::optional<ToricChoice> best;
    const int N = grp.size();
    for (std::size_t p = 0; p < s.a.size(); ++p)
        for (std::size_t q = 0; q < s.a.size(); ++q) {
            if (p == q) continue;
            const int mu = grp.sub(grp.of(s.a[p]), grp.of(s.a[q]));
            const int om = grp.order(mu);
            for (std::size_t g = 0; g < s.b.size(); ++g)
                for (std::size_t h = 0; h < s.b.size(); ++h) {
                    if (g == h) continue;
                    const int la = grp.sub(grp.of(s.b[g]), grp.of(s.b[h]));
                    const int ol = grp.order(la);
                    if (om * ol != N) continue;
                    std::vector<char> hit(static_cast<std::size_t>(N), 0);
                    bool ok = true;
                    int row = 0;
                    for (int beta = 0; beta < ol && ok; ++beta) {
                        int cur = row;
                        for (int alpha = 0; alpha < om; ++alpha) {
                            if (hit[static_cast<std::size_t>(cur)]) {
                                ok = false;
                                break;
                            }
                            hit[static_cast<std::size_t>(cur)] = 1;
                            cur = grp.add(cur, mu);
                        }
                        row = grp.add(row, la);
                    }
                    if (!ok) continue;
                    const double ar = static_cast<double>(std::max(om, ol)) / std::min(om, ol);
                    if (!best || ar < static_cast<double>(std::max(best->ord_mu, best->ord_lambda)) /
                                          std::min(best->ord_mu, best->ord_lambda))
                        best = ToricChoice{mu, la, s.a[p], s.b[g], om, ol};
                }
        }
    return best;
}

}  // namespace detail

// H_X = [A | B], H_Z = [B^T | A^T] with A = sum of shifts x^i y^j. Positions
// (when a toric layout exists) put every check's four shortest couplers on
// unit cardinal steps.
inline CssCode build_bb_code(const BBSpec& s, ToricLayoutInfo* layout_info = nullptr) {
    if (s.l < 1 || s.m < 1) fail(ErrorKind::parameter, "bb code needs l, m >= 1");
    if (s.a.empty() || s.b.empty()) fail(ErrorKind::parameter, "bb code needs nonempty monomial lists");
    for (const auto* list : {&s.a, &s.b}) {
        std::set<Monomial> seen;
        for (const auto& mono : *list) {
            if (mono.i < 0 || mono.i >= s.l || mono.j < 0 || mono.j >= s.m)
                fail(ErrorKind::parameter, "monomial exponent outside (l, m)");
            if (!seen.insert(mono).second) fail(ErrorKind::parameter, "duplicate monomial in bb spec");
        }
    }
    const TwistedTorus grp(s.l, s.m, s.shift);
    const int N = grp.size();
    const auto half = static_cast<std::size_t>(N);
    std::vector<BinaryMatrix::Entry> ex, ez;
    for (int g = 0; g < N; ++g) {
        const auto row = static_cast<std::size_t>(g);
        for (const auto& mono : s.a) ex.emplace_back(row, static_cast<std::size_t>(grp.add(g, mono)));
        for (const auto& mono : s.b) ex.emplace_back(row, half + static_cast<std::size_t>(grp.add(g, mono)));
        for (const auto& mono : s.b) ez.emplace_back(row, static_cast<std::size_t>(grp.sub(g, grp.of(mono))));
        for (const auto& mono : s.a) ez.emplace_back(row, half + static_cast<std::size_t>(grp.sub(g, grp.of(mono))));
    }
    // Distinct monomials can still collide under a nonzero twist.
    auto dedupe = [](std::vector<BinaryMatrix::Entry>& e) {
        std::sort(e.begin(), e.end());
        if (std::adjacent_find(e.begin(), e.end()) != e.end())
            fail(ErrorKind::parameter, "monomials coincide in the group");
    };
    dedupe(ex);
    dedupe(ez);
    CssCode code = make_css_code(BinaryMatrix(half, 2 * half, std::move(ex)),
                                 BinaryMatrix(half, 2 * half, std::move(ez)), "bb", s.declared_distance);

    const auto choice = detail::find_toric_choice(s, grp);
    if (!choice) return code;

    std::vector<GridPoint> xcoord(half);
    {
        int row = 0;
        for (int beta = 0; beta < choice->ord_lambda; ++beta) {
            int cur = row;
            for (int alpha = 0; alpha < choice->ord_mu; ++alpha) {
                xcoord[static_cast<std::size_t>(cur)] = {2 * alpha, 2 * beta};
                cur = grp.add(cur, choice->mu);
            }
            row = grp.add(row, choice->lambda);
        }
    }
    const int ai = grp.of(choice->a_plus);
    const int bg = grp.of(choice->b_plus);
    std::vector<GridPoint> pos(code.num_nodes());
    for (int h = 0; h < N; ++h) {
        const auto u = static_cast<std::size_t>(h);
        const GridPoint l = xcoord[static_cast<std::size_t>(grp.sub(h, ai))];
        const GridPoint r = xcoord[static_cast<std::size_t>(grp.sub(h, bg))];
        const GridPoint z = xcoord[static_cast<std::size_t>(grp.sub(grp.sub(h, ai), bg))];
        pos[u] = {l.x + 1, l.y};
        pos[half + u] = {r.x, r.y + 1};
        pos[code.x_node(u)] = xcoord[u];
        pos[code.z_node(u)] = {z.x + 1, z.y + 1};
    }
    ToricLayoutInfo info{2 * choice->ord_mu, 2 * choice->ord_lambda};
    if (info.width > info.height) {
        for (auto& p : pos) std::swap(p.x, p.y);
        std::swap(info.width, info.height);
    }
    code.positions = std::move(pos);
    if (layout_info) *layout_info = info;
    return code;
}

}  // namespace qpr
