// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tsmatch Authors

// Slow, obviously-correct reference implementations used by the tests.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

namespace oracle {

inline std::size_t edit_distance(const std::string& a, const std::string& b) {
    std::vector<std::vector<std::size_t>> d(a.size() + 1, std::vector<std::size_t>(b.size() + 1));
    for (std::size_t i = 0; i <= a.size(); ++i) d[i][0] = i;
    for (std::size_t j = 0; j <= b.size(); ++j) d[0][j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i)
        for (std::size_t j = 1; j <= b.size(); ++j)
            d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1, d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
    return d[a.size()][b.size()];
}

inline double lev_similarity(const std::string& a, const std::string& b) {
    if (a.empty() && b.empty()) return 1.0;
    return 1.0 - static_cast<double>(edit_distance(a, b)) / static_cast<double>(std::max(a.size(), b.size()));
}

inline double phi(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

// sup_x |F_n(x) - Phi((x - mu) / sigma)| scanning a dense grid plus every
// sample point from both sides.
inline double ks_distance(std::vector<double> xs, double mu, double sigma) {
    const double n = static_cast<double>(xs.size());
    auto ecdf = [&](double x, bool strict) {
        double c = 0;
        for (double v : xs) c += strict ? (v < x) : (v <= x);
        return c / n;
    };
    double d = 0.0;
    for (double x : xs) {
        const double f = phi((x - mu) / sigma);
        d = std::max({d, std::abs(ecdf(x, false) - f), std::abs(ecdf(x, true) - f)});
    }
    const auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
    const double a = std::min(*lo, mu - 8 * sigma), b = std::max(*hi, mu + 8 * sigma);
    const int steps = 20000;
    for (int k = 0; k <= steps; ++k) {
        const double x = a + (b - a) * k / steps;
        d = std::max(d, std::abs(ecdf(x, false) - phi((x - mu) / sigma)));
    }
    return d;
}

// Best total over all one-to-one pairings of rows to columns; masked cells
// may not be used, any row may stay unpaired.
inline double best_assignment_total(const std::vector<double>& s, const std::vector<char>& mask, std::size_t rows,
                                    std::size_t cols) {
    std::vector<std::size_t> perm(std::max(rows, cols));
    std::iota(perm.begin(), perm.end(), 0);
    double best = 0.0;
    do {
        double t = 0.0;
        for (std::size_t r = 0; r < rows; ++r) {
            const std::size_t c = perm[r];
            if (c < cols && !mask[r * cols + c]) t += s[r * cols + c];
        }
        best = std::max(best, t);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

inline std::vector<double> average_ranks(const std::vector<double>& v) {
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        double less = 0, equal = 0;
        for (double w : v) {
            less += w < v[i];
            equal += w == v[i];
        }
        r[i] = less + (equal + 1) / 2.0;
    }
    return r;
}

struct SignedRank {
    double w_plus = 0, w_minus = 0, p = 1;
    std::size_t n = 0;
};

// Two-sided p = P(min(S, T - S) <= W_obs) over all 2^n equally likely signs.
inline SignedRank signed_rank_enumeration(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> d;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] - b[i] != 0.0) d.push_back(a[i] - b[i]);
    SignedRank out;
    out.n = d.size();
    std::vector<double> mag;
    for (double x : d) mag.push_back(std::abs(x));
    const auto ranks = average_ranks(mag);
    for (std::size_t i = 0; i < d.size(); ++i) (d[i] > 0 ? out.w_plus : out.w_minus) += ranks[i];
    const double total = out.w_plus + out.w_minus;
    const double w = std::min(out.w_plus, out.w_minus);
    std::size_t hits = 0;
    const std::size_t count = std::size_t{1} << d.size();
    for (std::size_t mask = 0; mask < count; ++mask) {
        double s = 0;
        for (std::size_t i = 0; i < d.size(); ++i)
            if (mask >> i & 1) s += ranks[i];
        if (std::min(s, total - s) <= w + 1e-9) ++hits;
    }
    out.p = static_cast<double>(hits) / static_cast<double>(count);
    return out;
}

}  // namespace oracle
