// Independent reference computations for the tests. Everything here is written
// from the definitions with plain loops and dense matrices, deliberately not
// reusing any library code path it is used to check.
#ifndef EMBAL_TESTS_ORACLES_HPP
#define EMBAL_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "embal/common.hpp"

namespace oracle {

using Dense = std::vector<std::vector<double>>;

inline Dense random_dense(std::size_t rows, std::size_t cols, std::mt19937_64& rng, double lo = -1.0, double hi = 1.0) {
    std::uniform_real_distribution<double> dist(lo, hi);
    Dense m(rows, std::vector<double>(cols));
    for (auto& row : m)
        for (auto& x : row) x = dist(rng);
    return m;
}

inline embal::Matrix to_matrix(const Dense& d) {
    embal::Matrix m(static_cast<Eigen::Index>(d.size()), d.empty() ? 0 : static_cast<Eigen::Index>(d[0].size()));
    for (std::size_t r = 0; r < d.size(); ++r)
        for (std::size_t c = 0; c < d[r].size(); ++c) m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = d[r][c];
    return m;
}

inline Dense to_dense(const embal::Matrix& m) {
    Dense d(static_cast<std::size_t>(m.rows()), std::vector<double>(static_cast<std::size_t>(m.cols())));
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c) d[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = m(r, c);
    return d;
}

inline double cosine(const std::vector<double>& a, const std::vector<double>& b) {
    double ab = 0, aa = 0, bb = 0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        ab += a[k] * b[k];
        aa += a[k] * a[k];
        bb += b[k] * b[k];
    }
    return ab / (std::sqrt(aa) * std::sqrt(bb));
}

/// All other words of `word`, sorted by cosine desc then index asc.
inline std::vector<std::size_t> cosine_order(const Dense& u, std::size_t word) {
    std::vector<std::pair<double, std::size_t>> all;
    for (std::size_t j = 0; j < u.size(); ++j)
        if (j != word) all.emplace_back(cosine(u[word], u[j]), j);
    std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
        return a.first != b.first ? a.first > b.first : a.second < b.second;
    });
    std::vector<std::size_t> out;
    for (const auto& p : all) out.push_back(p.second);
    return out;
}

inline std::set<std::size_t> top_set(const Dense& u, std::size_t word, std::size_t n) {
    const auto order = cosine_order(u, word);
    return {order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n)};
}

/// Total |N_n(u_w) & N_n(v_w)| over all words.
inline std::size_t shared_total(const Dense& u, const Dense& v, std::size_t n) {
    std::size_t shared = 0;
    for (std::size_t w = 0; w < u.size(); ++w) {
        const auto a = top_set(u, w, n);
        const auto b = top_set(v, w, n);
        for (const auto x : a) shared += b.count(x);
    }
    return shared;
}

/// Mean shared fraction, formed from the integer total so the value is reproducible exactly.
inline double jaccard_n(const Dense& u, const Dense& v, std::size_t n) {
    return static_cast<double>(shared_total(u, v, n)) / (static_cast<double>(n) * static_cast<double>(u.size()));
}

/// Balance objective from a dense symmetric Y (0 = unstored), evaluated term by term.
inline double balance_objective(const Dense& a, const Dense& joint, const Dense& wavg, const Dense& y, double tau,
                                double x_max, double alpha) {
    const std::size_t v = joint.size();
    const std::size_t d = joint[0].size();
    Dense u(v, std::vector<double>(d));
    for (std::size_t i = 0; i < v; ++i)
        for (std::size_t k = 0; k < d; ++k) u[i][k] = a[i][k] * joint[i][k] + (1.0 - a[i][k]) * wavg[i][k];
    double first = 0.0;
    for (std::size_t i = 0; i < v; ++i)
        for (std::size_t j = 0; j < v; ++j) {
            if (y[i][j] == 0.0) continue;
            const double f = y[i][j] >= x_max ? 1.0 : std::pow(y[i][j] / x_max, alpha);
            double dot = 0.0;
            for (std::size_t k = 0; k < d; ++k) dot += u[i][k] * u[j][k];
            first += f * (dot - std::log(y[i][j])) * (dot - std::log(y[i][j]));
        }
    double reg = 0.0;
    for (std::size_t i = 0; i < v; ++i)
        for (std::size_t k = 0; k < d; ++k) reg += (u[i][k] - wavg[i][k]) * (u[i][k] - wavg[i][k]);
    return first + tau * reg;
}

/// Central finite differences of `f` with respect to every entry of `x`.
template <class F>
Dense central_difference(F&& f, Dense x, double h) {
    Dense g(x.size(), std::vector<double>(x[0].size()));
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t k = 0; k < x[i].size(); ++k) {
            const double keep = x[i][k];
            x[i][k] = keep + h;
            const double up = f(x);
            x[i][k] = keep - h;
            const double down = f(x);
            x[i][k] = keep;
            g[i][k] = (up - down) / (2.0 * h);
        }
    return g;
}

/// 3CosAdd by exhaustive search with explicit normalization.
inline std::vector<std::size_t> analogy_top(const Dense& u, std::size_t a, std::size_t b, std::size_t c, std::size_t n) {
    auto unit = [](std::vector<double> x) {
        double s = 0;
        for (const double t : x) s += t * t;
        for (double& t : x) t /= std::sqrt(s);
        return x;
    };
    const auto ua = unit(u[a]), ub = unit(u[b]), uc = unit(u[c]);
    std::vector<double> q(ua.size());
    for (std::size_t k = 0; k < q.size(); ++k) q[k] = ub[k] - ua[k] + uc[k];
    std::vector<std::pair<double, std::size_t>> all;
    for (std::size_t j = 0; j < u.size(); ++j) {
        if (j == a || j == b || j == c) continue;
        all.emplace_back(cosine(q, u[j]), j);
    }
    std::sort(all.begin(), all.end(), [](const auto& x, const auto& y) {
        return x.first != y.first ? x.first > y.first : x.second < y.second;
    });
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < std::min(n, all.size()); ++k) out.push_back(all[k].second);
    return out;
}

/// Window co-occurrence of one tokenized document by the literal definition, as exact fractions
/// keyed by (min, max) token strings: value = sum of 1/d, returned as double.
inline std::map<std::pair<std::string, std::string>, double> brute_cooccur(
    const std::vector<std::vector<std::string>>& docs, const std::set<std::string>& vocab, int window) {
    std::map<std::pair<std::string, std::string>, double> out;
    for (const auto& doc : docs)
        for (std::size_t p = 0; p < doc.size(); ++p)
            for (std::size_t q = p + 1; q < doc.size() && q - p <= static_cast<std::size_t>(window); ++q) {
                if (!vocab.count(doc[p]) || !vocab.count(doc[q])) continue;
                out[{std::min(doc[p], doc[q]), std::max(doc[p], doc[q])}] += 1.0 / static_cast<double>(q - p);
            }
    return out;
}

}  // namespace oracle

#endif  // EMBAL_TESTS_ORACLES_HPP
