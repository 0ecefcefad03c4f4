#include "divcurve/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "divcurve/spread.hpp"

namespace divcurve {

namespace {

std::vector<double> mean_curve_values(const std::vector<const DiversityCurve*>& group) {
    std::vector<double> mean(group.front()->values.size(), 0.0);
    for (const auto* c : group)
        for (std::size_t i = 0; i < mean.size(); ++i) mean[i] += c->values[i];
    for (double& v : mean) v /= static_cast<double>(group.size());
    return mean;
}

double l2(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
}

std::vector<double> average_ranks(const std::vector<double>& x) {
    const std::size_t n = x.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && x[order[j + 1]] == x[order[i]]) ++j;
        double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
        i = j + 1;
    }
    return ranks;
}

}  // namespace

double curve_distance(const DiversityCurve& a, const DiversityCurve& b, double p) {
    if (a.scales != b.scales) throw ValidationError("curve_distance: scale mismatch");
    if (!(p >= 1.0)) throw RangeError("curve_distance: norm order must be >= 1");
    if (std::isinf(p)) {
        double m = 0.0;
        for (std::size_t i = 0; i < a.values.size(); ++i)
            m = std::max(m, std::abs(a.values[i] - b.values[i]));
        return m;
    }
    double s = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i)
        s += std::pow(std::abs(a.values[i] - b.values[i]), p);
    return std::pow(s, 1.0 / p);
}

DistMatrix curve_distance_matrix(const CurveSet& set, double p) {
    const int n = static_cast<int>(set.curves.size());
    DistMatrix d(n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            d.set_symmetric(i, j, curve_distance(set.curves[i], set.curves[j], p));
    return d;
}

TestResult permutation_test(const std::vector<DiversityCurve>& group_a,
                            const std::vector<DiversityCurve>& group_b, int n_perm,
                            std::uint64_t seed) {
    if (group_a.empty() || group_b.empty())
        throw ValidationError("permutation_test: empty group");
    if (n_perm < 1) throw RangeError("permutation_test: need at least one permutation");
    std::vector<const DiversityCurve*> pool;
    pool.reserve(group_a.size() + group_b.size());
    for (const auto& c : group_a) pool.push_back(&c);
    for (const auto& c : group_b) pool.push_back(&c);
    const auto& scales = pool.front()->scales;
    for (const auto* c : pool)
        if (c->scales != scales) throw ValidationError("permutation_test: scale mismatch");

    const std::size_t size_a = group_a.size();
    auto stat_for = [&](const std::vector<const DiversityCurve*>& p) {
        std::vector<const DiversityCurve*> a(p.begin(), p.begin() + size_a);
        std::vector<const DiversityCurve*> b(p.begin() + size_a, p.end());
        return l2(mean_curve_values(a), mean_curve_values(b));
    };
    const double observed = stat_for(pool);

    int exceed = 0;
    for (int i = 0; i < n_perm; ++i) {
        Rng rng(derive_stream(seed, kPhasePermTest, static_cast<std::uint64_t>(i)));
        auto perm = pool;
        rng.shuffle(perm);
        if (stat_for(perm) >= observed) ++exceed;
    }
    TestResult res;
    res.statistic = observed;
    res.p_value = (1.0 + exceed) / (1.0 + n_perm);
    res.permutations = n_perm;
    return res;
}

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw ValidationError("spearman: length mismatch");
    if (x.size() < 2) throw ValidationError("spearman: need at least two points");
    auto rx = average_ranks(x), ry = average_ranks(y);

    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        mx += rx[i];
        my += ry[i];
    }
    mx /= n;
    my /= n;
    double cov = 0.0, vx = 0.0, vy = 0.0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        cov += (rx[i] - mx) * (ry[i] - my);
        vx += (rx[i] - mx) * (rx[i] - mx);
        vy += (ry[i] - my) * (ry[i] - my);
    }
    if (vx == 0.0 || vy == 0.0)
        throw ValidationError("spearman: correlation undefined for constant input");
    return cov / std::sqrt(vx * vy);
}

KnnCvResult knn_cv_accuracy(const DistMatrix& dist, const std::vector<int>& labels, int k,
                            int folds, const std::optional<std::vector<int>>& grouped_by,
                            Rng& rng) {
    const int n = dist.size();
    if (static_cast<int>(labels.size()) != n)
        throw ValidationError("knn_cv_accuracy: label count != matrix size");
    if (grouped_by && static_cast<int>(grouped_by->size()) != n)
        throw ValidationError("knn_cv_accuracy: group count != matrix size");
    if (k < 1 || folds < 2) throw RangeError("knn_cv_accuracy: need k >= 1, folds >= 2");

    std::vector<int> fold_of(n, -1);
    if (grouped_by) {
        std::vector<int> distinct;
        std::map<int, int> seen;
        for (int gid : *grouped_by)
            if (seen.emplace(gid, 0).second) distinct.push_back(gid);
        if (static_cast<int>(distinct.size()) < folds)
            throw FoldError("knn_cv_accuracy: fewer groups than folds");
        rng.shuffle(distinct);
        std::map<int, int> group_fold;
        for (std::size_t j = 0; j < distinct.size(); ++j)
            group_fold[distinct[j]] = static_cast<int>(j) % folds;
        for (int i = 0; i < n; ++i) fold_of[i] = group_fold[(*grouped_by)[i]];
    } else {
        std::map<int, std::vector<int>> strata;
        for (int i = 0; i < n; ++i) strata[labels[i]].push_back(i);
        int offset = 0;
        for (auto& [label, members] : strata) {
            if (static_cast<int>(members.size()) < folds)
                throw FoldError("knn_cv_accuracy: class " + std::to_string(label) +
                                " has fewer members than folds");
            rng.shuffle(members);
            for (std::size_t i = 0; i < members.size(); ++i)
                fold_of[members[i]] = (offset + static_cast<int>(i)) % folds;
            offset = (offset + static_cast<int>(members.size())) % folds;
        }
    }

    std::vector<double> accuracy;
    for (int f = 0; f < folds; ++f) {
        std::vector<int> test, train;
        for (int i = 0; i < n; ++i) (fold_of[i] == f ? test : train).push_back(i);
        if (test.empty()) continue;
        int correct = 0;
        for (int i : test) {
            auto order = train;
            std::sort(order.begin(), order.end(), [&](int a, int b) {
                if (dist(i, a) != dist(i, b)) return dist(i, a) < dist(i, b);
                return a < b;
            });
            const int take = std::min<int>(k, static_cast<int>(order.size()));
            std::map<int, std::pair<int, double>> votes;  // label -> (count, total distance)
            for (int j = 0; j < take; ++j) {
                auto& v = votes[labels[order[j]]];
                v.first += 1;
                v.second += dist(i, order[j]);
            }
            int best_label = -1;
            std::pair<int, double> best{-1, 0.0};
            for (const auto& [label, v] : votes) {
                bool wins = v.first > best.first ||
                            (v.first == best.first && v.second < best.second);
                if (wins) {  // map order makes the final tie-break smallest label
                    best = v;
                    best_label = label;
                }
            }
            if (best_label == labels[i]) ++correct;
        }
        accuracy.push_back(static_cast<double>(correct) / static_cast<double>(test.size()));
    }

    KnnCvResult res;
    res.fold_of = std::move(fold_of);
    double mean = 0.0;
    for (double a : accuracy) mean += a;
    mean /= static_cast<double>(accuracy.size());
    double var = 0.0;
    for (double a : accuracy) var += (a - mean) * (a - mean);
    res.mean_accuracy = mean;
    res.std_accuracy = std::sqrt(var / static_cast<double>(accuracy.size()));
    return res;
}

double silhouette_score(const DistMatrix& dist, const std::vector<int>& labels) {
    const int n = dist.size();
    if (static_cast<int>(labels.size()) != n)
        throw ValidationError("silhouette_score: label count != matrix size");
    std::map<int, int> class_size;
    for (int l : labels) ++class_size[l];
    if (class_size.size() < 2)
        throw ValidationError("silhouette_score: needs at least two classes");

    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        if (class_size[labels[i]] == 1) continue;  // singleton scores 0
        std::map<int, double> sum;
        for (int j = 0; j < n; ++j)
            if (j != i) sum[labels[j]] += dist(i, j);
        const double a = sum[labels[i]] / static_cast<double>(class_size[labels[i]] - 1);
        double b = std::numeric_limits<double>::infinity();
        for (const auto& [label, s] : sum)
            if (label != labels[i]) b = std::min(b, s / static_cast<double>(class_size[label]));
        const double denom = std::max(a, b);
        total += denom > 0.0 ? (b - a) / denom : 0.0;
    }
    return total / static_cast<double>(n);
}

std::pair<double, double> silhouette_resampled(const DistMatrix& dist,
                                               const std::vector<int>& labels, int resamples,
                                               double fraction, std::uint64_t seed) {
    if (resamples < 1) throw RangeError("silhouette_resampled: need at least one resample");
    if (!(fraction > 0.0 && fraction <= 1.0))
        throw RangeError("silhouette_resampled: fraction must lie in (0, 1]");
    const int n = dist.size();
    const int take = std::max(2, static_cast<int>(fraction * n));

    std::vector<double> scores;
    scores.reserve(static_cast<std::size_t>(resamples));
    for (int r = 0; r < resamples; ++r) {
        Rng rng(derive_stream(seed, kPhaseResample, static_cast<std::uint64_t>(r)));
        std::vector<int> idx(static_cast<std::size_t>(n));
        std::iota(idx.begin(), idx.end(), 0);
        // Redraw until the subset spans two classes (up to a retry budget).
        int attempts = 0;
        for (;; ++attempts) {
            rng.shuffle(idx);
            std::set<int> seen;
            for (int i = 0; i < take; ++i) seen.insert(labels[idx[static_cast<std::size_t>(i)]]);
            if (seen.size() >= 2) break;
            if (attempts >= 100)
                throw ValidationError("silhouette_resampled: subsets keep missing a class");
        }
        DistMatrix sub(take);
        std::vector<int> sub_labels(static_cast<std::size_t>(take));
        for (int i = 0; i < take; ++i) {
            sub_labels[static_cast<std::size_t>(i)] = labels[idx[static_cast<std::size_t>(i)]];
            for (int j = 0; j < take; ++j)
                sub(i, j) = dist(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
        }
        scores.push_back(silhouette_score(sub, sub_labels));
    }
    double mean = std::accumulate(scores.begin(), scores.end(), 0.0) /
                  static_cast<double>(scores.size());
    double var = 0.0;
    for (double s : scores) var += (s - mean) * (s - mean);
    return {mean, std::sqrt(var / static_cast<double>(scores.size()))};
}

bool distinguish_pair(const Graph& g, const Graph& h, DistinguishMode mode, Metric metric,
                      double tol, double t) {
    if (mode == DistinguishMode::kOneEdgeCurve && g.n != h.n)
        throw ValidationError("distinguish_pair: one-edge mode needs equal cardinalities");
    const double sg = spread(metric_matrix(g, metric, t));
    const double sh = spread(metric_matrix(h, metric, t));
    if (std::abs(sg - sh) > tol) return true;
    if (mode == DistinguishMode::kSpreadOnly) return false;

    auto cg = one_edge_contraction_spreads(g, metric, t);
    auto ch = one_edge_contraction_spreads(h, metric, t);
    if (cg.empty() && ch.empty()) return false;
    if (cg.empty() != ch.empty()) return true;  // edge counts differ, so not isomorphic
    const double mg = std::accumulate(cg.begin(), cg.end(), 0.0) / static_cast<double>(cg.size());
    const double mh = std::accumulate(ch.begin(), ch.end(), 0.0) / static_cast<double>(ch.size());
    return std::abs(mg - mh) > tol;
}

}  // namespace divcurve
