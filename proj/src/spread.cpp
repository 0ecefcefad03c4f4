#include "divcurve/spread.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace divcurve {

namespace {

struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;
    void add(double x) {
        double y = x - carry;
        double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

// Compensated sum in canonical (value-sorted) order: the result depends only
// on the multiset of addends, which makes spread bit-stable across platforms
// and exactly invariant under row/column permutations.
double canonical_sum(std::vector<double>& terms) {
    std::sort(terms.begin(), terms.end());
    KahanSum acc;
    for (double t : terms) acc.add(t);
    return acc.sum;
}

}  // namespace

double spread(const DistMatrix& d) {
    const int n = d.size();
    if (n == 0) throw ValidationError("spread: empty distance matrix");
    std::vector<double> terms(static_cast<std::size_t>(n));
    std::vector<double> row(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) row[static_cast<std::size_t>(j)] = std::exp(-d(i, j));
        const double denom = canonical_sum(row);
        if (!(denom > 0.0))
            throw NumericError("spread: non-positive denominator in row " + std::to_string(i));
        terms[static_cast<std::size_t>(i)] = 1.0 / denom;
    }
    return canonical_sum(terms);
}

std::vector<double> spread_function(const DistMatrix& d, const std::vector<double>& ts) {
    if (ts.empty()) throw ValidationError("spread_function: empty scale grid");
    for (double t : ts)
        if (t <= 0.0) throw RangeError("spread_function: t must be positive");
    std::vector<double> out;
    out.reserve(ts.size());
    for (double t : ts) {
        if (t == 1.0) {  // exact identity at t = 1
            out.push_back(spread(d));
            continue;
        }
        DistMatrix scaled(d.size());
        for (int i = 0; i < d.size(); ++i)
            for (int j = 0; j < d.size(); ++j) scaled(i, j) = t * d(i, j);
        out.push_back(spread(scaled));
    }
    return out;
}

std::vector<double> default_spread_function_grid() {
    std::vector<double> ts(20);
    for (int i = 0; i < 20; ++i) ts[i] = 1.0 + 4.0 * i / 19.0;
    return ts;
}

}  // namespace divcurve
