#include "demandcast/dm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace demandcast {

DmResult dm_statistic(const std::vector<double>& errors_a, const std::vector<double>& errors_b,
                      double significance, DmVariance variance)
{
    if (errors_a.size() != errors_b.size())
        throw std::invalid_argument("error sequences must have equal length");
    if (errors_a.size() < 2)
        throw std::invalid_argument("need at least 2 forecast errors");
    if (!(significance > 0.0) || !(significance < 1.0))
        throw std::invalid_argument("significance must lie in (0, 1)");

    std::size_t n = errors_a.size();
    std::vector<double> d(n);
    bool all_zero = true;
    for (std::size_t i = 0; i < n; ++i) {
        d[i] = errors_a[i] * errors_a[i] - errors_b[i] * errors_b[i];
        if (d[i] != 0.0)
            all_zero = false;
    }

    DmResult result;
    result.n = n;
    double sum = 0.0;
    for (double v : d)
        sum += v;
    result.mean_d = sum / static_cast<double>(n);

    double ss = 0.0;
    for (double v : d) {
        double c = v - result.mean_d;
        ss += c * c;
    }
    double div = variance == DmVariance::Population ? static_cast<double>(n)
                                                    : static_cast<double>(n - 1);
    result.variance_d = ss / div;

    if (all_zero) {
        result.verdict = DmVerdict::Tie;
        return result;
    }
    if (result.variance_d == 0.0) {
        result.verdict = DmVerdict::Degenerate;
        return result;
    }

    double stat = result.mean_d / std::sqrt(result.variance_d / static_cast<double>(n));
    double p = std::erfc(std::fabs(stat) / std::sqrt(2.0));
    result.statistic = stat;
    result.p_value = p;
    if (p < significance && stat < 0.0)
        result.verdict = DmVerdict::AWins;
    else if (p < significance && stat > 0.0)
        result.verdict = DmVerdict::BWins;
    else
        result.verdict = DmVerdict::Inconclusive;
    return result;
}

int dm_favored(const DmResult& result)
{
    switch (result.verdict) {
    case DmVerdict::AWins:
        return -1;
    case DmVerdict::BWins:
        return 1;
    case DmVerdict::Degenerate:
        return result.mean_d < 0.0 ? -1 : 1;
    case DmVerdict::Tie:
    case DmVerdict::Inconclusive:
        return 0;
    }
    return 0;
}

const char* dm_verdict_name(DmVerdict verdict)
{
    switch (verdict) {
    case DmVerdict::AWins:
        return "a_wins";
    case DmVerdict::BWins:
        return "b_wins";
    case DmVerdict::Inconclusive:
        return "inconclusive";
    case DmVerdict::Tie:
        return "tie";
    case DmVerdict::Degenerate:
        return "degenerate";
    }
    return "inconclusive";
}

namespace {

// Fetch the comparison of a against b, flipping a stored (b, a) result if
// that is the orientation the matrix holds.
DmResult oriented(const std::map<std::pair<std::string, std::string>, DmResult>& dm_matrix,
                  const std::string& a, const std::string& b)
{
    auto it = dm_matrix.find({a, b});
    if (it != dm_matrix.end())
        return it->second;
    it = dm_matrix.find({b, a});
    if (it == dm_matrix.end())
        throw std::invalid_argument("missing pairwise comparison " + a + " vs " + b);
    DmResult r = it->second;
    if (r.statistic)
        r.statistic = -*r.statistic;
    r.mean_d = -r.mean_d;
    if (r.verdict == DmVerdict::AWins)
        r.verdict = DmVerdict::BWins;
    else if (r.verdict == DmVerdict::BWins)
        r.verdict = DmVerdict::AWins;
    return r;
}

} // namespace

ModelDecision best_model_per_series(const std::map<std::string, MetricReport>& reports,
                                    const std::map<std::pair<std::string, std::string>, DmResult>& dm_matrix,
                                    const std::string& proposed_id)
{
    if (reports.empty())
        throw std::invalid_argument("no models to compare");
    if (reports.find(proposed_id) == reports.end())
        throw std::invalid_argument("proposed model '" + proposed_id + "' not among reports");

    std::vector<std::string> ranked;
    ranked.reserve(reports.size());
    for (const auto& [id, report] : reports)
        ranked.push_back(id);
    std::stable_sort(ranked.begin(), ranked.end(),
                     [&](const std::string& x, const std::string& y) {
                         double px = reports.at(x).pocid;
                         double py = reports.at(y).pocid;
                         if (px != py)
                             return px > py;
                         if ((x == proposed_id) != (y == proposed_id))
                             return x == proposed_id;
                         return x < y;
                     });

    ModelDecision decision;
    for (const std::string& id : ranked)
        if (id != proposed_id) {
            decision.competitor = id;
            break;
        }
    if (!decision.competitor.empty()) {
        DmResult vs = oriented(dm_matrix, proposed_id, decision.competitor);
        decision.dm_statistic = vs.statistic;
        decision.p_value = vs.p_value;
    }

    if (ranked.size() == 1) {
        decision.best_model = proposed_id;
        decision.result = proposed_id + "_wins";
        decision.source = "fallback";
        return decision;
    }

    const std::string& top = ranked[0];
    const std::string& runner = ranked[1];
    DmResult head = oriented(dm_matrix, top, runner);

    if (reports.at(top).pocid == reports.at(runner).pocid && head.verdict == DmVerdict::Tie) {
        decision.best_model = top;
        decision.result = "tie";
        decision.source = "tie";
        return decision;
    }
    if (dm_favored(head) == -1) {
        decision.best_model = top;
        decision.source = "statistical";
    } else {
        decision.best_model = proposed_id;
        decision.source = "fallback";
    }
    decision.result = decision.best_model + "_wins";
    return decision;
}

} // namespace demandcast
