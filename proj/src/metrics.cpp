#include "platsim/metrics.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "platsim/format.hpp"

namespace platsim {

std::uint32_t MessageOutcome::metric(int m) const {
    switch (m) {
    case 0: return reach;
    case 1: return exposure;
    case 2: return resharers;
    default: return likers;
    }
}

const char* to_string(Metric m) {
    switch (m) {
    case Metric::Reach: return "reach";
    case Metric::Exposure: return "exposure";
    case Metric::Reshares: return "reshares";
    case Metric::Likes: return "likes";
    }
    return "?";
}

ConditionSummary summarize(std::span<const MessageOutcome> outcomes) {
    if (outcomes.empty()) throw std::invalid_argument("summarize: empty outcome collection");
    ConditionSummary s;
    s.n_messages = outcomes.size();
    for (int m = 0; m < 4; ++m) {
        std::uint64_t nonzero = 0;
        double sum = 0.0, log_sum = 0.0;
        for (const auto& o : outcomes) {
            const auto v = o.metric(m);
            if (v == 0) continue;
            ++nonzero;
            sum += v;
            log_sum += std::log(static_cast<double>(v));
        }
        MetricSummary& ms = s.by_metric[m];
        ms.breadth = static_cast<double>(nonzero) / static_cast<double>(outcomes.size());
        if (nonzero > 0) {
            ms.depth_arith = sum / static_cast<double>(nonzero);
            ms.depth_geom = std::exp(log_sum / static_cast<double>(nonzero));
            ms.unconditional = ms.breadth * *ms.depth_arith;
        }
    }
    s.exposure_weighted_quality = exposure_weighted_quality(outcomes);
    return s;
}

std::optional<double> exposure_weighted_quality(std::span<const MessageOutcome> outcomes) {
    double weighted = 0.0;
    std::uint64_t total = 0;
    for (const auto& o : outcomes) {
        weighted += o.quality * static_cast<double>(o.exposure);
        total += o.exposure;
    }
    if (total == 0) return std::nullopt;
    return weighted / static_cast<double>(total);
}

double hot_lifo_ratio(const ConditionSummary& hot, const ConditionSummary& lifo, Metric m) {
    const auto& h = hot.metric(m).unconditional;
    const auto& l = lifo.metric(m).unconditional;
    if (!h || !l) throw std::invalid_argument("hot_lifo_ratio: undefined unconditional mean");
    if (*l <= 0.0) throw std::invalid_argument("hot_lifo_ratio: lifo mean must be positive");
    return *h / *l;
}

Dispersion seed_quality_dispersion(std::span<const double> per_seed) {
    if (per_seed.size() < 2)
        throw std::invalid_argument("seed_quality_dispersion: need at least 2 seeds");
    Dispersion d{per_seed[0], per_seed[0], 0.0};
    for (double v : per_seed) {
        d.min = std::min(d.min, v);
        d.max = std::max(d.max, v);
    }
    d.range = d.max - d.min;
    return d;
}

ValidityReport validate_outcomes(std::span<const MessageOutcome> outcomes) {
    ValidityReport r;
    r.n_rows = outcomes.size();
    std::uint64_t z_reach = 0, z_exp = 0, z_rs = 0, z_lk = 0;
    for (const auto& o : outcomes) {
        if (o.resharers > 0 && o.reach == 0) ++r.reshares_without_reach;
        if (o.exposure > 0 && o.resharers == 0) ++r.exposure_without_reshare;
        if (o.likers > o.exposure) ++r.likes_over_exposure;
        if (o.exposure > o.reach) ++r.exposure_over_reach;
        if (o.reach == 0) ++z_reach;
        if (o.exposure == 0) ++z_exp;
        if (o.resharers == 0) ++z_rs;
        if (o.likers == 0) ++z_lk;
    }
    if (r.n_rows > 0) {
        const auto pct = [&](std::uint64_t z) {
            return 100.0 * static_cast<double>(z) / static_cast<double>(r.n_rows);
        };
        r.pct_zero_reach = pct(z_reach);
        r.pct_zero_exposure = pct(z_exp);
        r.pct_zero_reshares = pct(z_rs);
        r.pct_zero_likes = pct(z_lk);
    }
    return r;
}

std::string render_validity_report(const ValidityReport& r) {
    std::ostringstream os;
    os << "rows: " << r.n_rows << "\n";
    os << "construct validity:\n";
    os << "  reshares>0 & reach=0 : " << r.reshares_without_reach << "\n";
    os << "  exposure>0 & reshares=0 : " << r.exposure_without_reshare << "\n";
    os << "  likes > exposure : " << r.likes_over_exposure << "\n";
    os << "  exposure > reach : " << r.exposure_over_reach << "\n";
    os << "zero inflation (% zero):\n";
    os << "  reach " << fmt9(r.pct_zero_reach) << "\n";
    os << "  exposure " << fmt9(r.pct_zero_exposure) << "\n";
    os << "  reshares " << fmt9(r.pct_zero_reshares) << "\n";
    os << "  likes " << fmt9(r.pct_zero_likes) << "\n";
    return os.str();
}

} // namespace platsim
