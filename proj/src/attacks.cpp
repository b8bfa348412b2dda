#include "osn/attacks.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <unordered_set>

#include "osn/rng.hpp"

namespace osn {

namespace {

std::unordered_set<std::string> coupled_keys(const GroundTruth& gt) {
    std::unordered_set<std::string> keys;
    keys.reserve(gt.coupled.size());
    for (const auto& [a, t] : gt.coupled) keys.insert(a + '\t' + t);
    return keys;
}

}  // namespace

Metrics evaluate(const IdAssignment& assignment, const GroundTruth& gt, double threshold) {
    const auto keys = coupled_keys(gt);
    Metrics m;
    m.coupled_total = gt.coupled.size();
    for (const auto& match : assignment.matches) {
        const bool coupled = keys.count(match.aux_id + '\t' + match.target_id) > 0;
        if (coupled) m.correct += 1.0;
        if (match.score >= threshold) {
            if (coupled) {
                m.tp += 1.0;
            } else {
                m.fp += 1.0;
            }
        }
    }
    if (m.tp + m.fp > 0.0) {
        m.precision = m.tp / (m.tp + m.fp);
    } else {
        m.precision = 1.0;
        m.precision_degenerate = true;
    }
    m.recall = m.coupled_total ? m.tp / static_cast<double>(m.coupled_total) : 0.0;
    m.accuracy = m.coupled_total ? m.correct / static_cast<double>(m.coupled_total) : 0.0;
    return m;
}

PrCurve pr_sweep(const IdAssignment& assignment, const GroundTruth& gt, double step) {
    PrCurve curve;
    const int steps = static_cast<int>(std::round(1.0 / step));
    double best_gap = -1.0;
    for (int k = 0; k <= steps; ++k) {
        const double threshold = std::min(1.0, k * step);
        const auto m = evaluate(assignment, gt, threshold);
        curve.points.push_back({threshold, m.precision, m.recall, m.precision_degenerate});
        const double gap = std::abs(m.precision - m.recall);
        if (best_gap < 0.0 || gap < best_gap - 1e-12) {  // lowest threshold wins ties
            best_gap = gap;
            curve.intersection_threshold = threshold;
        }
    }
    return curve;
}

AttackResult global_attack(const Dataset& aux_e, const Dataset& tgt_e, const MatchModel& model,
                           const Resources& res, const GroundTruth& gt, double threshold,
                           int jobs) {
    std::vector<std::string> aux_ids, tgt_ids;
    aux_ids.reserve(aux_e.profiles.size());
    for (const auto& p : aux_e.profiles) aux_ids.push_back(p.id);
    tgt_ids.reserve(tgt_e.profiles.size());
    for (const auto& p : tgt_e.profiles) tgt_ids.push_back(p.id);

    const auto z = build_similarity_matrix(aux_e, aux_ids, tgt_e, tgt_ids, model, res, jobs);

    AttackResult result;
    result.kind = "global";
    result.threshold = threshold;
    result.assignment = match_profiles(z);
    result.metrics = evaluate(result.assignment, gt, threshold);
    return result;
}

AttackResult targeted_attack(const std::vector<std::string>& victims, const Dataset& aux_e,
                             const Dataset& tgt_e, const MatchModel& model, const Resources& res,
                             const GroundTruth& gt, double threshold, int runs, std::uint64_t seed,
                             int jobs) {
    for (const auto& v : victims) {
        if (!tgt_e.find(v)) throw DataError("targeted_attack: victim '" + v + "' not in dataset");
    }
    std::vector<std::string> aux_ids;
    aux_ids.reserve(aux_e.profiles.size());
    for (const auto& p : aux_e.profiles) aux_ids.push_back(p.id);

    // coupled target pool for resampling
    std::vector<std::string> pool;
    pool.reserve(gt.coupled.size());
    for (const auto& [a, t] : gt.coupled) {
        if (tgt_e.find(t)) pool.push_back(t);
    }
    std::sort(pool.begin(), pool.end());

    Rng rng(seed);
    AttackResult result;
    result.kind = "targeted";
    result.threshold = threshold;
    result.runs = runs;
    result.seed = seed;

    Metrics total;
    for (int run = 0; run < runs; ++run) {
        std::vector<std::string> run_victims;
        if (runs > 1) {
            if (pool.empty()) throw DataError("targeted_attack: no coupled targets to sample");
            for (const auto idx : rng.sample_indices(pool.size(),
                                                     std::min(victims.size(), pool.size()))) {
                run_victims.push_back(pool[idx]);
            }
        } else {
            run_victims = victims;
        }

        const auto z =
            build_similarity_matrix(aux_e, aux_ids, tgt_e, run_victims, model, res, jobs);
        const auto matched = match_profiles(z);

        GroundTruth run_gt;
        const std::unordered_set<std::string> victim_set(run_victims.begin(), run_victims.end());
        for (const auto& [a, t] : gt.coupled) {
            if (victim_set.count(t)) run_gt.coupled.emplace_back(a, t);
        }
        const auto m = evaluate(matched, run_gt, threshold);

        total.precision += m.precision;
        total.recall += m.recall;
        total.accuracy += m.accuracy;
        total.tp += m.tp;
        total.fp += m.fp;
        total.correct += m.correct;
        total.coupled_total = m.coupled_total;
        total.precision_degenerate = total.precision_degenerate || m.precision_degenerate;
        result.assignment = matched;
    }
    const double r = static_cast<double>(runs);
    total.precision /= r;
    total.recall /= r;
    total.accuracy /= r;
    total.tp /= r;
    total.fp /= r;
    total.correct /= r;
    result.metrics = total;
    return result;
}

void save_pr_curve(const PrCurve& curve, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write PR curve: " + path);
    out << "threshold,precision,recall\n";
    out.precision(17);
    for (const auto& p : curve.points) {
        out << p.threshold << ',' << p.precision << ',' << p.recall << '\n';
    }
}

}  // namespace osn
