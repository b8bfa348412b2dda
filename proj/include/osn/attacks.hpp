#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "osn/assignment.hpp"
#include "osn/datamodel.hpp"
#include "osn/pipeline.hpp"

namespace osn {

struct Metrics {
    double precision = 0.0;
    double recall = 0.0;
    double accuracy = 0.0;
    // precision reported as 1.0 when TP+FP = 0; flagged for honest plotting
    bool precision_degenerate = false;
    double tp = 0.0;
    double fp = 0.0;
    double correct = 0.0;  // coupled matches regardless of threshold
    std::size_t coupled_total = 0;
};

struct AttackResult {
    std::string kind;  // "global" | "targeted"
    IdAssignment assignment;  // for averaged targeted runs: the last run's matching
    double threshold = 0.0;
    Metrics metrics;
    int runs = 1;
    std::uint64_t seed = 0;
};

// TP = coupled matches with score >= threshold; FP = other matches with
// score >= threshold; precision = TP/(TP+FP); recall = TP/|coupled|;
// accuracy = coupled matches regardless of threshold / |coupled|.
Metrics evaluate(const IdAssignment& assignment, const GroundTruth& gt, double threshold);

struct PrPoint {
    double threshold = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    bool precision_degenerate = false;
};

struct PrCurve {
    std::vector<PrPoint> points;
    // threshold minimizing |precision - recall|, lowest on ties
    double intersection_threshold = 0.0;
};

PrCurve pr_sweep(const IdAssignment& assignment, const GroundTruth& gt, double step = 0.01);

// Match every evaluation profile across the two networks, then score.
AttackResult global_attack(const Dataset& aux_e, const Dataset& tgt_e, const MatchModel& model,
                           const Resources& res, const GroundTruth& gt, double threshold,
                           int jobs = 1);

// Match a victim subset of the target side against the full auxiliary pool
// via a joint rectangular assignment. With runs > 1, victims are resampled
// per run from the coupled target pool (seeded) and metrics are means;
// `victims` then only fixes the sample size.
AttackResult targeted_attack(const std::vector<std::string>& victims, const Dataset& aux_e,
                             const Dataset& tgt_e, const MatchModel& model, const Resources& res,
                             const GroundTruth& gt, double threshold, int runs, std::uint64_t seed,
                             int jobs = 1);

void save_pr_curve(const PrCurve& curve, const std::string& path);

}  // namespace osn
