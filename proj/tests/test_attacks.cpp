#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "osn/attacks.hpp"
#include "osn/synthgen.hpp"

using namespace osn;

namespace {

IdAssignment assignment_of(std::initializer_list<IdAssignment::Match> matches) {
    IdAssignment a;
    for (const auto& m : matches) {
        a.matches.push_back(m);
        a.total_score += m.score;
    }
    return a;
}

GroundTruth coupled_pairs(std::initializer_list<std::pair<std::string, std::string>> pairs) {
    GroundTruth gt;
    for (const auto& p : pairs) gt.coupled.push_back(p);
    return gt;
}

}  // namespace

TEST_CASE("evaluate: perfect assignment") {
    const auto gt = coupled_pairs({{"a1", "t1"}, {"a2", "t2"}});
    const auto a = assignment_of({{"a1", "t1", 0.9}, {"a2", "t2", 0.8}});
    const auto m = evaluate(a, gt, 0.5);
    CHECK(m.precision == doctest::Approx(1.0));
    CHECK(m.recall == doctest::Approx(1.0));
    CHECK(m.accuracy == doctest::Approx(1.0));
    CHECK(!m.precision_degenerate);
}

TEST_CASE("evaluate: the paper's accuracy arithmetic (293 of 500 = 0.586)") {
    GroundTruth gt;
    IdAssignment a;
    for (int i = 0; i < 500; ++i) {
        const auto aux = "a" + std::to_string(i), tgt = "t" + std::to_string(i);
        gt.coupled.emplace_back(aux, tgt);
        if (i < 293) {
            a.matches.push_back({aux, tgt, 0.7});  // correct
        } else {
            a.matches.push_back({aux, "t" + std::to_string((i + 1) % 500 + 1000), 0.7});
        }
    }
    const auto m = evaluate(a, gt, 0.6);
    CHECK(m.accuracy == doctest::Approx(0.586));
    CHECK(m.correct == doctest::Approx(293.0));
}

TEST_CASE("evaluate: empty assignment is degenerate") {
    const auto gt = coupled_pairs({{"a1", "t1"}});
    const auto m = evaluate(IdAssignment{}, gt, 0.5);
    CHECK(m.recall == doctest::Approx(0.0));
    CHECK(m.accuracy == doctest::Approx(0.0));
    CHECK(m.precision == doctest::Approx(1.0));
    CHECK(m.precision_degenerate);
}

TEST_CASE("evaluate: threshold zero makes recall equal accuracy") {
    const auto gt = coupled_pairs({{"a1", "t1"}, {"a2", "t2"}, {"a3", "t3"}});
    const auto a = assignment_of({{"a1", "t1", 0.2}, {"a2", "t9", 0.9}, {"a3", "t3", 0.05}});
    const auto m = evaluate(a, gt, 0.0);
    CHECK(m.recall == doctest::Approx(m.accuracy));
    CHECK(m.accuracy == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("evaluate: TP monotone non-increasing in threshold") {
    const auto gt = coupled_pairs({{"a1", "t1"}, {"a2", "t2"}, {"a3", "t3"}});
    const auto a = assignment_of({{"a1", "t1", 0.3}, {"a2", "t2", 0.6}, {"a3", "t3", 0.9}});
    double prev_tp = 1e9;
    for (double th = 0.0; th <= 1.0; th += 0.05) {
        const auto m = evaluate(a, gt, th);
        CHECK(m.tp <= prev_tp);
        prev_tp = m.tp;
    }
}

TEST_CASE("pr_sweep: flat perfect curves intersect at zero") {
    const auto gt = coupled_pairs({{"a1", "t1"}, {"a2", "t2"}});
    const auto a = assignment_of({{"a1", "t1", 0.9}, {"a2", "t2", 0.9}});
    const auto curve = pr_sweep(a, gt);
    CHECK(curve.points.size() == 101);
    CHECK(curve.intersection_threshold == doctest::Approx(0.0));
    for (const auto& p : curve.points) {
        if (p.threshold <= 0.9) {
            CHECK(p.precision == doctest::Approx(1.0));
            CHECK(p.recall == doctest::Approx(1.0));
        } else {
            CHECK(p.recall == doctest::Approx(0.0));
        }
    }
}

TEST_CASE("pr_sweep: recall monotone non-increasing") {
    const auto gt = coupled_pairs({{"a1", "t1"}, {"a2", "t2"}, {"a3", "t3"}});
    const auto a = assignment_of({{"a1", "t1", 0.2}, {"a2", "t8", 0.5}, {"a3", "t3", 0.8}});
    const auto curve = pr_sweep(a, gt);
    double prev = 2.0;
    for (const auto& p : curve.points) {
        CHECK(p.recall <= prev + 1e-12);
        prev = p.recall;
    }
}

namespace {

// tiny end-to-end fixture shared by the attack tests
struct AttackFixture {
    SynthExperiment exp;
    Resources res;
    MatchModel model;

    AttackFixture() {
        ExperimentSpec spec;
        spec.train_coupled = 60;
        spec.eval_coupled = 25;
        spec.eval_extra = 5;
        spec.noise_preset_name = "low";
        spec.seed = 97;
        spec.person_params.embedding_dim = 16;
        exp = make_experiment(spec);
        res.gazetteer = builtin_vocab().gazetteer();
        res.gender_table = builtin_vocab().name_table();
        res.organizations = builtin_vocab().organizations;
        // no topic/sentiment models: those attributes stay missing, which the
        // imputation absorbs
        const auto ts = build_training_set(exp.train_gt, exp.train_aux, exp.train_tgt, res);
        model = train_logreg(ts, fit_imputation(ts));
    }
};

}  // namespace

TEST_CASE("global_attack: near-perfect on low-noise synthetic data") {
    AttackFixture fx;
    const auto result = global_attack(fx.exp.eval_aux, fx.exp.eval_tgt, fx.model, fx.res,
                                      fx.exp.eval_gt, 0.5, 2);
    CHECK(result.kind == "global");
    CHECK(result.metrics.accuracy >= 0.9);
    CHECK(result.assignment.matches.size() >= fx.exp.eval_gt.coupled.size());
}

TEST_CASE("targeted_attack: single victim with dominant score") {
    AttackFixture fx;
    const auto& victim = fx.exp.eval_gt.coupled[0].second;
    const auto result = targeted_attack({victim}, fx.exp.eval_aux, fx.exp.eval_tgt, fx.model,
                                        fx.res, fx.exp.eval_gt, 0.5, 1, 11);
    CHECK(result.kind == "targeted");
    CHECK(result.metrics.coupled_total == 1);
    CHECK(result.metrics.accuracy == doctest::Approx(1.0));
    CHECK(result.metrics.precision == doctest::Approx(1.0));
    CHECK(result.metrics.recall == doctest::Approx(1.0));
}

TEST_CASE("targeted_attack: unknown victim rejected") {
    AttackFixture fx;
    CHECK_THROWS_AS(targeted_attack({"nobody"}, fx.exp.eval_aux, fx.exp.eval_tgt, fx.model,
                                    fx.res, fx.exp.eval_gt, 0.5, 1, 1),
                    DataError);
}

TEST_CASE("targeted_attack: identical seeds give identical averaged results") {
    AttackFixture fx;
    std::vector<std::string> victims;
    for (int i = 0; i < 5; ++i) victims.push_back(fx.exp.eval_gt.coupled[i].second);
    const auto r1 = targeted_attack(victims, fx.exp.eval_aux, fx.exp.eval_tgt, fx.model, fx.res,
                                    fx.exp.eval_gt, 0.4, 3, 123);
    const auto r2 = targeted_attack(victims, fx.exp.eval_aux, fx.exp.eval_tgt, fx.model, fx.res,
                                    fx.exp.eval_gt, 0.4, 3, 123);
    CHECK(r1.metrics.accuracy == doctest::Approx(r2.metrics.accuracy));
    CHECK(r1.metrics.precision == doctest::Approx(r2.metrics.precision));
    CHECK(r1.metrics.recall == doctest::Approx(r2.metrics.recall));
    CHECK(r1.runs == 3);
}

TEST_CASE("targeted attack over the whole target set reproduces the global matching") {
    AttackFixture fx;
    std::vector<std::string> all_targets;
    for (const auto& p : fx.exp.eval_tgt.profiles) all_targets.push_back(p.id);

    const auto global = global_attack(fx.exp.eval_aux, fx.exp.eval_tgt, fx.model, fx.res,
                                      fx.exp.eval_gt, 0.5, 1);
    const auto targeted = targeted_attack(all_targets, fx.exp.eval_aux, fx.exp.eval_tgt, fx.model,
                                          fx.res, fx.exp.eval_gt, 0.5, 1, 5);
    auto key = [](const IdAssignment& a) {
        std::vector<std::pair<std::string, std::string>> k;
        for (const auto& m : a.matches) k.emplace_back(m.aux_id, m.target_id);
        std::sort(k.begin(), k.end());
        return k;
    };
    CHECK(key(global.assignment) == key(targeted.assignment));
}
