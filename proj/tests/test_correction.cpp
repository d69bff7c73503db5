#include <doctest.h>

#include <cmath>

#include "pseudobox/correction.hpp"
#include "pseudobox/errors.hpp"

using namespace pseudobox;

namespace {

Scene one_gt_scene(const Box& g, int cls = 0) {
    Scene s;
    s.image_id = "img";
    s.width = 100.0;
    s.height = 100.0;
    s.gt.push_back(GtBox{g, cls});
    return s;
}

// Returns a scripted sequence of refinements regardless of input.
class ScriptedHead final : public ScoringHead {
public:
    ScriptedHead(std::vector<Box> boxes, std::vector<std::vector<double>> scores)
        : boxes_(std::move(boxes)), scores_(std::move(scores)) {}
    RefineResult refine(const Scene&, std::span<const Box> in, SeededRng&) const override {
        RefineResult r;
        for (std::size_t i = 0; i < in.size(); ++i) {
            r.boxes.push_back(boxes_[i % boxes_.size()]);
            r.scores.push_back(scores_[i % scores_.size()]);
        }
        return r;
    }
    int num_classes() const override { return static_cast<int>(scores_[0].size()) - 1; }

private:
    std::vector<Box> boxes_;
    std::vector<std::vector<double>> scores_;
};

}  // namespace

TEST_CASE("n_r=0 keeps only the input round") {
    IdentityHead head(2);
    SeededRng rng(1);
    auto history = multi_round_refine(head, Scene{}, {Box{0, 0, 1, 1}}, {{0.6, 0.2, 0.2}}, 0, rng);
    CHECK(history.rounds() == 0);
    CHECK(history.boxes[0][0] == Box{0, 0, 1, 1});
}

TEST_CASE("identity head keeps all rounds identical") {
    IdentityHead head(2);
    SeededRng rng(1);
    auto history =
        multi_round_refine(head, Scene{}, {Box{2, 2, 6, 6}}, {{0.6, 0.2, 0.2}}, 3, rng);
    REQUIRE(history.rounds() == 3);
    for (int r = 1; r <= 3; ++r) CHECK(history.boxes[static_cast<std::size_t>(r)][0] == Box{2, 2, 6, 6});
}

TEST_CASE("two midpoint rounds close three quarters of the gap") {
    Scene scene = one_gt_scene(Box{0, 0, 4, 4});
    OracleParams p;
    p.kappa = 0.5;
    p.tau = 0.0;
    OracleHead head(p, 1);
    SeededRng rng(2);
    auto history = multi_round_refine(head, scene, {Box{0, 0, 2, 2}}, {{0.5, 0.5}}, 2, rng);
    CHECK(history.boxes[2][0].x2 == doctest::Approx(3.5));
    CHECK(history.boxes[2][0].y2 == doctest::Approx(3.5));
}

TEST_CASE("stability metrics on identical rounds are zero") {
    IdentityHead head(2);
    SeededRng rng(1);
    auto history =
        multi_round_refine(head, Scene{}, {Box{2, 2, 6, 6}}, {{0.5, 0.0, 0.5}}, 2, rng);
    // round 0 scores differ from the identity head's uniform vectors
    auto deltas = stability_metrics(history);
    REQUIRE(deltas.size() == 2);
    CHECK(deltas[1].d_cls == doctest::Approx(0.0));
    CHECK(deltas[1].d_loc == doctest::Approx(0.0));
}

TEST_CASE("stability metrics direct evaluation") {
    RefineHistory history;
    history.boxes = {{Box{0, 0, 1, 1}}, {Box{5, 5, 6, 6}}};
    history.scores = {{{0.9, 0.1}}, {{0.5, 0.5}}};
    auto deltas = stability_metrics(history);
    REQUIRE(deltas.size() == 1);
    CHECK(deltas[0].d_cls == doctest::Approx(0.4));
    CHECK(deltas[0].d_loc == doctest::Approx(1.0));
}

TEST_CASE("stability metrics on empty box set") {
    RefineHistory history;
    history.boxes = {{}, {}};
    history.scores = {{}, {}};
    CHECK(stability_metrics(history).empty());
}

TEST_CASE("contraction makes D_loc strictly decrease over many scenes") {
    OracleParams p;
    p.kappa = 0.5;
    p.tau = 0.0;
    p.rho = 1.0;
    p.score_noise = 0.0;
    OracleHead head(p, 1);
    SeededRng seeds(42);
    int scenes_checked = 0;
    for (int s = 0; s < 250; ++s) {
        double gx = seeds.uniform() * 50.0, gy = seeds.uniform() * 50.0;
        double gw = 20.0 + seeds.uniform() * 20.0, gh = 20.0 + seeds.uniform() * 20.0;
        Scene scene = one_gt_scene(Box{gx, gy, gx + gw, gy + gh});
        double dx = (seeds.uniform() - 0.5) * 0.3 * gw;
        double dy = (seeds.uniform() - 0.5) * 0.3 * gh;
        Box b0{gx + dx, gy + dy, gx + gw + dx, gy + gh + dy};
        SeededRng rng(1000 + static_cast<std::uint64_t>(s));
        auto history = multi_round_refine(head, scene, {b0}, {{0.8, 0.2}}, 4, rng);
        auto deltas = stability_metrics(history);
        bool moved = deltas[0].d_loc > 1e-9;
        if (!moved) continue;
        ++scenes_checked;
        for (std::size_t r = 1; r < deltas.size(); ++r)
            CHECK(deltas[r].d_loc < deltas[r - 1].d_loc);
    }
    CHECK(scenes_checked >= 200);
}

TEST_CASE("multi-vote with zero jitter equals the head refinement") {
    Scene scene = one_gt_scene(Box{0, 0, 4, 4});
    OracleParams p;
    p.kappa = 0.5;
    p.tau = 0.0;
    OracleHead head(p, 1);
    JitterConfig jcfg;
    jcfg.n_j = 4;
    jcfg.sigma_j = 0.0;
    SeededRng rng(3);
    Box out = multi_vote_weight(head, scene, Box{0, 0, 2, 2}, 0, jcfg, rng);
    CHECK(out.x2 == doctest::Approx(3.0));
    CHECK(out.y2 == doctest::Approx(3.0));
}

TEST_CASE("multi-vote weighted sum arithmetic") {
    ScriptedHead head({Box{0, 0, 2, 2}, Box{0, 0, 4, 4}},
                      {{0.8, 0.2}, {0.2, 0.8}});
    JitterConfig jcfg;
    jcfg.n_j = 2;
    jcfg.sigma_j = 0.0;
    SeededRng rng(4);
    Box out = multi_vote_weight(head, Scene{}, Box{0, 0, 3, 3}, 0, jcfg, rng);
    // weights 0.8 and 0.2 on boxes (0,0,2,2) and (0,0,4,4)
    CHECK(out.x2 == doctest::Approx(2.4));
    CHECK(out.y2 == doctest::Approx(2.4));
}

TEST_CASE("vote output is a corner-wise convex combination") {
    Scene scene = one_gt_scene(Box{20, 20, 60, 60});
    OracleParams p;
    OracleHead head(p, 1);
    JitterConfig jcfg;
    SeededRng rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        Box b{18 + rng.uniform() * 4, 18 + rng.uniform() * 4, 58 + rng.uniform() * 4,
              58 + rng.uniform() * 4};
        // reproduce the voter set with a cloned rng stream
        SeededRng clone = rng;
        std::vector<Box> voters = jitter_box(b, jcfg, clone);
        RefineResult refined = refine(head, scene, voters, clone);
        SeededRng rng2 = rng;
        Box out = multi_vote_weight(head, scene, b, 0, jcfg, rng2);
        double lo_x1 = 1e30, hi_x1 = -1e30;
        for (const Box& v : refined.boxes) {
            lo_x1 = std::min(lo_x1, v.x1);
            hi_x1 = std::max(hi_x1, v.x1);
        }
        CHECK(out.x1 >= lo_x1 - 1e-9);
        CHECK(out.x1 <= hi_x1 + 1e-9);
        rng = rng2;
    }
}

TEST_CASE("correct filters everything below threshold") {
    Scene scene = one_gt_scene(Box{0, 0, 10, 10});
    OracleHead head(OracleParams{}, 1);
    CorrectionConfig cfg;
    SeededRng rng(6);
    ScoredBox weak;
    weak.box = Box{0, 0, 10, 10};
    weak.scores = {0.5, 0.5};
    auto out = correct(head, scene, std::vector<ScoredBox>{weak}, cfg, rng);
    CHECK(out.labels.empty());
    CHECK(out.uncorrected.empty());
}

TEST_CASE("correct with identity head returns filtered inputs") {
    Scene scene = one_gt_scene(Box{0, 0, 10, 10});
    IdentityHead head(1);
    CorrectionConfig cfg;
    cfg.jitter.sigma_j = 0.0;
    cfg.jitter.n_j = 1;
    SeededRng rng(7);
    ScoredBox strong;
    strong.box = Box{1, 1, 9, 9};
    strong.scores = {0.9, 0.1};
    auto out = correct(head, scene, std::vector<ScoredBox>{strong}, cfg, rng);
    REQUIRE(out.labels.size() == 1);
    CHECK(out.labels[0].box == Box{1, 1, 9, 9});
}

TEST_CASE("degenerate config equals a single head refinement") {
    Scene scene = one_gt_scene(Box{0, 0, 40, 40});
    OracleParams p;
    p.kappa = 0.4;
    p.tau = 0.0;
    p.rho = 1.0;
    p.score_noise = 0.0;
    OracleHead head(p, 1);
    CorrectionConfig cfg;
    cfg.n_r = 0;
    cfg.jitter.n_j = 1;
    cfg.jitter.sigma_j = 0.0;
    ScoredBox det;
    det.box = Box{2, 2, 42, 42};
    det.scores = {0.9, 0.1};
    SeededRng rng(8);
    auto out = correct(head, scene, std::vector<ScoredBox>{det}, cfg, rng);
    SeededRng rng2(8);
    auto single = refine(head, scene, std::vector<Box>{det.box}, rng2);
    REQUIRE(out.labels.size() == 1);
    CHECK(out.labels[0].box.x1 == doctest::Approx(single.boxes[0].x1));
    CHECK(out.labels[0].box.x2 == doctest::Approx(single.boxes[0].x2));
}

TEST_CASE("labels are frozen and refined scores kept below threshold are counted") {
    Scene scene = one_gt_scene(Box{0, 0, 10, 10}, 1);
    // head always reports a weak score
    ScriptedHead head({Box{0, 0, 10, 10}}, {{0.0, 0.1, 0.9}});
    CorrectionConfig cfg;
    cfg.jitter.n_j = 2;
    cfg.jitter.sigma_j = 0.0;
    ScoredBox det;
    det.box = Box{0, 0, 10, 10};
    det.scores = {0.0, 0.8, 0.2};
    SeededRng rng(9);
    auto out = correct(head, scene, std::vector<ScoredBox>{det}, cfg, rng);
    REQUIRE(out.labels.size() == 1);
    CHECK(out.labels[0].label == 1);
    CHECK(out.below_threshold_after_refine == 1);
}

TEST_CASE("final boxes are clipped to the image") {
    Scene scene = one_gt_scene(Box{90, 90, 99, 99});
    ScriptedHead head({Box{85, 85, 110, 120}}, {{0.9, 0.1}});
    CorrectionConfig cfg;
    cfg.jitter.n_j = 1;
    cfg.jitter.sigma_j = 0.0;
    ScoredBox det;
    det.box = Box{88, 88, 99, 99};
    det.scores = {0.9, 0.1};
    SeededRng rng(10);
    auto out = correct(head, scene, std::vector<ScoredBox>{det}, cfg, rng);
    REQUIRE(out.labels.size() == 1);
    CHECK(out.labels[0].box.x2 <= 100.0);
    CHECK(out.labels[0].box.y2 <= 100.0);
}

TEST_CASE("invalid config rejected") {
    CorrectionConfig cfg;
    cfg.score_threshold = 1.5;
    CHECK_THROWS_AS(cfg.validate(), InvalidConfig);
    cfg.score_threshold = 0.7;
    cfg.n_r = -1;
    CHECK_THROWS_AS(cfg.validate(), InvalidConfig);
}

TEST_CASE("vote weights favour improvement near GT") {
    // initial IoU in [0.5, 0.9]; voting should improve mean IoU
    OracleParams p;
    p.kappa = 0.3;
    p.tau = 0.0;
    p.rho = 0.9;
    p.score_noise = 0.0;
    OracleHead head(p, 1);
    JitterConfig jcfg;
    SeededRng rng(11);
    double before_sum = 0.0, after_sum = 0.0;
    int n = 0;
    while (n < 1000) {
        double gx = rng.uniform() * 40.0, gy = rng.uniform() * 40.0;
        Box g{gx, gy, gx + 30.0, gy + 30.0};
        Scene scene = one_gt_scene(g);
        double dx = (rng.uniform() - 0.5) * 10.0, dy = (rng.uniform() - 0.5) * 10.0;
        Box b{g.x1 + dx, g.y1 + dy, g.x2 + dx, g.y2 + dy};
        double v = iou(b, g);
        if (v < 0.5 || v > 0.9) continue;
        Box out = multi_vote_weight(head, scene, b, 0, jcfg, rng);
        before_sum += v;
        after_sum += iou(out, g);
        ++n;
    }
    CHECK(after_sum / n > before_sum / n);
}
