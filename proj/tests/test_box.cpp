#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "pseudobox/box.hpp"
#include "pseudobox/errors.hpp"
#include "pseudobox/rng.hpp"

using namespace pseudobox;

namespace {

Box random_box(SeededRng& rng, double extent = 100.0) {
    double x1 = rng.uniform() * extent;
    double y1 = rng.uniform() * extent;
    return Box{x1, y1, x1 + rng.uniform() * extent * 0.3, y1 + rng.uniform() * extent * 0.3};
}

ScoredBox random_det(SeededRng& rng, int num_classes, double extent = 100.0) {
    ScoredBox d;
    d.box = random_box(rng, extent);
    double s = rng.uniform();
    int cls = static_cast<int>(rng.below(static_cast<std::uint64_t>(num_classes)));
    d.scores.assign(static_cast<std::size_t>(num_classes) + 1, 0.0);
    d.scores[static_cast<std::size_t>(cls)] = s;
    d.scores[static_cast<std::size_t>(num_classes)] = 1.0 - s;
    d.label = cls;
    return d;
}

// O(n^2) reference NMS: repeatedly take the highest-confidence surviving
// box, remove all same-class boxes with IoU above the threshold.
std::vector<ScoredBox> nms_reference(std::vector<ScoredBox> dets, double threshold) {
    std::vector<ScoredBox> kept;
    std::vector<bool> alive(dets.size(), true);
    while (true) {
        int best = -1;
        for (std::size_t i = 0; i < dets.size(); ++i)
            if (alive[i] &&
                (best < 0 || dets[i].foreground_confidence() >
                                 dets[static_cast<std::size_t>(best)].foreground_confidence()))
                best = static_cast<int>(i);
        if (best < 0) break;
        const ScoredBox& b = dets[static_cast<std::size_t>(best)];
        kept.push_back(b);
        alive[static_cast<std::size_t>(best)] = false;
        for (std::size_t i = 0; i < dets.size(); ++i)
            if (alive[i] && dets[i].label == b.label && iou(dets[i].box, b.box) > threshold)
                alive[i] = false;
    }
    return kept;
}

// Exhaustive greedy matching reference.
std::vector<std::optional<std::size_t>> match_reference(const std::vector<ScoredBox>& pred,
                                                        const std::vector<GtBox>& gt,
                                                        double threshold) {
    std::vector<std::optional<std::size_t>> out(pred.size());
    std::vector<std::size_t> order(pred.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return pred[a].foreground_confidence() > pred[b].foreground_confidence();
    });
    std::vector<bool> used(gt.size(), false);
    for (std::size_t i : order) {
        double best_v = -1.0;
        int best_j = -1;
        for (std::size_t j = 0; j < gt.size(); ++j) {
            if (used[j] || gt[j].cls != pred[i].label) continue;
            double v = iou(pred[i].box, gt[j].box);
            if (v >= threshold && v > best_v) {
                best_v = v;
                best_j = static_cast<int>(j);
            }
        }
        if (best_j >= 0) {
            used[static_cast<std::size_t>(best_j)] = true;
            out[i] = static_cast<std::size_t>(best_j);
        }
    }
    return out;
}

bool same_box(const Box& a, const Box& b) {
    return a.x1 == b.x1 && a.y1 == b.y1 && a.x2 == b.x2 && a.y2 == b.y2;
}

}  // namespace

TEST_CASE("iou basics") {
    CHECK(iou(Box{0, 0, 2, 2}, Box{0, 0, 2, 2}) == doctest::Approx(1.0));
    CHECK(iou(Box{0, 0, 1, 1}, Box{5, 5, 6, 6}) == doctest::Approx(0.0));
    CHECK(iou(Box{0, 0, 2, 2}, Box{1, 1, 3, 3}) == doctest::Approx(1.0 / 7.0));
}

TEST_CASE("iou degenerate and invalid") {
    Box degenerate{1, 1, 1, 1};
    CHECK(iou(degenerate, degenerate) == 0.0);
    CHECK(iou(degenerate, Box{0, 0, 2, 2}) == 0.0);
    Box bad{0, 0, std::numeric_limits<double>::quiet_NaN(), 1};
    CHECK_THROWS_AS(iou(bad, degenerate), InvalidInput);
}

TEST_CASE("iou properties on random boxes") {
    SeededRng rng(1);
    for (int i = 0; i < 500; ++i) {
        Box a = random_box(rng), b = random_box(rng);
        double v = iou(a, b);
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
        CHECK(v == doctest::Approx(iou(b, a)));
        if (a.area() > 0.0) CHECK(iou(a, a) == doctest::Approx(1.0));
    }
}

TEST_CASE("pairwise_iou") {
    Box b{0, 0, 2, 2};
    auto m = pairwise_iou(std::vector<Box>{b}, std::vector<Box>{b});
    REQUIRE(m.size() == 1);
    CHECK(m[0][0] == doctest::Approx(1.0));

    auto empty = pairwise_iou(std::vector<Box>{}, std::vector<Box>{b});
    CHECK(empty.empty());

    SeededRng rng(2);
    std::vector<Box> a20, b20;
    for (int i = 0; i < 20; ++i) {
        a20.push_back(random_box(rng));
        b20.push_back(random_box(rng));
    }
    auto mm = pairwise_iou(a20, b20);
    for (std::size_t i = 0; i < a20.size(); ++i)
        for (std::size_t j = 0; j < b20.size(); ++j)
            CHECK(mm[i][j] == doctest::Approx(iou(a20[i], b20[j])));
}

TEST_CASE("nms keeps winner of identical boxes") {
    ScoredBox hi, lo;
    hi.box = lo.box = Box{0, 0, 2, 2};
    hi.scores = {0.9, 0.1};
    lo.scores = {0.8, 0.2};
    auto kept = nms(std::vector<ScoredBox>{lo, hi}, 0.5);
    REQUIRE(kept.size() == 1);
    CHECK(kept[0].scores[0] == doctest::Approx(0.9));
}

TEST_CASE("nms keeps disjoint boxes sorted by confidence") {
    ScoredBox a, b;
    a.box = Box{0, 0, 1, 1};
    b.box = Box{5, 5, 6, 6};
    a.scores = {0.3, 0.7};
    b.scores = {0.8, 0.2};
    auto kept = nms(std::vector<ScoredBox>{a, b}, 0.5);
    REQUIRE(kept.size() == 2);
    CHECK(kept[0].scores[0] == doctest::Approx(0.8));
}

TEST_CASE("nms threshold validation") {
    CHECK_THROWS_AS(nms(std::vector<ScoredBox>{}, 1.5), InvalidConfig);
    CHECK_THROWS_AS(nms(std::vector<ScoredBox>{}, -0.1), InvalidConfig);
}

TEST_CASE("nms equals quadratic reference on random instances") {
    SeededRng rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 1 + static_cast<int>(rng.below(50));
        std::vector<ScoredBox> dets;
        for (int i = 0; i < n; ++i) dets.push_back(random_det(rng, 1, 30.0));
        double thr = rng.uniform();
        auto got = nms(dets, thr);
        auto want = nms_reference(dets, thr);
        REQUIRE(got.size() == want.size());
        for (std::size_t i = 0; i < got.size(); ++i) CHECK(same_box(got[i].box, want[i].box));
        // kept pairs never overlap above the threshold
        for (std::size_t i = 0; i < got.size(); ++i)
            for (std::size_t j = i + 1; j < got.size(); ++j)
                if (got[i].label == got[j].label)
                    CHECK(iou(got[i].box, got[j].box) <= thr + 1e-12);
    }
}

TEST_CASE("nms is per class") {
    ScoredBox a, b;
    a.box = b.box = Box{0, 0, 2, 2};
    a.scores = {0.9, 0.0, 0.1};
    a.label = 0;
    b.scores = {0.0, 0.8, 0.2};
    b.label = 1;
    auto kept = nms(std::vector<ScoredBox>{a, b}, 0.5);
    CHECK(kept.size() == 2);
}

TEST_CASE("greedy_match basic cases") {
    GtBox g;
    g.box = Box{0, 0, 2, 2};
    ScoredBox p;
    p.box = g.box;
    p.scores = {0.9, 0.1};
    auto m = greedy_match(std::vector<ScoredBox>{p}, std::vector<GtBox>{g}, 0.5);
    REQUIRE(m.size() == 1);
    CHECK(m[0] == std::size_t{0});

    p.box = Box{0, 0, 1, 1};
    g.box = Box{0, 0, 2, 2};  // IoU 0.25 < 0.5
    m = greedy_match(std::vector<ScoredBox>{p}, std::vector<GtBox>{g}, 0.5);
    CHECK_FALSE(m[0].has_value());
}

TEST_CASE("greedy_match equals exhaustive reference") {
    SeededRng rng(4);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<ScoredBox> pred;
        std::vector<GtBox> gt;
        for (int i = 0; i < 10; ++i) pred.push_back(random_det(rng, 3, 20.0));
        for (int i = 0; i < 5; ++i)
            gt.push_back(GtBox{random_box(rng, 20.0), static_cast<int>(rng.below(3))});
        double thr = 0.3 + 0.4 * rng.uniform();
        auto got = greedy_match(pred, gt, thr);
        auto want = match_reference(pred, gt, thr);
        REQUIRE(got.size() == want.size());
        for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i] == want[i]);
        // no GT claimed twice, all matches above threshold
        std::vector<bool> used(gt.size(), false);
        for (std::size_t i = 0; i < got.size(); ++i) {
            if (!got[i]) continue;
            CHECK_FALSE(used[*got[i]]);
            used[*got[i]] = true;
            CHECK(iou(pred[i].box, gt[*got[i]].box) >= thr);
        }
    }
}

TEST_CASE("apply_affine identity and scale") {
    std::vector<Box> boxes{Box{0, 0, 1, 1}};
    auto same = apply_affine(boxes, AffineTransform{}, 10.0);
    CHECK(same_box(same[0], boxes[0]));

    AffineTransform scale2;
    scale2.scale_x = scale2.scale_y = 2.0;
    auto scaled = apply_affine(boxes, scale2, 10.0);
    CHECK(same_box(scaled[0], Box{0, 0, 2, 2}));
}

TEST_CASE("apply_affine flip") {
    AffineTransform flip;
    flip.flip_x = true;
    auto out = apply_affine(std::vector<Box>{Box{1, 2, 3, 4}}, flip, 10.0);
    CHECK(same_box(out[0], Box{7, 2, 9, 4}));
}

TEST_CASE("apply_affine rejects non-positive scale") {
    AffineTransform t;
    t.scale_x = 0.0;
    CHECK_THROWS_AS(apply_affine(std::vector<Box>{Box{0, 0, 1, 1}}, t, 10.0), InvalidConfig);
}

TEST_CASE("affine round trip identity") {
    SeededRng rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        AffineTransform t;
        t.scale_x = 0.5 + rng.uniform() * 2.0;
        t.scale_y = 0.5 + rng.uniform() * 2.0;
        t.translate_x = (rng.uniform() - 0.5) * 50.0;
        t.translate_y = (rng.uniform() - 0.5) * 50.0;
        t.flip_x = rng.uniform() < 0.5;
        double width = 100.0;
        std::vector<Box> boxes{random_box(rng)};
        auto fwd = apply_affine(boxes, t, width);
        auto back = apply_affine(fwd, t.inverse(), t.scale_x * width);
        CHECK(back[0].x1 == doctest::Approx(boxes[0].x1).epsilon(1e-6));
        CHECK(back[0].y1 == doctest::Approx(boxes[0].y1).epsilon(1e-6));
        CHECK(back[0].x2 == doctest::Approx(boxes[0].x2).epsilon(1e-6));
        CHECK(back[0].y2 == doctest::Approx(boxes[0].y2).epsilon(1e-6));
    }
}
