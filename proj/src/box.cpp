#include "pseudobox/box.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pseudobox/errors.hpp"

namespace pseudobox {

bool Box::is_finite() const {
    return std::isfinite(x1) && std::isfinite(y1) && std::isfinite(x2) && std::isfinite(y2);
}

Box normalize(const Box& b) {
    return Box{std::min(b.x1, b.x2), std::min(b.y1, b.y2), std::max(b.x1, b.x2),
               std::max(b.y1, b.y2)};
}

Box clip(const Box& b, double width, double height) {
    auto cl = [](double v, double hi) { return std::clamp(v, 0.0, hi); };
    return Box{cl(b.x1, width), cl(b.y1, height), cl(b.x2, width), cl(b.y2, height)};
}

double ScoredBox::foreground_confidence() const {
    double best = 0.0;
    for (std::size_t c = 0; c + 1 < scores.size(); ++c) best = std::max(best, scores[c]);
    return best;
}

int argmax_foreground(const std::vector<double>& scores) {
    if (scores.size() < 2) throw InvalidInput("score vector needs at least one foreground class");
    std::size_t best = 0;
    for (std::size_t c = 1; c + 1 < scores.size(); ++c)
        if (scores[c] > scores[best]) best = c;
    return static_cast<int>(best);
}

AffineTransform AffineTransform::inverse() const {
    AffineTransform inv;
    inv.scale_x = 1.0 / scale_x;
    inv.scale_y = 1.0 / scale_y;
    inv.translate_x = flip_x ? translate_x / scale_x : -translate_x / scale_x;
    inv.translate_y = -translate_y / scale_y;
    inv.flip_x = flip_x;
    return inv;
}

double iou(const Box& a, const Box& b) {
    if (!a.is_finite() || !b.is_finite()) throw InvalidInput("iou: non-finite box coordinates");
    double ix = std::min(a.x2, b.x2) - std::max(a.x1, b.x1);
    double iy = std::min(a.y2, b.y2) - std::max(a.y1, b.y1);
    if (ix <= 0.0 || iy <= 0.0) return 0.0;
    double inter = ix * iy;
    double uni = a.area() + b.area() - inter;
    if (uni <= 0.0) return 0.0;
    return inter / uni;
}

std::vector<std::vector<double>> pairwise_iou(std::span<const Box> a, std::span<const Box> b) {
    std::vector<std::vector<double>> m(a.size(), std::vector<double>(b.size(), 0.0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) m[i][j] = iou(a[i], b[j]);
    return m;
}

namespace {

// Indices sorted by descending confidence, ties by input index.
std::vector<std::size_t> confidence_order(std::span<const ScoredBox> dets) {
    std::vector<std::size_t> order(dets.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return dets[i].foreground_confidence() > dets[j].foreground_confidence();
    });
    return order;
}

}  // namespace

std::vector<ScoredBox> nms(std::span<const ScoredBox> dets, double iou_threshold) {
    if (!(iou_threshold >= 0.0 && iou_threshold <= 1.0))
        throw InvalidConfig("nms: iou_threshold must be in [0,1]");
    auto order = confidence_order(dets);
    std::vector<ScoredBox> kept;
    for (std::size_t idx : order) {
        const ScoredBox& cand = dets[idx];
        bool suppressed = false;
        for (const ScoredBox& k : kept) {
            if (k.label == cand.label && iou(k.box, cand.box) > iou_threshold) {
                suppressed = true;
                break;
            }
        }
        if (!suppressed) kept.push_back(cand);
    }
    return kept;
}

std::vector<std::optional<std::size_t>> greedy_match(std::span<const ScoredBox> pred,
                                                     std::span<const GtBox> gt,
                                                     double iou_threshold) {
    std::vector<std::optional<std::size_t>> match(pred.size());
    std::vector<bool> claimed(gt.size(), false);
    for (std::size_t idx : confidence_order(pred)) {
        double best_iou = 0.0;
        std::optional<std::size_t> best;
        for (std::size_t j = 0; j < gt.size(); ++j) {
            if (claimed[j] || gt[j].cls != pred[idx].label) continue;
            double v = iou(pred[idx].box, gt[j].box);
            if (v >= iou_threshold && v > best_iou) {
                best_iou = v;
                best = j;
            }
        }
        if (best) {
            claimed[*best] = true;
            match[idx] = best;
        }
    }
    return match;
}

std::vector<Box> apply_affine(std::span<const Box> boxes, const AffineTransform& t,
                              double image_width) {
    if (!(t.scale_x > 0.0) || !(t.scale_y > 0.0))
        throw InvalidConfig("apply_affine: scales must be positive");
    std::vector<Box> out;
    out.reserve(boxes.size());
    for (const Box& b : boxes) {
        auto fx = [&](double x) {
            return t.scale_x * (t.flip_x ? image_width - x : x) + t.translate_x;
        };
        auto fy = [&](double y) { return t.scale_y * y + t.translate_y; };
        out.push_back(normalize(Box{fx(b.x1), fy(b.y1), fx(b.x2), fy(b.y2)}));
    }
    return out;
}

}  // namespace pseudobox
