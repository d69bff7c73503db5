#include "pseudobox/correction.hpp"

#include <cmath>

#include "pseudobox/errors.hpp"

namespace pseudobox {

void CorrectionConfig::validate() const {
    if (n_r < 0) throw InvalidConfig("correction.n_r must be >= 0");
    jitter.validate();
    if (!(score_threshold >= 0.0 && score_threshold <= 1.0))
        throw InvalidConfig("correction.score_threshold must be in [0,1]");
    if (!(nms_iou >= 0.0 && nms_iou <= 1.0))
        throw InvalidConfig("correction.nms_iou must be in [0,1]");
}

RefineHistory multi_round_refine(const ScoringHead& head, const Scene& scene,
                                 std::vector<Box> b0, std::vector<std::vector<double>> s0,
                                 int n_r, SeededRng& rng) {
    if (!s0.empty() && s0.size() != b0.size())
        throw InvalidInput("multi_round_refine: initial scores length mismatch");
    if (s0.empty()) s0.assign(b0.size(), {});
    RefineHistory history;
    history.boxes.push_back(std::move(b0));
    history.scores.push_back(std::move(s0));
    for (int r = 1; r <= n_r; ++r) {
        RefineResult result = refine(head, scene, history.boxes.back(), rng);
        history.boxes.push_back(std::move(result.boxes));
        history.scores.push_back(std::move(result.scores));
    }
    return history;
}

namespace {

double fg_confidence(const std::vector<double>& scores) {
    double best = 0.0;
    for (std::size_t c = 0; c + 1 < scores.size(); ++c) best = std::max(best, scores[c]);
    return best;
}

}  // namespace

std::vector<RoundDelta> stability_metrics(const RefineHistory& history) {
    if (history.rounds() < 1) throw InvalidInput("stability_metrics: history needs >= 2 rounds");
    std::size_t n = history.boxes.front().size();
    if (n == 0) return {};
    std::vector<RoundDelta> deltas;
    for (int r = 1; r <= history.rounds(); ++r) {
        const auto& prev_s = history.scores[static_cast<std::size_t>(r) - 1];
        const auto& cur_s = history.scores[static_cast<std::size_t>(r)];
        const auto& prev_b = history.boxes[static_cast<std::size_t>(r) - 1];
        const auto& cur_b = history.boxes[static_cast<std::size_t>(r)];
        RoundDelta d;
        for (std::size_t i = 0; i < n; ++i) {
            if (prev_s[i].empty() || cur_s[i].empty())
                throw InvalidInput("stability_metrics: missing scores for round " +
                                   std::to_string(r));
            d.d_cls += std::abs(fg_confidence(cur_s[i]) - fg_confidence(prev_s[i]));
            d.d_loc += iou(cur_b[i], prev_b[i]);
        }
        d.d_cls /= static_cast<double>(n);
        d.d_loc = 1.0 - d.d_loc / static_cast<double>(n);
        deltas.push_back(d);
    }
    return deltas;
}

Box multi_vote_weight(const ScoringHead& head, const Scene& scene, const Box& b, int label,
                      const JitterConfig& cfg, SeededRng& rng, bool include_unjittered) {
    std::vector<Box> voters = jitter_box(b, cfg, rng);
    if (include_unjittered) voters.push_back(b);
    RefineResult result = refine(head, scene, voters, rng);
    double total = 0.0;
    for (const auto& s : result.scores) total += s[static_cast<std::size_t>(label)];
    if (total <= 0.0) {
        std::vector<Box> one{b};
        return refine(head, scene, one, rng).boxes.front();
    }
    Box out{0.0, 0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < result.boxes.size(); ++i) {
        double w = result.scores[i][static_cast<std::size_t>(label)] / total;
        out.x1 += w * result.boxes[i].x1;
        out.y1 += w * result.boxes[i].y1;
        out.x2 += w * result.boxes[i].x2;
        out.y2 += w * result.boxes[i].y2;
    }
    return normalize(out);
}

PseudoLabelSet correct(const ScoringHead& head, const Scene& scene,
                       std::span<const ScoredBox> dets, const CorrectionConfig& cfg,
                       SeededRng& rng, RefineHistory* history_out) {
    cfg.validate();
    PseudoLabelSet out;
    out.image_id = scene.image_id;

    std::vector<Box> boxes;
    std::vector<std::vector<double>> scores;
    std::vector<int> labels;
    for (const ScoredBox& d : dets) {
        if (d.foreground_confidence() >= cfg.score_threshold) {
            boxes.push_back(d.box);
            scores.push_back(d.scores);
            labels.push_back(argmax_foreground(d.scores));
            out.uncorrected.push_back(d);
            out.uncorrected.back().label = labels.back();
        }
    }

    RefineHistory history =
        multi_round_refine(head, scene, std::move(boxes), std::move(scores), cfg.n_r, rng);

    const auto& final_boxes = history.boxes.back();
    const auto& final_scores = history.scores.back();
    for (std::size_t i = 0; i < final_boxes.size(); ++i) {
        Box corrected = multi_vote_weight(head, scene, final_boxes[i], labels[i], cfg.jitter,
                                          rng, cfg.include_unjittered_vote);
        ScoredBox label;
        label.box = clip(corrected, scene.width, scene.height);
        label.scores = final_scores[i];
        label.label = labels[i];
        if (label.foreground_confidence() < cfg.score_threshold)
            ++out.below_threshold_after_refine;
        out.labels.push_back(std::move(label));
    }
    if (history_out) *history_out = std::move(history);
    return out;
}

}  // namespace pseudobox
