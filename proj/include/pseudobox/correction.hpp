#pragma once

#include <span>
#include <string>
#include <vector>

#include "pseudobox/jitter.hpp"
#include "pseudobox/scoring.hpp"

namespace pseudobox {

struct CorrectionConfig {
    int n_r = 2;
    JitterConfig jitter;
    double score_threshold = 0.7;
    double nms_iou = 0.5;
    // Algorithm votes with jittered boxes only; set to also include the
    // unjittered refined box among the voters.
    bool include_unjittered_vote = false;

    void validate() const;
};

// Rounds 0..n_r of refinement. Round 0 is the input; scores[0] holds the
// initial score vectors when known (may be empty vectors otherwise).
struct RefineHistory {
    std::vector<std::vector<Box>> boxes;
    std::vector<std::vector<std::vector<double>>> scores;

    int rounds() const { return static_cast<int>(boxes.size()) - 1; }
};

// D_cls = mean absolute foreground-confidence change between consecutive
// rounds; D_loc = 1 - mean IoU between consecutive rounds.
struct RoundDelta {
    double d_cls = 0.0;
    double d_loc = 0.0;
};

struct PseudoLabelSet {
    std::string image_id;
    std::vector<ScoredBox> labels;       // corrected boxes B_c with scores S^{n_r}
    std::vector<ScoredBox> uncorrected;  // filtered originals, for diagnostics
    int below_threshold_after_refine = 0;
};

RefineHistory multi_round_refine(const ScoringHead& head, const Scene& scene,
                                 std::vector<Box> b0, std::vector<std::vector<double>> s0,
                                 int n_r, SeededRng& rng);

// One entry per round r = 1..n_r; empty when the history holds no boxes.
std::vector<RoundDelta> stability_metrics(const RefineHistory& history);

// Jitter b, refine the jitters, average the refined boxes weighted by the
// score of the pseudo-label's class. Zero total weight falls back to the
// plain refinement of b.
Box multi_vote_weight(const ScoringHead& head, const Scene& scene, const Box& b, int label,
                      const JitterConfig& cfg, SeededRng& rng, bool include_unjittered = false);

// Full pipeline: threshold filter -> multi-round refine -> multi-vote
// weight -> clip to image. Class labels are frozen at input filtering;
// refined scores below the threshold are kept and counted.
PseudoLabelSet correct(const ScoringHead& head, const Scene& scene,
                       std::span<const ScoredBox> dets, const CorrectionConfig& cfg,
                       SeededRng& rng, RefineHistory* history_out = nullptr);

}  // namespace pseudobox
