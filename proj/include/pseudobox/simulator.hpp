#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "pseudobox/correction.hpp"
#include "pseudobox/loss.hpp"
#include "pseudobox/scoring.hpp"

namespace pseudobox {

struct SceneSpec {
    double width = 512.0;
    double height = 512.0;
    int objects_min = 2;
    int objects_max = 6;
    double size_min = 0.1;   // box side, fraction of image side
    double size_max = 0.35;
    int classes = 5;
    double max_overlap = 0.3;  // max pairwise GT IoU, enforced by rejection

    void validate() const;
};

struct DetectionNoiseSpec {
    double loc_std = 0.05;        // corner noise, fraction of box dims
    double misclass_rate = 0.05;
    double miss_rate = 0.1;
    double fp_rate = 1.0;         // Poisson mean false positives per scene
    double rho = 0.9;             // score-IoU correlation of initial scores
    double score_noise = 0.02;
    double nms_iou = 0.5;

    void validate() const;
};

// IoU thresholds the AP block is evaluated at: 0.5, 0.55, ..., 0.95.
std::vector<double> ap_thresholds();

struct SceneMetrics {
    double matched_iou_sum = 0.0;  // over threshold-0.5 matches
    int matched = 0;
    double mean_matched_iou = 0.0;
    std::vector<double> ap;        // per ap_thresholds(); empty GT -> undefined
    bool ap_defined = false;
    double ap50 = 0.0;
    double ap75 = 0.0;
    double ap_coco = 0.0;          // mean over the threshold grid
    int tp = 0, fp = 0, fn = 0;    // at IoU 0.5
    double precision = 0.0;
    double recall = 0.0;
    std::map<int, double> per_class_iou;  // mean matched IoU per class
};

Scene generate_scene(const SceneSpec& spec, SeededRng& rng);

// num_classes 0 infers the class count from the scene's GT labels.
std::vector<ScoredBox> generate_detections(const Scene& scene, const DetectionNoiseSpec& noise,
                                           SeededRng& rng, int num_classes = 0);

SceneMetrics evaluate(std::span<const ScoredBox> pseudo, const Scene& scene);
SceneMetrics evaluate(const PseudoLabelSet& pseudo, const Scene& scene);

enum class SweepAxis { None, SigmaJ, Lambda, NR, NJ, Rho };

std::string sweep_axis_name(SweepAxis axis);
SweepAxis sweep_axis_from_name(const std::string& name);
std::vector<double> default_sweep_values(SweepAxis axis);

struct ExperimentConfig {
    SceneSpec scene;
    DetectionNoiseSpec noise;
    OracleParams oracle;
    CorrectionConfig correction;
    RegWeightMode reg_mode;
    RegLabelMode label_mode = RegLabelMode::Hard;
    int scene_count = 200;
    std::uint64_t master_seed = 42;
    int workers = 1;
    SweepAxis sweep_axis = SweepAxis::None;
    std::vector<double> sweep_values;

    void validate() const;
};

struct ArmStats {
    double mean_iou = 0.0;
    double ap50 = 0.0;
    double ap75 = 0.0;
    double ap_coco = 0.0;
    double precision = 0.0;
    double recall = 0.0;
};

struct ReportRow {
    SweepAxis axis = SweepAxis::None;
    double sweep_value = 0.0;
    int scenes = 0;
    int scenes_without_gt = 0;     // excluded from AP averaging
    int scenes_without_pseudo = 0; // excluded from stability metrics
    std::vector<double> d_cls_mean, d_cls_std;
    std::vector<double> d_loc_mean, d_loc_std;
    ArmStats before;  // filtered detections, no correction
    ArmStats after;   // corrected pseudo-labels
    double iou_improvement = 0.0;
    double score_iou_corr = 0.0;
    double mean_reg_loss = 0.0;
    double mean_cls_loss = 0.0;
    long kept_below_threshold = 0;
};

struct ExperimentReport {
    std::uint64_t master_seed = 0;
    std::vector<std::pair<std::string, std::string>> config_echo;
    std::vector<ReportRow> rows;
};

// key = value listing of every knob, reused in report headers.
std::vector<std::pair<std::string, std::string>> experiment_config_echo(
    const ExperimentConfig& cfg);

// Paired design: both arms of every row consume identical scene and
// detection randomness, so the metric deltas isolate the correction
// effect. Results are identical for any worker count.
ExperimentReport run_experiment(const ExperimentConfig& cfg);
ExperimentReport run_experiment(const ExperimentConfig& cfg, const ScoringHead& head);

}  // namespace pseudobox
