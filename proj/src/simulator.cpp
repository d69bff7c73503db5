#include "pseudobox/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <thread>

#include "pseudobox/errors.hpp"
#include "pseudobox/exchange.hpp"

namespace pseudobox {

void SceneSpec::validate() const {
    if (!(width > 0.0) || !(height > 0.0)) throw InvalidConfig("scene dimensions must be > 0");
    if (objects_min < 0 || objects_max < objects_min)
        throw InvalidConfig("scene.objects_min/objects_max invalid");
    if (!(size_min > 0.0 && size_min <= size_max && size_max <= 1.0))
        throw InvalidConfig("scene.size_min/size_max must satisfy 0 < min <= max <= 1");
    if (classes < 1) throw InvalidConfig("scene.classes must be >= 1");
    if (!(max_overlap >= 0.0 && max_overlap <= 1.0))
        throw InvalidConfig("scene.max_overlap must be in [0,1]");
}

void DetectionNoiseSpec::validate() const {
    if (!(loc_std >= 0.0)) throw InvalidConfig("noise.loc_std must be >= 0");
    if (!(misclass_rate >= 0.0 && misclass_rate <= 1.0))
        throw InvalidConfig("noise.misclass_rate must be in [0,1]");
    if (!(miss_rate >= 0.0 && miss_rate <= 1.0))
        throw InvalidConfig("noise.miss_rate must be in [0,1]");
    if (!(fp_rate >= 0.0)) throw InvalidConfig("noise.fp_rate must be >= 0");
    if (!(rho >= 0.0 && rho <= 1.0)) throw InvalidConfig("noise.rho must be in [0,1]");
    if (!(score_noise >= 0.0)) throw InvalidConfig("noise.score_noise must be >= 0");
    if (!(nms_iou >= 0.0 && nms_iou <= 1.0)) throw InvalidConfig("noise.nms_iou must be in [0,1]");
}

std::vector<double> ap_thresholds() {
    std::vector<double> t;
    for (int i = 0; i < 10; ++i) t.push_back(0.5 + 0.05 * i);
    return t;
}

Scene generate_scene(const SceneSpec& spec, SeededRng& rng) {
    spec.validate();
    Scene scene;
    scene.width = spec.width;
    scene.height = spec.height;
    int target = spec.objects_min +
                 static_cast<int>(rng.below(
                     static_cast<std::uint64_t>(spec.objects_max - spec.objects_min + 1)));
    for (int i = 0; i < target; ++i) {
        bool placed = false;
        for (int attempt = 0; attempt < 1000 && !placed; ++attempt) {
            double w = (spec.size_min + (spec.size_max - spec.size_min) * rng.uniform()) *
                       spec.width;
            double h = (spec.size_min + (spec.size_max - spec.size_min) * rng.uniform()) *
                       spec.height;
            double x1 = rng.uniform() * (spec.width - w);
            double y1 = rng.uniform() * (spec.height - h);
            Box b{x1, y1, x1 + w, y1 + h};
            bool ok = true;
            for (const GtBox& g : scene.gt)
                if (iou(b, g.box) > spec.max_overlap) {
                    ok = false;
                    break;
                }
            if (ok) {
                GtBox g;
                g.box = b;
                g.cls = static_cast<int>(rng.below(static_cast<std::uint64_t>(spec.classes)));
                scene.gt.push_back(g);
                placed = true;
            }
        }
        // unsatisfiable overlap policy degrades the object count
    }
    return scene;
}

std::vector<ScoredBox> generate_detections(const Scene& scene, const DetectionNoiseSpec& noise,
                                           SeededRng& rng, int num_classes) {
    noise.validate();
    // score vectors must cover every class the scene can produce
    for (const GtBox& g : scene.gt) num_classes = std::max(num_classes, g.cls + 1);
    num_classes = std::max(num_classes, 1);

    std::vector<ScoredBox> dets;
    for (const GtBox& g : scene.gt) {
        if (rng.uniform() < noise.miss_rate) continue;
        double nx = noise.loc_std * g.box.width();
        double ny = noise.loc_std * g.box.height();
        Box b = normalize(Box{g.box.x1 + rng.normal(0.0, nx), g.box.y1 + rng.normal(0.0, ny),
                              g.box.x2 + rng.normal(0.0, nx), g.box.y2 + rng.normal(0.0, ny)});
        int cls = g.cls;
        if (num_classes > 1 && rng.uniform() < noise.misclass_rate) {
            int other = static_cast<int>(rng.below(static_cast<std::uint64_t>(num_classes - 1)));
            cls = other >= g.cls ? other + 1 : other;
        }
        double u = rng.uniform();
        double eta = rng.normal(0.0, noise.score_noise);
        double s = std::clamp(noise.rho * iou(b, g.box) + (1.0 - noise.rho) * u + eta, 0.0, 1.0);
        ScoredBox det;
        det.box = b;
        det.scores.assign(static_cast<std::size_t>(num_classes) + 1, 0.0);
        det.scores[static_cast<std::size_t>(cls)] = s;
        det.scores[static_cast<std::size_t>(num_classes)] = 1.0 - s;
        det.label = cls;
        dets.push_back(std::move(det));
    }

    int fp_count = rng.poisson(noise.fp_rate);
    for (int i = 0; i < fp_count; ++i) {
        double w = (0.05 + 0.25 * rng.uniform()) * scene.width;
        double h = (0.05 + 0.25 * rng.uniform()) * scene.height;
        double x1 = rng.uniform() * (scene.width - w);
        double y1 = rng.uniform() * (scene.height - h);
        int cls = static_cast<int>(rng.below(static_cast<std::uint64_t>(num_classes)));
        double s = rng.uniform() * 0.3;
        ScoredBox det;
        det.box = Box{x1, y1, x1 + w, y1 + h};
        det.scores.assign(static_cast<std::size_t>(num_classes) + 1, 0.0);
        det.scores[static_cast<std::size_t>(cls)] = s;
        det.scores[static_cast<std::size_t>(num_classes)] = 1.0 - s;
        det.label = cls;
        dets.push_back(std::move(det));
    }
    return nms(dets, noise.nms_iou);
}

namespace {

// All-points interpolated AP from ranked true-positive flags.
double average_precision(const std::vector<bool>& tp_ranked, int n_gt) {
    if (n_gt == 0) return 0.0;
    std::size_t n = tp_ranked.size();
    std::vector<double> prec(n), rec(n);
    int cum_tp = 0;
    for (std::size_t k = 0; k < n; ++k) {
        if (tp_ranked[k]) ++cum_tp;
        prec[k] = static_cast<double>(cum_tp) / static_cast<double>(k + 1);
        rec[k] = static_cast<double>(cum_tp) / static_cast<double>(n_gt);
    }
    // precision envelope from the right
    for (std::size_t k = n; k-- > 1;) prec[k - 1] = std::max(prec[k - 1], prec[k]);
    double ap = 0.0;
    double prev_rec = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        if (rec[k] > prev_rec) {
            ap += (rec[k] - prev_rec) * prec[k];
            prev_rec = rec[k];
        }
    }
    return ap;
}

double class_ap(std::span<const ScoredBox> pseudo, std::span<const GtBox> gt, int cls,
                double threshold) {
    std::vector<ScoredBox> preds;
    for (const ScoredBox& p : pseudo)
        if (p.label == cls) preds.push_back(p);
    std::vector<GtBox> gts;
    for (const GtBox& g : gt)
        if (g.cls == cls) gts.push_back(g);
    if (gts.empty()) return 0.0;
    auto match = greedy_match(preds, gts, threshold);
    std::vector<std::size_t> order(preds.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return preds[i].foreground_confidence() > preds[j].foreground_confidence();
    });
    std::vector<bool> tp_ranked;
    tp_ranked.reserve(preds.size());
    for (std::size_t idx : order) tp_ranked.push_back(match[idx].has_value());
    return average_precision(tp_ranked, static_cast<int>(gts.size()));
}

}  // namespace

SceneMetrics evaluate(std::span<const ScoredBox> pseudo, const Scene& scene) {
    SceneMetrics m;
    auto match = greedy_match(pseudo, scene.gt, 0.5);
    std::map<int, std::pair<double, int>> per_class;  // cls -> (iou sum, count)
    for (std::size_t i = 0; i < pseudo.size(); ++i) {
        if (match[i]) {
            double v = iou(pseudo[i].box, scene.gt[*match[i]].box);
            m.matched_iou_sum += v;
            ++m.matched;
            auto& pc = per_class[pseudo[i].label];
            pc.first += v;
            ++pc.second;
        }
    }
    m.mean_matched_iou = m.matched > 0 ? m.matched_iou_sum / m.matched : 0.0;
    for (const auto& [cls, acc] : per_class) m.per_class_iou[cls] = acc.first / acc.second;
    m.tp = m.matched;
    m.fp = static_cast<int>(pseudo.size()) - m.tp;
    m.fn = static_cast<int>(scene.gt.size()) - m.tp;
    m.precision = pseudo.empty() ? 0.0 : static_cast<double>(m.tp) / pseudo.size();
    m.recall = scene.gt.empty() ? 0.0 : static_cast<double>(m.tp) / scene.gt.size();

    if (!scene.gt.empty()) {
        m.ap_defined = true;
        std::vector<int> classes;
        for (const GtBox& g : scene.gt)
            if (std::find(classes.begin(), classes.end(), g.cls) == classes.end())
                classes.push_back(g.cls);
        std::sort(classes.begin(), classes.end());
        for (double t : ap_thresholds()) {
            double sum = 0.0;
            for (int cls : classes) sum += class_ap(pseudo, scene.gt, cls, t);
            m.ap.push_back(sum / static_cast<double>(classes.size()));
        }
        m.ap50 = m.ap[0];
        m.ap75 = m.ap[5];
        m.ap_coco = std::accumulate(m.ap.begin(), m.ap.end(), 0.0) / m.ap.size();
    }
    return m;
}

SceneMetrics evaluate(const PseudoLabelSet& pseudo, const Scene& scene) {
    return evaluate(std::span<const ScoredBox>(pseudo.labels), scene);
}

std::string sweep_axis_name(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::None: return "none";
        case SweepAxis::SigmaJ: return "sigma_j";
        case SweepAxis::Lambda: return "lambda";
        case SweepAxis::NR: return "n_r";
        case SweepAxis::NJ: return "n_j";
        case SweepAxis::Rho: return "rho";
    }
    return "none";
}

SweepAxis sweep_axis_from_name(const std::string& name) {
    if (name == "none") return SweepAxis::None;
    if (name == "sigma_j") return SweepAxis::SigmaJ;
    if (name == "lambda") return SweepAxis::Lambda;
    if (name == "n_r") return SweepAxis::NR;
    if (name == "n_j") return SweepAxis::NJ;
    if (name == "rho") return SweepAxis::Rho;
    throw InvalidConfig("unknown sweep axis: " + name);
}

std::vector<double> default_sweep_values(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::None: return {};
        case SweepAxis::SigmaJ: return {0.03, 0.06, 0.1, 0.15, 0.30};
        case SweepAxis::Lambda: return {1.0, 3.0, 5.0, 7.0};
        case SweepAxis::NR: return {0.0, 1.0, 2.0, 3.0, 4.0};
        case SweepAxis::NJ: return {1.0, 5.0, 10.0, 20.0};
        case SweepAxis::Rho: return {0.0, 0.5, 0.9, 1.0};
    }
    return {};
}

void ExperimentConfig::validate() const {
    scene.validate();
    noise.validate();
    oracle.validate();
    correction.validate();
    reg_mode.validate();
    if (scene_count < 0) throw InvalidConfig("run.scenes must be >= 0");
    if (workers < 1) throw InvalidConfig("run.workers must be >= 1");
}

namespace {

struct CorrPartial {
    double n = 0.0, sx = 0.0, sy = 0.0, sxx = 0.0, syy = 0.0, sxy = 0.0;
};

struct SceneResult {
    SceneMetrics before;
    SceneMetrics after;
    std::vector<RoundDelta> deltas;
    bool has_pseudo = false;
    bool has_gt = false;
    CorrPartial corr;
    double reg_loss = 0.0;  // per-pair mean
    double cls_loss = 0.0;
    int below_threshold = 0;
};

ExperimentConfig apply_sweep(const ExperimentConfig& cfg, SweepAxis axis, double value) {
    ExperimentConfig e = cfg;
    switch (axis) {
        case SweepAxis::None: break;
        case SweepAxis::SigmaJ: e.correction.jitter.sigma_j = value; break;
        case SweepAxis::Lambda: e.reg_mode.lambda = value; break;
        case SweepAxis::NR: e.correction.n_r = static_cast<int>(value); break;
        case SweepAxis::NJ: e.correction.jitter.n_j = static_cast<int>(value); break;
        case SweepAxis::Rho: e.oracle.rho = value; break;
    }
    return e;
}

std::string scene_image_id(int index) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "scene_%06d", index);
    return buf;
}

SceneResult run_scene(const ExperimentConfig& cfg, const ScoringHead& head, int index) {
    SeededRng master(cfg.master_seed);
    std::string id = scene_image_id(index);
    SceneResult res;

    SeededRng gen_rng = master.derive(id + "/gen");
    Scene scene = generate_scene(cfg.scene, gen_rng);
    scene.image_id = id;
    res.has_gt = !scene.gt.empty();

    SeededRng det_rng = master.derive(id + "/det");
    std::vector<ScoredBox> dets = generate_detections(scene, cfg.noise, det_rng, head.num_classes());

    SeededRng cor_rng = master.derive(id + "/correct");
    RefineHistory history;
    PseudoLabelSet pseudo = correct(head, scene, dets, cfg.correction, cor_rng, &history);
    res.below_threshold = pseudo.below_threshold_after_refine;
    res.has_pseudo = !pseudo.labels.empty();

    std::vector<ScoredBox> baseline = pseudo.uncorrected;
    for (ScoredBox& b : baseline) b.box = clip(b.box, scene.width, scene.height);

    res.before = evaluate(baseline, scene);
    res.after = evaluate(pseudo, scene);

    if (res.has_pseudo && cfg.correction.n_r >= 1) res.deltas = stability_metrics(history);

    if (res.has_pseudo) {
        std::vector<Box> student, teacher;
        std::vector<std::vector<double>> student_s, teacher_s;
        for (std::size_t i = 0; i < pseudo.labels.size(); ++i) {
            student.push_back(pseudo.uncorrected[i].box);
            student_s.push_back(pseudo.uncorrected[i].scores);
            teacher.push_back(cfg.label_mode == RegLabelMode::Hard
                                  ? pseudo.labels[i].box
                                  : history.boxes.back()[i]);
            teacher_s.push_back(pseudo.labels[i].scores);
        }
        double n = static_cast<double>(pseudo.labels.size());
        res.reg_loss = unsup_reg_loss(student, teacher, cfg.reg_mode).value / n;
        res.cls_loss = unsup_cls_loss(student_s, teacher_s).value / n;

        auto match = greedy_match(pseudo.labels, scene.gt, 0.5);
        for (std::size_t i = 0; i < pseudo.labels.size(); ++i) {
            double x = pseudo.labels[i].foreground_confidence();
            double y = match[i] ? iou(pseudo.labels[i].box, scene.gt[*match[i]].box) : 0.0;
            res.corr.n += 1.0;
            res.corr.sx += x;
            res.corr.sy += y;
            res.corr.sxx += x * x;
            res.corr.syy += y * y;
            res.corr.sxy += x * y;
        }
    }
    return res;
}

ArmStats reduce_arm(const std::vector<SceneResult>& results, bool after) {
    ArmStats arm;
    double iou_sum = 0.0;
    long matched = 0, tp = 0, fp = 0, fn = 0;
    double ap50 = 0.0, ap75 = 0.0, ap_coco = 0.0;
    int ap_scenes = 0;
    for (const SceneResult& r : results) {
        const SceneMetrics& m = after ? r.after : r.before;
        iou_sum += m.matched_iou_sum;
        matched += m.matched;
        tp += m.tp;
        fp += m.fp;
        fn += m.fn;
        if (m.ap_defined) {
            ap50 += m.ap50;
            ap75 += m.ap75;
            ap_coco += m.ap_coco;
            ++ap_scenes;
        }
    }
    arm.mean_iou = matched > 0 ? iou_sum / static_cast<double>(matched) : 0.0;
    if (ap_scenes > 0) {
        arm.ap50 = ap50 / ap_scenes;
        arm.ap75 = ap75 / ap_scenes;
        arm.ap_coco = ap_coco / ap_scenes;
    }
    arm.precision = tp + fp > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 0.0;
    arm.recall = tp + fn > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
    return arm;
}

ReportRow reduce_row(const ExperimentConfig& ecfg, const std::vector<SceneResult>& results) {
    ReportRow row;
    row.scenes = static_cast<int>(results.size());
    for (const SceneResult& r : results) {
        if (!r.has_gt) ++row.scenes_without_gt;
        if (!r.has_pseudo) ++row.scenes_without_pseudo;
        row.kept_below_threshold += r.below_threshold;
    }
    row.before = reduce_arm(results, false);
    row.after = reduce_arm(results, true);
    row.iou_improvement = row.after.mean_iou - row.before.mean_iou;

    int rounds = ecfg.correction.n_r;
    row.d_cls_mean.assign(static_cast<std::size_t>(rounds), 0.0);
    row.d_cls_std.assign(static_cast<std::size_t>(rounds), 0.0);
    row.d_loc_mean.assign(static_cast<std::size_t>(rounds), 0.0);
    row.d_loc_std.assign(static_cast<std::size_t>(rounds), 0.0);
    for (int r = 0; r < rounds; ++r) {
        double sc = 0.0, sc2 = 0.0, sl = 0.0, sl2 = 0.0;
        int n = 0;
        for (const SceneResult& sr : results) {
            if (static_cast<int>(sr.deltas.size()) <= r) continue;
            double c = sr.deltas[static_cast<std::size_t>(r)].d_cls;
            double l = sr.deltas[static_cast<std::size_t>(r)].d_loc;
            sc += c;
            sc2 += c * c;
            sl += l;
            sl2 += l * l;
            ++n;
        }
        if (n > 0) {
            double mc = sc / n, ml = sl / n;
            row.d_cls_mean[static_cast<std::size_t>(r)] = mc;
            row.d_loc_mean[static_cast<std::size_t>(r)] = ml;
            row.d_cls_std[static_cast<std::size_t>(r)] =
                std::sqrt(std::max(0.0, sc2 / n - mc * mc));
            row.d_loc_std[static_cast<std::size_t>(r)] =
                std::sqrt(std::max(0.0, sl2 / n - ml * ml));
        }
    }

    CorrPartial c;
    double reg = 0.0, cls = 0.0;
    int loss_scenes = 0;
    for (const SceneResult& r : results) {
        c.n += r.corr.n;
        c.sx += r.corr.sx;
        c.sy += r.corr.sy;
        c.sxx += r.corr.sxx;
        c.syy += r.corr.syy;
        c.sxy += r.corr.sxy;
        if (r.has_pseudo) {
            reg += r.reg_loss;
            cls += r.cls_loss;
            ++loss_scenes;
        }
    }
    if (c.n > 1.0) {
        double cov = c.sxy - c.sx * c.sy / c.n;
        double vx = c.sxx - c.sx * c.sx / c.n;
        double vy = c.syy - c.sy * c.sy / c.n;
        row.score_iou_corr = vx > 0.0 && vy > 0.0 ? cov / std::sqrt(vx * vy) : 0.0;
    }
    if (loss_scenes > 0) {
        row.mean_reg_loss = reg / loss_scenes;
        row.mean_cls_loss = cls / loss_scenes;
    }
    return row;
}

std::vector<SceneResult> run_scenes(const ExperimentConfig& ecfg, const ScoringHead& head) {
    std::vector<SceneResult> results(static_cast<std::size_t>(ecfg.scene_count));
    int workers = std::min(ecfg.workers, std::max(1, ecfg.scene_count));
    if (workers <= 1) {
        for (int i = 0; i < ecfg.scene_count; ++i)
            results[static_cast<std::size_t>(i)] = run_scene(ecfg, head, i);
    } else {
        std::vector<std::thread> threads;
        for (int t = 0; t < workers; ++t) {
            threads.emplace_back([&, t] {
                for (int i = t; i < ecfg.scene_count; i += workers)
                    results[static_cast<std::size_t>(i)] = run_scene(ecfg, head, i);
            });
        }
        for (std::thread& th : threads) th.join();
    }
    return results;
}

}  // namespace

std::vector<std::pair<std::string, std::string>> experiment_config_echo(
    const ExperimentConfig& cfg) {
    std::vector<std::pair<std::string, std::string>> e;
    auto num = [&](const std::string& k, double v) { e.emplace_back(k, format_g9(v)); };
    auto str = [&](const std::string& k, const std::string& v) { e.emplace_back(k, v); };
    num("scene.width", cfg.scene.width);
    num("scene.height", cfg.scene.height);
    num("scene.objects_min", cfg.scene.objects_min);
    num("scene.objects_max", cfg.scene.objects_max);
    num("scene.size_min", cfg.scene.size_min);
    num("scene.size_max", cfg.scene.size_max);
    num("scene.classes", cfg.scene.classes);
    num("scene.max_overlap", cfg.scene.max_overlap);
    num("noise.loc_std", cfg.noise.loc_std);
    num("noise.misclass_rate", cfg.noise.misclass_rate);
    num("noise.miss_rate", cfg.noise.miss_rate);
    num("noise.fp_rate", cfg.noise.fp_rate);
    num("noise.rho", cfg.noise.rho);
    num("noise.score_noise", cfg.noise.score_noise);
    num("noise.nms_iou", cfg.noise.nms_iou);
    num("oracle.kappa", cfg.oracle.kappa);
    num("oracle.tau", cfg.oracle.tau);
    num("oracle.rho", cfg.oracle.rho);
    num("oracle.score_noise", cfg.oracle.score_noise);
    num("correction.n_r", cfg.correction.n_r);
    num("correction.score_threshold", cfg.correction.score_threshold);
    num("correction.nms_iou", cfg.correction.nms_iou);
    str("correction.include_unjittered_vote",
        cfg.correction.include_unjittered_vote ? "true" : "false");
    num("jitter.n_j", cfg.correction.jitter.n_j);
    num("jitter.sigma_j", cfg.correction.jitter.sigma_j);
    str("jitter.mode", cfg.correction.jitter.mode == JitterMode::DimensionRelative
                           ? "dimension-relative"
                           : "literal-coordinate");
    str("loss.weight_mode", cfg.reg_mode.kind == RegWeightKind::Uniform   ? "uniform"
                            : cfg.reg_mode.kind == RegWeightKind::Iou     ? "iou"
                                                                          : "inverse-iou");
    num("loss.lambda", cfg.reg_mode.lambda);
    str("loss.label_mode", cfg.label_mode == RegLabelMode::Hard ? "hard" : "soft");
    num("run.scenes", cfg.scene_count);
    // run.workers is an execution detail, not part of the experiment
    // identity; leaving it out keeps reports byte-identical across
    // worker counts.
    str("sweep.axis", sweep_axis_name(cfg.sweep_axis));
    return e;
}

namespace {

ExperimentReport run_experiment_impl(const ExperimentConfig& cfg, const ScoringHead* fixed_head) {
    cfg.validate();
    ExperimentReport report;
    report.master_seed = cfg.master_seed;
    report.config_echo = experiment_config_echo(cfg);

    std::vector<double> values = cfg.sweep_values;
    if (cfg.sweep_axis != SweepAxis::None && values.empty())
        values = default_sweep_values(cfg.sweep_axis);
    if (cfg.sweep_axis == SweepAxis::None) values = {0.0};

    for (double v : values) {
        ExperimentConfig ecfg = apply_sweep(cfg, cfg.sweep_axis, v);
        ecfg.validate();
        std::vector<SceneResult> results;
        if (fixed_head) {
            results = run_scenes(ecfg, *fixed_head);
        } else {
            OracleHead head(ecfg.oracle, ecfg.scene.classes);
            results = run_scenes(ecfg, head);
        }
        ReportRow row = reduce_row(ecfg, results);
        row.axis = cfg.sweep_axis;
        row.sweep_value = v;
        report.rows.push_back(std::move(row));
    }
    return report;
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
    return run_experiment_impl(cfg, nullptr);
}

ExperimentReport run_experiment(const ExperimentConfig& cfg, const ScoringHead& head) {
    return run_experiment_impl(cfg, &head);
}

}  // namespace pseudobox
