#include "pseudobox/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pseudobox/errors.hpp"

namespace pseudobox {

void OracleParams::validate() const {
    if (!(kappa >= 0.0 && kappa <= 1.0)) throw InvalidConfig("oracle.kappa must be in [0,1]");
    if (!(tau >= 0.0)) throw InvalidConfig("oracle.tau must be >= 0");
    if (!(rho >= 0.0 && rho <= 1.0)) throw InvalidConfig("oracle.rho must be in [0,1]");
    if (!(score_noise >= 0.0)) throw InvalidConfig("oracle.score_noise must be >= 0");
}

RefineResult refine(const ScoringHead& head, const Scene& scene, std::span<const Box> boxes,
                    SeededRng& rng) {
    RefineResult result = head.refine(scene, boxes, rng);
    if (result.boxes.size() != boxes.size() || result.scores.size() != boxes.size())
        throw InvalidInput("scoring head returned mismatched output lengths");
    return result;
}

namespace {

std::vector<double> uniform_scores(int num_classes) {
    return std::vector<double>(static_cast<std::size_t>(num_classes) + 1,
                               1.0 / (num_classes + 1));
}

double center_dist2(const Box& a, const Box& b) {
    double dx = (a.x1 + a.x2 - b.x1 - b.x2) * 0.5;
    double dy = (a.y1 + a.y2 - b.y1 - b.y2) * 0.5;
    return dx * dx + dy * dy;
}

// Best-IoU GT, ties broken by nearest center, then by index.
std::size_t pick_target(const Scene& scene, const Box& b) {
    std::size_t best = 0;
    double best_iou = -1.0;
    double best_d2 = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < scene.gt.size(); ++j) {
        double v = iou(b, scene.gt[j].box);
        double d2 = center_dist2(b, scene.gt[j].box);
        if (v > best_iou || (v == best_iou && d2 < best_d2)) {
            best = j;
            best_iou = v;
            best_d2 = d2;
        }
    }
    return best;
}

}  // namespace

RefineResult oracle_refine(const OracleParams& params, const Scene& scene,
                           std::span<const Box> boxes, int num_classes, SeededRng& rng) {
    params.validate();
    RefineResult result;
    result.boxes.reserve(boxes.size());
    result.scores.reserve(boxes.size());
    for (const Box& b : boxes) {
        Box g = b;
        int g_cls = -1;
        if (!scene.gt.empty()) {
            std::size_t j = pick_target(scene, b);
            g = scene.gt[j].box;
            g_cls = scene.gt[j].cls;
        }
        double nx = params.tau * g.width();
        double ny = params.tau * g.height();
        Box refined{b.x1 + params.kappa * (g.x1 - b.x1) + rng.normal(0.0, nx),
                    b.y1 + params.kappa * (g.y1 - b.y1) + rng.normal(0.0, ny),
                    b.x2 + params.kappa * (g.x2 - b.x2) + rng.normal(0.0, nx),
                    b.y2 + params.kappa * (g.y2 - b.y2) + rng.normal(0.0, ny)};
        refined = normalize(refined);

        std::vector<double> scores(static_cast<std::size_t>(num_classes) + 1, 0.0);
        if (g_cls >= 0) {
            double u = rng.uniform();
            double eta = rng.normal(0.0, params.score_noise);
            double s = std::clamp(params.rho * iou(refined, g) + (1.0 - params.rho) * u + eta,
                                  0.0, 1.0);
            scores[static_cast<std::size_t>(g_cls)] = s;
            scores[static_cast<std::size_t>(num_classes)] = 1.0 - s;
        } else {
            // Background clutter: low score on a random class so the default
            // 0.7 threshold filters it out.
            std::size_t cls = rng.below(static_cast<std::uint64_t>(num_classes));
            double s = std::clamp(rng.uniform() * 0.3, 0.0, 1.0);
            scores[cls] = s;
            scores[static_cast<std::size_t>(num_classes)] = 1.0 - s;
        }
        result.boxes.push_back(refined);
        result.scores.push_back(std::move(scores));
    }
    return result;
}

OracleHead::OracleHead(OracleParams params, int num_classes)
    : params_(params), num_classes_(num_classes) {
    params_.validate();
    if (num_classes_ < 1) throw InvalidConfig("oracle head needs >= 1 foreground class");
}

RefineResult OracleHead::refine(const Scene& scene, std::span<const Box> boxes,
                                SeededRng& rng) const {
    return oracle_refine(params_, scene, boxes, num_classes_, rng);
}

RefineResult IdentityHead::refine(const Scene&, std::span<const Box> boxes, SeededRng&) const {
    RefineResult result;
    result.boxes.assign(boxes.begin(), boxes.end());
    result.scores.assign(boxes.size(), uniform_scores(num_classes_));
    return result;
}

RecordedHead::RecordedHead(std::vector<ImageRecord> trace, double match_tolerance)
    : trace_(std::move(trace)), tolerance_(match_tolerance), num_classes_(1) {
    for (const ImageRecord& rec : trace_)
        for (const DetRecord& d : rec.detections)
            num_classes_ = std::max(num_classes_, static_cast<int>(d.scores.size()) - 1);
}

RefineResult RecordedHead::refine(const Scene& scene, std::span<const Box> boxes,
                                  SeededRng&) const {
    const ImageRecord* rec = nullptr;
    for (const ImageRecord& r : trace_)
        if (r.image_id == scene.image_id) {
            rec = &r;
            break;
        }
    RefineResult result;
    for (const Box& b : boxes) {
        const DetRecord* best = nullptr;
        double best_dist = std::numeric_limits<double>::infinity();
        if (rec) {
            for (const DetRecord& d : rec->detections) {
                double dist = std::max({std::abs(d.box.x1 - b.x1), std::abs(d.box.y1 - b.y1),
                                        std::abs(d.box.x2 - b.x2), std::abs(d.box.y2 - b.y2)});
                if (dist < best_dist) {
                    best_dist = dist;
                    best = &d;
                }
            }
        }
        if (best && best_dist <= tolerance_) {
            result.boxes.push_back(best->box);
            std::vector<double> s = best->scores;
            s.resize(static_cast<std::size_t>(num_classes_) + 1, 0.0);
            result.scores.push_back(std::move(s));
        } else {
            result.boxes.push_back(b);
            result.scores.push_back(uniform_scores(num_classes_));
        }
    }
    return result;
}

}  // namespace pseudobox
