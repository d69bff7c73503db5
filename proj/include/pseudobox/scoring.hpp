#pragma once

#include <span>
#include <string>
#include <vector>

#include "pseudobox/box.hpp"
#include "pseudobox/exchange.hpp"
#include "pseudobox/rng.hpp"

namespace pseudobox {

struct Scene {
    std::string image_id;
    double width = 0.0;
    double height = 0.0;
    std::vector<GtBox> gt;
};

// Synthetic stand-in for a detector head.
//   kappa: fraction of the gap to the nearest GT closed per call.
//   tau: refinement noise std, as a fraction of the target GT's dimensions.
//   rho: score-IoU correlation; 1 makes scores equal to IoU-to-GT.
//   score_noise: std of additive score noise.
struct OracleParams {
    double kappa = 0.3;
    double tau = 0.02;
    double rho = 0.9;
    double score_noise = 0.02;

    void validate() const;
};

struct RefineResult {
    std::vector<Box> boxes;
    std::vector<std::vector<double>> scores;  // each length C+1, sums to 1
};

// The refine-and-score interface every corrector call goes through.
// Implementations must be safe for concurrent read-only use; per-call
// randomness comes in through the rng argument.
class ScoringHead {
public:
    virtual ~ScoringHead() = default;
    virtual RefineResult refine(const Scene& scene, std::span<const Box> boxes,
                                SeededRng& rng) const = 0;
    virtual int num_classes() const = 0;
};

// Choke point used by the corrector; validates the head's output shape.
RefineResult refine(const ScoringHead& head, const Scene& scene, std::span<const Box> boxes,
                    SeededRng& rng);

RefineResult oracle_refine(const OracleParams& params, const Scene& scene,
                           std::span<const Box> boxes, int num_classes, SeededRng& rng);

class OracleHead final : public ScoringHead {
public:
    OracleHead(OracleParams params, int num_classes);
    RefineResult refine(const Scene& scene, std::span<const Box> boxes,
                        SeededRng& rng) const override;
    int num_classes() const override { return num_classes_; }

private:
    OracleParams params_;
    int num_classes_;
};

// Returns inputs unchanged with uniform score vectors.
class IdentityHead final : public ScoringHead {
public:
    explicit IdentityHead(int num_classes) : num_classes_(num_classes) {}
    RefineResult refine(const Scene& scene, std::span<const Box> boxes,
                        SeededRng& rng) const override;
    int num_classes() const override { return num_classes_; }

private:
    int num_classes_;
};

// Replays refinements recorded in an exchange file. A query box is matched
// to the nearest recorded detection of the same image (max per-coordinate
// distance); within match_tolerance px the recorded box and scores are
// returned, otherwise the query box with a uniform score vector.
class RecordedHead final : public ScoringHead {
public:
    explicit RecordedHead(std::vector<ImageRecord> trace, double match_tolerance = 1e-3);
    RefineResult refine(const Scene& scene, std::span<const Box> boxes,
                        SeededRng& rng) const override;
    int num_classes() const override { return num_classes_; }

private:
    std::vector<ImageRecord> trace_;
    double tolerance_;
    int num_classes_;
};

}  // namespace pseudobox
