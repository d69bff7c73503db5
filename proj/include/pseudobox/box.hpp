#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace pseudobox {

// Axis-aligned rectangle, image pixel coordinates, 64-bit floats.
// Normalized means x1 <= x2 and y1 <= y2; zero-area boxes are legal and
// have IoU 0 against everything.
struct Box {
    double x1 = 0.0;
    double y1 = 0.0;
    double x2 = 0.0;
    double y2 = 0.0;

    double width() const { return x2 - x1; }
    double height() const { return y2 - y1; }
    double area() const { return width() * height(); }
    bool is_finite() const;
    bool is_normalized() const { return x1 <= x2 && y1 <= y2; }

    bool operator==(const Box&) const = default;
};

// Sorts corners so the result is normalized.
Box normalize(const Box& b);

// Clamps all coordinates into [0,width] x [0,height].
Box clip(const Box& b, double width, double height);

// Detection: a box plus a probability vector of length C+1.
// Layout: scores[0..C-1] are the foreground classes, scores[C] background.
struct ScoredBox {
    Box box;
    std::vector<double> scores;
    int label = 0;  // argmax foreground class

    double foreground_confidence() const;
};

// Index of the highest-scoring foreground class (background entry excluded).
int argmax_foreground(const std::vector<double>& scores);

struct GtBox {
    Box box;
    int cls = 0;
};

// scale, translate, and an optional horizontal flip within the image width.
// Forward map: x' = scale_x * (flip_x ? width - x : x) + translate_x.
struct AffineTransform {
    double scale_x = 1.0;
    double scale_y = 1.0;
    double translate_x = 0.0;
    double translate_y = 0.0;
    bool flip_x = false;

    // Inverse transform; apply it with image width scale_x * original width.
    AffineTransform inverse() const;
};

double iou(const Box& a, const Box& b);

std::vector<std::vector<double>> pairwise_iou(std::span<const Box> a, std::span<const Box> b);

// Greedy per-class NMS. Output sorted by descending foreground confidence,
// ties broken by input index.
std::vector<ScoredBox> nms(std::span<const ScoredBox> dets, double iou_threshold);

// Predictions in descending confidence greedily claim the unclaimed
// same-class GT with the highest IoU >= threshold. Returns, per prediction
// (input order), the matched GT index or nullopt.
std::vector<std::optional<std::size_t>> greedy_match(std::span<const ScoredBox> pred,
                                                     std::span<const GtBox> gt,
                                                     double iou_threshold);

std::vector<Box> apply_affine(std::span<const Box> boxes, const AffineTransform& t,
                              double image_width);

}  // namespace pseudobox
