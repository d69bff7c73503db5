#include "pseudobox/loss.hpp"

#include <algorithm>
#include <cmath>

#include "pseudobox/errors.hpp"

namespace pseudobox {

void RegWeightMode::validate() const {
    if (kind == RegWeightKind::InverseIou && !(lambda > 0.0))
        throw InvalidConfig("loss.lambda must be > 0 for inverse-iou weighting");
}

double reg_weight(double v_iou, const RegWeightMode& mode) {
    mode.validate();
    switch (mode.kind) {
        case RegWeightKind::Uniform: return 1.0;
        case RegWeightKind::Iou: return v_iou;
        case RegWeightKind::InverseIou: break;
    }
    if (v_iou <= 0.0) return 1.0;  // sigmoid(+inf) limit
    double x = 1.0 / std::pow(v_iou, mode.lambda);
    return 1.0 / (1.0 + std::exp(-x));
}

LossValue unsup_reg_loss(std::span<const Box> student, std::span<const Box> teacher,
                         const RegWeightMode& mode) {
    if (student.size() != teacher.size())
        throw InvalidInput("unsup_reg_loss: student/teacher length mismatch");
    LossValue loss;
    loss.gradient.assign(student.size() * 4, 0.0);
    for (std::size_t i = 0; i < student.size(); ++i) {
        double w = reg_weight(iou(teacher[i], student[i]), mode);
        const double sc[4] = {student[i].x1, student[i].y1, student[i].x2, student[i].y2};
        const double tc[4] = {teacher[i].x1, teacher[i].y1, teacher[i].x2, teacher[i].y2};
        for (int k = 0; k < 4; ++k) {
            double diff = sc[k] - tc[k];
            loss.value += w * std::abs(diff) / 4.0;
            double sign = diff > 0.0 ? 1.0 : (diff < 0.0 ? -1.0 : 0.0);
            loss.gradient[i * 4 + static_cast<std::size_t>(k)] = w * sign / 4.0;
        }
    }
    return loss;
}

LossValue unsup_cls_loss(const std::vector<std::vector<double>>& student,
                         const std::vector<std::vector<double>>& teacher) {
    if (student.size() != teacher.size())
        throw InvalidInput("unsup_cls_loss: student/teacher count mismatch");
    constexpr double kEps = 1e-12;
    LossValue loss;
    std::size_t offset = 0;
    for (std::size_t i = 0; i < student.size(); ++i) {
        if (student[i].size() != teacher[i].size())
            throw InvalidInput("unsup_cls_loss: score vector shape mismatch");
        double w = teacher[i].empty() ? 0.0 : *std::max_element(teacher[i].begin(),
                                                                teacher[i].end());
        loss.gradient.resize(offset + student[i].size(), 0.0);
        for (std::size_t c = 0; c < student[i].size(); ++c) {
            double s = std::max(student[i][c], kEps);
            loss.value += w * -teacher[i][c] * std::log(s);
            loss.gradient[offset + c] = -w * teacher[i][c] / s;
        }
        offset += student[i].size();
    }
    return loss;
}

double total_loss(std::span<const double> sup_losses, std::span<const double> unsup_losses,
                  double alpha) {
    if (!(alpha >= 0.0)) throw InvalidConfig("loss.alpha must be >= 0");
    auto mean = [](std::span<const double> v) {
        if (v.empty()) return 0.0;
        double s = 0.0;
        for (double x : v) s += x;
        return s / static_cast<double>(v.size());
    };
    return mean(sup_losses) + alpha * mean(unsup_losses);
}

std::vector<double> ema_update(std::span<const double> teacher, std::span<const double> student,
                               double momentum) {
    if (teacher.size() != student.size())
        throw InvalidInput("ema_update: parameter length mismatch");
    std::vector<double> out(teacher.size());
    for (std::size_t i = 0; i < teacher.size(); ++i)
        out[i] = momentum * teacher[i] + (1.0 - momentum) * student[i];
    return out;
}

}  // namespace pseudobox
