#pragma once

#include <span>
#include <vector>

#include "pseudobox/box.hpp"

namespace pseudobox {

// Regression loss weight as a function of student-teacher IoU:
//   Uniform    -> 1
//   Iou        -> v
//   InverseIou -> sigmoid(1 / v^lambda), with the v = 0 limit defined as 1
enum class RegWeightKind { Uniform, Iou, InverseIou };

struct RegWeightMode {
    RegWeightKind kind = RegWeightKind::InverseIou;
    double lambda = 5.0;

    void validate() const;
};

// Regression target choice for the ablation harness: Hard regresses to the
// corrected pseudo box, Soft to the teacher's per-proposal refined box.
enum class RegLabelMode { Hard, Soft };

struct LossValue {
    double value = 0.0;
    std::vector<double> gradient;  // partials w.r.t. the student-side inputs
};

double reg_weight(double v_iou, const RegWeightMode& mode);

// Sum over pairs of w_i * L1(teacher_i, student_i), L1 = mean absolute
// corner difference. The weight is a stop-gradient constant; gradient is
// w.r.t. the student corners (4 per pair), sub-gradient 0 at equality.
LossValue unsup_reg_loss(std::span<const Box> student, std::span<const Box> teacher,
                         const RegWeightMode& mode);

// Soft cross-entropy: sum over pairs of max(teacher_i) * sum_c
// -teacher_{i,c} log student_{i,c}, log clamped below at log(1e-12).
// Gradient is w.r.t. the student score entries.
LossValue unsup_cls_loss(const std::vector<std::vector<double>>& student,
                         const std::vector<std::vector<double>>& teacher);

// mean(sup) + alpha * mean(unsup); empty lists contribute 0.
double total_loss(std::span<const double> sup_losses, std::span<const double> unsup_losses,
                  double alpha);

// teacher' = m * teacher + (1 - m) * student, element-wise.
std::vector<double> ema_update(std::span<const double> teacher, std::span<const double> student,
                               double momentum);

}  // namespace pseudobox
