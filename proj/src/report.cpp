#include "pseudobox/report.hpp"

#include <sstream>

#include "pseudobox/exchange.hpp"

namespace pseudobox {

namespace {

void write_array(std::ostringstream& out, const std::vector<double>& v) {
    out << '[';
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out << ',';
        out << format_g9(v[i]);
    }
    out << ']';
}

void write_arm(std::ostringstream& out, const ArmStats& a) {
    out << "{\"mean_iou\":" << format_g9(a.mean_iou) << ",\"ap50\":" << format_g9(a.ap50)
        << ",\"ap75\":" << format_g9(a.ap75) << ",\"ap_coco\":" << format_g9(a.ap_coco)
        << ",\"precision\":" << format_g9(a.precision) << ",\"recall\":" << format_g9(a.recall)
        << '}';
}

}  // namespace

std::string config_echo_json(
    const std::vector<std::pair<std::string, std::string>>& echo, std::uint64_t master_seed) {
    std::ostringstream out;
    out << "{\"master_seed\":" << master_seed << ",\"config\":{";
    for (std::size_t i = 0; i < echo.size(); ++i) {
        if (i) out << ',';
        out << '"' << json_escape(echo[i].first) << "\":\"" << json_escape(echo[i].second)
            << '"';
    }
    out << "}}";
    return out.str();
}

std::string report_to_json(const ExperimentReport& report) {
    std::ostringstream out;
    out << "{\"schema\":\"pseudobox-report-v1\",\"ap_interpolation\":\"all-points\","
        << "\"master_seed\":" << report.master_seed << ",\"config\":{";
    for (std::size_t i = 0; i < report.config_echo.size(); ++i) {
        if (i) out << ',';
        out << '"' << json_escape(report.config_echo[i].first) << "\":\""
            << json_escape(report.config_echo[i].second) << '"';
    }
    out << "},\"rows\":[";
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        const ReportRow& r = report.rows[i];
        if (i) out << ',';
        out << "{\"sweep_axis\":\"" << sweep_axis_name(r.axis)
            << "\",\"sweep_value\":" << format_g9(r.sweep_value) << ",\"scenes\":" << r.scenes
            << ",\"scenes_without_gt\":" << r.scenes_without_gt
            << ",\"scenes_without_pseudo\":" << r.scenes_without_pseudo << ",\"d_cls_mean\":";
        write_array(out, r.d_cls_mean);
        out << ",\"d_cls_std\":";
        write_array(out, r.d_cls_std);
        out << ",\"d_loc_mean\":";
        write_array(out, r.d_loc_mean);
        out << ",\"d_loc_std\":";
        write_array(out, r.d_loc_std);
        out << ",\"before\":";
        write_arm(out, r.before);
        out << ",\"after\":";
        write_arm(out, r.after);
        out << ",\"iou_improvement\":" << format_g9(r.iou_improvement)
            << ",\"score_iou_corr\":" << format_g9(r.score_iou_corr)
            << ",\"mean_reg_loss\":" << format_g9(r.mean_reg_loss)
            << ",\"mean_cls_loss\":" << format_g9(r.mean_cls_loss)
            << ",\"kept_below_threshold\":" << r.kept_below_threshold << '}';
    }
    out << "]}\n";
    return out.str();
}

std::string report_to_csv(const ExperimentReport& report) {
    std::ostringstream out;
    out << "sweep_axis,sweep_value,arm,scenes,scenes_without_gt,scenes_without_pseudo,"
           "mean_iou,ap50,ap75,ap_coco,precision,recall,iou_improvement,score_iou_corr,"
           "mean_reg_loss,mean_cls_loss,kept_below_threshold,d_cls_last,d_loc_last,master_seed\n";
    for (const ReportRow& r : report.rows) {
        for (int arm = 0; arm < 2; ++arm) {
            const ArmStats& a = arm ? r.after : r.before;
            out << sweep_axis_name(r.axis) << ',' << format_g9(r.sweep_value) << ','
                << (arm ? "corrected" : "uncorrected") << ',' << r.scenes << ','
                << r.scenes_without_gt << ',' << r.scenes_without_pseudo << ','
                << format_g9(a.mean_iou) << ',' << format_g9(a.ap50) << ','
                << format_g9(a.ap75) << ',' << format_g9(a.ap_coco) << ','
                << format_g9(a.precision) << ',' << format_g9(a.recall) << ','
                << format_g9(r.iou_improvement) << ',' << format_g9(r.score_iou_corr) << ','
                << format_g9(r.mean_reg_loss) << ',' << format_g9(r.mean_cls_loss) << ','
                << r.kept_below_threshold << ','
                << format_g9(r.d_cls_mean.empty() ? 0.0 : r.d_cls_mean.back()) << ','
                << format_g9(r.d_loc_mean.empty() ? 0.0 : r.d_loc_mean.back()) << ','
                << report.master_seed << '\n';
        }
    }
    return out.str();
}

}  // namespace pseudobox
