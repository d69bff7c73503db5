#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pseudobox/config.hpp"
#include "pseudobox/correction.hpp"
#include "pseudobox/errors.hpp"
#include "pseudobox/exchange.hpp"
#include "pseudobox/report.hpp"
#include "pseudobox/simulator.hpp"

namespace {

using namespace pseudobox;

struct SharedFlags {
    std::string config_path;
    std::vector<std::string> sets;
    std::string seed;
    std::string out_dir;
    std::string format;
    std::string workers;
    std::string sigma_j;
    std::string scenes;
};

void add_shared(CLI::App* cmd, SharedFlags& f) {
    cmd->add_option("--config", f.config_path, "Config file (flat key = value)");
    cmd->add_option("--set", f.sets, "Override a config key, e.g. --set jitter.n_j=20");
    cmd->add_option("--seed", f.seed, "Master seed");
    cmd->add_option("--out", f.out_dir, "Output directory");
    cmd->add_option("--format", f.format, "Primary report format: json|csv");
    cmd->add_option("--workers", f.workers, "Worker threads for the scene loop");
    cmd->add_option("--sigma-j", f.sigma_j, "Jitter standard deviation");
    cmd->add_option("--scenes", f.scenes, "Scene count for simulation");
}

RunConfig resolve_config(const SharedFlags& f) {
    std::vector<std::pair<std::string, std::string>> overrides;
    for (const std::string& kv : f.sets) {
        auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw InvalidConfig("--set expects key=value, got '" + kv + "'");
        overrides.emplace_back(kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (!f.seed.empty()) overrides.emplace_back("run.seed", f.seed);
    if (!f.out_dir.empty()) overrides.emplace_back("run.out", f.out_dir);
    if (!f.format.empty()) overrides.emplace_back("run.format", f.format);
    if (!f.workers.empty()) overrides.emplace_back("run.workers", f.workers);
    if (!f.sigma_j.empty()) overrides.emplace_back("jitter.sigma_j", f.sigma_j);
    if (!f.scenes.empty()) overrides.emplace_back("run.scenes", f.scenes);
    return parse_config(f.config_path, overrides);
}

int infer_num_classes(const std::vector<ImageRecord>& records) {
    int c = 1;
    for (const ImageRecord& rec : records) {
        for (const GtBox& g : rec.gt) c = std::max(c, g.cls + 1);
        for (const DetRecord& d : rec.detections)
            c = std::max(c, static_cast<int>(d.scores.size()) - 1);
    }
    return c;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write file: " + path);
    out << content;
}

int cmd_correct(const RunConfig& cfg, const std::string& input, const std::string& head_kind,
                const std::string& trace_path) {
    std::vector<ImageRecord> records = parse_exchange_file(input);
    int num_classes = infer_num_classes(records);

    std::unique_ptr<ScoringHead> head;
    if (head_kind == "oracle") {
        for (const ImageRecord& rec : records)
            if (rec.gt.empty())
                throw DataError("image '" + rec.image_id +
                                "' has no ground truth; the oracle head needs GT");
        head = std::make_unique<OracleHead>(cfg.exp.oracle, num_classes);
    } else if (head_kind == "recorded") {
        if (trace_path.empty()) throw InvalidConfig("--trace is required with --head recorded");
        head = std::make_unique<RecordedHead>(parse_exchange_file(trace_path));
    } else {
        throw InvalidConfig("unknown head: '" + head_kind + "' (oracle|recorded)");
    }

    SeededRng master(cfg.exp.master_seed);
    std::vector<ImageRecord> out_records;
    for (const ImageRecord& rec : records) {
        Scene scene{rec.image_id, rec.width, rec.height, rec.gt};
        std::vector<ScoredBox> dets;
        for (const DetRecord& d : rec.detections) {
            ScoredBox sb;
            sb.box = d.box;
            sb.scores = d.scores;
            sb.label = argmax_foreground(d.scores);
            dets.push_back(std::move(sb));
        }
        SeededRng rng = master.derive(rec.image_id + "/correct");
        PseudoLabelSet pseudo = correct(*head, scene, dets, cfg.exp.correction, rng);

        ImageRecord out = rec;
        out.detections.clear();
        double score_sum = 0.0, shift_sum = 0.0;
        for (std::size_t i = 0; i < pseudo.labels.size(); ++i) {
            const ScoredBox& lb = pseudo.labels[i];
            out.detections.push_back(DetRecord{lb.box, lb.scores});
            score_sum += lb.foreground_confidence();
            const Box& a = pseudo.uncorrected[i].box;
            shift_sum += (std::abs(lb.box.x1 - a.x1) + std::abs(lb.box.y1 - a.y1) +
                          std::abs(lb.box.x2 - a.x2) + std::abs(lb.box.y2 - a.y2)) /
                         4.0;
        }
        std::size_t n = pseudo.labels.size();
        std::cout << rec.image_id << " kept=" << n
                  << " mean_score=" << format_g9(n ? score_sum / n : 0.0)
                  << " mean_shift_px=" << format_g9(n ? shift_sum / n : 0.0) << '\n';
        out_records.push_back(std::move(out));
    }

    std::filesystem::create_directories(cfg.out_dir);
    std::string out_path = cfg.out_dir + "/corrected.jsonl";
    std::ostringstream buf;
    write_exchange(buf, out_records, config_echo_json(cfg.echo(), cfg.exp.master_seed));
    write_file(out_path, buf.str());
    std::cout << "images=" << out_records.size() << " wrote " << out_path << '\n';
    return 0;
}

int cmd_simulate(const RunConfig& cfg) {
    ExperimentReport report = run_experiment(cfg.exp);
    report.config_echo = cfg.echo();
    std::filesystem::create_directories(cfg.out_dir);
    std::string json_path = cfg.out_dir + "/report.json";
    std::string csv_path = cfg.out_dir + "/report.csv";
    write_file(json_path, report_to_json(report));
    write_file(csv_path, report_to_csv(report));
    std::cout << "rows=" << report.rows.size() << " wrote "
              << (cfg.format == "csv" ? csv_path : json_path) << '\n';
    return 0;
}

int cmd_eval(const RunConfig& cfg, const std::string& input) {
    std::vector<ImageRecord> records = parse_exchange_file(input);
    double iou_sum = 0.0;
    long matched = 0, tp = 0, fp = 0, fn = 0;
    double ap50 = 0.0, ap75 = 0.0, ap_coco = 0.0;
    int ap_scenes = 0;
    for (const ImageRecord& rec : records) {
        Scene scene{rec.image_id, rec.width, rec.height, rec.gt};
        std::vector<ScoredBox> preds;
        for (const DetRecord& d : rec.detections) {
            ScoredBox sb;
            sb.box = d.box;
            sb.scores = d.scores;
            sb.label = argmax_foreground(d.scores);
            preds.push_back(std::move(sb));
        }
        SceneMetrics m = evaluate(preds, scene);
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
    std::ostringstream out;
    out << "{\"schema\":\"pseudobox-eval-v1\",\"master_seed\":" << cfg.exp.master_seed
        << ",\"images\":" << records.size()
        << ",\"mean_matched_iou\":" << format_g9(matched ? iou_sum / matched : 0.0)
        << ",\"ap50\":" << format_g9(ap_scenes ? ap50 / ap_scenes : 0.0)
        << ",\"ap75\":" << format_g9(ap_scenes ? ap75 / ap_scenes : 0.0)
        << ",\"ap_coco\":" << format_g9(ap_scenes ? ap_coco / ap_scenes : 0.0)
        << ",\"precision\":" << format_g9(tp + fp ? static_cast<double>(tp) / (tp + fp) : 0.0)
        << ",\"recall\":" << format_g9(tp + fn ? static_cast<double>(tp) / (tp + fn) : 0.0)
        << "}\n";
    std::filesystem::create_directories(cfg.out_dir);
    write_file(cfg.out_dir + "/eval.json", out.str());
    std::cout << out.str();
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pseudobox: pseudo-label correction simulator"};
    app.require_subcommand(1);

    SharedFlags correct_flags, simulate_flags, eval_flags;
    std::string correct_input, eval_input;
    std::string head_kind = "oracle";
    std::string trace_path;

    CLI::App* c_correct = app.add_subcommand("correct", "Correct detections in an exchange file");
    c_correct->add_option("input", correct_input, "Input exchange file (.jsonl)")->required();
    c_correct->add_option("--head", head_kind, "Scoring head: oracle|recorded");
    c_correct->add_option("--trace", trace_path, "Trace exchange file for the recorded head");
    add_shared(c_correct, correct_flags);

    CLI::App* c_simulate = app.add_subcommand("simulate", "Run a synthetic experiment");
    add_shared(c_simulate, simulate_flags);

    CLI::App* c_eval = app.add_subcommand("eval", "Evaluate detections against GT");
    c_eval->add_option("input", eval_input, "Input exchange file (.jsonl)")->required();
    add_shared(c_eval, eval_flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (c_correct->parsed())
            return cmd_correct(resolve_config(correct_flags), correct_input, head_kind,
                               trace_path);
        if (c_simulate->parsed()) return cmd_simulate(resolve_config(simulate_flags));
        if (c_eval->parsed()) return cmd_eval(resolve_config(eval_flags), eval_input);
    } catch (const InvalidConfig& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
