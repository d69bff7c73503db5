#include "pseudobox/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "pseudobox/errors.hpp"
#include "pseudobox/exchange.hpp"

namespace pseudobox {

void RunConfig::validate() const {
    exp.validate();
    if (!(alpha >= 0.0)) throw InvalidConfig("loss.alpha must be >= 0");
    if (!(ema_momentum >= 0.0 && ema_momentum <= 1.0))
        throw InvalidConfig("loss.ema_momentum must be in [0,1]");
    if (format != "json" && format != "csv")
        throw InvalidConfig("run.format must be json or csv");
}

std::vector<std::pair<std::string, std::string>> RunConfig::echo() const {
    auto e = experiment_config_echo(exp);
    e.emplace_back("loss.alpha", format_g9(alpha));
    e.emplace_back("loss.ema_momentum", format_g9(ema_momentum));
    e.emplace_back("run.format", format);
    return e;
}

namespace {

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw InvalidConfig("config key '" + key + "': not a number: '" + value + "'");
    }
}

int parse_int(const std::string& key, const std::string& value) {
    double v = parse_double(key, value);
    int i = static_cast<int>(v);
    if (static_cast<double>(i) != v)
        throw InvalidConfig("config key '" + key + "': not an integer: '" + value + "'");
    return i;
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw InvalidConfig("config key '" + key + "': not a boolean: '" + value + "'");
}

std::vector<double> parse_list(const std::string& key, const std::string& value) {
    std::vector<double> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto b = item.find_first_not_of(" \t");
        auto e = item.find_last_not_of(" \t");
        if (b == std::string::npos) continue;
        out.push_back(parse_double(key, item.substr(b, e - b + 1)));
    }
    return out;
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

void apply_config_key(RunConfig& cfg, const std::string& key, const std::string& value) {
    ExperimentConfig& x = cfg.exp;
    if (key == "scene.width") x.scene.width = parse_double(key, value);
    else if (key == "scene.height") x.scene.height = parse_double(key, value);
    else if (key == "scene.objects_min") x.scene.objects_min = parse_int(key, value);
    else if (key == "scene.objects_max") x.scene.objects_max = parse_int(key, value);
    else if (key == "scene.size_min") x.scene.size_min = parse_double(key, value);
    else if (key == "scene.size_max") x.scene.size_max = parse_double(key, value);
    else if (key == "scene.classes") x.scene.classes = parse_int(key, value);
    else if (key == "scene.max_overlap") x.scene.max_overlap = parse_double(key, value);
    else if (key == "noise.loc_std") x.noise.loc_std = parse_double(key, value);
    else if (key == "noise.misclass_rate") x.noise.misclass_rate = parse_double(key, value);
    else if (key == "noise.miss_rate") x.noise.miss_rate = parse_double(key, value);
    else if (key == "noise.fp_rate") x.noise.fp_rate = parse_double(key, value);
    else if (key == "noise.rho") x.noise.rho = parse_double(key, value);
    else if (key == "noise.score_noise") x.noise.score_noise = parse_double(key, value);
    else if (key == "noise.nms_iou") x.noise.nms_iou = parse_double(key, value);
    else if (key == "oracle.kappa") x.oracle.kappa = parse_double(key, value);
    else if (key == "oracle.tau") x.oracle.tau = parse_double(key, value);
    else if (key == "oracle.rho") x.oracle.rho = parse_double(key, value);
    else if (key == "oracle.score_noise") x.oracle.score_noise = parse_double(key, value);
    else if (key == "correction.n_r") x.correction.n_r = parse_int(key, value);
    else if (key == "correction.score_threshold")
        x.correction.score_threshold = parse_double(key, value);
    else if (key == "correction.nms_iou") x.correction.nms_iou = parse_double(key, value);
    else if (key == "correction.include_unjittered_vote")
        x.correction.include_unjittered_vote = parse_bool(key, value);
    else if (key == "jitter.n_j") x.correction.jitter.n_j = parse_int(key, value);
    else if (key == "jitter.sigma_j") x.correction.jitter.sigma_j = parse_double(key, value);
    else if (key == "jitter.mode") {
        if (value == "dimension-relative")
            x.correction.jitter.mode = JitterMode::DimensionRelative;
        else if (value == "literal-coordinate")
            x.correction.jitter.mode = JitterMode::LiteralCoordinate;
        else
            throw InvalidConfig("config key 'jitter.mode': unknown mode '" + value + "'");
    } else if (key == "loss.weight_mode") {
        if (value == "uniform") x.reg_mode.kind = RegWeightKind::Uniform;
        else if (value == "iou") x.reg_mode.kind = RegWeightKind::Iou;
        else if (value == "inverse-iou") x.reg_mode.kind = RegWeightKind::InverseIou;
        else throw InvalidConfig("config key 'loss.weight_mode': unknown mode '" + value + "'");
    } else if (key == "loss.lambda") x.reg_mode.lambda = parse_double(key, value);
    else if (key == "loss.label_mode") {
        if (value == "hard") x.label_mode = RegLabelMode::Hard;
        else if (value == "soft") x.label_mode = RegLabelMode::Soft;
        else throw InvalidConfig("config key 'loss.label_mode': unknown mode '" + value + "'");
    } else if (key == "loss.alpha") cfg.alpha = parse_double(key, value);
    else if (key == "loss.ema_momentum") cfg.ema_momentum = parse_double(key, value);
    else if (key == "run.scenes") x.scene_count = parse_int(key, value);
    else if (key == "run.seed") x.master_seed = static_cast<std::uint64_t>(
                                    std::strtoull(value.c_str(), nullptr, 10));
    else if (key == "run.workers") x.workers = parse_int(key, value);
    else if (key == "run.format") cfg.format = value;
    else if (key == "run.out") cfg.out_dir = value;
    else if (key == "sweep.axis") x.sweep_axis = sweep_axis_from_name(value);
    else if (key == "sweep.values") x.sweep_values = parse_list(key, value);
    else throw InvalidConfig("unknown config key: '" + key + "'");
}

RunConfig parse_config(const std::string& path,
                       const std::vector<std::pair<std::string, std::string>>& overrides) {
    RunConfig cfg;

    if (const char* env_seed = std::getenv("PSEUDOBOX_SEED"))
        apply_config_key(cfg, "run.seed", env_seed);

    if (!path.empty()) {
        std::ifstream in(path);
        if (!in) throw InvalidConfig("config file not found: " + path);
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            auto hash = line.find('#');
            if (hash != std::string::npos) line = line.substr(0, hash);
            line = trim(line);
            if (line.empty()) continue;
            auto eq = line.find('=');
            if (eq == std::string::npos)
                throw InvalidConfig("config line " + std::to_string(lineno) +
                                    ": expected 'key = value'");
            apply_config_key(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
        }
    }

    for (const auto& [key, value] : overrides) apply_config_key(cfg, key, value);

    cfg.validate();
    return cfg;
}

}  // namespace pseudobox
