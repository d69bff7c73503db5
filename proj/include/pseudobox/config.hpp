#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pseudobox/simulator.hpp"

namespace pseudobox {

// Full resolved run configuration. Every field has a documented default;
// the ones the underlying method pins are threshold 0.7, n_j 10,
// sigma_j 0.06, n_r 2, lambda 5.
struct RunConfig {
    ExperimentConfig exp;
    double alpha = 1.0;          // unsupervised loss weight
    double ema_momentum = 0.999;
    std::string out_dir = ".";
    std::string format = "json";  // json|csv, selects the stdout summary

    void validate() const;

    // key = value pairs echoed into every report.
    std::vector<std::pair<std::string, std::string>> echo() const;
};

// Flat "key = value" config format with dotted section prefixes, e.g.
//   jitter.sigma_j = 0.06
// '#' starts a comment. Unknown keys are an error.
//
// Precedence: defaults < PSEUDOBOX_SEED env var < config file < overrides
// (CLI flags). `path` empty means defaults-only; a missing explicit path
// is an error.
RunConfig parse_config(const std::string& path,
                       const std::vector<std::pair<std::string, std::string>>& overrides);

// Applies a single key/value to the config; throws InvalidConfig for
// unknown keys or out-of-range values, naming the key.
void apply_config_key(RunConfig& cfg, const std::string& key, const std::string& value);

}  // namespace pseudobox
