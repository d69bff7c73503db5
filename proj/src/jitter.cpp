#include "pseudobox/jitter.hpp"

#include "pseudobox/errors.hpp"

namespace pseudobox {

void JitterConfig::validate() const {
    if (n_j < 1) throw InvalidConfig("jitter.n_j must be >= 1");
    if (!(sigma_j >= 0.0)) throw InvalidConfig("jitter.sigma_j must be >= 0");
}

std::vector<Box> jitter_box(const Box& b, const JitterConfig& cfg, SeededRng& rng) {
    cfg.validate();
    std::vector<Box> out;
    out.reserve(static_cast<std::size_t>(cfg.n_j));
    double w = b.width();
    double h = b.height();
    for (int i = 0; i < cfg.n_j; ++i) {
        double xi[4];
        for (double& v : xi) v = rng.normal(0.0, cfg.sigma_j);
        Box j;
        if (cfg.mode == JitterMode::DimensionRelative) {
            j = Box{b.x1 + xi[0] * w, b.y1 + xi[1] * h, b.x2 + xi[2] * w, b.y2 + xi[3] * h};
        } else {
            j = Box{(1.0 + xi[0]) * b.x1, (1.0 + xi[1]) * b.y1, (1.0 + xi[2]) * b.x2,
                    (1.0 + xi[3]) * b.y2};
        }
        out.push_back(normalize(j));
    }
    return out;
}

}  // namespace pseudobox
