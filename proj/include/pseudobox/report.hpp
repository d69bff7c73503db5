#pragma once

#include <string>
#include <vector>

#include "pseudobox/simulator.hpp"

namespace pseudobox {

// Serializers for ExperimentReport. All numbers use 9 significant digits
// so identical runs produce byte-identical files. Column/field meanings
// are documented in docs/report_schema.md.
std::string report_to_json(const ExperimentReport& report);
std::string report_to_csv(const ExperimentReport& report);

// Config echo serialized as a JSON object, reusable as an exchange header.
std::string config_echo_json(
    const std::vector<std::pair<std::string, std::string>>& echo, std::uint64_t master_seed);

}  // namespace pseudobox
