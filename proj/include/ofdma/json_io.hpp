#ifndef OFDMA_JSON_IO_HPP
#define OFDMA_JSON_IO_HPP

#include <string>

#include <json.hpp>

#include "ofdma/model.hpp"
#include "ofdma/report.hpp"
#include "ofdma/scenario.hpp"

namespace ofdma {

// Instance schema:
//   { "cells": c, "bandwidth_hz": B, "noise_watt": BN0, "eta0": eta0,
//     "formats": [q...], "users": [{"id","cell","demand"}...],
//     "subcarriers": m, "gain": [[...]], "cross_gain": [[[...]]] }
// with 1-based cell ids in "users" and the own-cell plane of "cross_gain"
// written as zeros.  Doubles round-trip bit-exactly.
nlohmann::json instance_to_json(const Instance& inst);
Instance instance_from_json(const nlohmann::json& j);

// Allocation schema: { "assignments": [{"user","subcarrier","format"}...] }
// sorted by (user id, subcarrier); "subcarrier" is 1-based.
nlohmann::json allocation_to_json(const Instance& inst,
                                  const Allocation& alloc);
Allocation allocation_from_json(const Instance& inst,
                                const nlohmann::json& j);

nlohmann::json report_to_json(const SolveReport& report);

nlohmann::json scenario_config_to_json(const ScenarioConfig& config);
ScenarioConfig scenario_config_from_json(const nlohmann::json& j);

nlohmann::json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const nlohmann::json& j);

}  // namespace ofdma

#endif  // OFDMA_JSON_IO_HPP
