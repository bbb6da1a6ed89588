#pragma once

// Structured report output. The envelope carries the command echo, tool
// version, optional master seed, and the results payload; re-running the
// echoed command reproduces "payload" byte-for-byte, and "timing_seconds"
// is the only field allowed to differ between such runs.

#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"
#include "qtherm/experiments.hpp"
#include "qtherm/regions.hpp"

namespace qtherm {

inline constexpr const char* kToolName = "qtherm";
inline constexpr const char* kToolVersion = "0.1.0";

nlohmann::json to_json(const PauliHamiltonian& h);  // {"pauli": [[...]]}
nlohmann::json to_json(const RegionReport& report);
nlohmann::json to_json(const CampaignResult& result);
nlohmann::json to_json(const SepgroundResult& result);  // adds "found"

std::string render_report(const std::string& command, const nlohmann::json& payload,
                          double timing_seconds,
                          std::optional<std::uint64_t> master_seed = std::nullopt);

}  // namespace qtherm
