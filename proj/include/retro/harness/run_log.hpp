#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "retro/harness/metrics.hpp"
#include "retro/search/search.hpp"

namespace retro::harness {

// Line-delimited JSON run log: one header line echoing the configuration,
// then one record per line. Field order is fixed so identical runs produce
// byte-identical logs.
void write_run_log(std::ostream& out, const search::SearchConfig& config,
                   const std::vector<RunRecord>& records);

std::string run_record_json(const RunRecord& record);

// Reads records back, skipping the header and malformed lines.
std::vector<RunRecord> read_run_log(const std::string& path);

}  // namespace retro::harness
