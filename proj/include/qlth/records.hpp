#pragma once

#include <string>
#include <vector>

#include "qlth/lth.hpp"

namespace qlth {

// Line-delimited records: one self-describing JSON object per line.
std::string record_to_json(const RunRecord &record);
RunRecord record_from_json(const std::string &line);

void write_records(const std::string &path,
                   const std::vector<RunRecord> &records);
std::vector<RunRecord> read_records(const std::string &path);

// Accepts record files and/or directories (scanned for *.jsonl).
std::vector<RunRecord> read_records_from(const std::vector<std::string> &paths);

} // namespace qlth
