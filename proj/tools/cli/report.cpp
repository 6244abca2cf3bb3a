// Copyright 2026 the resolvalg authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli/report.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace ralg::cli {

const char* to_string(RecordVerdict v) {
  switch (v) {
    case RecordVerdict::Pass: return "pass";
    case RecordVerdict::Fail: return "fail";
    case RecordVerdict::Inconclusive: return "inconclusive";
    case RecordVerdict::Flagged: return "flagged";
  }
  return "?";
}

bool Report::all_passed() const {
  for (const auto& r : records)
    if (r.verdict == RecordVerdict::Fail) return false;
  return true;
}

nlohmann::json Report::to_json() const {
  nlohmann::json recs = nlohmann::json::array();
  for (const auto& r : records)
    recs.push_back({{"name", r.name},
                    {"inputs", r.inputs},
                    {"values", r.values},
                    {"bounds", r.bounds},
                    {"verdict", to_string(r.verdict)},
                    {"runtime_s", r.runtime_s}});
  return {{"schema", 1},
          {"command", command},
          {"seed", seed},
          {"tolerance_scale", tolerance_scale},
          {"records", recs}};
}

std::string Report::to_text() const {
  size_t width = 4;
  for (const auto& r : records) width = std::max(width, r.name.size());
  std::ostringstream out;
  out << command << " (seed " << seed << ")\n";
  for (const auto& r : records) {
    out << "  " << std::left << std::setw(static_cast<int>(width) + 2) << r.name
        << std::setw(14) << to_string(r.verdict) << std::setw(10)
        << (std::ostringstream{} << std::fixed << std::setprecision(3) << r.runtime_s << "s").str();
    if (!r.values.empty()) out << " " << r.values.dump();
    out << "\n";
  }
  out << (all_passed() ? "all records passed" : "FAILURES present") << "\n";
  return out.str();
}

void Report::write(const std::string& out_dir) const {
  if (out_dir.empty()) return;
  std::filesystem::create_directories(out_dir);
  {
    std::ofstream j(out_dir + "/report.json");
    j << to_json().dump(2) << "\n";
  }
  {
    std::ofstream t(out_dir + "/report.txt");
    t << to_text();
  }
  for (const auto& s : series) {
    std::ofstream c(out_dir + "/" + s.name + ".csv");
    for (size_t i = 0; i < s.columns.size(); ++i) c << (i ? "," : "") << s.columns[i];
    c << "\n";
    c << std::setprecision(17);
    for (const auto& row : s.rows) {
      for (size_t i = 0; i < row.size(); ++i) c << (i ? "," : "") << row[i];
      c << "\n";
    }
  }
}

}  // namespace ralg::cli
