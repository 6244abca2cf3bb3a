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

#pragma once

#include <chrono>
#include <cstdint>
#include <json.hpp>
#include <string>
#include <vector>

namespace ralg::cli {

enum class RecordVerdict { Pass, Fail, Inconclusive, Flagged };

const char* to_string(RecordVerdict v);

struct Record {
  std::string name;
  nlohmann::json inputs = nlohmann::json::object();
  nlohmann::json values = nlohmann::json::object();
  nlohmann::json bounds = nlohmann::json::object();
  RecordVerdict verdict = RecordVerdict::Pass;
  double runtime_s = 0.0;
};

struct CsvSeries {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct Report {
  std::string command;
  uint64_t seed = 0;
  double tolerance_scale = 1.0;
  std::vector<Record> records;
  std::vector<CsvSeries> series;

  bool all_passed() const;
  nlohmann::json to_json() const;
  std::string to_text() const;
  /// Writes report.json, report.txt and one CSV per series into out_dir
  /// (created if missing).  Empty out_dir skips file output.
  void write(const std::string& out_dir) const;
};

/// Record timer helper: runs fn, captures runtime, appends the record.
template <class Fn>
void timed_record(Report& report, const std::string& name, Fn&& fn) {
  Record rec;
  rec.name = name;
  auto start = std::chrono::steady_clock::now();
  fn(rec);
  rec.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  report.records.push_back(std::move(rec));
}

}  // namespace ralg::cli
