// Copyright 2026 The samplemark Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Subcommand bodies for the samplemark CLI. Each takes parsed options and
// returns the process exit status: 0 success, 1 usage error, 2 data error.

#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "samplemark/attack.hpp"
#include "samplemark/error.hpp"
#include "samplemark/harness/csv.hpp"
#include "samplemark/harness/experiment.hpp"
#include "samplemark/harness/lm_factory.hpp"
#include "samplemark/harness/records.hpp"
#include "samplemark/harness/report.hpp"
#include "samplemark/similarity.hpp"

namespace samplemark::harness {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

struct CommandOptions {
  LmSpec lm;
  GenerationConfig gen;
  std::string in_path;
  std::string out_path;

  // detect
  DetectorKind detector = DetectorKind::kAuto;
  std::optional<Method> detector_method;  // label for explicit secret detector

  // attack / sweep
  double rate = 0.0;
  AttackPolicy policy = AttackPolicy::kRandomDifferent;
  std::uint64_t attack_seed = 1000003;

  // sweep: "name=v1,v2,..." entries, crossed cartesian
  std::vector<std::string> axes;

  // report
  std::vector<std::string> inputs;
  std::string svg_path;

  const SimilarityScorer* similarity = nullptr;
  std::ostream* log = &std::cerr;
};

namespace detail {

inline std::error_code write_file(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) return std::make_error_code(std::errc::io_error);
  out << data;
  out.flush();
  return out ? std::error_code{} : std::make_error_code(std::errc::io_error);
}

inline bool same_file(const std::string& a, const std::string& b) {
  std::error_code ec;
  return !a.empty() && !b.empty() && std::filesystem::exists(a, ec) &&
         std::filesystem::exists(b, ec) && std::filesystem::equivalent(a, b, ec);
}

inline std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kDataError, "cannot open '" + path + "'");
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

// Writes `data` to opts.out_path, or to stdout when no path is set.
inline int emit(const CommandOptions& opts, const std::string& data) {
  if (opts.out_path.empty() || opts.out_path == "-") {
    std::cout << data;
    return kExitOk;
  }
  if (!opts.in_path.empty() && same_file(opts.in_path, opts.out_path)) {
    *opts.log << "error: --out must differ from --in\n";
    return kExitUsage;
  }
  if (write_file(opts.out_path, data)) {
    *opts.log << "error: cannot write '" << opts.out_path << "'\n";
    return kExitData;
  }
  return kExitOk;
}

inline int exit_for(const Error& e) {
  return e.code() == ErrorCode::kInvalidArgument ? kExitUsage : kExitData;
}

// Rebuilds LMs from record descriptors, loading each distinct one once.
class LmCache {
 public:
  const LanguageModel& get(const std::string& descriptor) {
    auto it = cache_.find(descriptor);
    if (it == cache_.end()) {
      it = cache_.emplace(descriptor, load_lm(parse_lm_descriptor(descriptor))).first;
    }
    return *it->second.model;
  }

 private:
  std::map<std::string, LoadedLm> cache_;
};

}  // namespace detail

inline int cmd_generate(const CommandOptions& opts) {
  try {
    const LoadedLm lm = load_lm(opts.lm);
    const GenerationBatch batch = run_generation(lm, opts.gen);
    for (const std::string& f : batch.failures) {
      *opts.log << "discarded " << f << '\n';
    }
    std::string out;
    for (const GenerationRecord& r : batch.records) {
      out += to_jsonl(r);
      out += '\n';
    }
    return detail::emit(opts, out);
  } catch (const Error& e) {
    *opts.log << "error: " << e.what() << '\n';
    return detail::exit_for(e);
  }
}

inline std::vector<std::string> detect_csv_header(bool with_similarity) {
  std::vector<std::string> h = {"kind", "id", "method", "detector", "n_scored",
                                "sna", "z", "threshold_u", "verdict", "diversity"};
  if (with_similarity) h.push_back("similarity");
  for (const char* c : {"n_samples", "n_errors", "mean_z", "detection_rate", "message"}) {
    h.emplace_back(c);
  }
  return h;
}

inline int cmd_detect(const CommandOptions& opts) {
  std::vector<std::string> lines;
  try {
    lines = detail::read_lines(opts.in_path);
  } catch (const Error& e) {
    *opts.log << "error: " << e.what() << '\n';
    return kExitData;
  }
  DetectorSpec spec;
  spec.kind = opts.detector;
  spec.k = opts.gen.k;
  spec.threshold_u = opts.gen.threshold_u;
  spec.gamma = opts.gen.gamma;
  if (opts.detector_method) spec.label = secret_label_for(*opts.detector_method);

  const bool with_similarity = opts.similarity && opts.similarity->available();
  std::ostringstream csv;
  write_csv_row(csv, detect_csv_header(with_similarity));
  SummaryBuilder summary;
  const std::size_t tail = 5;  // summary columns + message
  for (std::size_t i = 0; i < lines.size(); ++i) {
    try {
      const GenerationRecord record = record_from_jsonl(lines[i]);
      const DetectionReport report = detect_record(record, spec);
      const double div = safe_diversity(record.completion);
      std::optional<double> sim;
      if (with_similarity) sim = opts.similarity->score(record.prompt, record.completion);
      summary.add(report, div, sim);
      std::vector<std::string> row = {
          "record", record.id, std::string(method_name(record.method)),
          std::string(detector_method_name(report.method)),
          std::to_string(report.n_scored), format_double(report.sna),
          format_double(report.z), format_double(report.threshold_u),
          std::string(verdict_name(report.verdict)), format_double(div)};
      if (with_similarity) row.push_back(format_double(*sim));
      row.resize(row.size() + tail);
      write_csv_row(csv, row);
    } catch (const Error& e) {
      summary.add_error();
      std::vector<std::string> row(detect_csv_header(with_similarity).size());
      row[0] = "error";
      row[1] = "line " + std::to_string(i + 1);
      row.back() = e.what();
      write_csv_row(csv, row);
    }
  }
  const ExperimentSummary s = summary.build();
  std::vector<std::string> row(detect_csv_header(with_similarity).size());
  row[0] = "summary";
  row[9] = format_double(s.mean_diversity);
  if (with_similarity && s.mean_similarity) row[10] = format_double(*s.mean_similarity);
  const std::size_t base = row.size() - tail;
  row[base] = std::to_string(s.n_samples);
  row[base + 1] = std::to_string(s.n_errors);
  row[base + 2] = format_double(s.mean_z);
  row[base + 3] = format_double(s.detection_rate);
  write_csv_row(csv, row);

  const int status = detail::emit(opts, csv.str());
  if (status != kExitOk) return status;
  return s.n_errors > 0 ? kExitData : kExitOk;
}

inline int cmd_attack(const CommandOptions& opts) {
  std::vector<std::string> lines;
  try {
    lines = detail::read_lines(opts.in_path);
  } catch (const Error& e) {
    *opts.log << "error: " << e.what() << '\n';
    return kExitData;
  }
  if (!(opts.rate >= 0.0 && opts.rate <= 1.0)) {
    *opts.log << "error: --rate must lie in [0, 1]\n";
    return kExitUsage;
  }
  detail::LmCache lms;
  std::string out;
  std::size_t errors = 0;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    try {
      const GenerationRecord record = record_from_jsonl(lines[i]);
      const LanguageModel* lm = opts.policy == AttackPolicy::kLmProposal
                                    ? &lms.get(record.lm_descriptor)
                                    : nullptr;
      const AttackParams params{opts.rate, opts.policy, opts.attack_seed + i};
      out += to_jsonl(attack_record(record, params, lm));
      out += '\n';
    } catch (const Error& e) {
      ++errors;
      *opts.log << "line " << i + 1 << ": " << e.what() << '\n';
    }
  }
  const int status = detail::emit(opts, out);
  if (status != kExitOk) return status;
  return errors > 0 ? kExitData : kExitOk;
}

struct SweepAxis {
  std::string name;  // canonical: y, k, temperature, top_k, gamma, delta, attack_rate
  std::vector<std::string> values;
};

inline SweepAxis parse_axis(const std::string& spec) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 == spec.size()) {
    throw Error(ErrorCode::kInvalidArgument, "axis must look like name=v1,v2: '" + spec + "'");
  }
  std::string name = spec.substr(0, eq);
  if (name == "temp") name = "temperature";
  if (name == "t" || name == "rate") name = "attack_rate";
  if (name == "top-k") name = "top_k";
  static const std::vector<std::string> kKnown = {"y", "k", "temperature", "top_k",
                                                  "gamma", "delta", "attack_rate"};
  if (std::find(kKnown.begin(), kKnown.end(), name) == kKnown.end()) {
    throw Error(ErrorCode::kInvalidArgument, "unknown sweep axis '" + name + "'");
  }
  SweepAxis axis{name, {}};
  std::stringstream ss(spec.substr(eq + 1));
  std::string v;
  while (std::getline(ss, v, ',')) {
    if (v.empty()) throw Error(ErrorCode::kInvalidArgument, "empty axis value");
    std::size_t used = 0;
    try {
      (void)std::stod(v, &used);
    } catch (const std::logic_error&) {
      used = 0;
    }
    if (used != v.size()) {
      throw Error(ErrorCode::kInvalidArgument, "axis value '" + v + "' is not a number");
    }
    axis.values.push_back(v);
  }
  return axis;
}

inline void apply_axis_value(GenerationConfig& config, std::optional<double>& attack_rate,
                             const std::string& name, const std::string& value) {
  const double v = std::stod(value);
  if (name == "y") {
    config.y = std::stoi(value);
  } else if (name == "k") {
    config.k = std::stoi(value);
  } else if (name == "temperature") {
    config.temperature = v;
  } else if (name == "top_k") {
    config.top_k = std::stoi(value);
  } else if (name == "gamma") {
    config.gamma = v;
  } else if (name == "delta") {
    config.delta = v;
  } else if (name == "attack_rate") {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw Error(ErrorCode::kInvalidArgument, "attack rate must lie in [0, 1]");
    }
    attack_rate = v;
  }
}

struct SweepCell {
  GenerationConfig config;
  std::optional<double> attack_rate;
  std::string axis;
  std::string axis_value;
  ExperimentSummary summary;
};

// Runs generate -> (attack) -> detect -> metrics for every cell of the
// cartesian product of `axes`. Cells share the master seed, so every cell
// sees the same prompts and per-record seeds.
inline std::vector<SweepCell> run_sweep(const LoadedLm& lm, const CommandOptions& opts) {
  std::vector<SweepAxis> axes;
  for (const std::string& a : opts.axes) axes.push_back(parse_axis(a));
  if (axes.empty()) throw Error(ErrorCode::kInvalidArgument, "sweep needs at least one --axis");

  std::vector<SweepCell> cells;
  std::vector<std::size_t> idx(axes.size(), 0);
  for (;;) {
    SweepCell cell;
    cell.config = opts.gen;
    for (std::size_t a = 0; a < axes.size(); ++a) {
      const std::string& value = axes[a].values[idx[a]];
      apply_axis_value(cell.config, cell.attack_rate, axes[a].name, value);
      if (a) {
        cell.axis += ';';
        cell.axis_value += ';';
      }
      cell.axis += axes[a].name;
      cell.axis_value += value;
    }
    cells.push_back(std::move(cell));
    std::size_t a = axes.size();
    while (a > 0 && ++idx[a - 1] == axes[a - 1].values.size()) idx[--a] = 0;
    if (a == 0) break;
  }

  for (SweepCell& cell : cells) {
    GenerationBatch batch = run_generation(lm, cell.config);
    std::vector<GenerationRecord> records = std::move(batch.records);
    if (cell.attack_rate) {
      records = attack_records(records, *cell.attack_rate, opts.policy,
                               opts.attack_seed, lm.model.get());
    }
    DetectorSpec spec;
    spec.k = cell.config.k;
    spec.threshold_u = cell.config.threshold_u;
    spec.gamma = cell.config.gamma;
    SummaryBuilder summary;
    for (const GenerationRecord& r : records) {
      std::optional<double> sim;
      if (opts.similarity && opts.similarity->available()) {
        sim = opts.similarity->score(r.prompt, r.completion);
      }
      summary.add(detect_record(r, spec), safe_diversity(r.completion), sim);
    }
    cell.summary = summary.build();
  }
  return cells;
}

inline std::vector<std::string> sweep_csv_header(bool with_similarity) {
  std::vector<std::string> h = {"method", "axis", "axis_value", "y", "k",
                                "temperature", "top_k", "gamma", "delta",
                                "attack_rate", "attack_policy", "n_samples",
                                "mean_z", "detection_rate", "mean_diversity"};
  if (with_similarity) h.emplace_back("mean_similarity");
  return h;
}

inline std::string sweep_to_csv(const std::vector<SweepCell>& cells, AttackPolicy policy,
                                bool with_similarity) {
  std::ostringstream csv;
  write_csv_row(csv, sweep_csv_header(with_similarity));
  for (const SweepCell& c : cells) {
    std::vector<std::string> row = {
        std::string(method_name(c.config.method)), c.axis, c.axis_value,
        std::to_string(c.config.y), std::to_string(c.config.k),
        format_double(c.config.temperature), std::to_string(c.config.top_k),
        format_double(c.config.gamma), format_double(c.config.delta),
        c.attack_rate ? format_double(*c.attack_rate) : "",
        c.attack_rate ? std::string(attack_policy_name(policy)) : "",
        std::to_string(c.summary.n_samples), format_double(c.summary.mean_z),
        format_double(c.summary.detection_rate), format_double(c.summary.mean_diversity)};
    if (with_similarity) {
      row.push_back(c.summary.mean_similarity ? format_double(*c.summary.mean_similarity) : "");
    }
    write_csv_row(csv, row);
  }
  return csv.str();
}

inline int cmd_sweep(const CommandOptions& opts) {
  try {
    const LoadedLm lm = load_lm(opts.lm);
    const std::vector<SweepCell> cells = run_sweep(lm, opts);
    return detail::emit(opts, sweep_to_csv(cells, opts.policy,
                                           opts.similarity && opts.similarity->available()));
  } catch (const Error& e) {
    *opts.log << "error: " << e.what() << '\n';
    return detail::exit_for(e);
  }
}

inline std::vector<std::string> report_csv_header() {
  return {"method", "axis", "axis_value", "n_samples", "mean_z", "detection_rate",
          "mean_diversity"};
}

inline int cmd_report(const CommandOptions& opts) {
  ReportAggregator agg;
  try {
    for (const std::string& path : opts.inputs) {
      const CsvTable table(read_text_file(path));
      for (std::size_t i = 0; i < table.size(); ++i) {
        ReportRow row;
        row.method = table.at(i, "method");
        row.axis = table.at(i, "axis");
        row.axis_value = table.at(i, "axis_value");
        try {
          row.n_samples = std::stoull(table.at(i, "n_samples"));
          row.mean_z = std::stod(table.at(i, "mean_z"));
          row.detection_rate = std::stod(table.at(i, "detection_rate"));
          row.mean_diversity = std::stod(table.at(i, "mean_diversity"));
        } catch (const std::logic_error&) {
          throw Error(ErrorCode::kDataError,
                      path + ": bad number on row " + std::to_string(i + 2));
        }
        agg.add(row);
      }
    }
  } catch (const Error& e) {
    *opts.log << "error: " << e.what() << '\n';
    return kExitData;
  }

  std::ostringstream csv;
  write_csv_row(csv, report_csv_header());
  for (const ReportRow& r : agg.rows()) {
    write_csv_row(csv, {r.method, r.axis, r.axis_value, std::to_string(r.n_samples),
                        format_double(r.mean_z), format_double(r.detection_rate),
                        format_double(r.mean_diversity)});
  }
  for (const std::string& path : opts.inputs) {
    if (detail::same_file(path, opts.out_path) || detail::same_file(path, opts.svg_path)) {
      *opts.log << "error: outputs must differ from inputs\n";
      return kExitUsage;
    }
  }
  if (!opts.svg_path.empty()) {
    if (detail::write_file(opts.svg_path, render_attack_chart(agg.rows()))) {
      *opts.log << "error: cannot write '" << opts.svg_path << "'\n";
      return kExitData;
    }
  }
  return detail::emit(opts, csv.str());
}

}  // namespace samplemark::harness
