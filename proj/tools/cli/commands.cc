// Copyright 2026 The MrAP Authors
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

#include "cli/commands.h"

#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <set>
#include <sstream>
#include <vector>

#include "CLI11.hpp"
#include "mrap/errors.h"
#include "mrap/evaluation.h"
#include "mrap/ingest.h"
#include "mrap/model_dump.h"
#include "mrap/model_registry.h"
#include "mrap/propagation.h"
#include "mrap/report.h"

namespace mrap::cli {
namespace {

namespace fs = std::filesystem;

spdlog::logger& Log() {
  static std::shared_ptr<spdlog::logger> logger = [] {
    auto sink = std::make_shared<spdlog::sinks::stderr_sink_mt>();
    auto l = std::make_shared<spdlog::logger>("mrap", sink);
    l->set_pattern("[%l] %v");
    return l;
  }();
  return *logger;
}

void ConfigureLogging() {
  const char* env = std::getenv("MRAP_LOG");
  spdlog::level::level_enum level = spdlog::level::warn;
  if (env != nullptr) {
    const std::string v = env;
    if (v == "error") level = spdlog::level::err;
    else if (v == "warn") level = spdlog::level::warn;
    else if (v == "info") level = spdlog::level::info;
    else if (v == "debug") level = spdlog::level::debug;
  }
  Log().set_level(level);
}

fs::path OutPath(const RunConfig& config, const char* name) {
  return fs::path(config.out_dir) / name;
}

std::ifstream OpenIn(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  return in;
}

// Writes through a string so a failed command never leaves a half file.
void WriteFile(const fs::path& path, const std::string& contents) {
  fs::create_directories(path.parent_path());
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << contents;
    if (!out) throw DataError("cannot write " + tmp.string());
  }
  fs::rename(tmp, path);
  Log().info("wrote {}", path.string());
}

DatasetBundle LoadBase(const RunConfig& config) {
  std::vector<Triple> triples;
  if (!config.triples_path.empty()) {
    std::ifstream in = OpenIn(config.triples_path);
    try {
      triples = ParseTriples(in);
    } catch (const ParseError& e) {
      throw DataError(config.triples_path + ": " + e.what());
    }
  }
  std::ifstream in = OpenIn(config.attrs_path);
  AttributeParse attrs;
  try {
    attrs = ParseAttributes(in);
  } catch (const ParseError& e) {
    throw DataError(config.attrs_path + ": " + e.what());
  }
  if (attrs.duplicates > 0) {
    Log().warn("{} duplicate attribute rows; the last occurrence wins",
               attrs.duplicates);
  }
  Log().info("loaded {} triples and {} attribute rows", triples.size(),
             attrs.records.size());
  return MakeBundle(triples, attrs.records);
}

// Reuses the manifest in the output directory when present, otherwise
// draws a fresh split and records it.
DatasetBundle SplitBundle(const RunConfig& config, const DatasetBundle& base) {
  const fs::path manifest = OutPath(config, kManifestFile);
  if (fs::exists(manifest)) {
    Log().info("using split manifest {}", manifest.string());
    std::ifstream in = OpenIn(manifest);
    return ApplySplitManifest(base, in);
  }
  DatasetBundle split = SplitAttributes(base, config.split);
  std::ostringstream out;
  WriteSplitManifest(split, out);
  WriteFile(manifest, out.str());
  return split;
}

DatasetBundle ObservedBundle(const RunConfig& config,
                             const DatasetBundle& split) {
  return SubsampleObserved(split, config.observed_fraction,
                           config.SubsampleSeed());
}

std::string RegistrySummary(const ModelRegistry& registry) {
  const RegistryStats& s = registry.stats();
  std::ostringstream out;
  out << "admitted models: " << registry.size() << " ("
      << s.admitted_forward << " fitted, " << s.derived_reverse
      << " derived reverse)\n";
  out << "rejected:\n";
  for (std::size_t r = 0; r < static_cast<std::size_t>(Rejection::kCount);
       ++r) {
    out << "  " << RejectionName(static_cast<Rejection>(r)) << ": "
        << s.rejected[r] << '\n';
  }
  return out.str();
}

ModelRegistry FitAndDump(const RunConfig& config,
                         const DatasetBundle& observed) {
  ModelRegistry registry = BuildRegistry(observed, config.admission);
  if (registry.empty()) {
    Log().warn("no regression model was admitted; propagation will fall "
               "back to the global means");
  }
  std::ostringstream dump;
  WriteModelDump(registry, observed.graph, observed.attrs, dump);
  WriteFile(OutPath(config, kModelsFile), dump.str());
  return registry;
}

ModelRegistry ObtainRegistry(const RunConfig& config,
                             const DatasetBundle& observed) {
  const fs::path dump = OutPath(config, kModelsFile);
  if (fs::exists(dump)) {
    Log().info("using model dump {}", dump.string());
    std::ifstream in = OpenIn(dump);
    return ReadModelDump(in, observed.graph, observed.attrs, config.admission);
  }
  return FitAndDump(config, observed);
}

std::string TableText(const std::vector<EvalReport>& reports, bool merge) {
  std::ostringstream out;
  WriteReportTable(reports, out, merge);
  return out.str();
}

std::string CsvText(const std::vector<EvalReport>& reports) {
  std::ostringstream out;
  WriteReportCsv(reports, out);
  return out.str();
}

void LogWarnings(const std::vector<EvalReport>& reports) {
  for (const EvalReport& r : reports) {
    for (const std::string& w : r.warnings) Log().warn("{}: {}", r.method, w);
  }
}

}  // namespace

int CmdStats(const RunConfig& config, std::ostream& out) {
  const DatasetBundle base = LoadBase(config);
  std::size_t train = 0, dev = 0, test = 0, models = 0, paths = 0;
  if (base.attrs.size() > 0) {
    const DatasetBundle split = SplitAttributes(base, config.split);
    for (Split s : split.split) {
      (s == Split::kTrain ? train : s == Split::kDev ? dev : test) += 1;
    }
    const DatasetBundle observed = ObservedBundle(config, split);
    const ModelRegistry registry = BuildRegistry(observed, config.admission);
    models = registry.size();
    paths = CountPaths(observed.graph, registry, observed.attrs);
  }
  out << "entities\t" << base.graph.num_entities() << '\n'
      << "edges\t" << base.graph.num_edges() << '\n'
      << "relation_types\t" << base.graph.num_relations() << '\n'
      << "attribute_types\t" << base.attrs.num_types() << '\n'
      << "attributes_train\t" << train << '\n'
      << "attributes_dev\t" << dev << '\n'
      << "attributes_test\t" << test << '\n'
      << "regression_functions\t" << models << '\n'
      << "message_passing_paths\t" << paths << '\n';
  return kOk;
}

int CmdSplit(const RunConfig& config, std::ostream& out) {
  const DatasetBundle split =
      SplitAttributes(LoadBase(config), config.split);
  std::ostringstream manifest;
  WriteSplitManifest(split, manifest);
  WriteFile(OutPath(config, kManifestFile), manifest.str());
  std::size_t counts[3] = {0, 0, 0};
  for (Split s : split.split) ++counts[static_cast<int>(s)];
  out << "train\t" << counts[0] << "\ndev\t" << counts[1] << "\ntest\t"
      << counts[2] << '\n';
  return kOk;
}

int CmdFit(const RunConfig& config, std::ostream& out) {
  const DatasetBundle observed =
      ObservedBundle(config, SplitBundle(config, LoadBase(config)));
  out << RegistrySummary(FitAndDump(config, observed));
  return kOk;
}

int CmdImpute(const RunConfig& config, std::ostream& out) {
  const DatasetBundle observed =
      ObservedBundle(config, SplitBundle(config, LoadBase(config)));
  const ModelRegistry registry = ObtainRegistry(config, observed);
  const PropagationResult result =
      Run(observed, registry, config.propagation);

  std::ostringstream imputed;
  WriteImputations(observed.graph, observed.attrs, result, imputed);
  WriteFile(OutPath(config, kImputedFile), imputed.str());
  std::ostringstream trace;
  WriteTrace(observed.attrs, result.report, trace);
  WriteFile(OutPath(config, kTraceFile), trace.str());

  out << "targets\t" << result.report.targets.size() << '\n'
      << "never_messaged\t" << result.report.never_messaged << '\n'
      << "iterations\t" << result.report.iterations << '\n'
      << "converged\t" << (result.report.converged ? "yes" : "no") << '\n';
  if (!result.report.converged) {
    Log().warn("propagation stopped after {} iterations without converging",
               result.report.iterations);
    return kNotConverged;
  }
  return kOk;
}

int CmdEval(const RunConfig& config, std::ostream& out) {
  const DatasetBundle observed =
      ObservedBundle(config, SplitBundle(config, LoadBase(config)));
  const std::string setup = config.SetupLabel();
  std::vector<EvalReport> reports;
  reports.push_back(Evaluate(BaselineLocal(observed), observed,
                             config.eval_split, "Local", setup));
  reports.push_back(Evaluate(BaselineGlobal(observed), observed,
                             config.eval_split, "Global", setup));

  const fs::path imputed = OutPath(config, kImputedFile);
  if (fs::exists(imputed)) {
    std::ifstream in = OpenIn(imputed);
    const Predictions predictions =
        ReadImputations(in, observed.graph, observed.attrs);
    std::vector<std::string> absent;
    for (std::size_t i = 0; i < observed.attrs.size(); ++i) {
      if (observed.split[i] != config.eval_split) continue;
      const AttributeEntry& e = observed.attrs.entry(i);
      if (!predictions.contains(e.key())) {
        absent.push_back(observed.graph.entities().Label(e.entity) + "/" +
                         observed.attrs.types().Label(e.attr));
      }
    }
    if (!absent.empty()) {
      std::string list;
      for (std::size_t i = 0; i < absent.size() && i < 20; ++i) {
        list += (i ? ", " : "") + absent[i];
      }
      if (absent.size() > 20) list += ", ...";
      throw DataError(std::to_string(absent.size()) +
                      " targets have no prediction in " + imputed.string() +
                      ": " + list);
    }
    reports.push_back(Evaluate(predictions, observed, config.eval_split,
                               "MrAP", setup));
  } else {
    Log().warn("{} not found; reporting baselines only", imputed.string());
  }
  LogWarnings(reports);

  const std::string table = TableText(reports, config.merge_local_global);
  WriteFile(OutPath(config, kReportCsv), CsvText(reports));
  WriteFile(OutPath(config, kReportTxt), table);
  out << table;
  return kOk;
}

int CmdAblate(const RunConfig& config, std::ostream& out) {
  const DatasetBundle observed =
      ObservedBundle(config, SplitBundle(config, LoadBase(config)));
  const ModelRegistry registry = ObtainRegistry(config, observed);
  const std::vector<EvalReport> reports =
      AblationSuite(observed, registry, config.propagation, config.eval_split,
                    config.SetupLabel());
  LogWarnings(reports);
  const std::string table = TableText(reports, false);
  WriteFile(OutPath(config, kAblationCsv), CsvText(reports));
  WriteFile(OutPath(config, kAblationTxt), table);
  out << table;
  return kOk;
}

int CmdDifferences(const RunConfig& config, const std::string& key,
                   std::ostream& out) {
  const DatasetBundle observed =
      ObservedBundle(config, SplitBundle(config, LoadBase(config)));
  std::vector<std::string> parts;
  std::stringstream ss(key);
  for (std::string p; std::getline(ss, p, '|');) parts.push_back(p);
  if (parts.size() != 3 && parts.size() != 4) {
    throw InvalidArgument("--key expects dep|indep|relation|direction or "
                          "dep|indep|INNER");
  }
  const auto dep = observed.attrs.types().Find(parts[0]);
  const auto indep = observed.attrs.types().Find(parts[1]);
  if (!dep || !indep) throw DataError("unknown attribute type in --key");
  PathKey path;
  if (parts.size() == 3) {
    if (parts[2] != kInnerLabel) {
      throw InvalidArgument("three-part --key must end in INNER");
    }
    path = PathKey::Inner(*dep, *indep);
  } else {
    const auto relation = observed.graph.relations().Find(parts[2]);
    if (!relation) throw DataError("unknown relation in --key");
    if (parts[3] != "forward" && parts[3] != "reverse") {
      throw InvalidArgument("direction must be forward or reverse");
    }
    path = PathKey::Relational(
        *dep, *indep,
        {*relation, parts[3] == "forward" ? Direction::kForward
                                          : Direction::kReverse});
  }
  const Differences diffs = ExportDifferences(observed, path);
  for (const std::string& w : diffs.warnings) Log().warn("{}", w);
  std::ostringstream csv;
  WriteDifferences(key, diffs, csv);
  WriteFile(OutPath(config, kDifferencesCsv), csv.str());
  out << "pairs\t" << diffs.values.size() << "\nmean\t"
      << FormatExact(diffs.mean) << "\nstd\t" << FormatExact(diffs.stddev)
      << '\n';
  return kOk;
}

int Main(int argc, const char* const* argv, std::ostream& out) {
  ConfigureLogging();
  CLI::App app{"Multi-relational attribute propagation for knowledge graphs"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Flat key=value file; flags override it");

  RunConfig config;
  config.propagation.threads = 0;
  std::string split_text = "80/10/10";
  std::uint64_t seed = 0;
  std::vector<std::string> exclusions;
  std::string eval_split = "test";
  std::string diff_key;
  bool no_merge = false;

  app.add_option("--triples", config.triples_path, "Triple file (TSV)");
  app.add_option("--attrs", config.attrs_path, "Attribute file (TSV)");
  app.add_option("--out", config.out_dir, "Output directory")
      ->capture_default_str();
  app.add_option("--seed", seed, "Seed for splitting and subsampling")
      ->capture_default_str();
  app.add_option("--split", split_text, "train/dev/test proportions")
      ->capture_default_str();
  app.add_option("--observed-fraction", config.observed_fraction,
                 "Share of the training set kept as observed")
      ->capture_default_str();
  app.add_option("--damping", config.propagation.damping)
      ->capture_default_str();
  app.add_option("--conv-frac", config.propagation.conv_frac,
                 "Convergence threshold as a fraction of each type's range")
      ->capture_default_str();
  app.add_option("--max-iters", config.propagation.max_iters)
      ->capture_default_str();
  app.add_flag("--no-cross", config.propagation.no_cross,
               "Only same-type relational messages");
  app.add_flag("--no-inner", config.propagation.no_inner,
               "Drop within-node messages");
  app.add_option("--min-support", config.admission.min_support)
      ->capture_default_str();
  app.add_option("--r2-min", config.admission.r2_min)->capture_default_str();
  app.add_option("--eta-min", config.admission.eta_min_scale,
                 "Reverse-model slope threshold, relative to the range ratio")
      ->capture_default_str();
  app.add_option("--exclude", exclusions, "attrA,attrB[,relation|INNER]")
      ->take_all();
  app.add_option("--threads", config.propagation.threads,
                 "Worker threads, 0 for all cores")
      ->capture_default_str();
  app.add_option("--eval-split", eval_split)
      ->check(CLI::IsMember({"dev", "test"}))
      ->capture_default_str();
  app.add_flag("--no-merge-baselines", no_merge,
               "Print Local and Global as separate columns");

  std::vector<std::pair<std::string, CLI::App*>> commands;
  for (const char* name :
       {"stats", "split", "fit", "impute", "eval", "ablate", "diffs"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->fallthrough();
    commands.emplace_back(name, sub);
  }
  commands.back().second->add_option("--key", diff_key, "Path key")
      ->required();
  commands[0].second->description("Print dataset and model statistics");
  commands[1].second->description("Write the train/dev/test manifest");
  commands[2].second->description("Fit regression models and dump them");
  commands[3].second->description("Run propagation and write imputations");
  commands[4].second->description("Score imputations and baselines");
  commands[5].second->description("Run the ablation variants");
  commands[6].second->description("Export attribute differences for a key");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, std::cerr);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    config.split = ParseSplitFractions(split_text, seed);
    config.eval_split = eval_split == "dev" ? Split::kDev : Split::kTest;
    config.merge_local_global = !no_merge;
    for (const std::string& e : exclusions) {
      config.admission.exclusions.push_back(Exclusion::Parse(e));
    }
    config.Validate();
  } catch (const Error& e) {
    Log().error("{}", e.what());
    return kUsageError;
  }

  try {
    for (const auto& [name, sub] : commands) {
      if (!sub->parsed()) continue;
      if (name == "stats") return CmdStats(config, out);
      if (name == "split") return CmdSplit(config, out);
      if (name == "fit") return CmdFit(config, out);
      if (name == "impute") return CmdImpute(config, out);
      if (name == "eval") return CmdEval(config, out);
      if (name == "ablate") return CmdAblate(config, out);
      if (name == "diffs") return CmdDifferences(config, diff_key, out);
    }
  } catch (const InvalidArgument& e) {
    Log().error("{}", e.what());
    return kUsageError;
  } catch (const std::exception& e) {
    Log().error("{}", e.what());
    return kDataError;
  }
  return kUsageError;
}

}  // namespace mrap::cli
