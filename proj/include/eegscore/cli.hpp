#pragma once
// Command-line front end. Exit codes: 0 success, 1 usage error, 2 data error.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "eegscore/config.hpp"
#include "eegscore/evaluation.hpp"
#include "eegscore/io.hpp"
#include "eegscore/pipeline.hpp"
#include "eegscore/remote.hpp"

namespace eegscore {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

inline constexpr const char* kConfigEnvVar = "SCORE_EXTRACT_CONFIG";

namespace cli_detail {

inline PipelineConfig resolve_config(const std::string& flag) {
  if (!flag.empty()) return load_config(flag);
  if (const char* env = std::getenv(kConfigEnvVar); env && *env) return load_config(env);
  return {};
}

inline void print_sections(const SegmentedReport& seg, std::ostream& out) {
  const auto& r = seg.report;
  auto sentences_of = [&](std::optional<std::size_t> section) {
    for (const auto& s : seg.sentences)
      if (s.section == section)
        out << "  [" << s.span.start << "," << s.span.end << ") " << r.slice(s.span) << "\n";
  };
  out << "PREAMBLE [" << seg.preamble.start << "," << seg.preamble.end << ")\n";
  sentences_of(std::nullopt);
  for (std::size_t k = 0; k < seg.sections.size(); ++k) {
    const auto& s = seg.sections[k];
    out << s.section.name() << " \"" << r.slice(s.header) << "\" header [" << s.header.start << ","
        << s.header.end << ") body [" << s.body.start << "," << s.body.end << ")\n";
    sentences_of(k);
  }
}

inline void print_entities(const std::vector<Entity>& entities, std::ostream& out) {
  for (const auto& e : entities)
    out << "[" << e.span.start << "," << e.span.end << ") " << to_string(e.kind) << " "
        << e.section.name() << (e.negated ? " negated " : " affirmed ") << "\"" << e.surface
        << "\"\n";
}

}  // namespace cli_detail

inline int cli_main(int argc, const char* const* argv, std::ostream& out = std::cout,
                    std::ostream& err = std::cerr) {
  CLI::App app{"Extract seizure type, normal/abnormal impression and epilepsy status from EEG reports",
               "eegscore"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "pipeline config file (default: $SCORE_EXTRACT_CONFIG)");

  auto* extract = app.add_subcommand("extract", "run the pipeline over a corpus and write JSONL");
  std::string corpus, out_path;
  extract->add_option("corpus_dir", corpus, "directory of *.txt reports")->required();
  extract->add_option("--out", out_path, "output JSONL file (default: config output, else stdout)");
  extract->add_option("--config", config_path, "pipeline config file");

  auto* eval = app.add_subcommand("evaluate", "score the pipeline against a gold manifest");
  std::string manifest_path, task_name;
  bool as_json = false, as_table = false;
  eval->add_option("corpus_dir", corpus, "directory the manifest paths are relative to")->required();
  eval->add_option("--manifest", manifest_path, "CSV with header record_id,path,label")->required();
  eval->add_option("--task", task_name, "seizure | abnormal | epilepsy")
      ->required()
      ->check(CLI::IsMember({"seizure", "abnormal", "epilepsy"}));
  auto* json_flag = eval->add_flag("--json", as_json, "print the report as JSON");
  eval->add_flag("--table", as_table, "print the weighted-average table (default)")->excludes(json_flag);
  eval->add_option("--config", config_path, "pipeline config file");

  auto* sections = app.add_subcommand("sections", "print the sectioned view of one report");
  std::string file;
  sections->add_option("file", file, "report file")->required();
  sections->add_option("--config", config_path, "pipeline config file");

  auto* tag = app.add_subcommand("tag", "print entities of one report with negation flags");
  bool wire = false;
  tag->add_option("file", file, "report file")->required();
  tag->add_flag("--wire", wire, "print the entities as an entity-service response body");
  tag->add_option("--config", config_path, "pipeline config file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n";
    const CLI::App* failing = &app;
    for (auto* sub : app.get_subcommands()) failing = sub;
    err << failing->help();
    return kExitUsage;
  }

  try {
    Pipeline pipeline(cli_detail::resolve_config(config_path));
    if (*extract) {
      auto scan = scan_corpus(corpus);
      auto jsonl = encode_jsonl(pipeline.extract_many(scan.reports));
      std::filesystem::path dest = out_path;
      if (dest.empty() && pipeline.config().output_path) dest = *pipeline.config().output_path;
      if (dest.empty()) {
        out << jsonl;
      } else {
        std::ofstream f(dest, std::ios::binary | std::ios::trunc);
        if (!(f << jsonl)) throw IoError("cannot write " + dest.string());
      }
      return kExitOk;
    }
    if (*eval) {
      auto task = *parse_task(task_name);
      auto report = evaluate(corpus, load_manifest(manifest_path, task), pipeline);
      if (as_json)
        out << to_json(report).dump(2) << "\n";
      else
        out << format_table(report);
      return kExitOk;
    }
    auto report = read_report(file, std::filesystem::path(file).stem().string());
    auto seg = pipeline.segment(report);
    if (*sections) {
      cli_detail::print_sections(seg, out);
      return kExitOk;
    }
    auto entities = pipeline.tag(seg);
    if (wire) {
      std::vector<WireEntity> w;
      for (const auto& e : entities)
        w.push_back({e.span.start, e.span.end, std::string(wire_label(e.kind))});
      out << encode_entity_response(w) << "\n";
    } else {
      cli_detail::print_entities(entities, out);
    }
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
}

}  // namespace eegscore
