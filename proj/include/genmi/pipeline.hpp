#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "genmi/animacy.hpp"
#include "genmi/extraction.hpp"
#include "genmi/figures.hpp"
#include "genmi/info_stats.hpp"
#include "genmi/permutation.hpp"

namespace genmi {

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

class EmptyCorpus : public InputError {
 public:
  EmptyCorpus() : InputError("empty corpus: no input files") {}
};

enum class BaselineVar { Case, Number };
std::string_view to_string(BaselineVar v);

struct PipelineConfig {
  std::string language = "xx";
  std::vector<std::string> input_paths;
  std::string lexicon_path;
  std::vector<Relation> relations{kAllRelations.begin(), kAllRelations.end()};
  std::vector<BaselineVar> baselines{BaselineVar::Case, BaselineVar::Number};
  std::vector<Animacy> animacy_classes{Animacy::Inanimate, Animacy::Animate};
  double coverage = 0.90;
  std::int64_t n_permutations = 10000;
  std::uint64_t seed = 0;
  bool strict = false;
  int workers = 0;  // execution knob; not part of the serialized result
  PermutationLevel permutation_level = PermutationLevel::Type;
  ExtractOptions extract;
  std::string out_dir;
};

struct CellCounts {
  std::int64_t pair_tokens = 0;
  std::int64_t pair_types = 0;  // distinct (noun, partner) pairs
  std::int64_t noun_types = 0;
  std::int64_t partner_types = 0;
};

struct CellAudit {
  std::int64_t input_tokens = 0;
  std::int64_t value_unspecified_dropped = 0;  // baseline cells only
  std::int64_t partner_coverage_dropped = 0;   // relation cells only
  std::int64_t noun_coverage_dropped = 0;
  std::int64_t tied_gender_dropped = 0;
  std::int64_t retained_tokens = 0;
};

// One (animacy class, variable) analysis. `ok == false` marks an explicit
// "N/A" cell (degenerate table or no data), mirroring the N/A entries of the
// result tables; it is never silently reported as 0.
struct AnalysisCell {
  Animacy animacy = Animacy::Inanimate;
  std::string variable;  // amod | dobj | iobj | nsubj | case | number
  bool ok = false;
  std::string na_reason;
  CellCounts counts;
  std::int64_t table_rows = 0;
  std::int64_t table_cols = 0;
  std::int64_t table_total = 0;
  MiTestResult test;
  NmiReport nmi;
  CellAudit audit;
  std::vector<std::string> retained_partners;
  std::vector<std::string> retained_nouns;
};

struct RelationAudit {
  std::int64_t pairs_extracted = 0;
  std::int64_t dropped_no_gender = 0;
  std::int64_t unknown_animacy = 0;
  std::map<std::string, std::int64_t> class_input_tokens;
};

struct ObservationAudit {
  std::int64_t observations_extracted = 0;
  std::int64_t dropped_no_gender = 0;
  std::int64_t unknown_animacy = 0;
  std::map<std::string, std::int64_t> class_input_tokens;
};

struct IngestAudit {
  std::vector<std::string> files;  // basenames
  std::int64_t sentences = 0;
  std::int64_t sentences_skipped = 0;
};

struct AnalysisResult {
  PipelineConfig config;
  IngestAudit ingest;
  std::vector<std::pair<std::string, RelationAudit>> relation_audit;
  std::optional<ObservationAudit> observation_audit;
  std::vector<AnalysisCell> cells;

  bool all_na() const;
  const AnalysisCell* find_cell(Animacy a, std::string_view variable) const;
};

// The full analysis: ingest -> extraction -> animacy partition -> coverage
// filters -> type-gender assignment -> contingency tables -> MI and
// permutation test -> six-way NMI. Does not touch the filesystem beyond
// reading inputs.
AnalysisResult compute(const PipelineConfig& config);

// Output renderers (pure).
nlohmann::ordered_json results_json(const AnalysisResult& result);
nlohmann::ordered_json audit_json(const AnalysisResult& result);
nlohmann::ordered_json retained_sets_json(const AnalysisResult& result);
std::string counts_csv(const AnalysisResult& result);
std::string mi_table_csv(const AnalysisResult& result);

struct Figure {
  std::string filename;
  GroupedBarChart chart;
};
std::vector<Figure> build_figures(const AnalysisResult& result);
std::string figure_values_csv(const AnalysisResult& result);

// compute() plus atomic emission of results.json, counts.csv, mi_table.csv,
// audit.json, retained_sets.json and figures/ under config.out_dir.
AnalysisResult run(const PipelineConfig& config);

}  // namespace genmi
