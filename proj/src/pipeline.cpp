#include "genmi/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <thread>
#include <tuple>

#include "genmi/conllu.hpp"
#include "genmi/coverage.hpp"
#include "genmi/rng.hpp"

namespace fs = std::filesystem;

namespace genmi {

std::string_view to_string(BaselineVar v) {
  return v == BaselineVar::Case ? "case" : "number";
}

namespace {

constexpr std::array<Animacy, 2> kClassOrder = {Animacy::Inanimate,
                                                Animacy::Animate};

std::size_t rel_index(Relation r) { return static_cast<std::size_t>(r); }

std::size_t class_index(Animacy a) {
  return a == Animacy::Inanimate ? 0 : 1;
}

std::string basename_of(const std::string& path) {
  return fs::path(path).filename().string();
}

// ---------------------------------------------------------------------------
// extraction aggregation
// ---------------------------------------------------------------------------

using AggMap = std::unordered_map<std::string, std::int64_t>;

struct FileExtract {
  std::array<AggMap, 4> rel;
  std::array<std::int64_t, 4> rel_dropped{0, 0, 0, 0};
  AggMap obs;
  std::int64_t obs_dropped = 0;
  std::int64_t sentences = 0;
  std::int64_t skipped = 0;
};

char gender_code(Gender g) {
  return static_cast<char>('0' + static_cast<int>(g));
}

Gender gender_from_code(char c) { return static_cast<Gender>(c - '0'); }

FileExtract extract_file(const std::string& path, const PipelineConfig& config,
                         bool want_observations) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open input file: " + path);

  FileExtract fx;
  ConlluReader reader(in, ReaderOptions{config.strict});
  std::string key;
  while (auto sentence = reader.next()) {
    ++fx.sentences;
    for (const Relation r : config.relations) {
      const auto pe = extract_pairs(*sentence, r, config.extract);
      fx.rel_dropped[rel_index(r)] += static_cast<std::int64_t>(pe.dropped_no_gender);
      for (const DependencyPair& p : pe.pairs) {
        key.assign(p.noun_lemma);
        key += '\t';
        key += p.partner_lemma;
        key += '\t';
        key += gender_code(p.noun_gender);
        ++fx.rel[rel_index(r)][key];
      }
    }
    if (want_observations) {
      const auto oe = extract_noun_observations(*sentence, config.extract);
      fx.obs_dropped += static_cast<std::int64_t>(oe.dropped_no_gender);
      for (const NounFeatureObservation& o : oe.observations) {
        key.assign(o.noun_lemma);
        key += '\t';
        key += gender_code(o.gender);
        key += '\t';
        if (o.gram_case.specified()) key += to_string(o.gram_case);
        key += '\t';
        if (o.number != GrammNumber::Unspecified) key += to_string(o.number);
        ++fx.obs[key];
      }
    }
  }
  fx.skipped = static_cast<std::int64_t>(reader.skipped_sentences());
  return fx;
}

void merge_into(AggMap& into, const AggMap& from) {
  for (const auto& [k, n] : from) into[k] += n;
}

// ---------------------------------------------------------------------------
// per-cell analysis
// ---------------------------------------------------------------------------

struct PairRec {
  std::string noun;
  std::string partner;  // partner lemma, or case/number value for baselines
  Gender gender = Gender::Unspecified;
  std::int64_t count = 0;
};

std::int64_t token_sum(const std::vector<PairRec>& recs) {
  std::int64_t total = 0;
  for (const PairRec& r : recs) total += r.count;
  return total;
}

void sort_recs(std::vector<PairRec>& recs) {
  std::sort(recs.begin(), recs.end(), [](const PairRec& a, const PairRec& b) {
    if (a.noun != b.noun) return a.noun < b.noun;
    if (a.partner != b.partner) return a.partner < b.partner;
    return a.gender < b.gender;
  });
}

// Keeps recs whose `field` is retained; returns the dropped token count.
template <typename FieldOf>
std::int64_t filter_recs(std::vector<PairRec>& recs, const StringSet& retained,
                         FieldOf field) {
  std::int64_t dropped = 0;
  std::vector<PairRec> kept;
  kept.reserve(recs.size());
  for (PairRec& r : recs) {
    if (retained.contains(field(r))) {
      kept.push_back(std::move(r));
    } else {
      dropped += r.count;
    }
  }
  recs = std::move(kept);
  return dropped;
}

AnalysisCell analyze_cell(Animacy cls, std::string variable,
                          std::vector<PairRec> recs, bool partner_filter,
                          const PipelineConfig& config) {
  AnalysisCell cell;
  cell.animacy = cls;
  cell.variable = variable;
  cell.audit.input_tokens = token_sum(recs);

  const auto mark_na = [&cell](std::string reason) {
    cell.ok = false;
    cell.na_reason = std::move(reason);
  };

  // Baseline datasets exclude tokens whose value is unmarked.
  if (!partner_filter) {
    std::vector<PairRec> kept;
    kept.reserve(recs.size());
    for (PairRec& r : recs) {
      if (r.partner.empty()) {
        cell.audit.value_unspecified_dropped += r.count;
      } else {
        kept.push_back(std::move(r));
      }
    }
    recs = std::move(kept);
  }
  if (recs.empty()) {
    mark_na("no_data");
    return cell;
  }

  // Coverage retention: partner lemmata first (relations only), then nouns,
  // each computed within this cell's dataset.
  if (partner_filter) {
    LemmaCounts partner_counts;
    for (const PairRec& r : recs) partner_counts[r.partner] += r.count;
    cell.retained_partners = coverage_filter(partner_counts, config.coverage);
    StringSet retained(cell.retained_partners.begin(),
                       cell.retained_partners.end());
    cell.audit.partner_coverage_dropped = filter_recs(
        recs, retained, [](const PairRec& r) -> const std::string& { return r.partner; });
  }
  {
    LemmaCounts noun_counts;
    for (const PairRec& r : recs) noun_counts[r.noun] += r.count;
    cell.retained_nouns = coverage_filter(noun_counts, config.coverage);
    StringSet retained(cell.retained_nouns.begin(), cell.retained_nouns.end());
    cell.audit.noun_coverage_dropped = filter_recs(
        recs, retained, [](const PairRec& r) -> const std::string& { return r.noun; });
  }

  // One gender per noun type (modal); ties are dropped.
  GenderVotes votes;
  for (const PairRec& r : recs) votes.add(r.noun, r.gender, r.count);
  const GenderAssignment assignment = votes.resolve();
  if (!assignment.dropped.empty()) {
    std::vector<PairRec> kept;
    kept.reserve(recs.size());
    for (PairRec& r : recs) {
      if (assignment.dropped.contains(r.noun)) {
        cell.audit.tied_gender_dropped += r.count;
      } else {
        kept.push_back(std::move(r));
      }
    }
    recs = std::move(kept);
  }
  if (recs.empty()) {
    mark_na("no_data");
    return cell;
  }

  // Aggregate to (noun, partner) multiset and build profiles + table.
  std::map<std::pair<std::string, std::string>, std::int64_t> weighted_map;
  for (const PairRec& r : recs) weighted_map[{r.noun, r.partner}] += r.count;
  std::vector<WeightedPair> weighted;
  weighted.reserve(weighted_map.size());
  for (const auto& [key, n] : weighted_map) {
    weighted.push_back(WeightedPair{key.first, key.second, n});
  }

  ProfileBuild build = build_profiles(weighted, assignment);
  cell.audit.retained_tokens = build.table.total;
  cell.counts.pair_tokens = build.table.total;
  cell.counts.pair_types = static_cast<std::int64_t>(weighted.size());
  cell.counts.noun_types = static_cast<std::int64_t>(build.profiles.profiles.size());
  cell.counts.partner_types =
      static_cast<std::int64_t>(build.profiles.partner_labels.size());
  cell.table_rows = build.table.rows();
  cell.table_cols = build.table.cols();
  cell.table_total = build.table.total;

  if (build.profiles.profiles.size() < 2) {
    mark_na("too_few_noun_types");
    return cell;
  }
  if (build.profiles.gender_labels.size() < 2) {
    mark_na("single_gender");
    return cell;
  }
  if (build.profiles.partner_labels.size() < 2) {
    mark_na("single_partner_value");
    return cell;
  }

  const std::string cell_name =
      std::string(to_string(cls)) + "/" + cell.variable;
  const std::uint64_t cell_seed =
      derive_stream_seed(config.seed, fnv1a64(cell_name));
  cell.test = permutation_test(
      build.profiles, config.n_permutations, cell_seed,
      PermutationOptions{config.workers, config.permutation_level});
  cell.nmi = nmi_report(build.table);
  cell.ok = true;
  return cell;
}

// ---------------------------------------------------------------------------
// output formatting helpers
// ---------------------------------------------------------------------------

std::string fixed4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

nlohmann::ordered_json json_or_na(const std::optional<double>& v) {
  if (v) return *v;
  return "N/A";
}

struct FigureBundle {
  std::vector<Figure> figures;
  std::string csv;
};

FigureBundle figure_bundle(const AnalysisResult& result) {
  FigureBundle bundle;
  std::string csv = "chart,animacy,variable,normalizer,value\n";

  // Variables shown in figures; iobj is reported in results.json only.
  std::vector<std::string> fig_vars;
  for (const Relation r : result.config.relations) {
    if (r != Relation::Iobj) fig_vars.emplace_back(to_string(r));
  }

  const auto bar_value = [&](Animacy cls, const std::string& var,
                             Normalizer n) -> std::optional<double> {
    const AnalysisCell* cell = result.find_cell(cls, var);
    if (!cell || !cell->ok) return std::nullopt;
    return cell->nmi.value(n);
  };

  const auto add_row = [&csv](const std::string& chart, std::string_view cls,
                              const std::string& var, Normalizer n,
                              const std::optional<double>& v) {
    csv += chart;
    csv += ',';
    csv += cls;
    csv += ',';
    csv += var;
    csv += ',';
    csv += to_string(n);
    csv += ',';
    csv += v ? format_value(*v) : "N/A";
    csv += '\n';
  };

  // One grouped chart per analyzed class: six normalizer groups, one bar per
  // variable.
  if (!fig_vars.empty()) {
    for (const Animacy cls : result.config.animacy_classes) {
      const std::string chart_id = "nmi_" + std::string(to_string(cls));
      GroupedBarChart chart;
      chart.title = "NMI by normalizer (" + std::string(to_string(cls)) +
                    " nouns, " + result.config.language + ")";
      chart.y_label = "NMI";
      chart.series = fig_vars;
      for (const Normalizer n : kAllNormalizers) {
        BarGroup group;
        group.label = std::string(to_string(n));
        for (const std::string& var : fig_vars) {
          const auto v = bar_value(cls, var, n);
          group.values.push_back(v);
          add_row(chart_id, to_string(cls), var, n, v);
        }
        chart.groups.push_back(std::move(group));
      }
      bundle.figures.push_back(Figure{chart_id + ".svg", std::move(chart)});
    }
  }

  // Paired inanimate-vs-animate charts per variable.
  const bool both_classes = result.config.animacy_classes.size() == 2;
  if (both_classes) {
    for (const std::string& var : fig_vars) {
      const std::string chart_id = "nmi_pair_" + var;
      GroupedBarChart chart;
      chart.title = "NMI, inanimate vs animate (" + var + ", " +
                    result.config.language + ")";
      chart.y_label = "NMI";
      chart.series = {"inanimate", "animate"};
      for (const Normalizer n : kAllNormalizers) {
        BarGroup group;
        group.label = std::string(to_string(n));
        for (const Animacy cls : kClassOrder) {
          const auto v = bar_value(cls, var, n);
          group.values.push_back(v);
          add_row(chart_id, to_string(cls), var, n, v);
        }
        chart.groups.push_back(std::move(group));
      }
      bundle.figures.push_back(Figure{chart_id + ".svg", std::move(chart)});
    }
  }

  bundle.csv = std::move(csv);
  return bundle;
}

void write_atomic(const fs::path& path, const std::string& content) {
  const fs::path tmp = path.parent_path() / (path.filename().string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw InputError("write failed: " + tmp.string());
  }
  fs::rename(tmp, path);
}

void validate_config(const PipelineConfig& config) {
  if (config.relations.empty() && config.baselines.empty()) {
    throw ConfigError("at least one relation or baseline must be selected");
  }
  if (config.animacy_classes.empty()) {
    throw ConfigError("at least one animacy class must be selected");
  }
  if (!(config.coverage > 0.0) || config.coverage > 1.0) {
    throw ConfigError("coverage must be in (0,1]");
  }
  if (config.n_permutations < 1) {
    throw ConfigError("n_permutations must be >= 1");
  }
  if (config.lexicon_path.empty()) {
    throw ConfigError("a lexicon path is required");
  }
}

// Normalizes selection lists to canonical order without duplicates, so the
// serialized result is a pure function of the selection set.
PipelineConfig normalized(PipelineConfig config) {
  std::vector<Relation> rels;
  for (const Relation r : kAllRelations) {
    if (std::find(config.relations.begin(), config.relations.end(), r) !=
        config.relations.end()) {
      rels.push_back(r);
    }
  }
  config.relations = std::move(rels);

  std::vector<BaselineVar> bases;
  for (const BaselineVar b : {BaselineVar::Case, BaselineVar::Number}) {
    if (std::find(config.baselines.begin(), config.baselines.end(), b) !=
        config.baselines.end()) {
      bases.push_back(b);
    }
  }
  config.baselines = std::move(bases);

  std::vector<Animacy> classes;
  for (const Animacy a : kClassOrder) {
    if (std::find(config.animacy_classes.begin(), config.animacy_classes.end(),
                  a) != config.animacy_classes.end()) {
      classes.push_back(a);
    }
  }
  config.animacy_classes = std::move(classes);
  return config;
}

}  // namespace

bool AnalysisResult::all_na() const {
  if (cells.empty()) return true;
  return std::none_of(cells.begin(), cells.end(),
                      [](const AnalysisCell& c) { return c.ok; });
}

const AnalysisCell* AnalysisResult::find_cell(Animacy a,
                                              std::string_view variable) const {
  for (const AnalysisCell& c : cells) {
    if (c.animacy == a && c.variable == variable) return &c;
  }
  return nullptr;
}

AnalysisResult compute(const PipelineConfig& raw_config) {
  validate_config(raw_config);
  const PipelineConfig config = normalized(raw_config);
  if (config.input_paths.empty()) throw EmptyCorpus();

  AnimacyLexicon lexicon;
  {
    std::ifstream in(config.lexicon_path, std::ios::binary);
    if (!in) throw InputError("cannot open lexicon: " + config.lexicon_path);
    lexicon = AnimacyLexicon::load(in);
  }

  const bool want_observations = !config.baselines.empty();

  // Parse and extract per file, in parallel; merge in file order so the
  // aggregation is independent of scheduling.
  const std::size_t n_files = config.input_paths.size();
  std::vector<FileExtract> extracts(n_files);
  std::vector<std::exception_ptr> errors(n_files);
  {
    int workers = config.workers > 0
                      ? config.workers
                      : static_cast<int>(std::thread::hardware_concurrency());
    if (workers < 1) workers = 1;
    workers = static_cast<int>(
        std::min<std::size_t>(static_cast<std::size_t>(workers), n_files));
    std::atomic<std::size_t> next{0};
    const auto work = [&]() {
      for (std::size_t i = next.fetch_add(1); i < n_files;
           i = next.fetch_add(1)) {
        try {
          extracts[i] = extract_file(config.input_paths[i], config,
                                     want_observations);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    };
    if (workers == 1) {
      work();
    } else {
      std::vector<std::thread> pool;
      for (int w = 0; w < workers; ++w) pool.emplace_back(work);
      for (std::thread& t : pool) t.join();
    }
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  std::array<AggMap, 4> rel_agg;
  std::array<std::int64_t, 4> rel_dropped{0, 0, 0, 0};
  AggMap obs_agg;
  std::int64_t obs_dropped = 0;

  AnalysisResult result;
  result.config = config;
  for (const std::string& p : config.input_paths) {
    result.ingest.files.push_back(basename_of(p));
  }
  for (const FileExtract& fx : extracts) {
    result.ingest.sentences += fx.sentences;
    result.ingest.sentences_skipped += fx.skipped;
    for (std::size_t i = 0; i < 4; ++i) {
      merge_into(rel_agg[i], fx.rel[i]);
      rel_dropped[i] += fx.rel_dropped[i];
    }
    merge_into(obs_agg, fx.obs);
    obs_dropped += fx.obs_dropped;
  }

  // --- relation variables -------------------------------------------------
  // classed[rel][class] -> records of that cell
  std::array<std::array<std::vector<PairRec>, 2>, 4> classed;
  for (const Relation r : config.relations) {
    RelationAudit audit;
    audit.dropped_no_gender = rel_dropped[rel_index(r)];
    audit.class_input_tokens = {{"inanimate", 0}, {"animate", 0}};
    for (const auto& [key, count] : rel_agg[rel_index(r)]) {
      const std::size_t t1 = key.find('\t');
      const std::size_t t2 = key.find('\t', t1 + 1);
      PairRec rec;
      rec.noun = key.substr(0, t1);
      rec.partner = key.substr(t1 + 1, t2 - t1 - 1);
      rec.gender = gender_from_code(key[t2 + 1]);
      rec.count = count;
      audit.pairs_extracted += count;
      switch (lexicon.lookup(rec.noun)) {
        case Animacy::Inanimate:
          audit.class_input_tokens["inanimate"] += count;
          classed[rel_index(r)][0].push_back(std::move(rec));
          break;
        case Animacy::Animate:
          audit.class_input_tokens["animate"] += count;
          classed[rel_index(r)][1].push_back(std::move(rec));
          break;
        case Animacy::Unknown:
          audit.unknown_animacy += count;
          break;
      }
    }
    for (auto& bucket : classed[rel_index(r)]) sort_recs(bucket);
    result.relation_audit.emplace_back(std::string(to_string(r)), std::move(audit));
  }

  // --- baseline observations ------------------------------------------------
  // obs_classed[class] -> (noun, gender, case label, number label, count)
  struct ObsRec {
    std::string noun;
    Gender gender;
    std::string case_label;
    std::string number_label;
    std::int64_t count;
  };
  std::array<std::vector<ObsRec>, 2> obs_classed;
  if (want_observations) {
    ObservationAudit audit;
    audit.dropped_no_gender = obs_dropped;
    audit.class_input_tokens = {{"inanimate", 0}, {"animate", 0}};
    for (const auto& [key, count] : obs_agg) {
      const std::size_t t1 = key.find('\t');
      const std::size_t t2 = key.find('\t', t1 + 1);
      const std::size_t t3 = key.find('\t', t2 + 1);
      ObsRec rec;
      rec.noun = key.substr(0, t1);
      rec.gender = gender_from_code(key[t1 + 1]);
      rec.case_label = key.substr(t2 + 1, t3 - t2 - 1);
      rec.number_label = key.substr(t3 + 1);
      rec.count = count;
      audit.observations_extracted += count;
      switch (lexicon.lookup(rec.noun)) {
        case Animacy::Inanimate:
          audit.class_input_tokens["inanimate"] += count;
          obs_classed[0].push_back(std::move(rec));
          break;
        case Animacy::Animate:
          audit.class_input_tokens["animate"] += count;
          obs_classed[1].push_back(std::move(rec));
          break;
        case Animacy::Unknown:
          audit.unknown_animacy += count;
          break;
      }
    }
    for (auto& bucket : obs_classed) {
      std::sort(bucket.begin(), bucket.end(),
                [](const ObsRec& a, const ObsRec& b) {
                  return std::tie(a.noun, a.case_label, a.number_label, a.gender) <
                         std::tie(b.noun, b.case_label, b.number_label, b.gender);
                });
    }
    result.observation_audit = std::move(audit);
  }

  // --- cells ---------------------------------------------------------------
  for (const Animacy cls : config.animacy_classes) {
    for (const Relation r : config.relations) {
      result.cells.push_back(analyze_cell(
          cls, std::string(to_string(r)), classed[rel_index(r)][class_index(cls)],
          /*partner_filter=*/true, config));
    }
    for (const BaselineVar b : config.baselines) {
      std::vector<PairRec> recs;
      recs.reserve(obs_classed[class_index(cls)].size());
      for (const ObsRec& o : obs_classed[class_index(cls)]) {
        PairRec rec;
        rec.noun = o.noun;
        rec.partner = b == BaselineVar::Case ? o.case_label : o.number_label;
        rec.gender = o.gender;
        rec.count = o.count;
        recs.push_back(std::move(rec));
      }
      result.cells.push_back(analyze_cell(cls, std::string(to_string(b)),
                                          std::move(recs),
                                          /*partner_filter=*/false, config));
    }
  }
  return result;
}

nlohmann::ordered_json results_json(const AnalysisResult& result) {
  nlohmann::ordered_json j;
  j["schema_version"] = 1;
  j["units"] = "bits";
  j["language"] = result.config.language;

  nlohmann::ordered_json cfg;
  cfg["inputs"] = result.ingest.files;
  cfg["lexicon"] = basename_of(result.config.lexicon_path);
  {
    std::vector<std::string> names;
    for (const Relation r : result.config.relations) names.emplace_back(to_string(r));
    cfg["relations"] = names;
    names.clear();
    for (const BaselineVar b : result.config.baselines) names.emplace_back(to_string(b));
    cfg["baselines"] = names;
    names.clear();
    for (const Animacy a : result.config.animacy_classes) names.emplace_back(to_string(a));
    cfg["animacy_classes"] = names;
  }
  cfg["coverage"] = result.config.coverage;
  cfg["n_permutations"] = result.config.n_permutations;
  cfg["seed"] = result.config.seed;
  cfg["strict"] = result.config.strict;
  cfg["permutation_level"] =
      result.config.permutation_level == PermutationLevel::Type ? "type" : "token";
  cfg["include_proper_nouns"] = result.config.extract.include_proper_nouns;
  cfg["exclude_passive_subjects"] = result.config.extract.exclude_passive_subjects;
  j["config"] = std::move(cfg);

  nlohmann::ordered_json cells = nlohmann::ordered_json::array();
  for (const AnalysisCell& c : result.cells) {
    nlohmann::ordered_json jc;
    jc["animacy"] = to_string(c.animacy);
    jc["variable"] = c.variable;
    jc["status"] = c.ok ? "ok" : "N/A";
    if (!c.ok) jc["na_reason"] = c.na_reason;
    jc["counts"] = {{"pair_tokens", c.counts.pair_tokens},
                    {"pair_types", c.counts.pair_types},
                    {"noun_types", c.counts.noun_types},
                    {"partner_types", c.counts.partner_types}};
    if (c.ok) {
      jc["table"] = {{"rows", c.table_rows},
                     {"cols", c.table_cols},
                     {"total", c.table_total}};
      jc["mi_bits"] = c.test.observed_mi;
      jc["entropy_gender_bits"] = c.nmi.h_row;
      jc["entropy_partner_bits"] = c.nmi.h_col;
      jc["permutation_test"] = {
          {"n_permutations", c.test.n_permutations},
          {"count_strictly_higher", c.test.count_strictly_higher},
          {"count_higher_or_equal", c.test.count_higher_or_equal},
          {"p_paper", c.test.p_paper},
          {"p_conservative", c.test.p_conservative},
          {"significant", c.test.significant},
          {"seed", c.test.seed}};
      nlohmann::ordered_json jn;
      for (const Normalizer n : kAllNormalizers) {
        jn[std::string(to_string(n))] = json_or_na(c.nmi.value(n));
      }
      jc["nmi"] = std::move(jn);
    }
    cells.push_back(std::move(jc));
  }
  j["cells"] = std::move(cells);
  return j;
}

nlohmann::ordered_json audit_json(const AnalysisResult& result) {
  nlohmann::ordered_json j;
  j["ingest"] = {{"files", result.ingest.files},
                 {"sentences", result.ingest.sentences},
                 {"sentences_skipped", result.ingest.sentences_skipped}};

  nlohmann::ordered_json rels;
  for (const auto& [name, audit] : result.relation_audit) {
    nlohmann::ordered_json ja;
    ja["pairs_extracted"] = audit.pairs_extracted;
    ja["dropped_no_gender"] = audit.dropped_no_gender;
    ja["unknown_animacy"] = audit.unknown_animacy;
    ja["class_input_tokens"] = audit.class_input_tokens;
    rels[name] = std::move(ja);
  }
  j["relations"] = std::move(rels);

  if (result.observation_audit) {
    const ObservationAudit& oa = *result.observation_audit;
    j["observations"] = {{"observations_extracted", oa.observations_extracted},
                         {"dropped_no_gender", oa.dropped_no_gender},
                         {"unknown_animacy", oa.unknown_animacy},
                         {"class_input_tokens", oa.class_input_tokens}};
  }

  nlohmann::ordered_json cells = nlohmann::ordered_json::array();
  for (const AnalysisCell& c : result.cells) {
    nlohmann::ordered_json jc;
    jc["animacy"] = to_string(c.animacy);
    jc["variable"] = c.variable;
    jc["input_tokens"] = c.audit.input_tokens;
    if (c.variable == "case" || c.variable == "number") {
      jc["value_unspecified_dropped"] = c.audit.value_unspecified_dropped;
    } else {
      jc["partner_coverage_dropped"] = c.audit.partner_coverage_dropped;
    }
    jc["noun_coverage_dropped"] = c.audit.noun_coverage_dropped;
    jc["tied_gender_dropped"] = c.audit.tied_gender_dropped;
    jc["retained_tokens"] = c.audit.retained_tokens;
    cells.push_back(std::move(jc));
  }
  j["cells"] = std::move(cells);
  return j;
}

nlohmann::ordered_json retained_sets_json(const AnalysisResult& result) {
  nlohmann::ordered_json cells = nlohmann::ordered_json::array();
  for (const AnalysisCell& c : result.cells) {
    nlohmann::ordered_json jc;
    jc["animacy"] = to_string(c.animacy);
    jc["variable"] = c.variable;
    jc["retained_partners"] = c.retained_partners;
    jc["retained_nouns"] = c.retained_nouns;
    cells.push_back(std::move(jc));
  }
  nlohmann::ordered_json j;
  j["coverage"] = result.config.coverage;
  j["cells"] = std::move(cells);
  return j;
}

std::string counts_csv(const AnalysisResult& result) {
  std::string csv =
      "animacy,variable,pair_tokens,pair_types,noun_types,partner_types\n";
  for (const AnalysisCell& c : result.cells) {
    csv += to_string(c.animacy);
    csv += ',';
    csv += c.variable;
    csv += ',';
    csv += std::to_string(c.counts.pair_tokens);
    csv += ',';
    csv += std::to_string(c.counts.pair_types);
    csv += ',';
    csv += std::to_string(c.counts.noun_types);
    csv += ',';
    csv += std::to_string(c.counts.partner_types);
    csv += '\n';
  }
  return csv;
}

std::string mi_table_csv(const AnalysisResult& result) {
  std::string csv = "variable";
  for (const Animacy a : result.config.animacy_classes) {
    const std::string cls(to_string(a));
    csv += "," + cls + "_mi_bits," + cls + "_p_paper," + cls + "_significant";
  }
  csv += '\n';

  std::vector<std::string> variables;
  for (const Relation r : result.config.relations) variables.emplace_back(to_string(r));
  for (const BaselineVar b : result.config.baselines) variables.emplace_back(to_string(b));

  for (const std::string& var : variables) {
    csv += var;
    for (const Animacy a : result.config.animacy_classes) {
      const AnalysisCell* cell = result.find_cell(a, var);
      if (cell && cell->ok) {
        csv += ',' + fixed4(cell->test.observed_mi);
        csv += ',' + format_value(cell->test.p_paper);
        csv += ',';
        csv += cell->test.significant ? "true" : "false";
      } else {
        csv += ",N/A,N/A,N/A";
      }
    }
    csv += '\n';
  }
  return csv;
}

std::vector<Figure> build_figures(const AnalysisResult& result) {
  return figure_bundle(result).figures;
}

std::string figure_values_csv(const AnalysisResult& result) {
  return figure_bundle(result).csv;
}

AnalysisResult run(const PipelineConfig& config) {
  AnalysisResult result = compute(config);
  if (config.out_dir.empty()) throw ConfigError("an output directory is required");

  const fs::path out_dir(config.out_dir);
  const fs::path fig_dir = out_dir / "figures";
  fs::create_directories(fig_dir);

  write_atomic(out_dir / "results.json", results_json(result).dump(2) + "\n");
  write_atomic(out_dir / "counts.csv", counts_csv(result));
  write_atomic(out_dir / "mi_table.csv", mi_table_csv(result));
  write_atomic(out_dir / "audit.json", audit_json(result).dump(2) + "\n");
  write_atomic(out_dir / "retained_sets.json",
               retained_sets_json(result).dump(2) + "\n");

  const FigureBundle bundle = figure_bundle(result);
  for (const Figure& f : bundle.figures) {
    write_atomic(fig_dir / f.filename, render_svg(f.chart));
  }
  write_atomic(fig_dir / "nmi_values.csv", bundle.csv);
  return result;
}

}  // namespace genmi
