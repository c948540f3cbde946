// genmi — gender/partner mutual-information analysis over CoNLL-U corpora.
//
//   genmi run   --lang de --input corpus.conllu --lexicon animacy.tsv --out results/
//   genmi synth --out corpus.conllu --lexicon-out animacy.tsv --seed 7
//
// Exit codes: 0 success, 2 configuration error, 3 input error,
// 4 degenerate analysis (every selected cell is N/A).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "genmi/pipeline.hpp"
#include "genmi/rng.hpp"
#include "genmi/synth.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitInput = 3;
constexpr int kExitDegenerate = 4;

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<genmi::Relation> parse_relations(const std::string& s) {
  std::vector<genmi::Relation> out;
  for (const std::string& name : split_csv(s)) {
    const auto r = genmi::relation_from_label(name);
    if (!r) throw genmi::ConfigError("unknown relation: " + name);
    out.push_back(*r);
  }
  return out;
}

std::vector<genmi::BaselineVar> parse_baselines(const std::string& s) {
  std::vector<genmi::BaselineVar> out;
  for (const std::string& name : split_csv(s)) {
    if (name == "case") {
      out.push_back(genmi::BaselineVar::Case);
    } else if (name == "number") {
      out.push_back(genmi::BaselineVar::Number);
    } else {
      throw genmi::ConfigError("unknown baseline: " + name);
    }
  }
  return out;
}

std::vector<genmi::Animacy> parse_classes(const std::string& s) {
  std::vector<genmi::Animacy> out;
  for (const std::string& name : split_csv(s)) {
    if (name == "animate") {
      out.push_back(genmi::Animacy::Animate);
    } else if (name == "inanimate") {
      out.push_back(genmi::Animacy::Inanimate);
    } else {
      throw genmi::ConfigError("unknown animacy class: " + name);
    }
  }
  return out;
}

struct RunArgs {
  std::string lang = "xx";
  std::vector<std::string> inputs;
  std::string lexicon;
  std::string relations = "amod,dobj,iobj,nsubj";
  std::string baselines = "case,number";
  std::string animacy = "inanimate,animate";
  double coverage = 0.90;
  std::int64_t permutations = 10000;
  std::uint64_t seed = 0;
  bool strict = false;
  int workers = 0;
  std::string permutation_level = "type";
  bool include_propn = false;
  bool exclude_passive_subjects = false;
  std::string out;
};

int do_run(const RunArgs& args) {
  genmi::PipelineConfig config;
  config.language = args.lang;
  config.input_paths = args.inputs;
  config.lexicon_path = args.lexicon;
  config.relations = parse_relations(args.relations);
  config.baselines = parse_baselines(args.baselines);
  config.animacy_classes = parse_classes(args.animacy);
  config.coverage = args.coverage;
  config.n_permutations = args.permutations;
  config.seed = args.seed;
  config.strict = args.strict;
  config.workers = args.workers;
  if (args.permutation_level == "type") {
    config.permutation_level = genmi::PermutationLevel::Type;
  } else if (args.permutation_level == "token") {
    config.permutation_level = genmi::PermutationLevel::Token;
  } else {
    throw genmi::ConfigError("permutation level must be 'type' or 'token'");
  }
  config.extract.include_proper_nouns = args.include_propn;
  config.extract.exclude_passive_subjects = args.exclude_passive_subjects;
  config.out_dir = args.out;

  const genmi::AnalysisResult result = genmi::run(config);

  std::int64_t ok_cells = 0;
  for (const auto& c : result.cells) ok_cells += c.ok ? 1 : 0;
  std::cerr << "genmi: " << result.ingest.sentences << " sentences ("
            << result.ingest.sentences_skipped << " skipped), " << ok_cells
            << "/" << result.cells.size() << " cells analyzed, results in "
            << config.out_dir << "\n";
  return result.all_na() ? kExitDegenerate : kExitOk;
}

struct SynthArgs {
  std::string out;
  std::string lexicon_out;
  std::uint64_t seed = 0;
  std::string relations = "amod,dobj,iobj,nsubj";
  std::string animacy = "inanimate,animate";
  std::int64_t pairs_per_cell = 25;
  std::int64_t noun_types = 8;
  std::int64_t partner_types = 6;
  int genders = 2;
  double zipf = 1.0;
  double lambda_inanimate = 0.6;
  double lambda_animate = 0.9;
  bool no_case = false;
};

// Emits one synthetic pair population per (animacy class, relation) with the
// class's mixing weight, plus the matching animacy lexicon.
int do_synth(const SynthArgs& args) {
  if (args.genders < 1 || args.genders > 3) {
    throw genmi::ConfigError("--genders must be 1, 2 or 3");
  }
  const auto relations = parse_relations(args.relations);
  const auto classes = parse_classes(args.animacy);
  if (relations.empty() || classes.empty()) {
    throw genmi::ConfigError("synth needs at least one relation and class");
  }

  std::ofstream corpus_out(args.out, std::ios::binary | std::ios::trunc);
  if (!corpus_out) throw genmi::InputError("cannot write " + args.out);
  std::ofstream lexicon_out;
  if (!args.lexicon_out.empty()) {
    lexicon_out.open(args.lexicon_out, std::ios::binary | std::ios::trunc);
    if (!lexicon_out) throw genmi::InputError("cannot write " + args.lexicon_out);
  }

  genmi::SynthParams params;
  params.n_noun_types = args.noun_types;
  params.n_partner_types = args.partner_types;
  params.gender_probs.assign(static_cast<std::size_t>(args.genders),
                             1.0 / args.genders);
  params.zipf_exponent = args.zipf;
  params.tokens = args.pairs_per_cell;

  std::uint64_t cell_index = 0;
  for (const genmi::Animacy cls : classes) {
    params.mixing_weight = cls == genmi::Animacy::Animate ? args.lambda_animate
                                                          : args.lambda_inanimate;
    for (const genmi::Relation rel : relations) {
      const std::string prefix =
          std::string(1, cls == genmi::Animacy::Animate ? 'a' : 'i') +
          std::string(1, genmi::to_string(rel)[0]) + "_";
      const auto corpus = genmi::generate(
          params, genmi::derive_stream_seed(args.seed, cell_index), prefix);

      genmi::EmitOptions emit;
      emit.relation = rel;
      emit.with_case = !args.no_case;
      emit.feature_seed = genmi::derive_stream_seed(args.seed, 1000 + cell_index);
      emit.sent_id_prefix = prefix + "synth";
      genmi::emit_conllu(corpus, emit, corpus_out);
      if (lexicon_out.is_open()) {
        genmi::append_lexicon(corpus, cls, lexicon_out);
      }
      ++cell_index;
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mutual information between noun genders and their syntactic partners"};
  app.require_subcommand(1);

  RunArgs run_args;
  CLI::App* run_cmd = app.add_subcommand("run", "Analyze a CoNLL-U corpus");
  run_cmd->add_option("--lang", run_args.lang, "Language tag for labeling");
  run_cmd->add_option("--input", run_args.inputs, "CoNLL-U input file (repeatable)")
      ->required();
  run_cmd->add_option("--lexicon", run_args.lexicon, "Animacy lexicon (lemma<TAB>class)")
      ->required();
  run_cmd->add_option("--relations", run_args.relations,
                      "Comma list of amod,dobj,iobj,nsubj");
  run_cmd->add_option("--baselines", run_args.baselines, "Comma list of case,number");
  run_cmd->add_option("--animacy", run_args.animacy,
                      "Comma list of inanimate,animate");
  run_cmd->add_option("--coverage", run_args.coverage,
                      "Token-coverage retention fraction in (0,1]");
  run_cmd->add_option("--permutations", run_args.permutations,
                      "Permutations per significance test");
  run_cmd->add_option("--seed", run_args.seed, "Master RNG seed");
  run_cmd->add_flag("--strict", run_args.strict,
                    "Abort on malformed input instead of dropping sentences");
  run_cmd->add_option("--workers", run_args.workers, "Worker threads (0 = auto)")
      ->envname("GENMI_WORKERS");
  run_cmd->add_option("--permutation-level", run_args.permutation_level,
                      "type (noun types) or token (sensitivity analysis)");
  run_cmd->add_flag("--include-propn", run_args.include_propn,
                    "Also accept PROPN noun tokens");
  run_cmd->add_flag("--exclude-passive-subjects", run_args.exclude_passive_subjects,
                    "Skip nsubj:pass arcs");
  run_cmd->add_option("--out", run_args.out, "Output directory")->required();

  SynthArgs synth_args;
  CLI::App* synth_cmd =
      app.add_subcommand("synth", "Generate a synthetic CoNLL-U corpus");
  synth_cmd->add_option("--out", synth_args.out, "Output CoNLL-U path")->required();
  synth_cmd->add_option("--lexicon-out", synth_args.lexicon_out,
                        "Animacy lexicon output path");
  synth_cmd->add_option("--seed", synth_args.seed, "Master RNG seed");
  synth_cmd->add_option("--relations", synth_args.relations,
                        "Comma list of relations to emit");
  synth_cmd->add_option("--animacy", synth_args.animacy,
                        "Comma list of classes to emit");
  synth_cmd->add_option("--pairs-per-cell", synth_args.pairs_per_cell,
                        "Pair tokens per (class, relation)");
  synth_cmd->add_option("--noun-types", synth_args.noun_types, "Noun types per cell");
  synth_cmd->add_option("--partner-types", synth_args.partner_types,
                        "Partner types per cell");
  synth_cmd->add_option("--genders", synth_args.genders, "Number of genders (1-3)");
  synth_cmd->add_option("--zipf", synth_args.zipf, "Zipf exponent for noun frequencies");
  synth_cmd->add_option("--lambda-inanimate", synth_args.lambda_inanimate,
                        "Mixing weight for inanimate cells");
  synth_cmd->add_option("--lambda-animate", synth_args.lambda_animate,
                        "Mixing weight for animate cells");
  synth_cmd->add_flag("--no-case", synth_args.no_case,
                      "Omit Case features from synthetic nouns");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (run_cmd->parsed()) return do_run(run_args);
    if (synth_cmd->parsed()) return do_synth(synth_args);
  } catch (const genmi::ConfigError& e) {
    std::cerr << "genmi: configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const genmi::InputError& e) {
    std::cerr << "genmi: input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const genmi::ConlluError& e) {
    std::cerr << "genmi: input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const genmi::LexiconError& e) {
    std::cerr << "genmi: input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "genmi: error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitOk;
}
