// tools/entrain.cpp

// Copyright 2026  The entrain Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end.
//
//   entrain annotate INPUT [-o OUT]         corpus -> annotation JSONL
//   entrain stats ANNOTATIONS               distributions, ANOVA, overlap, curve
//   entrain compare HUMAN SYSTEM...         mean ENTR_agent + Welch p
//   entrain task ANNOTATIONS                extraction samples JSONL
//   entrain eval SAMPLES PREDICTIONS        precision / recall / F1
//   entrain oracle SAMPLES                  reference predictions
//
// Exit status: 0 success, 1 bad input, 2 internal error.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "entrain/entrain.hpp"

namespace fs = std::filesystem;
using namespace entrain;

namespace {

struct CommonOptions {
  std::string dicts;
  std::string config;
  std::string stemmer;
  int mask_bits = 0;           // 0: keep config value
  long long seed = -1;         // -1: keep config value
  std::size_t max_ngram = kDefaultMaxNgram;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--dicts", o.dicts, "Dictionary/data directory (default: $ENTRAIN_DICTS or built-in)");
  cmd->add_option("--config", o.config, "Normalization config file (key = value)");
  cmd->add_option("--stemmer", o.stemmer, "porter | nltk | none");
  cmd->add_option("--mask-bits", o.mask_bits, "Random bits per punctuation mask (16..64)");
  cmd->add_option("--seed", o.seed, "Mask RNG seed")->check(CLI::NonNegativeNumber);
  cmd->add_option("--max-ngram", o.max_ngram, "Longest n-gram considered")->check(CLI::PositiveNumber);
}

NormalizationConfig build_normalization(const CommonOptions& o, fs::path* data_dir) {
  *data_dir = resolve_data_dir(o.dicts);
  NormalizationConfig cfg = default_normalization(*data_dir);
  if (!o.config.empty()) apply_config_file(cfg, o.config);
  if (!o.stemmer.empty()) cfg.stemmer = parse_stemmer(o.stemmer);
  if (o.mask_bits != 0) cfg.mask_bits = o.mask_bits;
  if (o.seed >= 0) cfg.rng_seed = static_cast<std::uint64_t>(o.seed);
  cfg.check();
  return cfg;
}

std::vector<AnnotatedDialogue> load_annotations(const std::string& path) {
  if (!fs::exists(path)) throw ParseError("cannot read '" + path + "'");
  return read_annotations(fs::path(path));
}

Corpus load_input(const std::string& input, std::string format, Split split, bool skip_invalid) {
  fs::path p(input);
  if (!fs::exists(p)) throw ParseError("cannot read '" + input + "': no such file or directory");
  if (format == "auto") {
    if (fs::is_directory(p)) {
      format = "transcript";
    } else {
      format = p.extension() == ".json" ? "multiwoz" : "transcript";
    }
  }
  if (format == "multiwoz") {
    std::vector<std::string> skipped;
    Corpus c = load_multiwoz(p, split, {skip_invalid}, &skipped);
    for (const std::string& id : skipped) std::cerr << "entrain: skipped invalid dialogue '" << id << "'\n";
    return c;
  }
  if (format != "transcript") throw ParseError("unknown format '" + format + "'");
  Corpus c;
  c.split = split;
  if (fs::is_directory(p)) {
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(p)) {
      if (e.is_regular_file() && e.path().extension() == ".txt") files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    for (const fs::path& f : files) c.dialogues.push_back(load_transcript(f));
  } else {
    c.dialogues.push_back(load_transcript(p));
  }
  for (Dialogue& d : c.dialogues) d.split = split;
  validate(c);
  return c;
}

Json stats_json(const SummaryStats& s) {
  return Json{{"count", s.count}, {"mean", s.mean},     {"std", s.std},  {"min", s.min},
              {"max", s.max},     {"median", s.median}, {"mode", s.mode}};
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(10) << v;
  return os.str();
}

// --------------------------------------------------------------------------

struct AnnotateOptions {
  CommonOptions common;
  std::string input;
  std::string output = "-";
  std::string format = "auto";
  std::string split = "all";
  unsigned jobs = 1;
  bool skip_invalid = false;
};

int run_annotate(const AnnotateOptions& o) {
  fs::path data_dir;
  NormalizationConfig norm = build_normalization(o.common, &data_dir);
  Corpus corpus = load_input(o.input, o.format, parse_split(o.split), o.skip_invalid);
  Annotator annotator(norm, data_dir, LexiconConfig{o.common.max_ngram});
  unsigned jobs = o.jobs == 0 ? std::max(1u, std::thread::hardware_concurrency()) : o.jobs;
  std::vector<AnnotatedDialogue> out = annotate_corpus(corpus, annotator, jobs);
  std::string buf;
  for (const AnnotatedDialogue& a : out) buf += to_jsonl_line(a);
  write_atomic(o.output, buf);
  return 0;
}

struct StatsOptions {
  CommonOptions common;
  std::string input;
  std::string output = "-";
  std::string format = "json";
  bool anova = false;
  std::vector<std::string> anova_domains;
  bool overlap = false;
  double sigma = 0;
};

int run_stats(const StatsOptions& o) {
  std::vector<AnnotatedDialogue> corpus = load_annotations(o.input);
  ElsDistribution els = els_distribution(corpus);

  std::optional<std::map<std::string, SummaryStats>> summaries;
  try {
    summaries = measure_summaries(corpus);
  } catch (const MissingDataError& e) {
    std::cerr << "entrain: " << e.what() << "; measure summaries omitted\n";
  }
  std::optional<AnovaResult> anova;
  if (o.anova) {
    try {
      anova = anova_domains(corpus, o.anova_domains);
    } catch (const MissingDataError& e) {
      throw MissingDataError(std::string("--anova: ") + e.what());
    }
  }
  std::optional<OverlapResult> overlap;
  if (o.overlap) {
    fs::path data_dir;
    NormalizationConfig norm = build_normalization(o.common, &data_dir);
    try {
      overlap = act_overlap(corpus, norm);
    } catch (const MissingDataError& e) {
      throw MissingDataError(std::string("--overlap: ") + e.what());
    }
  }
  std::optional<std::vector<CurveRow>> curve;
  if (o.sigma > 0) curve = entr_by_turncount(corpus, o.sigma);

  std::string out;
  if (o.format == "json") {
    Json j;
    Json hist = Json::object();
    for (const auto& [k, v] : els.histogram) hist[std::to_string(k)] = v;
    j["dialogues"] = corpus.size();
    j["els"] = Json{{"mean", els.mean}, {"zero_count", els.zero_count}, {"max", els.max},
                    {"histogram", std::move(hist)}};
    if (summaries) {
      Json s = Json::object();
      for (const auto& [name, st] : *summaries) s[name] = stats_json(st);
      j["summaries"] = std::move(s);
    } else {
      j["summaries"] = nullptr;
    }
    if (anova) {
      Json groups = Json::object();
      for (const auto& [g, n] : anova->group_sizes) groups[g] = n;
      j["anova"] = Json{{"f", anova->f_statistic}, {"p", anova->p_value},
                        {"df_between", anova->df_between}, {"df_within", anova->df_within},
                        {"groups", std::move(groups)}};
    }
    if (overlap) {
      j["overlap"] = Json{{"act_tokens", overlap->act_tokens},
                          {"expression_tokens", overlap->expression_tokens},
                          {"intersection", overlap->intersection}};
    }
    if (curve) {
      Json rows = Json::array();
      for (const CurveRow& r : *curve) {
        rows.push_back(Json{{"turn_count", r.turn_count}, {"dialogues", r.dialogues},
                            {"raw_mean", r.raw_mean}, {"smoothed_mean", r.smoothed_mean},
                            {"std", r.std}});
      }
      j["curve"] = Json{{"sigma", o.sigma}, {"rows", std::move(rows)}};
    }
    out = j.dump(2) + "\n";
  } else if (o.format == "csv") {
    std::ostringstream os;
    os << "# els_histogram\nels,dialogues\n";
    for (const auto& [k, v] : els.histogram) os << k << ',' << v << '\n';
    os << "# els_summary\nmean,zero_count,max\n" << fmt(els.mean) << ',' << els.zero_count << ','
       << els.max << '\n';
    if (summaries) {
      os << "# measures\nmeasure,count,mean,std,min,max,median,mode\n";
      for (const auto& [name, s] : *summaries) {
        os << name << ',' << s.count << ',' << fmt(s.mean) << ',' << fmt(s.std) << ','
           << fmt(s.min) << ',' << fmt(s.max) << ',' << fmt(s.median) << ',' << fmt(s.mode) << '\n';
      }
    }
    if (anova) {
      os << "# anova\nf,p,df_between,df_within\n" << fmt(anova->f_statistic) << ','
         << fmt(anova->p_value) << ',' << fmt(anova->df_between) << ','
         << fmt(anova->df_within) << '\n';
    }
    if (overlap) {
      os << "# overlap\nact_tokens,expression_tokens,intersection\n" << overlap->act_tokens << ','
         << overlap->expression_tokens << ',' << overlap->intersection << '\n';
    }
    if (curve) {
      os << "# curve\nturn_count,dialogues,raw_mean,smoothed_mean,std\n";
      for (const CurveRow& r : *curve) {
        os << r.turn_count << ',' << r.dialogues << ',' << fmt(r.raw_mean) << ','
           << fmt(r.smoothed_mean) << ',' << fmt(r.std) << '\n';
      }
    }
    out = os.str();
  } else {
    throw ParseError("unknown --format '" + o.format + "' (json, csv)");
  }
  write_atomic(o.output, out);
  return 0;
}

struct CompareOptions {
  std::string human;
  std::vector<std::string> systems;
  std::vector<std::string> names;
  std::string output = "-";
  std::string format = "json";
};

int run_compare(const CompareOptions& o) {
  if (!o.names.empty() && o.names.size() != o.systems.size()) {
    throw ParseError("--names needs one name per system file");
  }
  auto human = load_annotations(o.human);
  if (human.empty()) throw MissingDataError("empty corpus '" + o.human + "'");
  std::vector<std::pair<std::string, std::vector<AnnotatedDialogue>>> systems;
  for (std::size_t i = 0; i < o.systems.size(); ++i) {
    auto c = load_annotations(o.systems[i]);
    if (c.empty()) throw MissingDataError("empty corpus '" + o.systems[i] + "'");
    systems.emplace_back(o.names.empty() ? o.systems[i] : o.names[i], std::move(c));
  }
  CompareReport rep = compare_systems("human", human, systems);
  for (const std::string& w : rep.warnings) std::cerr << "entrain: warning: " << w << '\n';
  std::string out;
  if (o.format == "json") {
    Json rows = Json::array();
    for (const CompareRow& r : rep.rows) {
      Json jr{{"name", r.name}, {"dialogues", r.dialogues}, {"mean_entr_agent", r.mean_entr_agent}};
      if (r.vs_reference) {
        jr["t"] = r.vs_reference->t;
        jr["df"] = r.vs_reference->df;
        jr["p"] = r.vs_reference->p_value;
      } else {
        jr["p"] = nullptr;
      }
      rows.push_back(std::move(jr));
    }
    out = Json{{"rows", std::move(rows)}}.dump(2) + "\n";
  } else if (o.format == "csv") {
    std::ostringstream os;
    os << "name,dialogues,mean_entr_agent,t,df,p\n";
    for (const CompareRow& r : rep.rows) {
      os << r.name << ',' << r.dialogues << ',' << fmt(r.mean_entr_agent) << ',';
      if (r.vs_reference) {
        os << fmt(r.vs_reference->t) << ',' << fmt(r.vs_reference->df) << ','
           << fmt(r.vs_reference->p_value);
      } else {
        os << ",,";
      }
      os << '\n';
    }
    out = os.str();
  } else {
    throw ParseError("unknown --format '" + o.format + "' (json, csv)");
  }
  write_atomic(o.output, out);
  return 0;
}

struct TaskOptions {
  std::string input;
  std::string output = "-";
  std::string history = "full";
  std::string roles = "agent";
  std::string split;
  bool only_positive = false;
};

int run_task(const TaskOptions& o) {
  auto corpus = load_annotations(o.input);
  if (!o.split.empty()) {
    Split want = parse_split(o.split);
    if (want != Split::Unsplit) {
      std::erase_if(corpus, [&](const AnnotatedDialogue& a) { return a.dialogue.split != want; });
    }
  }
  SampleOptions opts{parse_history(o.history), parse_roles(o.roles), o.only_positive};
  std::string buf;
  for (const ExtractionSample& s : build_samples(corpus, opts)) buf += sample_to_json(s).dump() + "\n";
  write_atomic(o.output, buf);
  return 0;
}

std::vector<ExtractionSample> load_samples(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read '" + path + "'");
  return read_samples(in, path);
}

int run_eval(const std::string& samples_path, const std::string& pred_path, const std::string& output) {
  auto samples = load_samples(samples_path);
  std::ifstream in(pred_path);
  if (!in) throw ParseError("cannot read '" + pred_path + "'");
  auto preds = read_predictions(in, pred_path);
  write_atomic(output, eval_to_json(evaluate(preds, samples)).dump(2) + "\n");
  return 0;
}

int run_oracle(const std::string& samples_path, const std::string& output) {
  std::string buf;
  for (const Prediction& p : oracle_predictions(load_samples(samples_path))) {
    buf += prediction_to_json(p).dump() + "\n";
  }
  write_atomic(output, buf);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lexical entrainment annotation and analysis"};
  app.require_subcommand(1);

  AnnotateOptions ann;
  auto* c_ann = app.add_subcommand("annotate", "Annotate a corpus (MultiWOZ JSON, transcript file or directory)");
  c_ann->add_option("input", ann.input, "Input path")->required();
  c_ann->add_option("-o,--output", ann.output, "Output JSONL ('-' for stdout)");
  c_ann->add_option("--format", ann.format, "auto | multiwoz | transcript");
  c_ann->add_option("--split", ann.split, "train | valid | test | all");
  c_ann->add_option("--jobs", ann.jobs, "Worker threads (0 = all cores)");
  c_ann->add_flag("--skip-invalid", ann.skip_invalid, "Skip dialogues that fail validation");
  add_common(c_ann, ann.common);

  StatsOptions st;
  auto* c_st = app.add_subcommand("stats", "Corpus statistics from annotations");
  c_st->add_option("annotations", st.input, "Annotation JSONL")->required();
  c_st->add_option("-o,--output", st.output, "Output file ('-' for stdout)");
  c_st->add_option("--format", st.format, "json | csv");
  c_st->add_flag("--anova", st.anova, "One-way ANOVA of ELS across domains");
  c_st->add_option("--anova-domains", st.anova_domains, "Domains to compare (default: all)")
      ->delimiter(',');
  c_st->add_flag("--overlap", st.overlap, "Dialogue-act / expression token overlap");
  c_st->add_option("--curve,--sigma", st.sigma, "ENTR_agent vs turn count, Gaussian sigma")
      ->check(CLI::PositiveNumber);
  add_common(c_st, st.common);

  CompareOptions cmp;
  auto* c_cmp = app.add_subcommand("compare", "Compare mean ENTR_agent of system outputs to human");
  c_cmp->add_option("human", cmp.human, "Human annotation JSONL")->required();
  c_cmp->add_option("systems", cmp.systems, "System annotation JSONL files")->required();
  c_cmp->add_option("--names", cmp.names, "Display names for the systems")->delimiter(',');
  c_cmp->add_option("-o,--output", cmp.output, "Output file ('-' for stdout)");
  c_cmp->add_option("--format", cmp.format, "json | csv");

  TaskOptions task;
  auto* c_task = app.add_subcommand("task", "Build extraction-task samples");
  c_task->add_option("annotations", task.input, "Annotation JSONL")->required();
  c_task->add_option("-o,--output", task.output, "Output JSONL ('-' for stdout)");
  c_task->add_option("--history", task.history, "1 | 2 | ... | full");
  c_task->add_option("--roles", task.roles, "agent | user | both");
  c_task->add_option("--split", task.split, "Keep one split only");
  c_task->add_flag("--only-positive", task.only_positive, "Drop targets without gold spans");

  std::string ev_samples, ev_preds, ev_out = "-";
  auto* c_ev = app.add_subcommand("eval", "Score predictions against samples");
  c_ev->add_option("samples", ev_samples, "Samples JSONL")->required();
  c_ev->add_option("predictions", ev_preds, "Predictions JSONL")->required();
  c_ev->add_option("-o,--output", ev_out, "Output file ('-' for stdout)");

  std::string or_samples, or_out = "-";
  auto* c_or = app.add_subcommand("oracle", "Write oracle-within-window predictions");
  c_or->add_option("samples", or_samples, "Samples JSONL")->required();
  c_or->add_option("-o,--output", or_out, "Output JSONL ('-' for stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (c_ann->parsed()) return run_annotate(ann);
    if (c_st->parsed()) return run_stats(st);
    if (c_cmp->parsed()) return run_compare(cmp);
    if (c_task->parsed()) return run_task(task);
    if (c_ev->parsed()) return run_eval(ev_samples, ev_preds, ev_out);
    if (c_or->parsed()) return run_oracle(or_samples, or_out);
  } catch (const ContractViolation& e) {
    std::cerr << "entrain: internal error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << "entrain: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "entrain: internal error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
