// entrain/analyze.hpp

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

// Corpus-level statistics over annotated dialogues.

#ifndef ENTRAIN_ANALYZE_HPP_
#define ENTRAIN_ANALYZE_HPP_

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include <boost/math/distributions/fisher_f.hpp>
#include <boost/math/distributions/students_t.hpp>

#include "entrain/error.hpp"
#include "entrain/normalize.hpp"
#include "entrain/pipeline.hpp"

namespace entrain {

/// Population statistics (divide by n).
struct SummaryStats {
  std::size_t count = 0;
  double mean = 0;
  double std = 0;
  double min = 0;
  double max = 0;
  double median = 0;
  double mode = 0;
};

/// `mode_decimals` >= 0 rounds values to that many decimals before taking
/// the mode; ties go to the smallest value.
inline SummaryStats summarize(std::vector<double> xs, int mode_decimals = -1) {
  if (xs.empty()) throw MissingDataError("no values to summarize");
  std::sort(xs.begin(), xs.end());
  SummaryStats s;
  s.count = xs.size();
  s.min = xs.front();
  s.max = xs.back();
  s.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
  double ss = 0;
  for (double x : xs) ss += (x - s.mean) * (x - s.mean);
  s.std = std::sqrt(ss / static_cast<double>(xs.size()));
  std::size_t n = xs.size();
  s.median = n % 2 == 1 ? xs[n / 2] : (xs[n / 2 - 1] + xs[n / 2]) / 2;

  std::map<double, std::size_t> freq;
  const double scale = mode_decimals >= 0 ? std::pow(10.0, mode_decimals) : 1.0;
  for (double x : xs) freq[mode_decimals >= 0 ? std::round(x * scale) / scale : x]++;
  std::size_t best = 0;
  for (const auto& [v, c] : freq) {
    if (c > best) {
      best = c;
      s.mode = v;
    }
  }
  return s;
}

// ---------------------------------------------------------------------------
// Lexicon size distribution

struct ElsDistribution {
  std::map<int, std::size_t> histogram;  // ELS -> dialogues
  double mean = 0;
  std::size_t zero_count = 0;
  int max = 0;
};

inline ElsDistribution els_distribution(const std::vector<AnnotatedDialogue>& corpus) {
  if (corpus.empty()) throw MissingDataError("empty corpus");
  ElsDistribution d;
  double sum = 0;
  for (const AnnotatedDialogue& a : corpus) {
    d.histogram[a.measures.els]++;
    sum += a.measures.els;
    d.max = std::max(d.max, a.measures.els);
  }
  d.mean = sum / static_cast<double>(corpus.size());
  auto z = d.histogram.find(0);
  d.zero_count = z == d.histogram.end() ? 0 : z->second;
  return d;
}

/// Expression measures over all established entries (frequency, size,
/// span, density, priming, priming_distance) and per-dialogue speaker
/// measures (entr_*, ier_*, err_*). IER is averaged over dialogues with
/// at least one established expression.
inline std::map<std::string, SummaryStats> measure_summaries(
    const std::vector<AnnotatedDialogue>& corpus) {
  std::map<std::string, std::vector<double>> cols;
  for (const AnnotatedDialogue& a : corpus) {
    for (const auto& [key, m] : a.measures.per_expression) {
      cols["frequency"].push_back(m.frequency);
      cols["size"].push_back(m.size);
      cols["span"].push_back(m.span);
      cols["density"].push_back(m.density.value());
      cols["priming"].push_back(m.priming);
      cols["priming_distance"].push_back(m.priming_distance);
    }
  }
  if (cols.empty()) throw MissingDataError("no established expressions in corpus");
  for (const AnnotatedDialogue& a : corpus) {
    const DialogueMeasures& m = a.measures;
    if (m.entr_user) cols["entr_user"].push_back(m.entr_user->value());
    if (m.entr_agent) cols["entr_agent"].push_back(m.entr_agent->value());
    if (m.ier_user) cols["ier_user"].push_back(m.ier_user->value());
    if (m.ier_agent) cols["ier_agent"].push_back(m.ier_agent->value());
    cols["err_user"].push_back(m.err_user.value());
    cols["err_agent"].push_back(m.err_agent.value());
  }
  std::map<std::string, SummaryStats> out;
  for (auto& [name, xs] : cols) out[name] = summarize(std::move(xs), name == "density" ? 2 : -1);
  return out;
}

// ---------------------------------------------------------------------------
// Hypothesis tests

struct AnovaResult {
  double f_statistic = 0;
  double p_value = 1;
  double df_between = 0;
  double df_within = 0;
  std::map<std::string, std::size_t> group_sizes;
};

/// Classical one-way ANOVA.
inline AnovaResult one_way_anova(const std::map<std::string, std::vector<double>>& groups) {
  if (groups.size() < 2) {
    throw MissingDataError("need ≥2 groups for ANOVA, got " + std::to_string(groups.size()));
  }
  AnovaResult r;
  double grand = 0;
  std::size_t n = 0;
  for (const auto& [name, xs] : groups) {
    if (xs.size() < 2) {
      throw MissingDataError("ANOVA group '" + name + "' has " + std::to_string(xs.size()) +
                             " sample(s); need ≥2");
    }
    r.group_sizes[name] = xs.size();
    grand += std::accumulate(xs.begin(), xs.end(), 0.0);
    n += xs.size();
  }
  grand /= static_cast<double>(n);
  double ssb = 0, ssw = 0;
  for (const auto& [name, xs] : groups) {
    double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
    ssb += static_cast<double>(xs.size()) * (mean - grand) * (mean - grand);
    for (double x : xs) ssw += (x - mean) * (x - mean);
  }
  r.df_between = static_cast<double>(groups.size() - 1);
  r.df_within = static_cast<double>(n - groups.size());
  // Rounding noise from identical groups must not turn into a tiny F.
  const double scale = std::max(1.0, std::abs(grand));
  if (ssb <= 1e-12 * scale * scale * static_cast<double>(n)) {
    r.f_statistic = 0;
    r.p_value = 1;
    return r;
  }
  if (ssw <= 0) {
    r.f_statistic = std::numeric_limits<double>::infinity();
    r.p_value = 0;
    return r;
  }
  r.f_statistic = (ssb / r.df_between) / (ssw / r.df_within);
  boost::math::fisher_f dist(r.df_between, r.df_within);
  r.p_value = boost::math::cdf(boost::math::complement(dist, r.f_statistic));
  return r;
}

/// Per-dialogue ELS grouped by domain. A dialogue with several domains
/// counts in each. Empty `domains` means every domain that occurs.
inline AnovaResult anova_domains(const std::vector<AnnotatedDialogue>& corpus,
                                 const std::vector<std::string>& domains = {}) {
  std::set<std::string> wanted(domains.begin(), domains.end());
  std::map<std::string, std::vector<double>> groups;
  for (const std::string& dom : wanted) groups[dom];
  for (const AnnotatedDialogue& a : corpus) {
    for (const std::string& dom : a.dialogue.domains) {
      if (wanted.empty() || wanted.count(dom)) groups[dom].push_back(a.measures.els);
    }
  }
  return one_way_anova(groups);
}

struct TTestResult {
  double t = 0;
  double df = 0;
  double p_value = 1;  // two-sided
};

namespace detail {

struct Moments {
  double n, mean, var;  // var with ddof = 1
};

inline Moments moments(const std::vector<double>& xs, const char* what) {
  if (xs.size() < 2) throw MissingDataError(std::string(what) + ": need ≥2 samples per group");
  double n = static_cast<double>(xs.size());
  double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  double ss = 0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return {n, mean, ss / (n - 1)};
}

inline TTestResult finish_t(double diff, double se, double df) {
  TTestResult r;
  r.df = df;
  if (diff == 0) return r;  // t = 0, p = 1
  if (se <= 0) {
    r.t = diff > 0 ? std::numeric_limits<double>::infinity()
                   : -std::numeric_limits<double>::infinity();
    r.p_value = 0;
    return r;
  }
  r.t = diff / se;
  boost::math::students_t dist(df);
  r.p_value = 2 * boost::math::cdf(boost::math::complement(dist, std::abs(r.t)));
  r.p_value = std::min(1.0, r.p_value);
  return r;
}

}  // namespace detail

/// Two-sample t-test with pooled variance.
inline TTestResult pooled_t_test(const std::vector<double>& a, const std::vector<double>& b) {
  auto x = detail::moments(a, "t-test");
  auto y = detail::moments(b, "t-test");
  double df = x.n + y.n - 2;
  double sp2 = ((x.n - 1) * x.var + (y.n - 1) * y.var) / df;
  return detail::finish_t(x.mean - y.mean, std::sqrt(sp2 * (1 / x.n + 1 / y.n)), df);
}

/// Welch's unequal-variance t-test (Welch-Satterthwaite df).
inline TTestResult welch_t_test(const std::vector<double>& a, const std::vector<double>& b) {
  auto x = detail::moments(a, "Welch t-test");
  auto y = detail::moments(b, "Welch t-test");
  double vx = x.var / x.n, vy = y.var / y.n;
  double se2 = vx + vy;
  double df = se2 > 0 ? se2 * se2 / (vx * vx / (x.n - 1) + vy * vy / (y.n - 1)) : x.n + y.n - 2;
  return detail::finish_t(x.mean - y.mean, std::sqrt(se2), df);
}

// ---------------------------------------------------------------------------
// Dialogue-act overlap

struct OverlapResult {
  std::size_t act_tokens = 0;
  std::size_t expression_tokens = 0;
  std::size_t intersection = 0;
};

/// Unique canonical tokens of slot and value strings versus unique tokens
/// of established expression keys. Both sides go through the same
/// normalization.
inline OverlapResult act_overlap(const std::vector<AnnotatedDialogue>& corpus,
                                 const NormalizationConfig& norm) {
  std::set<std::string> acts, exprs;
  bool any_acts = false;
  for (const AnnotatedDialogue& a : corpus) {
    for (const Utterance& u : a.dialogue.utterances) {
      if (!u.dialogue_act) continue;
      any_acts = true;
      for (const DialogueAct& act : *u.dialogue_act) {
        for (const std::string* s : {&act.slot, &act.value}) {
          for (const RawToken& t : tokenize(*s)) {
            if (!is_punctuation_token(t.surface)) acts.insert(normalize_token(t.surface, norm));
          }
        }
      }
    }
    for (const LexiconEntry& e : a.lexicon.entries) {
      if (!e.established()) continue;
      exprs.insert(e.key.begin(), e.key.end());
    }
  }
  if (!any_acts) throw MissingDataError("corpus carries no dialogue acts (needed for --overlap)");
  OverlapResult r;
  r.act_tokens = acts.size();
  r.expression_tokens = exprs.size();
  std::vector<std::string> both;
  std::set_intersection(acts.begin(), acts.end(), exprs.begin(), exprs.end(),
                        std::back_inserter(both));
  r.intersection = both.size();
  return r;
}

// ---------------------------------------------------------------------------
// ENTR versus dialogue length

/// Normalized Gaussian weights for offsets -r..r, r = floor(3 sigma + 0.5).
inline std::vector<double> gaussian_kernel(double sigma) {
  if (!(sigma > 0)) throw ContractViolation("gaussian sigma must be > 0");
  auto radius = static_cast<long>(3.0 * sigma + 0.5);
  std::vector<double> w(static_cast<std::size_t>(2 * radius + 1));
  double sum = 0;
  for (long k = -radius; k <= radius; ++k) {
    double v = std::exp(-0.5 * static_cast<double>(k * k) / (sigma * sigma));
    w[static_cast<std::size_t>(k + radius)] = v;
    sum += v;
  }
  for (double& v : w) v /= sum;
  return w;
}

struct CurveRow {
  int turn_count = 0;
  std::size_t dialogues = 0;
  double raw_mean = 0;
  double smoothed_mean = 0;
  double std = 0;
};

/// Groups per-bucket values and smooths the bucket means along the bucket
/// axis. Buckets with no data are skipped and the kernel is renormalized
/// over the buckets that exist.
inline std::vector<CurveRow> smooth_buckets(const std::map<int, std::vector<double>>& buckets,
                                            double sigma) {
  std::vector<double> w = gaussian_kernel(sigma);
  const long radius = static_cast<long>(w.size() / 2);
  std::map<int, double> means;
  std::vector<CurveRow> rows;
  for (const auto& [t, xs] : buckets) {
    if (xs.empty()) continue;
    SummaryStats s = summarize(xs);
    means[t] = s.mean;
    rows.push_back({t, xs.size(), s.mean, 0, s.std});
  }
  for (CurveRow& r : rows) {
    double acc = 0, wsum = 0;
    for (long k = -radius; k <= radius; ++k) {
      auto it = means.find(r.turn_count + static_cast<int>(k));
      if (it == means.end()) continue;
      double wk = w[static_cast<std::size_t>(k + radius)];
      acc += wk * it->second;
      wsum += wk;
    }
    r.smoothed_mean = acc / wsum;
  }
  return rows;
}

/// ENTR_agent by dialogue length (number of utterances).
inline std::vector<CurveRow> entr_by_turncount(const std::vector<AnnotatedDialogue>& corpus,
                                               double sigma) {
  std::map<int, std::vector<double>> buckets;
  for (const AnnotatedDialogue& a : corpus) {
    if (!a.measures.entr_agent) continue;
    buckets[static_cast<int>(a.dialogue.utterances.size())].push_back(
        a.measures.entr_agent->value());
  }
  return smooth_buckets(buckets, sigma);
}

// ---------------------------------------------------------------------------
// System comparison

struct CompareRow {
  std::string name;
  std::size_t dialogues = 0;
  double mean_entr_agent = 0;
  std::optional<TTestResult> vs_reference;  // absent on the reference row
};

struct CompareReport {
  std::vector<CompareRow> rows;  // reference first
  std::vector<std::string> warnings;
};

inline std::vector<double> entr_agent_values(const std::vector<AnnotatedDialogue>& corpus) {
  std::vector<double> xs;
  for (const AnnotatedDialogue& a : corpus) {
    if (a.measures.entr_agent) xs.push_back(a.measures.entr_agent->value());
  }
  return xs;
}

/// Mean ENTR_agent per corpus and Welch's t-test of each system against
/// the reference (human) corpus.
inline CompareReport compare_systems(
    const std::string& reference_name, const std::vector<AnnotatedDialogue>& reference,
    const std::vector<std::pair<std::string, std::vector<AnnotatedDialogue>>>& systems) {
  CompareReport rep;
  auto ids = [](const std::vector<AnnotatedDialogue>& c) {
    std::set<std::string> s;
    for (const AnnotatedDialogue& a : c) s.insert(a.dialogue.id);
    return s;
  };
  auto row_for = [](const std::string& name, const std::vector<double>& xs) {
    if (xs.empty()) throw MissingDataError("corpus '" + name + "' has no agent turns");
    CompareRow r;
    r.name = name;
    r.dialogues = xs.size();
    r.mean_entr_agent = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
    return r;
  };
  std::vector<double> ref = entr_agent_values(reference);
  rep.rows.push_back(row_for(reference_name, ref));
  const std::set<std::string> ref_ids = ids(reference);
  for (const auto& [name, corpus] : systems) {
    if (ids(corpus) != ref_ids) {
      rep.warnings.push_back("dialogue ids of '" + name + "' differ from '" + reference_name + "'");
    }
    std::vector<double> xs = entr_agent_values(corpus);
    CompareRow r = row_for(name, xs);
    r.vs_reference = welch_t_test(ref, xs);
    rep.rows.push_back(std::move(r));
  }
  return rep;
}

}  // namespace entrain

#endif  // ENTRAIN_ANALYZE_HPP_
