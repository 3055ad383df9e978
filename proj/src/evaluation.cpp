#include "namemine/evaluation.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "namemine/error.hpp"
#include "namemine/rng.hpp"

namespace namemine {

namespace {

SubTokenSequence unique_in_order(const SubTokenSequence& tokens, bool drop_unknown) {
    SubTokenSequence out;
    std::set<std::string_view> seen;
    for (const auto& t : tokens) {
        if (drop_unknown && t == kUnknownSubtoken) continue;
        if (seen.insert(t).second) out.push_back(t);
    }
    return out;
}

std::string join(const SubTokenSequence& tokens) {
    std::string out;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (i) out += ' ';
        out += tokens[i];
    }
    return out;
}

// Code points; a byte that does not start a well-formed sequence stands alone.
std::u32string decode_utf8(std::string_view s) {
    std::u32string out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size();) {
        const auto c = static_cast<unsigned char>(s[i]);
        std::size_t len = c < 0x80 ? 1 : (c >> 5) == 0x6 ? 2 : (c >> 4) == 0xE ? 3 : (c >> 3) == 0x1E ? 4 : 0;
        bool ok = len > 0 && i + len <= s.size();
        for (std::size_t k = 1; ok && k < len; ++k) ok = (static_cast<unsigned char>(s[i + k]) >> 6) == 0x2;
        if (!ok) {
            out.push_back(c);
            ++i;
            continue;
        }
        char32_t cp = len == 1 ? c : len == 2 ? (c & 0x1F) : len == 3 ? (c & 0x0F) : (c & 0x07);
        for (std::size_t k = 1; k < len; ++k) cp = (cp << 6) | (static_cast<unsigned char>(s[i + k]) & 0x3F);
        out.push_back(cp);
        i += len;
    }
    return out;
}

using NgramCounts = std::unordered_map<std::u32string, std::size_t>;

NgramCounts ngrams(const std::u32string& text, std::size_t n) {
    NgramCounts counts;
    if (text.size() < n) return counts;
    for (std::size_t i = 0; i + n <= text.size(); ++i) ++counts[text.substr(i, n)];
    return counts;
}

}  // namespace

SubTokenSequence clean_prediction(const SubTokenSequence& tokens) { return unique_in_order(tokens, true); }

SubTokenSequence clean_reference(const SubTokenSequence& tokens) { return unique_in_order(tokens, false); }

PrecisionRecall subtoken_f1(const SubTokenSequence& pred, const SubTokenSequence& ref) {
    PrecisionRecall out;
    if (pred.empty() || ref.empty()) return out;
    const std::set<std::string_view> ref_set(ref.begin(), ref.end());
    std::size_t common = 0;
    for (const auto& t : pred) common += ref_set.contains(t) ? 1 : 0;
    out.precision = static_cast<double>(common) / static_cast<double>(pred.size());
    out.recall = static_cast<double>(common) / static_cast<double>(ref.size());
    if (out.precision + out.recall > 0.0) {
        out.f1 = 2.0 * out.precision * out.recall / (out.precision + out.recall);
    }
    return out;
}

double chrf_strings(std::string_view hypothesis, std::string_view reference, const ChrfParams& params) {
    if (hypothesis.empty() || reference.empty()) return 0.0;
    const auto hyp = decode_utf8(hypothesis);
    const auto ref = decode_utf8(reference);
    double precision_sum = 0.0;
    double recall_sum = 0.0;
    int effective_order = 0;
    for (int n = 1; n <= params.char_order; ++n) {
        const auto h = ngrams(hyp, static_cast<std::size_t>(n));
        const auto r = ngrams(ref, static_cast<std::size_t>(n));
        if (h.empty() || r.empty()) continue;
        std::size_t hyp_total = 0;
        std::size_t matches = 0;
        for (const auto& [gram, count] : h) {
            hyp_total += count;
            if (auto it = r.find(gram); it != r.end()) matches += std::min(count, it->second);
        }
        std::size_t ref_total = 0;
        for (const auto& entry : r) ref_total += entry.second;
        precision_sum += static_cast<double>(matches) / static_cast<double>(hyp_total);
        recall_sum += static_cast<double>(matches) / static_cast<double>(ref_total);
        ++effective_order;
    }
    if (effective_order == 0) return 0.0;
    const double p = precision_sum / effective_order;
    const double r = recall_sum / effective_order;
    if (p + r == 0.0) return 0.0;
    const double b2 = params.beta * params.beta;
    return (1.0 + b2) * p * r / (b2 * p + r);
}

double chrf(const SubTokenSequence& pred, const SubTokenSequence& ref, const ChrfParams& params) {
    return chrf_strings(join(pred), join(ref), params);
}

SampleScore score_sample(const std::string& method_id, const SubTokenSequence& predicted,
                         const SubTokenSequence& reference, const ChrfParams& params) {
    const auto pred = clean_prediction(predicted);
    const auto ref = clean_reference(reference);
    const auto prf = subtoken_f1(pred, ref);
    return {method_id, prf.precision, prf.recall, prf.f1, chrf(pred, ref, params), false};
}

DatasetScores score_dataset(const std::vector<PredictionRecord>& predictions,
                            const std::vector<ReferenceRecord>& references, const ChrfParams& params) {
    std::unordered_map<std::string_view, const ReferenceRecord*> refs;
    for (const auto& r : references) refs.emplace(r.method_id, &r);

    std::unordered_map<std::string_view, const PredictionRecord*> preds;
    std::vector<std::string> unknown;
    std::vector<std::string> duplicated;
    for (const auto& p : predictions) {
        if (!refs.contains(p.method_id)) {
            unknown.push_back(p.method_id);
        } else if (!preds.emplace(p.method_id, &p).second) {
            duplicated.push_back(p.method_id);
        }
    }
    auto listing = [](const std::vector<std::string>& ids) {
        std::string out;
        for (const auto& id : ids) out += (out.empty() ? "" : ", ") + id;
        return out;
    };
    if (!unknown.empty()) throw SchemaError("predictions for unknown method ids: " + listing(unknown));
    if (!duplicated.empty()) throw SchemaError("duplicate predictions for method ids: " + listing(duplicated));

    DatasetScores out;
    out.samples.reserve(references.size());
    double f1_sum = 0.0;
    double chrf_sum = 0.0;
    for (const auto& r : references) {
        auto it = preds.find(r.method_id);
        if (clean_reference(r.name_subtokens).empty()) out.empty_reference_ids.push_back(r.method_id);
        SampleScore s;
        if (it == preds.end()) {
            s.method_id = r.method_id;
            s.missing = true;
            out.missing_ids.push_back(r.method_id);
        } else {
            s = score_sample(r.method_id, it->second->predicted_subtokens, r.name_subtokens, params);
        }
        f1_sum += s.f1;
        chrf_sum += s.chrf;
        out.samples.push_back(std::move(s));
    }
    out.aggregate.n_samples = references.size();
    out.aggregate.n_missing = out.missing_ids.size();
    if (!references.empty()) {
        out.aggregate.mean_f1 = f1_sum / static_cast<double>(references.size());
        out.aggregate.mean_chrf = chrf_sum / static_cast<double>(references.size());
    }
    return out;
}

std::string_view to_string(Metric metric) { return metric == Metric::f1 ? "f1" : "chrf"; }

std::optional<Metric> parse_metric(std::string_view name) {
    if (name == "f1") return Metric::f1;
    if (name == "chrf") return Metric::chrf;
    return std::nullopt;
}

double metric_value(const SampleScore& score, Metric metric) {
    return metric == Metric::f1 ? score.f1 : score.chrf;
}

BootstrapComparison paired_bootstrap(const std::vector<SampleScore>& scores_a,
                                     const std::vector<SampleScore>& scores_b, const BootstrapParams& params,
                                     Execution execution, std::string model_a, std::string model_b) {
    if (scores_a.empty()) throw std::invalid_argument("paired_bootstrap: no samples");
    if (scores_a.size() != scores_b.size()) throw std::invalid_argument("paired_bootstrap: sample counts differ");
    if (params.n_resamples == 0) throw std::invalid_argument("paired_bootstrap: zero resamples");
    const std::size_t n = scores_a.size();
    std::vector<double> a(n);
    std::vector<double> b(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (scores_a[i].method_id != scores_b[i].method_id) {
            throw std::invalid_argument("paired_bootstrap: misaligned ids " + scores_a[i].method_id + " / " +
                                        scores_b[i].method_id);
        }
        a[i] = metric_value(scores_a[i], params.metric);
        b[i] = metric_value(scores_b[i], params.metric);
    }

    // Equal sample counts make comparing sums the same as comparing means.
    std::size_t wins_a = 0;
    std::size_t wins_b = 0;
    const auto resamples = static_cast<std::ptrdiff_t>(params.n_resamples);
#pragma omp parallel for schedule(static) reduction(+ : wins_a, wins_b) if (execution == Execution::parallel)
    for (std::ptrdiff_t r = 0; r < resamples; ++r) {
        SplitMix64 rng = derive_stream(params.seed, static_cast<std::uint64_t>(r));
        double sum_a = 0.0;
        double sum_b = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const auto idx = static_cast<std::size_t>(rng.bounded(n));
            sum_a += a[idx];
            sum_b += b[idx];
        }
        if (sum_a > sum_b) {
            ++wins_a;
        } else if (sum_b > sum_a) {
            ++wins_b;
        }
    }

    BootstrapComparison out;
    out.model_a = std::move(model_a);
    out.model_b = std::move(model_b);
    out.metric = params.metric;
    out.n_resamples = params.n_resamples;
    out.seed = params.seed;
    out.wins_a = wins_a;
    out.wins_b = wins_b;
    out.ties = params.n_resamples - wins_a - wins_b;
    const double total = static_cast<double>(params.n_resamples);
    out.win_prob_a = (static_cast<double>(wins_a) + 0.5 * static_cast<double>(out.ties)) / total;
    out.win_prob_b = (static_cast<double>(wins_b) + 0.5 * static_cast<double>(out.ties)) / total;
    const double best = std::max(out.win_prob_a, out.win_prob_b);
    out.significant = best > params.significance_level;
    if (out.significant) out.winner = out.win_prob_a > out.win_prob_b ? out.model_a : out.model_b;
    return out;
}

std::vector<PairComparison> comparison_matrix(const ScoreTable& table, const BootstrapParams& params,
                                              Execution execution) {
    std::set<std::string> models;
    for (const auto& [project, by_model] : table) {
        for (const auto& entry : by_model) models.insert(entry.first);
    }
    std::vector<PairComparison> out;
    for (const auto& a : models) {
        for (const auto& b : models) {
            PairComparison pair{a, b, params.metric, {}, {}};
            for (const auto& [project, by_model] : table) {
                auto ia = by_model.find(a);
                auto ib = by_model.find(b);
                if (ia == by_model.end() || ib == by_model.end()) continue;
                auto result = paired_bootstrap(ia->second, ib->second, params, execution, a, b);
                if (!result.significant) {
                    ++pair.cell.ties;
                } else if (result.win_prob_a > result.win_prob_b) {
                    ++pair.cell.wins_a;
                } else {
                    ++pair.cell.wins_b;
                }
                pair.per_project.emplace_back(project, std::move(result));
            }
            out.push_back(std::move(pair));
        }
    }
    return out;
}

}  // namespace namemine
