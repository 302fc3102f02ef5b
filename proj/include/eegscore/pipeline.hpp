#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <optional>
#include <thread>
#include <type_traits>
#include <vector>

#include "eegscore/classifiers.hpp"
#include "eegscore/config.hpp"
#include "eegscore/gazetteer.hpp"
#include "eegscore/negation.hpp"
#include "eegscore/remote.hpp"
#include "eegscore/segmenter.hpp"

namespace eegscore {

/// Applies `fn` to every item on up to `workers` threads. Output order matches
/// input order; the first exception (by item index) is rethrown.
template <typename T, typename Fn>
auto parallel_map(const std::vector<T>& items, Fn fn, std::size_t workers = 0) {
  using R = std::invoke_result_t<Fn&, const T&>;
  std::vector<std::optional<R>> slots(items.size());
  std::vector<std::exception_ptr> errors(items.size());
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, std::max<std::size_t>(1, items.size()));
  std::atomic<std::size_t> next{0};
  auto run = [&] {
    for (std::size_t i = next++; i < items.size(); i = next++) {
      try {
        slots[i].emplace(fn(items[i]));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    run();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run);
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<R> out;
  out.reserve(items.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

/// segment -> tag -> classify. Immutable after construction; `extract` may be
/// called from several threads.
class Pipeline {
 public:
  explicit Pipeline(PipelineConfig config = {})
      : config_(std::move(config)),
        segmenter_(config_.segmenter),
        negation_(config_.negation),
        tagger_(config_.tagger, config_.lexicons),
        rules_(config_.lexicons, config_.seizure_precedence) {}

  const PipelineConfig& config() const noexcept { return config_; }
  const Segmenter& segmenter() const noexcept { return segmenter_; }
  const NegationDetector& negation() const noexcept { return negation_; }
  const RuleSet& rules() const noexcept { return rules_; }

  SegmentedReport segment(const Report& r) const { return segmenter_.segment(r); }
  std::vector<Entity> tag(const SegmentedReport& seg) const { return tagger_.tag(seg, negation_); }

  ScoreExtraction extract(const Report& r) const {
    auto seg = segment(r);
    return extract_all(seg, tag(seg), rules_);
  }

  std::vector<ScoreExtraction> extract_many(const std::vector<Report>& reports) const {
    return parallel_map(reports, [this](const Report& r) { return extract(r); }, config_.workers);
  }

 private:
  PipelineConfig config_;
  Segmenter segmenter_;
  NegationDetector negation_;
  EntityTagger tagger_;
  RuleSet rules_;
};

}  // namespace eegscore
