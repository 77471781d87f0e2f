#pragma once

#include <cstdint>
#include <functional>
#include <unordered_map>
#include <vector>

#include "skewlab/bounds.hpp"

namespace skewlab {

// One permutation of the Kraus slots per channel; perms[t][i] is the slot of
// channel t matched with logical position i.
struct PermutationAssignment {
  std::vector<std::vector<int>> perms;
  // "12|21" style: slots 1-based per channel, channels separated by '|'
  // (slots joined with '-' when a channel has more than nine of them).
  std::string to_string() const;
};

PermutationAssignment identity_assignment(int num_channels, int kraus_count);

struct SearchOptions {
  // Enumerate every canonical tuple when their count does not exceed this;
  // otherwise fall back to seeded hill climbing.
  std::uint64_t exhaustive_limit = 1000000;
  int restarts = 64;
  // Hard cap on bound evaluations in heuristic mode; when it is hit the
  // search stops and reports best-so-far with budget_exhausted set.
  std::uint64_t max_evaluations = 2000000;
  std::uint64_t seed = 0;
  // Fixing the first channel's permutation to the identity is value-neutral
  // (relabeling the shared slot index touches every term identically);
  // disable only to cross-check against the unrestricted enumeration.
  bool canonical = true;
};

enum class SearchMode { exhaustive, heuristic };

// Every quantity entering the channel bounds for one fixed assignment.
struct ChannelKTable {
  int num_channels = 0;  // N
  int kraus_count = 0;   // n, after zero padding
  std::vector<double> k_single;                    // [t], assignment-free
  std::vector<double> pair_sum_plus;               // packed t < s
  std::vector<double> pair_sum_minus;              // packed t < s
  std::vector<std::vector<double>> per_i_plus;     // [i][packed t < s]
  std::vector<std::vector<double>> per_i_minus;    // [i][packed t < s]
  std::vector<double> k_mixed_total;               // [i]
  double sum_single() const;
};

// Precomputes the commutator images of every (channel, slot) operator so
// each table entry is one Frobenius norm of a linear combination; pair and
// column values are memoized across assignments. Channels with fewer Kraus
// operators than the longest list are padded with zero operators, which
// changes no value and keeps slot indexing uniform.
class ChannelBoundEvaluator {
 public:
  ChannelBoundEvaluator(const DensityMatrix& rho,
                        const std::vector<KrausChannel>& channels,
                        const SkewParams& p);

  int num_channels() const { return num_channels_; }
  int kraus_count() const { return kraus_count_; }
  double k_channel(int t) const { return k_single_[t]; }
  double sum_k() const;
  double pair_k(int t, int a, int s, int b, bool plus) const;
  double column_k(const std::vector<int>& column) const;
  ChannelKTable table(const PermutationAssignment& assignment) const;

 private:
  int num_channels_ = 0;
  int kraus_count_ = 0;
  std::vector<std::vector<Matrix>> commutator_images_;
  std::vector<double> k_single_;
  mutable std::vector<double> pair_cache_;
  mutable std::vector<char> pair_cached_;
  mutable std::unordered_map<std::uint64_t, double> column_cache_;
};

double channel_prior_1(const ChannelKTable& t);  // needs N > 2
double channel_prior_2(const ChannelKTable& t);
double channel_prior_3_phase(const ChannelKTable& t, int x);
double channel_prior_3(const ChannelKTable& t);

// "Slotwise" tightened bounds square the root-sums inside the slot sum:
// sum_i (sum_{t<s} sqrt(k))^2.
double channel_slotwise_1(const ChannelKTable& t, const WeightParams& w);
double channel_slotwise_2(const ChannelKTable& t, const WeightParams& w);
double channel_slotwise_3(const ChannelKTable& t, const WeightParams& w);

// "Pooled" tightened bounds pool the slot sum under the root first:
// (sum_{t<s} sqrt(sum_i k))^2.
double channel_pooled_1(const ChannelKTable& t, const WeightParams& w);
double channel_pooled_2(const ChannelKTable& t, const WeightParams& w);
double channel_pooled_3(const ChannelKTable& t, const WeightParams& w);

struct ChannelBoundEntry {
  std::string id;
  double value;
  PermutationAssignment assignment;
};

struct ChannelBoundReport {
  std::vector<ChannelBoundEntry> entries;
  SearchMode mode = SearchMode::exhaustive;
  bool budget_exhausted = false;
  std::uint64_t evaluations = 0;
  std::string note;

  bool has(const std::string& id) const;
  const ChannelBoundEntry& at(const std::string& id) const;
  const ChannelBoundEntry& winner() const;
  double max_over(std::initializer_list<const char*> ids) const;
};

using ChannelBoundFn = std::function<double(const ChannelKTable&)>;

struct SearchOutcome {
  double value = 0.0;
  PermutationAssignment assignment;
  SearchMode mode = SearchMode::exhaustive;
  bool budget_exhausted = false;
  std::uint64_t evaluations = 0;
};

// Maximizes one bound over permutation assignments. Exhaustive when the
// canonical tuple count fits the limit; ties keep the first assignment in
// enumeration order.
SearchOutcome maximize_over_assignments(const ChannelBoundEvaluator& ev,
                                        const ChannelBoundFn& bound,
                                        const SearchOptions& options);

// ids: lb1 (only N > 2), lb2, lb3 — each maximized independently — plus
// their composite max as lb.
ChannelBoundReport prior_channel_bounds(const ChannelBoundEvaluator& ev,
                                        const SearchOptions& options = {});
ChannelBoundReport prior_channel_bounds(const DensityMatrix& rho,
                                        const std::vector<KrausChannel>& c,
                                        const SkewParams& p,
                                        const SearchOptions& options = {});
// ids: slot1, slot2, slot3.
ChannelBoundReport slotwise_channel_bounds(const ChannelBoundEvaluator& ev,
                                           const WeightTriple& w,
                                           const SearchOptions& options = {});
ChannelBoundReport slotwise_channel_bounds(const DensityMatrix& rho,
                                           const std::vector<KrausChannel>& c,
                                           const SkewParams& p,
                                           const WeightTriple& w,
                                           const SearchOptions& options = {});
// ids: pool1, pool2, pool3.
ChannelBoundReport pooled_channel_bounds(const ChannelBoundEvaluator& ev,
                                         const WeightTriple& w,
                                         const SearchOptions& options = {});
ChannelBoundReport pooled_channel_bounds(const DensityMatrix& rho,
                                         const std::vector<KrausChannel>& c,
                                         const SkewParams& p,
                                         const WeightTriple& w,
                                         const SearchOptions& options = {});
// ids: lbbar1 (= pooled family 1), lbbar2 (= pooled family 2),
// lbbar3 (= slotwise family 3), lbbar (their max).
ChannelBoundReport optimal_channel_bound(const ChannelBoundEvaluator& ev,
                                         const WeightTriple& w,
                                         const SearchOptions& options = {});
ChannelBoundReport optimal_channel_bound(const DensityMatrix& rho,
                                         const std::vector<KrausChannel>& c,
                                         const SkewParams& p,
                                         const WeightTriple& w,
                                         const SearchOptions& options = {});

std::uint64_t factorial(int n);

}  // namespace skewlab
