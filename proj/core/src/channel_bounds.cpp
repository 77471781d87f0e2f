#include "skewlab/channel_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <utility>

#include "skewlab/random.hpp"

namespace skewlab {

namespace {

double sqrt_clamped(double v) { return std::sqrt(std::max(v, 0.0)); }

int pair_count(int n) { return n * (n - 1) / 2; }

// Sums in ascending order so every aggregate over the logical position index
// is bit-identical under a common relabeling of that index. Relabeling all
// channels at once only permutes the position terms, so with ordered
// summation the bound values of equivalent assignments agree exactly; this
// is what lets the search fix the first channel's permutation losslessly.
double ordered_sum(std::vector<double> terms) {
  std::sort(terms.begin(), terms.end());
  double s = 0.0;
  for (double v : terms) s += v;
  return s;
}

// Sum over logical positions i of (sum over pairs t<s of sqrt(per-position
// pair value))^2 — the "slotwise" square-of-root-sum aggregate.
double slot_aggregate(const std::vector<std::vector<double>>& per_i) {
  std::vector<double> squares;
  squares.reserve(per_i.size());
  for (const auto& row : per_i) {
    double root_sum = 0.0;
    for (double v : row) root_sum += sqrt_clamped(v);
    squares.push_back(root_sum * root_sum);
  }
  return ordered_sum(std::move(squares));
}

// (sum over pairs t<s of sqrt(position-summed pair value))^2 — the "pooled"
// aggregate, which dominates the slotwise one by the Cauchy-Schwarz
// inequality applied position-by-position.
double pool_aggregate(const std::vector<double>& pair_sums) {
  double root_sum = 0.0;
  for (double v : pair_sums) root_sum += sqrt_clamped(v);
  return root_sum * root_sum;
}

double plain_sum(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0);
}

void require_regime(const WeightParams& w, WeightRegime expected,
                    const char* family) {
  if (w.regime != expected) {
    throw RegimeViolation(std::string("channel bound family ") + family +
                          " called with weights of the wrong regime");
  }
}

void require_table(const ChannelKTable& t, int min_channels) {
  if (t.num_channels < min_channels) {
    throw TooFewChannels("channel bound needs at least " +
                         std::to_string(min_channels) + " channels");
  }
}

}  // namespace

std::string PermutationAssignment::to_string() const {
  std::string out;
  for (size_t t = 0; t < perms.size(); ++t) {
    if (t > 0) out.push_back('|');
    const auto& perm = perms[t];
    const bool wide = perm.size() > 9;
    for (size_t i = 0; i < perm.size(); ++i) {
      if (wide && i > 0) out.push_back('-');
      out += std::to_string(perm[i] + 1);
    }
  }
  return out;
}

PermutationAssignment identity_assignment(int num_channels, int kraus_count) {
  PermutationAssignment a;
  a.perms.assign(num_channels, std::vector<int>(kraus_count));
  for (auto& perm : a.perms) std::iota(perm.begin(), perm.end(), 0);
  return a;
}

double ChannelKTable::sum_single() const { return plain_sum(k_single); }

ChannelBoundEvaluator::ChannelBoundEvaluator(
    const DensityMatrix& rho, const std::vector<KrausChannel>& channels,
    const SkewParams& p) {
  num_channels_ = static_cast<int>(channels.size());
  if (num_channels_ < 2) {
    throw TooFewChannels("need at least two channels");
  }
  kraus_count_ = 0;
  for (const KrausChannel& c : channels) {
    if (c.dim() != rho.dim()) {
      throw DimMismatch("channel dimension does not match the state");
    }
    kraus_count_ = std::max(kraus_count_, c.size());
  }
  const Matrix w = weight_operator(rho, p);
  const Matrix tail = rho.power(p.tail_exponent());
  const Matrix zero_image = Matrix::Zero(rho.dim(), rho.dim());
  commutator_images_.resize(num_channels_);
  k_single_.assign(num_channels_, 0.0);
  for (int t = 0; t < num_channels_; ++t) {
    auto& images = commutator_images_[t];
    images.reserve(kraus_count_);
    for (const Matrix& e : channels[t].kraus()) {
      images.push_back((w * e - e * w) * tail);
      k_single_[t] += 0.5 * images.back().squaredNorm();
    }
    // Padding with zero operators leaves every bound value unchanged and
    // gives all channels the same number of slots to permute.
    images.resize(kraus_count_, zero_image);
  }
  const size_t pair_slots = static_cast<size_t>(num_channels_) *
                            num_channels_ * kraus_count_ * kraus_count_ * 2;
  pair_cache_.assign(pair_slots, 0.0);
  pair_cached_.assign(pair_slots, 0);
}

double ChannelBoundEvaluator::sum_k() const { return plain_sum(k_single_); }

double ChannelBoundEvaluator::pair_k(int t, int a, int s, int b,
                                     bool plus) const {
  if (t == s) throw BadIndex("pair value needs two distinct channels");
  if (t > s) {
    std::swap(t, s);
    std::swap(a, b);
  }
  if (t < 0 || s >= num_channels_ || a < 0 || a >= kraus_count_ || b < 0 ||
      b >= kraus_count_) {
    throw BadIndex("pair value index out of range");
  }
  const size_t idx =
      ((((static_cast<size_t>(t) * num_channels_ + s) * kraus_count_ + a) *
            kraus_count_ +
        b) *
       2) +
      (plus ? 1 : 0);
  if (!pair_cached_[idx]) {
    const Matrix& x = commutator_images_[t][a];
    const Matrix& y = commutator_images_[s][b];
    pair_cache_[idx] =
        0.5 * (plus ? (x + y).squaredNorm() : (x - y).squaredNorm());
    pair_cached_[idx] = 1;
  }
  return pair_cache_[idx];
}

double ChannelBoundEvaluator::column_k(const std::vector<int>& column) const {
  if (column.size() != static_cast<size_t>(num_channels_)) {
    throw BadIndex("column needs one slot per channel");
  }
  std::uint64_t key = 0;
  for (int slot : column) {
    if (slot < 0 || slot >= kraus_count_) {
      throw BadIndex("column slot out of range");
    }
    key = key * static_cast<std::uint64_t>(kraus_count_) +
          static_cast<std::uint64_t>(slot);
  }
  auto it = column_cache_.find(key);
  if (it != column_cache_.end()) return it->second;
  Matrix sum = commutator_images_[0][column[0]];
  for (int t = 1; t < num_channels_; ++t) {
    sum += commutator_images_[t][column[t]];
  }
  const double value = 0.5 * sum.squaredNorm();
  column_cache_.emplace(key, value);
  return value;
}

ChannelKTable ChannelBoundEvaluator::table(
    const PermutationAssignment& assignment) const {
  const int n_ch = num_channels_;
  const int n_kr = kraus_count_;
  if (assignment.perms.size() != static_cast<size_t>(n_ch)) {
    throw BadIndex("assignment needs one permutation per channel");
  }
  for (const auto& perm : assignment.perms) {
    if (perm.size() != static_cast<size_t>(n_kr)) {
      throw BadIndex("assignment permutation has the wrong length");
    }
    std::vector<char> seen(n_kr, 0);
    for (int slot : perm) {
      if (slot < 0 || slot >= n_kr || seen[slot]) {
        throw BadIndex("assignment entry is not a permutation of the slots");
      }
      seen[slot] = 1;
    }
  }
  ChannelKTable t;
  t.num_channels = n_ch;
  t.kraus_count = n_kr;
  t.k_single = k_single_;
  const int pairs = pair_count(n_ch);
  t.pair_sum_plus.assign(pairs, 0.0);
  t.pair_sum_minus.assign(pairs, 0.0);
  t.per_i_plus.assign(n_kr, std::vector<double>(pairs, 0.0));
  t.per_i_minus.assign(n_kr, std::vector<double>(pairs, 0.0));
  t.k_mixed_total.assign(n_kr, 0.0);
  std::vector<int> column(n_ch);
  for (int i = 0; i < n_kr; ++i) {
    int pair = 0;
    for (int a = 0; a < n_ch; ++a) {
      column[a] = assignment.perms[a][i];
      for (int b = a + 1; b < n_ch; ++b, ++pair) {
        t.per_i_plus[i][pair] =
            pair_k(a, assignment.perms[a][i], b, assignment.perms[b][i], true);
        t.per_i_minus[i][pair] = pair_k(a, assignment.perms[a][i], b,
                                        assignment.perms[b][i], false);
      }
    }
    t.k_mixed_total[i] = column_k(column);
  }
  // Position-summed pair values, aggregated in value order so equivalent
  // assignments produce bit-identical tables.
  std::vector<double> terms(n_kr);
  for (int pair = 0; pair < pairs; ++pair) {
    for (int i = 0; i < n_kr; ++i) terms[i] = t.per_i_plus[i][pair];
    t.pair_sum_plus[pair] = ordered_sum(terms);
    for (int i = 0; i < n_kr; ++i) terms[i] = t.per_i_minus[i][pair];
    t.pair_sum_minus[pair] = ordered_sum(terms);
  }
  return t;
}

double channel_prior_1(const ChannelKTable& t) {
  require_table(t, 3);
  const double n = t.num_channels;
  return (plain_sum(t.pair_sum_plus) -
          slot_aggregate(t.per_i_plus) / ((n - 1.0) * (n - 1.0))) /
         (n - 2.0);
}

double channel_prior_2(const ChannelKTable& t) {
  require_table(t, 2);
  const double n = t.num_channels;
  return ordered_sum(t.k_mixed_total) / n +
         2.0 / (n * n * (n - 1.0)) * slot_aggregate(t.per_i_minus);
}

double channel_prior_3_phase(const ChannelKTable& t, int x) {
  require_table(t, 2);
  if (x != 0 && x != 1) throw BadIndex("phase must be 0 or 1");
  const double n = t.num_channels;
  const double root_part =
      (x == 0) ? slot_aggregate(t.per_i_plus) : slot_aggregate(t.per_i_minus);
  const double plain_part =
      (x == 0) ? plain_sum(t.pair_sum_minus) : plain_sum(t.pair_sum_plus);
  return (2.0 / (n * (n - 1.0)) * root_part + plain_part) / (2.0 * (n - 1.0));
}

double channel_prior_3(const ChannelKTable& t) {
  return std::max(channel_prior_3_phase(t, 0), channel_prior_3_phase(t, 1));
}

namespace {

double tightened_channel_bound(const ChannelKTable& t, const WeightParams& w,
                               int family, double plus_aggregate,
                               double minus_aggregate) {
  const double n = t.num_channels;
  const double denom = w.M * n + (n - 2.0) * w.L;
  double numerator = 0.0;
  switch (family) {
    case 1:
      numerator = 2.0 * w.L / (n * (n - 1.0)) * plus_aggregate +
                  w.M * plain_sum(t.pair_sum_minus) +
                  (w.M - w.L) * ordered_sum(t.k_mixed_total);
      break;
    case 2:
      numerator = 2.0 * w.M / (n * (n - 1.0)) * minus_aggregate +
                  w.L * plain_sum(t.pair_sum_plus) +
                  (w.M - w.L) * ordered_sum(t.k_mixed_total);
      break;
    case 3:
      numerator = (w.M - w.L) / ((n - 1.0) * (n - 1.0)) * plus_aggregate +
                  w.M * plain_sum(t.pair_sum_minus) +
                  w.L * plain_sum(t.pair_sum_plus);
      break;
  }
  return numerator / denom;
}

}  // namespace

double channel_slotwise_1(const ChannelKTable& t, const WeightParams& w) {
  require_regime(w, WeightRegime::m_ge_l, "1");
  require_table(t, 2);
  return tightened_channel_bound(t, w, 1, slot_aggregate(t.per_i_plus), 0.0);
}

double channel_slotwise_2(const ChannelKTable& t, const WeightParams& w) {
  require_regime(w, WeightRegime::l_ge_m, "2");
  require_table(t, 2);
  return tightened_channel_bound(t, w, 2, 0.0, slot_aggregate(t.per_i_minus));
}

double channel_slotwise_3(const ChannelKTable& t, const WeightParams& w) {
  require_regime(w, WeightRegime::l_gt_m, "3");
  require_table(t, 2);
  return tightened_channel_bound(t, w, 3, slot_aggregate(t.per_i_plus), 0.0);
}

double channel_pooled_1(const ChannelKTable& t, const WeightParams& w) {
  require_regime(w, WeightRegime::m_ge_l, "1");
  require_table(t, 2);
  return tightened_channel_bound(t, w, 1, pool_aggregate(t.pair_sum_plus),
                                 0.0);
}

double channel_pooled_2(const ChannelKTable& t, const WeightParams& w) {
  require_regime(w, WeightRegime::l_ge_m, "2");
  require_table(t, 2);
  return tightened_channel_bound(t, w, 2, 0.0,
                                 pool_aggregate(t.pair_sum_minus));
}

double channel_pooled_3(const ChannelKTable& t, const WeightParams& w) {
  require_regime(w, WeightRegime::l_gt_m, "3");
  require_table(t, 2);
  return tightened_channel_bound(t, w, 3, pool_aggregate(t.pair_sum_plus),
                                 0.0);
}

bool ChannelBoundReport::has(const std::string& id) const {
  for (const auto& e : entries) {
    if (e.id == id) return true;
  }
  return false;
}

const ChannelBoundEntry& ChannelBoundReport::at(const std::string& id) const {
  for (const auto& e : entries) {
    if (e.id == id) return e;
  }
  throw BadIndex("no bound named '" + id + "' in report");
}

const ChannelBoundEntry& ChannelBoundReport::winner() const {
  if (entries.empty()) throw BadIndex("empty bound report has no winner");
  size_t best = 0;
  for (size_t i = 1; i < entries.size(); ++i) {
    if (entries[i].value > entries[best].value) best = i;
  }
  return entries[best];
}

double ChannelBoundReport::max_over(
    std::initializer_list<const char*> ids) const {
  double m = -std::numeric_limits<double>::infinity();
  for (const char* id : ids) {
    if (has(id)) m = std::max(m, at(id).value);
  }
  return m;
}

std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

namespace {

// Number of assignment tuples, saturated at limit + 1 so callers only learn
// whether the count fits the limit.
std::uint64_t tuple_count_capped(std::uint64_t per_channel, int free_channels,
                                 std::uint64_t limit) {
  std::uint64_t count = 1;
  for (int i = 0; i < free_channels; ++i) {
    if (per_channel != 0 && count > limit / per_channel) return limit + 1;
    count *= per_channel;
  }
  return count;
}

std::vector<std::vector<int>> all_permutations(int n) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

SearchOutcome exhaustive_search(const ChannelBoundEvaluator& ev,
                                const ChannelBoundFn& bound, bool canonical) {
  const int n_ch = ev.num_channels();
  const int n_kr = ev.kraus_count();
  const std::vector<std::vector<int>> perms = all_permutations(n_kr);
  const int first_free = canonical ? 1 : 0;
  std::vector<size_t> index(n_ch, 0);

  SearchOutcome out;
  out.mode = SearchMode::exhaustive;
  out.value = -std::numeric_limits<double>::infinity();
  PermutationAssignment a = identity_assignment(n_ch, n_kr);
  bool done = false;
  while (!done) {
    for (int t = first_free; t < n_ch; ++t) a.perms[t] = perms[index[t]];
    const double value = bound(ev.table(a));
    ++out.evaluations;
    if (value > out.value) {
      out.value = value;
      out.assignment = a;
    }
    done = true;
    for (int t = n_ch - 1; t >= first_free; --t) {
      if (++index[t] < perms.size()) {
        done = false;
        break;
      }
      index[t] = 0;
    }
  }
  return out;
}

SearchOutcome heuristic_search(const ChannelBoundEvaluator& ev,
                               const ChannelBoundFn& bound,
                               const SearchOptions& options) {
  const int n_ch = ev.num_channels();
  const int n_kr = ev.kraus_count();
  const int first_free = options.canonical ? 1 : 0;

  SearchOutcome out;
  out.mode = SearchMode::heuristic;
  out.value = -std::numeric_limits<double>::infinity();
  out.assignment = identity_assignment(n_ch, n_kr);

  auto evaluate = [&](const PermutationAssignment& a, double* value) {
    if (options.max_evaluations != 0 &&
        out.evaluations >= options.max_evaluations) {
      out.budget_exhausted = true;
      return false;
    }
    *value = bound(ev.table(a));
    ++out.evaluations;
    return true;
  };

  const int restarts = std::max(1, options.restarts);
  for (int restart = 0; restart < restarts; ++restart) {
    SplitMix64 rng(child_seed(Seed{options.seed},
                              static_cast<std::uint64_t>(restart)));
    PermutationAssignment a = identity_assignment(n_ch, n_kr);
    if (restart > 0) {  // keep the identity start in the pool of restarts
      for (int t = first_free; t < n_ch; ++t) {
        for (int i = n_kr - 1; i > 0; --i) {
          std::swap(a.perms[t][i], a.perms[t][rng.uniform_int(0, i)]);
        }
      }
    }
    double current = 0.0;
    if (!evaluate(a, &current)) return out;
    if (current > out.value) {
      out.value = current;
      out.assignment = a;
    }
    // First-improvement hill climbing over single slot swaps.
    bool improved = true;
    while (improved) {
      improved = false;
      for (int t = first_free; t < n_ch && !improved; ++t) {
        for (int i = 0; i < n_kr && !improved; ++i) {
          for (int j = i + 1; j < n_kr && !improved; ++j) {
            std::swap(a.perms[t][i], a.perms[t][j]);
            double value = 0.0;
            if (!evaluate(a, &value)) return out;
            if (value > current) {
              current = value;
              improved = true;
              if (value > out.value) {
                out.value = value;
                out.assignment = a;
              }
            } else {
              std::swap(a.perms[t][i], a.perms[t][j]);
            }
          }
        }
      }
    }
  }
  return out;
}

ChannelBoundReport maximize_many(
    const ChannelBoundEvaluator& ev,
    const std::vector<std::pair<std::string, ChannelBoundFn>>& bounds,
    const SearchOptions& options) {
  ChannelBoundReport report;
  bool first = true;
  for (const auto& [id, fn] : bounds) {
    SearchOutcome outcome = maximize_over_assignments(ev, fn, options);
    report.entries.push_back(
        ChannelBoundEntry{id, outcome.value, std::move(outcome.assignment)});
    report.evaluations += outcome.evaluations;
    report.budget_exhausted = report.budget_exhausted ||
                              outcome.budget_exhausted;
    if (first) {
      report.mode = outcome.mode;
      first = false;
    }
  }
  return report;
}

void add_composite_max(ChannelBoundReport* report, const std::string& id,
                       const std::vector<std::string>& ids) {
  const ChannelBoundEntry* best = nullptr;
  for (const std::string& component : ids) {
    if (!report->has(component)) continue;
    const ChannelBoundEntry& e = report->at(component);
    if (best == nullptr || e.value > best->value) best = &e;
  }
  if (best == nullptr) throw BadIndex("composite bound has no components");
  report->entries.push_back(
      ChannelBoundEntry{id, best->value, best->assignment});
}

}  // namespace

SearchOutcome maximize_over_assignments(const ChannelBoundEvaluator& ev,
                                        const ChannelBoundFn& bound,
                                        const SearchOptions& options) {
  const std::uint64_t per_channel = factorial(ev.kraus_count());
  const int free_channels =
      options.canonical ? ev.num_channels() - 1 : ev.num_channels();
  const std::uint64_t count =
      tuple_count_capped(per_channel, free_channels, options.exhaustive_limit);
  if (count <= options.exhaustive_limit) {
    return exhaustive_search(ev, bound, options.canonical);
  }
  return heuristic_search(ev, bound, options);
}

ChannelBoundReport prior_channel_bounds(const ChannelBoundEvaluator& ev,
                                        const SearchOptions& options) {
  std::vector<std::pair<std::string, ChannelBoundFn>> bounds;
  if (ev.num_channels() > 2) {
    bounds.emplace_back("lb1", channel_prior_1);
  }
  bounds.emplace_back("lb2", channel_prior_2);
  bounds.emplace_back("lb3", channel_prior_3);
  ChannelBoundReport report = maximize_many(ev, bounds, options);
  add_composite_max(&report, "lb", {"lb1", "lb2", "lb3"});
  return report;
}

ChannelBoundReport prior_channel_bounds(const DensityMatrix& rho,
                                        const std::vector<KrausChannel>& c,
                                        const SkewParams& p,
                                        const SearchOptions& options) {
  return prior_channel_bounds(ChannelBoundEvaluator(rho, c, p), options);
}

ChannelBoundReport slotwise_channel_bounds(const ChannelBoundEvaluator& ev,
                                           const WeightTriple& w,
                                           const SearchOptions& options) {
  const WeightParams w1 = w.w1;
  const WeightParams w2 = w.w2;
  const WeightParams w3 = w.w3;
  std::vector<std::pair<std::string, ChannelBoundFn>> bounds;
  bounds.emplace_back("slot1", [w1](const ChannelKTable& t) {
    return channel_slotwise_1(t, w1);
  });
  bounds.emplace_back("slot2", [w2](const ChannelKTable& t) {
    return channel_slotwise_2(t, w2);
  });
  bounds.emplace_back("slot3", [w3](const ChannelKTable& t) {
    return channel_slotwise_3(t, w3);
  });
  return maximize_many(ev, bounds, options);
}

ChannelBoundReport slotwise_channel_bounds(const DensityMatrix& rho,
                                           const std::vector<KrausChannel>& c,
                                           const SkewParams& p,
                                           const WeightTriple& w,
                                           const SearchOptions& options) {
  return slotwise_channel_bounds(ChannelBoundEvaluator(rho, c, p), w,
                                 options);
}

ChannelBoundReport pooled_channel_bounds(const ChannelBoundEvaluator& ev,
                                         const WeightTriple& w,
                                         const SearchOptions& options) {
  const WeightParams w1 = w.w1;
  const WeightParams w2 = w.w2;
  const WeightParams w3 = w.w3;
  std::vector<std::pair<std::string, ChannelBoundFn>> bounds;
  bounds.emplace_back("pool1", [w1](const ChannelKTable& t) {
    return channel_pooled_1(t, w1);
  });
  bounds.emplace_back("pool2", [w2](const ChannelKTable& t) {
    return channel_pooled_2(t, w2);
  });
  bounds.emplace_back("pool3", [w3](const ChannelKTable& t) {
    return channel_pooled_3(t, w3);
  });
  return maximize_many(ev, bounds, options);
}

ChannelBoundReport pooled_channel_bounds(const DensityMatrix& rho,
                                         const std::vector<KrausChannel>& c,
                                         const SkewParams& p,
                                         const WeightTriple& w,
                                         const SearchOptions& options) {
  return pooled_channel_bounds(ChannelBoundEvaluator(rho, c, p), w, options);
}

ChannelBoundReport optimal_channel_bound(const ChannelBoundEvaluator& ev,
                                         const WeightTriple& w,
                                         const SearchOptions& options) {
  const WeightParams w1 = w.w1;
  const WeightParams w2 = w.w2;
  const WeightParams w3 = w.w3;
  // Families 1 and 2 are strongest with the pooled aggregate; family 3 keeps
  // the slotwise one (its aggregate enters with a negative coefficient, so
  // pooling would weaken the guarantee there, not strengthen it).
  std::vector<std::pair<std::string, ChannelBoundFn>> bounds;
  bounds.emplace_back("lbbar1", [w1](const ChannelKTable& t) {
    return channel_pooled_1(t, w1);
  });
  bounds.emplace_back("lbbar2", [w2](const ChannelKTable& t) {
    return channel_pooled_2(t, w2);
  });
  bounds.emplace_back("lbbar3", [w3](const ChannelKTable& t) {
    return channel_slotwise_3(t, w3);
  });
  ChannelBoundReport report = maximize_many(ev, bounds, options);
  add_composite_max(&report, "lbbar", {"lbbar1", "lbbar2", "lbbar3"});
  return report;
}

ChannelBoundReport optimal_channel_bound(const DensityMatrix& rho,
                                         const std::vector<KrausChannel>& c,
                                         const SkewParams& p,
                                         const WeightTriple& w,
                                         const SearchOptions& options) {
  return optimal_channel_bound(ChannelBoundEvaluator(rho, c, p), w, options);
}

}  // namespace skewlab
